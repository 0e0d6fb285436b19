//! Multi-threaded, time-limited search on top of the core engines.
//!
//! The branch-and-bound is cut into subproblems over its first few edge
//! decisions and those are solved on a rayon pool sharing one best value.
//! Results are the same for every thread count.

use std::time::{Duration, Instant};

use bipturan_core::search::{
    turan_oracle_with, BranchAndBound, Mode, SearchControl, SharedBest, TableSpec, TuranQuery, TuranResult,
    MAX_SPLIT_DEPTH,
};
use bipturan_core::{verify_theorem_table, TableRow};
use rayon::prelude::*;

use crate::error::Result;

/// Ten minutes.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; 0 means one per core.
    pub threads: usize,
    /// Wall-clock limit per query.
    pub timeout: Option<Duration>,
    pub node_budget: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { threads: 0, timeout: Some(DEFAULT_TIMEOUT), node_budget: None }
    }
}

impl RunOptions {
    pub fn pool(&self) -> Result<rayon::ThreadPool> {
        Ok(rayon::ThreadPoolBuilder::new().num_threads(self.threads).build()?)
    }
}

pub fn solve(q: &TuranQuery, opts: &RunOptions) -> Result<TuranResult> {
    Ok(solve_in(&opts.pool()?, q, opts)?)
}

/// Runs `q` on an existing pool.
pub fn solve_in(pool: &rayon::ThreadPool, q: &TuranQuery, opts: &RunOptions) -> bipturan_core::Result<TuranResult> {
    let start = Instant::now();
    let deadline = opts.timeout.map(|t| start + t);
    let stop = move || deadline.is_some_and(|d| Instant::now() >= d);
    let ctl = SearchControl { node_budget: opts.node_budget, stop: Some(&stop) };
    let mut result = match q.mode {
        Mode::Oracle => turan_oracle_with(q, &ctl)?,
        Mode::BranchAndBound => {
            let bnb = BranchAndBound::new(q.a, q.b, q.pattern)?;
            let tasks = bnb.split(MAX_SPLIT_DEPTH)?;
            let shared = SharedBest::default();
            let partials = pool.install(|| {
                tasks
                    .par_iter()
                    .map(|t| bnb.solve(t, &shared, &ctl))
                    .collect::<bipturan_core::Result<Vec<_>>>()
            })?;
            bnb.merge(partials)?
        }
    };
    result.elapsed = start.elapsed();
    Ok(result)
}

/// Every cell of the table, branch-and-bound on one shared pool.
pub fn solve_table(spec: &TableSpec, opts: &RunOptions) -> Result<Vec<TableRow>> {
    let pool = opts.pool()?;
    Ok(verify_theorem_table(spec, |q| solve_in(&pool, q, opts))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bipturan_core::search::Theorem;
    use bipturan_core::{turan_search, Error, Pattern};

    #[test]
    fn threads_do_not_change_results() {
        let q = TuranQuery::new(4, 5, Pattern::Path { m: 6 }, Mode::BranchAndBound);
        let seq = turan_search(&q).unwrap();
        for threads in [1, 2, 4] {
            let r = solve(&q, &RunOptions { threads, ..Default::default() }).unwrap();
            assert_eq!(r.value, seq.value);
            assert_eq!(r.witnesses, seq.witnesses);
        }
    }

    #[test]
    fn oracle_mode_is_dispatched() {
        let q = TuranQuery::new(3, 3, Pattern::Path { m: 6 }, Mode::Oracle);
        let r = solve(&q, &RunOptions::default()).unwrap();
        assert_eq!((r.mode, r.value), (Mode::Oracle, Some(5)));
    }

    #[test]
    fn zero_timeout_interrupts() {
        let q = TuranQuery::new(5, 5, Pattern::Path { m: 6 }, Mode::BranchAndBound);
        let opts = RunOptions { threads: 2, timeout: Some(Duration::ZERO), node_budget: None };
        match solve(&q, &opts) {
            Err(crate::Error::Core(Error::SearchTimeout { .. })) => {}
            other => panic!("expected a timeout, got {other:?}"),
        }
    }

    #[test]
    fn table_rows() {
        let spec = TableSpec { theorem: Theorem::Paths, max_a: 3, max_b: 4, k_lo: 3, k_hi: 3 };
        let rows = solve_table(&spec, &RunOptions::default()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.matches));
    }
}
