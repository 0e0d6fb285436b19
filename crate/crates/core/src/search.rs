//! Exact connected bipartite Turán numbers at small sizes.
//!
//! Two engines compute the same value: [`turan_oracle`] scans every labelled
//! graph in descending edge-count bands, and [`BranchAndBound`] decides the
//! edges one at a time in row-major order with bound, containment and
//! row-degree symmetry pruning. The branch-and-bound can be cut into
//! independent subproblems so a driver can run them on several threads; the
//! value and the witness set do not depend on how the subproblems are
//! scheduled.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use core::time::Duration;

use crate::certify::path_bound;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, CanonicalKey, DEFAULT_KEY_GUARD, MAX_PART};
use crate::pattern::{is_free, Pattern};

/// Largest `a * b` the oracle accepts.
pub const ORACLE_MAX_CELLS: usize = 26;

/// Row-degree symmetry breaking is applied up to this many `A`-rows.
pub const SYMMETRY_MAX_ROWS: usize = 7;

/// Upper limit on the number of witnesses kept per result. The smallest keys
/// are kept, so truncation is deterministic.
pub const MAX_WITNESSES: usize = 4096;

/// Decisions fixed when cutting the search into subproblems.
pub const MAX_SPLIT_DEPTH: usize = 8;

const CHECK_EVERY: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Mode {
    Oracle,
    BranchAndBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TuranQuery {
    pub a: usize,
    pub b: usize,
    pub pattern: Pattern,
    pub mode: Mode,
}

impl TuranQuery {
    pub fn new(a: usize, b: usize, pattern: Pattern, mode: Mode) -> Self {
        TuranQuery { a, b, pattern, mode }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranResult {
    pub a: usize,
    pub b: usize,
    pub pattern: Pattern,
    pub mode: Mode,
    /// Maximum edge count of a connected pattern-free graph, or `None` when
    /// there is no such graph at these sizes.
    pub value: Option<usize>,
    /// Extremal graphs, one per isomorphism class, in ascending key order.
    pub witnesses: Vec<BipartiteGraph>,
    pub nodes_explored: u64,
    /// Wall-clock time; left at zero by the core and filled in by drivers
    /// that have a clock.
    pub elapsed: Duration,
}

/// Limits on a running search.
#[derive(Clone, Copy, Default)]
pub struct SearchControl<'a> {
    pub node_budget: Option<u64>,
    /// Polled every few thousand nodes; returning `true` stops the search.
    pub stop: Option<&'a (dyn Fn() -> bool + Sync)>,
}

impl SearchControl<'_> {
    fn exhausted(&self, nodes: u64) -> bool {
        self.node_budget.is_some_and(|n| nodes >= n) || self.stop.is_some_and(|f| f())
    }
}

/// Isomorphism key used to deduplicate witnesses, and the representative
/// stored for it. Graphs beyond the canonical-key guard fall back to their
/// labelled key.
pub fn witness_key(g: &BipartiteGraph) -> (CanonicalKey, BipartiteGraph) {
    if g.a() <= DEFAULT_KEY_GUARD && g.b() <= DEFAULT_KEY_GUARD {
        let key = g.canonical_key().expect("parts within guard");
        let rep = key.to_graph().expect("canonical keys decode");
        (key, rep)
    } else {
        (g.labeled_key(), *g)
    }
}

#[derive(Clone, Debug, Default)]
struct WitnessSet {
    best: Option<usize>,
    graphs: BTreeMap<CanonicalKey, BipartiteGraph>,
}

impl WitnessSet {
    fn offer(&mut self, edges: usize, g: &BipartiteGraph) {
        match self.best {
            Some(b) if edges < b => return,
            Some(b) if edges == b => {}
            _ => {
                self.best = Some(edges);
                self.graphs.clear();
            }
        }
        let (key, rep) = witness_key(g);
        self.graphs.insert(key, rep);
        if self.graphs.len() > MAX_WITNESSES {
            self.graphs.pop_last();
        }
    }

    fn absorb(&mut self, other: WitnessSet) {
        match (self.best, other.best) {
            (_, None) => {}
            (Some(x), Some(y)) if y < x => {}
            (Some(x), Some(y)) if y == x => {
                self.graphs.extend(other.graphs);
                while self.graphs.len() > MAX_WITNESSES {
                    self.graphs.pop_last();
                }
            }
            _ => *self = other,
        }
    }
}

fn check_query(q: &TuranQuery) -> Result<BipartiteGraph> {
    BipartiteGraph::new(q.a, q.b)
}

/// Brute force over all `2^(ab)` labelled graphs, highest edge count first.
pub fn turan_oracle(q: &TuranQuery) -> Result<TuranResult> {
    turan_oracle_with(q, &SearchControl::default())
}

pub fn turan_oracle_with(q: &TuranQuery, ctl: &SearchControl<'_>) -> Result<TuranResult> {
    let empty = check_query(q)?;
    let (a, b) = (q.a, q.b);
    let cells = a * b;
    if cells > ORACLE_MAX_CELLS {
        return Err(Error::CapacityExceeded { a, b, max: ORACLE_MAX_CELLS });
    }
    let row_mask = (1u32 << b) - 1;
    let mut nodes = 0u64;
    let mut found = WitnessSet::default();
    // a connected graph on a + b vertices has at least a + b - 1 edges
    for m in (a + b - 1..=cells).rev() {
        for mask in Combinations::new(cells, m) {
            nodes += 1;
            if nodes.is_multiple_of(CHECK_EVERY) && ctl.exhausted(nodes) {
                return Err(Error::SearchTimeout { lower_bound: found.best, nodes });
            }
            let mut g = empty;
            for i in 0..a {
                g.set_row(i, (mask >> (i * b)) as u32 & row_mask);
            }
            if g.is_connected() && is_free(&g, &q.pattern)? {
                found.offer(m, &g);
            }
        }
        if found.best.is_some() {
            break;
        }
    }
    Ok(TuranResult {
        a,
        b,
        pattern: q.pattern,
        mode: Mode::Oracle,
        value: found.best,
        witnesses: found.graphs.into_values().collect(),
        nodes_explored: nodes,
        elapsed: Duration::ZERO,
    })
}

/// `m`-element subsets of `0..n` as bit masks, in increasing numeric order.
struct Combinations {
    next: Option<u64>,
    limit: u64,
}

impl Combinations {
    fn new(n: usize, m: usize) -> Self {
        let next = (m <= n).then(|| if m == 0 { 0 } else { (1u64 << m) - 1 });
        Combinations { next, limit: 1u64 << n }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < self.limit).then_some(n)
        };
        Some(cur)
    }
}

/// Runs the branch-and-bound on one thread.
pub fn turan_search(q: &TuranQuery) -> Result<TuranResult> {
    turan_search_with(q, &SearchControl::default())
}

pub fn turan_search_with(q: &TuranQuery, ctl: &SearchControl<'_>) -> Result<TuranResult> {
    let bnb = BranchAndBound::new(q.a, q.b, q.pattern)?;
    let shared = SharedBest::default();
    let partials = bnb
        .split(0)?
        .iter()
        .map(|s| bnb.solve(s, &shared, ctl))
        .collect::<Result<Vec<_>>>()?;
    bnb.merge(partials)
}

/// Dispatches on [`TuranQuery::mode`].
pub fn turan(q: &TuranQuery) -> Result<TuranResult> {
    match q.mode {
        Mode::Oracle => turan_oracle(q),
        Mode::BranchAndBound => turan_search(q),
    }
}

/// Best value seen by any worker plus the total node count; shared between
/// the subproblems of one search.
#[derive(Debug, Default)]
pub struct SharedBest {
    best: AtomicUsize,
    nodes: AtomicU64,
}

impl SharedBest {
    pub fn best(&self) -> usize {
        self.best.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// A partial assignment: the first `depth` edge decisions have been made.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subproblem {
    graph: BipartiteGraph,
    depth: usize,
    edges: usize,
}

impl Subproblem {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }
}

/// Outcome of solving one subproblem.
#[derive(Clone, Debug)]
pub struct Partial {
    found: WitnessSet,
    nodes: u64,
    interrupted: bool,
}

impl Partial {
    pub fn best(&self) -> Option<usize> {
        self.found.best
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn interrupted(&self) -> bool {
        self.interrupted
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BranchAndBound {
    a: usize,
    b: usize,
    pattern: Pattern,
    symmetric: bool,
}

struct Run<'s, 'c> {
    shared: &'s SharedBest,
    ctl: &'s SearchControl<'c>,
    found: WitnessSet,
    nodes: u64,
    flushed: u64,
}

impl BranchAndBound {
    pub fn new(a: usize, b: usize, pattern: Pattern) -> Result<Self> {
        BipartiteGraph::new(a, b)?;
        Ok(BranchAndBound { a, b, pattern, symmetric: a <= SYMMETRY_MAX_ROWS })
    }

    fn cells(&self) -> usize {
        self.a * self.b
    }

    fn row_cap(&self, g: &BipartiteGraph, i: usize) -> usize {
        if self.symmetric && i > 0 {
            g.row(i - 1).count_ones() as usize
        } else {
            self.b
        }
    }

    /// Largest edge count any completion of `(g, t)` can reach.
    fn upper_bound(&self, g: &BipartiteGraph, t: usize, edges: usize) -> usize {
        let (i, j) = (t / self.b, t % self.b);
        if i >= self.a {
            return edges;
        }
        let c = g.row(i).count_ones() as usize;
        let cap = self.row_cap(g, i);
        let this_row = (c + self.b - j).min(cap);
        let later = if self.symmetric { this_row } else { self.b };
        edges - c + this_row + later * (self.a - i - 1)
    }

    fn may_include(&self, g: &BipartiteGraph, t: usize) -> bool {
        let i = t / self.b;
        (g.row(i).count_ones() as usize) < self.row_cap(g, i)
    }

    /// Enumerates every feasible assignment of the first
    /// `min(depth, MAX_SPLIT_DEPTH, ab)` decisions, include-branch first.
    pub fn split(&self, depth: usize) -> Result<Vec<Subproblem>> {
        let depth = depth.min(MAX_SPLIT_DEPTH).min(self.cells());
        let mut out = Vec::new();
        let root = Subproblem { graph: BipartiteGraph::new(self.a, self.b)?, depth: 0, edges: 0 };
        self.split_into(root, depth, &mut out)?;
        Ok(out)
    }

    fn split_into(&self, s: Subproblem, depth: usize, out: &mut Vec<Subproblem>) -> Result<()> {
        if s.depth == depth {
            out.push(s);
            return Ok(());
        }
        let t = s.depth;
        let (i, j) = (t / self.b, t % self.b);
        if self.may_include(&s.graph, t) {
            let mut g = s.graph;
            g.set_edge(i, j);
            if is_free(&g, &self.pattern)? {
                self.split_into(Subproblem { graph: g, depth: t + 1, edges: s.edges + 1 }, depth, out)?;
            }
        }
        self.split_into(Subproblem { depth: t + 1, ..s }, depth, out)
    }

    /// Exhausts one subproblem. Stops early (and says so) when the control
    /// limits are hit.
    pub fn solve(&self, s: &Subproblem, shared: &SharedBest, ctl: &SearchControl<'_>) -> Result<Partial> {
        let mut run = Run { shared, ctl, found: WitnessSet::default(), nodes: 0, flushed: 0 };
        if ctl.exhausted(shared.nodes()) {
            return Ok(Partial { found: run.found, nodes: 0, interrupted: true });
        }
        let mut g = s.graph;
        let interrupted = match self.dfs(&mut run, &mut g, s.depth, s.edges) {
            Ok(()) => false,
            Err(Stop::Limit) => true,
            Err(Stop::Failed(e)) => return Err(e),
        };
        shared.nodes.fetch_add(run.nodes - run.flushed, Ordering::Relaxed);
        Ok(Partial { found: run.found, nodes: run.nodes, interrupted })
    }

    fn dfs(&self, run: &mut Run<'_, '_>, g: &mut BipartiteGraph, t: usize, edges: usize) -> Result<(), Stop> {
        run.nodes += 1;
        if run.nodes.is_multiple_of(CHECK_EVERY) {
            let total = run.shared.nodes.fetch_add(run.nodes - run.flushed, Ordering::Relaxed) + run.nodes
                - run.flushed;
            run.flushed = run.nodes;
            if run.ctl.exhausted(total) {
                return Err(Stop::Limit);
            }
        }
        if t == self.cells() {
            if g.is_connected() && edges >= run.shared.best() {
                run.found.offer(edges, g);
                run.shared.best.fetch_max(edges, Ordering::Relaxed);
            }
            return Ok(());
        }
        // ties are explored so every extremal class is reached
        let best = run.shared.best().max(run.found.best.unwrap_or(0));
        if self.upper_bound(g, t, edges) < best {
            return Ok(());
        }
        let (i, j) = (t / self.b, t % self.b);
        if self.may_include(g, t) {
            g.set_edge(i, j);
            if is_free(g, &self.pattern)? {
                self.dfs(run, g, t + 1, edges + 1)?;
            }
            g.clear_edge(i, j);
        }
        self.dfs(run, g, t + 1, edges)
    }

    /// Combines the partial results of every subproblem of one split.
    pub fn merge(&self, partials: Vec<Partial>) -> Result<TuranResult> {
        let mut found = WitnessSet::default();
        let mut nodes = 0;
        let mut interrupted = false;
        for p in partials {
            nodes += p.nodes;
            interrupted |= p.interrupted;
            found.absorb(p.found);
        }
        if interrupted {
            return Err(Error::SearchTimeout { lower_bound: found.best, nodes });
        }
        Ok(TuranResult {
            a: self.a,
            b: self.b,
            pattern: self.pattern,
            mode: Mode::BranchAndBound,
            value: found.best,
            witnesses: found.graphs.into_values().collect(),
            nodes_explored: nodes,
            elapsed: Duration::ZERO,
        })
    }
}

enum Stop {
    Limit,
    Failed(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Failed(e)
    }
}

/// One representative per isomorphism class of `pattern`-free graphs on
/// parts `(a, b)` (connected ones only if asked), in ascending key order.
pub fn enumerate_free_graphs(a: usize, b: usize, pattern: &Pattern, connected_only: bool) -> Result<Vec<BipartiteGraph>> {
    BipartiteGraph::new(a, b)?;
    if a * b > ORACLE_MAX_CELLS {
        return Err(Error::CapacityExceeded { a, b, max: ORACLE_MAX_CELLS });
    }
    if a > DEFAULT_KEY_GUARD || b > DEFAULT_KEY_GUARD {
        return Err(Error::CapacityExceeded { a, b, max: DEFAULT_KEY_GUARD });
    }
    let mut seen = BTreeMap::new();
    let mut g = BipartiteGraph::new(a, b)?;
    let first = u32::from(connected_only);
    enumerate_rows(&mut g, 0, first, pattern, connected_only, &mut seen)?;
    Ok(seen.into_values().collect())
}

// Rows are chosen in non-decreasing order: permuting A-rows never changes the
// isomorphism class, so this loses nothing.
fn enumerate_rows(
    g: &mut BipartiteGraph,
    i: usize,
    min_row: u32,
    pattern: &Pattern,
    connected_only: bool,
    seen: &mut BTreeMap<CanonicalKey, BipartiteGraph>,
) -> Result<()> {
    if i == g.a() {
        if !connected_only || g.is_connected() {
            let (key, rep) = witness_key(g);
            seen.entry(key).or_insert(rep);
        }
        return Ok(());
    }
    for row in min_row..1u32 << g.b() {
        g.set_row(i, row);
        if is_free(g, pattern)? {
            enumerate_rows(g, i + 1, row, pattern, connected_only, seen)?;
        }
    }
    g.set_row(i, 0);
    Ok(())
}

/// Which theorem a table checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Theorem {
    /// `ex(a, b, P_{2k-1}) = ex(a, b, P_{2k}) = (k-2)(b-1) + a`.
    Paths,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub theorem: Theorem,
    pub max_a: usize,
    pub max_b: usize,
    pub k_lo: usize,
    pub k_hi: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub pattern: Pattern,
    pub formula: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TableRow {
    pub a: usize,
    pub b: usize,
    pub pattern: Pattern,
    pub searched: Option<usize>,
    pub formula: usize,
    pub matches: bool,
}

impl TableSpec {
    /// Cells `k_lo <= k <= k_hi`, `k <= a <= max_a`, `a <= b <= max_b`, each
    /// with `Path(2k-1)` then `Path(2k)`.
    pub fn cells(&self) -> Result<Vec<TableCell>> {
        if self.k_lo < 3 || self.k_lo > self.k_hi {
            return Err(Error::HypothesisViolated(format!(
                "k range must satisfy 3 <= lo <= hi (got {}..{})",
                self.k_lo, self.k_hi
            )));
        }
        if self.max_a > MAX_PART || self.max_b > MAX_PART {
            return Err(Error::CapacityExceeded { a: self.max_a, b: self.max_b, max: MAX_PART });
        }
        let mut out = Vec::new();
        for k in self.k_lo..=self.k_hi {
            for a in k..=self.max_a {
                for b in a..=self.max_b {
                    for m in [2 * k - 1, 2 * k] {
                        out.push(TableCell { a, b, k, pattern: Pattern::Path { m }, formula: path_bound(a, b, k) });
                    }
                }
            }
        }
        Ok(out)
    }
}

impl TableCell {
    pub fn row(&self, searched: Option<usize>) -> TableRow {
        TableRow {
            a: self.a,
            b: self.b,
            pattern: self.pattern,
            searched,
            formula: self.formula,
            matches: searched == Some(self.formula),
        }
    }
}

/// Computes every cell of `spec` with `solve` and compares against the
/// formula. Mismatches are reported in the rows, not as errors.
pub fn verify_theorem_table<F>(spec: &TableSpec, mut solve: F) -> Result<Vec<TableRow>>
where
    F: FnMut(&TuranQuery) -> Result<TuranResult>,
{
    spec.cells()?
        .iter()
        .map(|c| {
            let r = solve(&TuranQuery::new(c.a, c.b, c.pattern, Mode::BranchAndBound))?;
            Ok(c.row(r.value))
        })
        .collect()
}

/// What the broom theorems say about `ex(n, n, Broom(p, d))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BroomPrediction {
    /// `nd`, attained by the circulant graph, whenever it exists.
    pub lower: Option<usize>,
    /// `nd` exactly: `p` is `2k` or `2k + 1` with `k >= 2`, `d > 2k` and
    /// `n >= d^2 / 2`.
    pub exact: Option<usize>,
    /// `2nk + 1`: `p = 2k + 1` with `k > d >= 2`.
    pub upper: Option<usize>,
}

/// Bounds on `ex(n, n, Broom(p, d))` whose hypotheses hold at these
/// parameters.
pub fn broom_prediction(n: usize, p: usize, d: usize) -> BroomPrediction {
    let mut out = BroomPrediction::default();
    // the circulant has maximum degree d, so no vertex can anchor the broom
    if p >= 2 && d >= 2 && n >= d {
        out.lower = Some(n * d);
    }
    let k = p / 2;
    if k >= 2 && d > 2 * k && 2 * n >= d * d {
        out.exact = Some(n * d);
    }
    if p % 2 == 1 && k > d && d >= 2 {
        out.upper = Some(2 * n * k + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::path_extremal;
    use alloc::vec;

    fn path(m: usize) -> Pattern {
        Pattern::Path { m }
    }

    fn oracle(a: usize, b: usize, pat: Pattern) -> TuranResult {
        turan_oracle(&TuranQuery::new(a, b, pat, Mode::Oracle)).unwrap()
    }

    fn bnb(a: usize, b: usize, pat: Pattern) -> TuranResult {
        turan_search(&TuranQuery::new(a, b, pat, Mode::BranchAndBound)).unwrap()
    }

    #[test]
    fn combinations_are_gosper_ordered() {
        let all: Vec<u64> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(Combinations::new(5, 5).collect::<Vec<_>>(), vec![0b11111]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(20, 3).count(), 1140);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle(3, 3, path(6)).value, Some(5));
        assert_eq!(oracle(4, 4, path(6)).value, Some(7));
        assert_eq!(oracle(3, 4, path(5)).value, Some(6));
    }

    #[test]
    fn search_examples() {
        assert_eq!(bnb(4, 4, path(8)).value, Some(10));
        assert_eq!(bnb(3, 5, path(6)).value, Some(7));
        assert_eq!(bnb(5, 5, path(8)).value, Some(13));
    }

    #[test]
    fn no_feasible_graph() {
        // the only connected graph on (1, 1) is an edge, which is a P2
        let r = oracle(1, 1, path(2));
        assert_eq!(r.value, None);
        assert!(r.witnesses.is_empty());
        assert_eq!(bnb(1, 1, path(2)).value, None);
        assert_eq!(bnb(2, 2, path(3)).value, None);
    }

    #[test]
    fn oracle_rejects_large_queries() {
        let q = TuranQuery::new(5, 6, path(6), Mode::Oracle);
        assert!(matches!(turan_oracle(&q), Err(Error::CapacityExceeded { max: 26, .. })));
        assert!(matches!(
            turan(&TuranQuery::new(0, 3, path(6), Mode::BranchAndBound)),
            Err(Error::InvalidSize { .. })
        ));
    }

    #[test]
    fn engines_agree_with_witness_sets() {
        for (a, b) in [(2, 3), (3, 3), (3, 4), (2, 5)] {
            for pat in [path(4), path(5), path(6), Pattern::Broom { p: 3, d: 2 }] {
                let (o, s) = (oracle(a, b, pat), bnb(a, b, pat));
                assert_eq!(o.value, s.value, "{a}x{b} {pat}");
                assert_eq!(o.witnesses, s.witnesses, "{a}x{b} {pat}");
                for w in &o.witnesses {
                    assert!(w.is_connected());
                    assert!(is_free(w, &pat).unwrap());
                    assert_eq!(Some(w.edge_count()), o.value);
                }
            }
        }
    }

    #[test]
    fn path_extremal_is_among_witnesses() {
        let r = bnb(3, 4, path(6));
        let key = path_extremal(3, 4, 3).unwrap().canonical_key().unwrap();
        assert!(r.witnesses.iter().any(|w| w.canonical_key().unwrap() == key));
    }

    #[test]
    fn split_then_merge_matches_sequential() {
        let bnb = BranchAndBound::new(4, 4, path(6)).unwrap();
        let seq = turan_search(&TuranQuery::new(4, 4, path(6), Mode::BranchAndBound)).unwrap();
        for depth in [1, 3, 8] {
            let shared = SharedBest::default();
            let parts = bnb.split(depth).unwrap();
            assert!(parts.iter().all(|s| s.depth() == depth));
            // reversed order stands in for an arbitrary schedule
            let partials = parts
                .iter()
                .rev()
                .map(|s| bnb.solve(s, &shared, &SearchControl::default()).unwrap())
                .collect();
            let r = bnb.merge(partials).unwrap();
            assert_eq!(r.value, seq.value);
            assert_eq!(r.witnesses, seq.witnesses);
        }
    }

    #[test]
    fn budget_interrupts_with_lower_bound() {
        let ctl = SearchControl { node_budget: Some(CHECK_EVERY), stop: None };
        let q = TuranQuery::new(5, 5, path(8), Mode::BranchAndBound);
        match turan_search_with(&q, &ctl) {
            Err(Error::SearchTimeout { lower_bound, nodes }) => {
                assert!(nodes >= CHECK_EVERY);
                assert!(lower_bound.is_none_or(|v| v <= 13));
            }
            other => panic!("expected a timeout, got {other:?}"),
        }
        let stop = || true;
        let ctl = SearchControl { node_budget: None, stop: Some(&stop) };
        let q = TuranQuery::new(5, 5, path(8), Mode::Oracle);
        assert!(matches!(turan_oracle_with(&q, &ctl), Err(Error::SearchTimeout { .. })));
    }

    #[test]
    fn enumerate_single_edge() {
        let all = enumerate_free_graphs(1, 1, &path(3), true).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].edge_count(), 1);
    }

    /// Isomorphism classes by brute force: every labelled graph, keyed.
    fn classes(a: usize, b: usize, pat: &Pattern, connected: bool) -> Vec<CanonicalKey> {
        let mut keys = BTreeMap::new();
        for mask in 0u64..1 << (a * b) {
            let mut g = BipartiteGraph::new(a, b).unwrap();
            for t in bits_of(mask) {
                g.add_edge(t / b, t % b).unwrap();
            }
            if (!connected || g.is_connected()) && is_free(&g, pat).unwrap() {
                keys.insert(g.canonical_key().unwrap(), ());
            }
        }
        keys.into_keys().collect()
    }

    fn bits_of(mask: u64) -> impl Iterator<Item = usize> {
        (0..64).filter(move |t| mask >> t & 1 == 1)
    }

    #[test]
    fn enumerate_matches_brute_force() {
        // a connected graph on (2, 2) has a spanning tree, which is a P4
        // since no vertex can reach degree 3
        let stars = enumerate_free_graphs(2, 2, &path(4), true).unwrap();
        assert_eq!(stars.len(), classes(2, 2, &path(4), true).len());
        assert_eq!(stars.len(), 0);

        for (a, b, pat, conn) in [
            (2, 3, path(4), true),
            (2, 3, path(4), false),
            (3, 3, path(6), true),
            (3, 4, path(5), false),
            (3, 3, Pattern::Broom { p: 2, d: 2 }, true),
        ] {
            let got: Vec<_> = enumerate_free_graphs(a, b, &pat, conn)
                .unwrap()
                .iter()
                .map(|g| g.canonical_key().unwrap())
                .collect();
            assert_eq!(got, classes(a, b, &pat, conn), "{a}x{b} {pat} {conn}");
        }
    }

    #[test]
    fn enumerate_guards() {
        assert!(matches!(
            enumerate_free_graphs(8, 3, &path(4), true),
            Err(Error::CapacityExceeded { max: DEFAULT_KEY_GUARD, .. })
        ));
        assert!(matches!(
            enumerate_free_graphs(5, 6, &path(4), true),
            Err(Error::CapacityExceeded { max: ORACLE_MAX_CELLS, .. })
        ));
    }

    #[test]
    fn table_cells_and_rows() {
        let spec = TableSpec { theorem: Theorem::Paths, max_a: 4, max_b: 4, k_lo: 3, k_hi: 3 };
        let cells = spec.cells().unwrap();
        // (3,3), (3,4), (4,4), two patterns each
        assert_eq!(cells.len(), 6);
        assert_eq!(cells[0].pattern, path(5));
        assert_eq!(cells[1].pattern, path(6));
        let rows = verify_theorem_table(&spec, turan_search).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.a, r.b, r.searched)).collect();
        assert_eq!(
            got,
            vec![(3, 3, Some(5)), (3, 3, Some(5)), (3, 4, Some(6)), (3, 4, Some(6)), (4, 4, Some(7)), (4, 4, Some(7))]
        );
        assert!(rows.iter().all(|r| r.matches));

        let bad = TableSpec { k_lo: 2, ..spec };
        assert!(bad.cells().is_err());
    }

    #[test]
    fn broom_predictions() {
        let p = broom_prediction(4, 7, 2);
        assert_eq!(p.lower, Some(8));
        assert_eq!(p.upper, Some(2 * 4 * 3 + 1));
        assert_eq!(p.exact, None);
        assert_eq!(broom_prediction(2, 4, 3).lower, None);
        // d = 5 > 2k = 4 and n >= 12.5
        assert_eq!(broom_prediction(13, 4, 5).exact, Some(65));
        assert_eq!(broom_prediction(13, 5, 5).exact, Some(65));
        assert_eq!(broom_prediction(12, 4, 5).exact, None);
    }
}
