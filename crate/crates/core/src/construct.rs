//! Extremal witness graphs.

use alloc::format;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// `K_{a,b}`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<BipartiteGraph> {
    let mut g = BipartiteGraph::new(a, b)?;
    for i in 0..a {
        for j in 0..b {
            g.set_edge(i, j);
        }
    }
    Ok(g)
}

/// Path-extremal graph on parts `(a, b)` for `P_{2k-1}` / `P_{2k}`.
///
/// Every `B`-vertex is joined to the first `k - 2` vertices of `A`; each of the
/// remaining `a - k + 2` vertices of `A` hangs off the last `B`-vertex as a
/// pendant. This has `(k - 2)(b - 1) + a` edges and no path on `2k - 1`
/// vertices.
pub fn path_extremal(a: usize, b: usize, k: usize) -> Result<BipartiteGraph> {
    if !(b >= a && a >= k && k >= 3) {
        return Err(Error::HypothesisViolated(format!(
            "path_extremal needs b >= a >= k >= 3 (got a = {a}, b = {b}, k = {k})"
        )));
    }
    let mut g = BipartiteGraph::new(a, b)?;
    for i in 0..k - 2 {
        for j in 0..b {
            g.set_edge(i, j);
        }
    }
    for i in k - 2..a {
        g.set_edge(i, b - 1);
    }
    Ok(g)
}

/// Circulant `d`-regular graph on parts `(n, n)`: `(A,i)` is joined to
/// `(B, (i + j) mod n)` for `j` in `0..d`.
pub fn broom_circulant(n: usize, d: usize) -> Result<BipartiteGraph> {
    if d < 2 || n < d {
        return Err(Error::HypothesisViolated(format!(
            "broom_circulant needs n >= d >= 2 (got n = {n}, d = {d})"
        )));
    }
    let mut g = BipartiteGraph::new(n, n)?;
    for i in 0..n {
        for j in 0..d {
            g.set_edge(i, (i + j) % n);
        }
    }
    Ok(g)
}
