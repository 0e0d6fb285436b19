//! Proof-replay certificates for the path bound `(k-2)(b-1) + a`.
//!
//! A certificate is the transcript of the vertex-removal induction run on one
//! concrete graph: single removals from the larger part until the parts are
//! equal, cross-pair removals until both parts have `k` vertices, then a
//! direct edge count of the residual `k x k` graph. Every removal carries a
//! degree budget; the budgets add up to the bound.
//!
//! Vertices are named in the labelling of the oriented input (parts swapped
//! first when `a > b`), never in the shrinking working graph.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Part, VertexRef};
use crate::lemmas::{find_removable_pair, find_removable_vertex};
use crate::pattern::{is_free, Pattern};

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "step", rename_all = "snake_case"))]
pub enum CertStep {
    RemoveOne { victim: VertexRef, degree_at_removal: usize },
    RemoveTwo { victims: (VertexRef, VertexRef), degree_sum: usize },
    BaseCase { k: usize, edges: usize },
}

impl CertStep {
    /// Edge budget this step contributes at parameter `k`.
    pub fn budget(&self, k: usize) -> usize {
        match self {
            CertStep::RemoveOne { .. } => k - 2,
            CertStep::RemoveTwo { .. } => k - 1,
            CertStep::BaseCase { .. } => base_case_bound(k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Certificate {
    pub k: usize,
    /// Part sizes after orientation, so `a <= b`.
    pub a: usize,
    pub b: usize,
    /// Whether the input's parts were exchanged to get `a <= b`.
    pub swapped: bool,
    pub steps: Vec<CertStep>,
    pub claimed_bound: usize,
}

/// `(k-2)(b-1) + a`.
pub fn path_bound(a: usize, b: usize, k: usize) -> usize {
    (k - 2) * (b - 1) + a
}

/// `(k-1)^2 + 1`.
pub fn base_case_bound(k: usize) -> usize {
    (k - 1) * (k - 1) + 1
}

fn orient(g: &BipartiteGraph) -> (BipartiteGraph, bool) {
    if g.a() > g.b() {
        (g.transpose(), true)
    } else {
        (*g, false)
    }
}

/// Replays the removal induction on `g`, which must be connected,
/// `P_{2k}`-free, and have both parts of size at least `k >= 3`.
pub fn build_certificate(g: &BipartiteGraph, k: usize) -> Result<Certificate> {
    let (oriented, swapped) = orient(g);
    let (a, b) = (oriented.a(), oriented.b());
    if k < 3 || a < k {
        return Err(Error::HypothesisViolated(format!(
            "certificates need b >= a >= k >= 3 (got a = {a}, b = {b}, k = {k})"
        )));
    }
    if !oriented.is_connected() {
        return Err(Error::HypothesisViolated("graph is not connected".into()));
    }
    if !is_free(&oriented, &Pattern::Path { m: 2 * k })? {
        return Err(Error::HypothesisViolated(format!("graph contains a path on {} vertices", 2 * k)));
    }

    let mut cur = oriented;
    let mut names_a: Vec<usize> = (0..a).collect();
    let mut names_b: Vec<usize> = (0..b).collect();
    let mut steps = Vec::with_capacity(b - k + 1);

    while cur.b() > cur.a() {
        let x = find_removable_vertex(&cur, k)?;
        debug_assert_eq!(x.part, Part::B);
        steps.push(CertStep::RemoveOne {
            victim: VertexRef::b(names_b[x.index]),
            degree_at_removal: cur.degree(x)?,
        });
        names_b.remove(x.index);
        cur = cur.delete_vertices(&[x])?.graph;
    }
    while cur.a() > k {
        let (x, y) = find_removable_pair(&cur, k)?;
        steps.push(CertStep::RemoveTwo {
            victims: (VertexRef::a(names_a[x.index]), VertexRef::b(names_b[y.index])),
            degree_sum: cur.degree(x)? + cur.degree(y)?,
        });
        names_a.remove(x.index);
        names_b.remove(y.index);
        cur = cur.delete_vertices(&[x, y])?.graph;
    }
    let edges = cur.edge_count();
    let bound = base_case_bound(k);
    if edges > bound {
        return Err(Error::BaseCaseViolated { edges, bound });
    }
    steps.push(CertStep::BaseCase { k, edges });

    Ok(Certificate { k, a, b, swapped, steps, claimed_bound: path_bound(a, b, k) })
}

/// Sum of step budgets after a structural check of the step sequence.
pub fn bound_from_certificate(cert: &Certificate) -> Result<usize> {
    let (a, b, k) = (cert.a, cert.b, cert.k);
    let malformed = |why: String| Err(Error::MalformedCertificate(why));
    if k < 3 || a < k || b < a {
        return malformed(format!("sizes a = {a}, b = {b}, k = {k} need b >= a >= k >= 3"));
    }
    let ones = b - a;
    let twos = a - k;
    if cert.steps.len() != ones + twos + 1 {
        return malformed(format!("expected {} steps, found {}", ones + twos + 1, cert.steps.len()));
    }
    for (i, step) in cert.steps.iter().enumerate() {
        let fits = match step {
            CertStep::RemoveOne { .. } => i < ones,
            CertStep::RemoveTwo { .. } => (ones..ones + twos).contains(&i),
            CertStep::BaseCase { k: kb, .. } => i == ones + twos && *kb == k,
        };
        if !fits {
            return malformed(format!("step {} is out of order", i + 1));
        }
    }
    Ok(cert.steps.iter().map(|s| s.budget(k)).sum())
}

/// Why a certificate was rejected; `step` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub step: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(s) => write!(f, "{} at step {s}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

fn reject<T>(step: Option<usize>, reason: impl Into<String>) -> core::result::Result<T, Rejection> {
    Err(Rejection { step, reason: reason.into() })
}

/// Replays `cert` against `g` from scratch, rechecking every recorded degree,
/// budget, connectivity and size condition, the final edge count, the bound
/// formula, and finally `|E(g)| <= claimed_bound`.
pub fn verify_certificate(g: &BipartiteGraph, k: usize, cert: &Certificate) -> core::result::Result<(), Rejection> {
    if cert.k != k {
        return reject(None, format!("certificate is for k = {}, not {k}", cert.k));
    }
    if k < 3 {
        return reject(None, "k must be at least 3");
    }
    if cert.swapped != (g.a() > g.b()) {
        return reject(None, "swap flag does not match the part sizes");
    }
    let (h, _) = orient(g);
    if (h.a(), h.b()) != (cert.a, cert.b) {
        return reject(None, format!("certificate sizes {}x{} differ from graph {}x{}", cert.a, cert.b, h.a(), h.b()));
    }
    if cert.a < k {
        return reject(None, "smaller part is below k");
    }
    if !h.is_connected() {
        return reject(None, "graph is not connected");
    }

    let mut alive = h.all_mask();
    let (mut a, mut b) = (cert.a, cert.b);
    let degree = |v: VertexRef, alive: u64| (h.neighbors_mask(h.id(v)) & alive).count_ones() as usize;
    let live = |v: VertexRef, alive: u64| v.index < h.part_size(v.part) && alive >> h.id(v) & 1 == 1;
    let mut finished = false;

    for (i, step) in cert.steps.iter().enumerate() {
        let s = Some(i + 1);
        if finished {
            return reject(s, "step after the base case");
        }
        match step {
            CertStep::RemoveOne { victim, degree_at_removal } => {
                if b <= a {
                    return reject(s, "single removal on balanced parts");
                }
                if victim.part != Part::B || !live(*victim, alive) {
                    return reject(s, format!("{victim} is not a live vertex of the larger part"));
                }
                if *degree_at_removal > k - 2 {
                    return reject(s, "budget violated");
                }
                if degree(*victim, alive) != *degree_at_removal {
                    return reject(s, "recorded degree does not match");
                }
                alive &= !(1u64 << h.id(*victim));
                b -= 1;
            }
            CertStep::RemoveTwo { victims: (x, y), degree_sum } => {
                if a != b || a <= k {
                    return reject(s, "pair removal needs balanced parts larger than k");
                }
                if x.part != Part::A || y.part != Part::B || !live(*x, alive) || !live(*y, alive) {
                    return reject(s, format!("{x}, {y} is not a live cross pair"));
                }
                if *degree_sum > k - 1 {
                    return reject(s, "budget violated");
                }
                if degree(*x, alive) + degree(*y, alive) != *degree_sum {
                    return reject(s, "recorded degree sum does not match");
                }
                alive &= !(1u64 << h.id(*x) | 1u64 << h.id(*y));
                a -= 1;
                b -= 1;
            }
            CertStep::BaseCase { k: kb, edges } => {
                if *kb != k || a != k || b != k {
                    return reject(s, format!("base case reached at {a}x{b}, expected {k}x{k}"));
                }
                let actual: usize = (0..h.a())
                    .filter(|&i| alive >> i & 1 == 1)
                    .map(|i| (h.neighbors_mask(i) & alive).count_ones() as usize)
                    .sum();
                if actual != *edges {
                    return reject(s, format!("base case has {actual} edges, recorded {edges}"));
                }
                if *edges > base_case_bound(k) {
                    return reject(s, "base case bound violated");
                }
                finished = true;
            }
        }
        if !h.is_connected_within(alive) {
            return reject(s, "graph disconnected");
        }
    }
    if !finished {
        return reject(None, "missing base case");
    }
    let formula = path_bound(cert.a, cert.b, k);
    if cert.claimed_bound != formula {
        return reject(None, format!("claimed bound {} differs from {formula}", cert.claimed_bound));
    }
    match bound_from_certificate(cert) {
        Ok(sum) if sum == cert.claimed_bound => {}
        Ok(sum) => return reject(None, format!("budgets sum to {sum}, not {}", cert.claimed_bound)),
        Err(e) => return reject(None, format!("{e}")),
    }
    if h.edge_count() > cert.claimed_bound {
        return reject(None, format!("graph has {} edges, above the bound", h.edge_count()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{complete_bipartite, path_extremal};
    use alloc::string::ToString;
    use alloc::vec;

    fn double_star() -> BipartiteGraph {
        BipartiteGraph::from_edges(3, 3, &[(0, 0), (2, 0), (1, 0), (1, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn path_extremal_certificate() {
        let g = path_extremal(3, 4, 3).unwrap();
        let cert = build_certificate(&g, 3).unwrap();
        assert_eq!(
            cert.steps,
            vec![
                CertStep::RemoveOne { victim: VertexRef::b(0), degree_at_removal: 1 },
                CertStep::BaseCase { k: 3, edges: 5 },
            ]
        );
        assert_eq!(cert.claimed_bound, 6);
        assert_eq!(verify_certificate(&g, 3, &cert), Ok(()));
        assert_eq!(bound_from_certificate(&cert).unwrap(), 6);
    }

    #[test]
    fn base_case_only() {
        let g = path_extremal(4, 4, 4).unwrap();
        let cert = build_certificate(&g, 4).unwrap();
        assert_eq!(cert.steps, vec![CertStep::BaseCase { k: 4, edges: 10 }]);
        assert_eq!(cert.claimed_bound, 10);

        let ds = double_star();
        let cert = build_certificate(&ds, 3).unwrap();
        assert_eq!(cert.steps, vec![CertStep::BaseCase { k: 3, edges: 5 }]);
        assert_eq!(verify_certificate(&ds, 3, &cert), Ok(()));
    }

    #[test]
    fn pair_steps_and_swaps() {
        // (5,5,4) uses one pair removal
        let g = path_extremal(5, 5, 4).unwrap();
        let cert = build_certificate(&g, 4).unwrap();
        assert_eq!(cert.steps.len(), 2);
        assert!(matches!(cert.steps[0], CertStep::RemoveTwo { .. }));
        assert_eq!(bound_from_certificate(&cert).unwrap(), 13);
        assert_eq!(verify_certificate(&g, 4, &cert), Ok(()));

        // a > b gets oriented first
        let t = path_extremal(3, 5, 3).unwrap().transpose();
        let cert = build_certificate(&t, 3).unwrap();
        assert!(cert.swapped);
        assert_eq!((cert.a, cert.b), (3, 5));
        assert_eq!(verify_certificate(&t, 3, &cert), Ok(()));
    }

    #[test]
    fn bound_formula_values() {
        assert_eq!(path_bound(3, 4, 3), 6);
        assert_eq!(path_bound(5, 5, 4), 13);
        assert_eq!(path_bound(5, 5, 5), 17);
        assert_eq!(base_case_bound(5), 17);
        let cert = Certificate {
            k: 5,
            a: 5,
            b: 5,
            swapped: false,
            steps: vec![CertStep::BaseCase { k: 5, edges: 0 }],
            claimed_bound: 17,
        };
        assert_eq!(bound_from_certificate(&cert).unwrap(), 17);
        let mut bad = cert.clone();
        bad.steps.clear();
        assert!(matches!(bound_from_certificate(&bad), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn tampering_is_caught() {
        let g = path_extremal(3, 4, 3).unwrap();
        let mut cert = build_certificate(&g, 3).unwrap();
        cert.steps[0] = CertStep::RemoveOne { victim: VertexRef::b(0), degree_at_removal: 2 };
        let r = verify_certificate(&g, 3, &cert).unwrap_err();
        assert_eq!(r.to_string(), "budget violated at step 1");

        // replay against another graph of the same sizes: b0 now has degree 2
        let cert = build_certificate(&g, 3).unwrap();
        let mut other = g;
        other.add_edge(1, 0).unwrap();
        assert!(verify_certificate(&other, 3, &cert).is_err());

        // the wrong victim disconnects the graph: b3 carries the pendants
        let mut cert = build_certificate(&g, 3).unwrap();
        cert.steps[0] = CertStep::RemoveOne { victim: VertexRef::b(3), degree_at_removal: 1 };
        assert!(verify_certificate(&g, 3, &cert).is_err());
    }

    #[test]
    fn build_rejects_bad_inputs() {
        let k34 = complete_bipartite(3, 4).unwrap();
        assert!(matches!(build_certificate(&k34, 3), Err(Error::HypothesisViolated(_))));
        let small = complete_bipartite(2, 4).unwrap();
        assert!(matches!(build_certificate(&small, 3), Err(Error::HypothesisViolated(_))));
    }
}
