//! Constructive lemmas behind the path bound, and checkers for the two broom
//! lemmas.
//!
//! Each removal lemma comes in two forms. The declarative finder scans for the
//! first vertex (or pair) satisfying the lemma's conclusion. The constructive
//! finder replays the existence argument: a depth-first tree, a leaf in the
//! requested part, and the fallback choice when that leaf has too high a
//! degree. The constructive output is always re-checked against the
//! declarative predicate; a failure there, or an empty declarative scan on a
//! graph meeting the hypotheses, is reported as [`Error::LemmaFalsified`].

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{bits, BipartiteGraph, Part, VertexRef};
use crate::pattern::{is_free, longest_path_from, PathFinder, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Lemma {
    /// A vertex that starts no path on `2k` vertices caps the edges at `(k-1)(a+b)`.
    Endpoint,
    /// Dense broom-free graphs have maximum degree at most `k + d - 1`.
    Degree,
    /// Some vertex of the larger part has degree `<= k-2` and is not a cut vertex.
    RemovableVertex,
    /// Balanced graphs have a cross pair with degree sum `<= k-1` whose removal keeps connectivity.
    RemovablePair,
    /// A rooted tree meeting the part-count condition has a leaf in the requested part.
    LeafInPart,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lemma::Endpoint => "endpoint",
            Lemma::Degree => "degree",
            Lemma::RemovableVertex => "removable-vertex",
            Lemma::RemovablePair => "removable-pair",
            Lemma::LeafInPart => "leaf-in-part",
        })
    }
}

fn falsified(lemma: Lemma, k: usize, g: &BipartiteGraph) -> Error {
    Error::LemmaFalsified { lemma, k, graph: Box::new(*g) }
}

// ---------------------------------------------------------------------------
// DFS trees
// ---------------------------------------------------------------------------

/// Rooted spanning tree produced by depth-first search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedSpanningTree {
    a: usize,
    root: VertexRef,
    parent: Vec<Option<VertexRef>>,
    visit_order: Vec<VertexRef>,
}

impl RootedSpanningTree {
    fn id(&self, v: VertexRef) -> usize {
        match v.part {
            Part::A => v.index,
            Part::B => self.a + v.index,
        }
    }

    pub fn root(&self) -> VertexRef {
        self.root
    }

    pub fn parent(&self, v: VertexRef) -> Option<VertexRef> {
        self.parent.get(self.id(v)).copied().flatten()
    }

    pub fn visit_order(&self) -> &[VertexRef] {
        &self.visit_order
    }

    /// Children in ascending `(part, index)` order.
    pub fn children(&self, v: VertexRef) -> Vec<VertexRef> {
        let mut out: Vec<VertexRef> = self
            .visit_order
            .iter()
            .copied()
            .filter(|&w| self.parent(w) == Some(v))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_leaf(&self, v: VertexRef) -> bool {
        !self.parent.contains(&Some(v))
    }

    pub fn leaves(&self) -> Vec<VertexRef> {
        let mut has_child = vec![false; self.parent.len()];
        for p in self.parent.iter().flatten() {
            has_child[self.id(*p)] = true;
        }
        let mut out: Vec<VertexRef> = self
            .visit_order
            .iter()
            .copied()
            .filter(|&v| !has_child[self.id(v)])
            .collect();
        out.sort_unstable();
        out
    }

    /// Tree path from the root to `v`, root first.
    pub fn root_path(&self, v: VertexRef) -> Vec<VertexRef> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Spanning, acyclic, and every tree edge is a graph edge.
    pub fn is_spanning_tree_of(&self, g: &BipartiteGraph) -> bool {
        let n = g.vertex_count();
        if self.visit_order.len() != n || self.parent.len() != n || self.parent(self.root).is_some() {
            return false;
        }
        let mut seen = 0u64;
        for (pos, &v) in self.visit_order.iter().enumerate() {
            let id = g.id(v);
            if seen >> id & 1 == 1 {
                return false;
            }
            seen |= 1 << id;
            match self.parent(v) {
                None if v == self.root => {}
                None => return false,
                Some(p) => {
                    // parents are visited first, which rules out cycles
                    if !self.visit_order[..pos].contains(&p) || g.neighbors_mask(g.id(p)) >> id & 1 == 0 {
                        return false;
                    }
                }
            }
        }
        seen == g.all_mask()
    }

    /// Every graph neighbour of a leaf lies on that leaf's root path.
    pub fn has_leaf_ancestry_property(&self, g: &BipartiteGraph) -> bool {
        self.leaves().into_iter().all(|x| {
            let path = self.root_path(x);
            g.neighbors(x).all(|w| path.contains(&w))
        })
    }
}

/// Depth-first spanning tree of a connected graph rooted at `root`.
///
/// With a seed path, the path is visited first in the given order, so it is a
/// root path of the tree; the search then continues from the deepest seed
/// vertex. Unvisited neighbours are taken in ascending `(part, index)` order.
pub fn dfs_tree(g: &BipartiteGraph, root: VertexRef, seed_path: Option<&[VertexRef]>) -> Result<RootedSpanningTree> {
    g.degree(root)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    let mut visited = 0u64;

    let seed: &[VertexRef] = match seed_path {
        Some(path) => path,
        None => core::slice::from_ref(&root),
    };
    if seed.first() != Some(&root) {
        return Err(Error::InvalidSeedPath("seed path must start at the root".into()));
    }
    let mut prev: Option<usize> = None;
    for &v in seed {
        if v.index >= g.part_size(v.part) {
            return Err(Error::InvalidSeedPath(format!("{v} is out of range")));
        }
        let id = g.id(v);
        if visited >> id & 1 == 1 {
            return Err(Error::InvalidSeedPath(format!("{v} repeats")));
        }
        if let Some(p) = prev {
            if g.neighbors_mask(p) >> id & 1 == 0 {
                return Err(Error::InvalidSeedPath(format!("{} and {v} are not adjacent", g.vertex(p))));
            }
            parent[id] = Some(g.vertex(p));
        }
        visited |= 1 << id;
        order.push(v);
        stack.push(id);
        prev = Some(id);
    }

    while let Some(&top) = stack.last() {
        let fresh = g.neighbors_mask(top) & !visited;
        if fresh == 0 {
            stack.pop();
            continue;
        }
        let w = fresh.trailing_zeros() as usize;
        visited |= 1 << w;
        parent[w] = Some(g.vertex(top));
        order.push(g.vertex(w));
        stack.push(w);
    }

    Ok(RootedSpanningTree { a: g.a(), root, parent, visit_order: order })
}

/// A leaf of `t` inside part `which`, found by descending into a child subtree
/// whose part counts keep the leaf guarantee alive.
///
/// Needs the root outside `which` with `|other| <= |which|`, or the root in
/// `which` with `|other| < |which|`.
pub fn leaf_in_part(t: &RootedSpanningTree, g: &BipartiteGraph, which: Part) -> Result<VertexRef> {
    let target = g.part_size(which);
    let other = g.part_size(which.other());
    let ok = if t.root.part == which { other < target } else { other <= target };
    if !ok {
        return Err(Error::HypothesisViolated(format!(
            "root {} with |{}| = {other} and |{which}| = {target} does not guarantee a leaf in {which}",
            t.root,
            which.other()
        )));
    }

    // (other-part count, target-part count) per subtree, children before parents
    let mut counts = vec![(0usize, 0usize); g.vertex_count()];
    for &v in t.visit_order.iter().rev() {
        let id = g.id(v);
        if v.part == which {
            counts[id].1 += 1;
        } else {
            counts[id].0 += 1;
        }
        if let Some(p) = t.parent(v) {
            let (o, tg) = counts[id];
            let pid = g.id(p);
            counts[pid].0 += o;
            counts[pid].1 += tg;
        }
    }

    let mut cur = t.root;
    loop {
        let children = t.children(cur);
        if children.is_empty() {
            return if cur.part == which { Ok(cur) } else { Err(falsified(Lemma::LeafInPart, 0, g)) };
        }
        let next = children.into_iter().find(|c| {
            let (o, tg) = counts[g.id(*c)];
            if cur.part == which {
                o <= tg
            } else {
                o < tg
            }
        });
        cur = next.ok_or_else(|| falsified(Lemma::LeafInPart, 0, g))?;
    }
}

// ---------------------------------------------------------------------------
// Removal lemmas
// ---------------------------------------------------------------------------

/// `None` when the removal hypotheses hold, otherwise the reason they fail.
fn removal_hypotheses(g: &BipartiteGraph, k: usize, balanced: bool) -> Result<Option<String>> {
    if k < 3 {
        return Ok(Some(format!("k = {k} is below 3")));
    }
    if balanced && g.a() != g.b() {
        return Ok(Some(format!("graph is not balanced ({}x{})", g.a(), g.b())));
    }
    if g.a().min(g.b()) < k {
        return Ok(Some(format!("smaller part has {} < k = {k} vertices", g.a().min(g.b()))));
    }
    if !g.is_connected() {
        return Ok(Some("graph is not connected".into()));
    }
    if !is_free(g, &Pattern::Path { m: 2 * k })? {
        return Ok(Some(format!("graph contains a path on {} vertices", 2 * k)));
    }
    Ok(None)
}

fn require(reason: Option<String>) -> Result<()> {
    match reason {
        None => Ok(()),
        Some(r) => Err(Error::HypothesisViolated(r)),
    }
}

/// The part the removable vertex is taken from: `B` unless `A` is strictly larger.
pub fn larger_part(g: &BipartiteGraph) -> Part {
    if g.a() > g.b() {
        Part::A
    } else {
        Part::B
    }
}

fn survives_without(g: &BipartiteGraph, victims: &[VertexRef]) -> bool {
    let mut alive = g.all_mask();
    for v in victims {
        alive &= !(1u64 << g.id(*v));
    }
    g.is_connected_within(alive)
}

/// Whether `x` has degree at most `k - 2` and `G - x` stays connected.
pub fn is_removable_vertex(g: &BipartiteGraph, k: usize, x: VertexRef) -> bool {
    x.index < g.part_size(x.part) && g.degree_unchecked(x) + 2 <= k && survives_without(g, &[x])
}

/// Whether `x, y` sit in different parts, `d(x) + d(y) <= k - 1`, and
/// removing both keeps the graph connected.
pub fn is_removable_pair(g: &BipartiteGraph, k: usize, x: VertexRef, y: VertexRef) -> bool {
    x.part != y.part
        && x.index < g.part_size(x.part)
        && y.index < g.part_size(y.part)
        && g.degree_unchecked(x) + g.degree_unchecked(y) < k
        && survives_without(g, &[x, y])
}

/// First vertex of the larger part (by index) with degree `<= k - 2` whose
/// removal keeps the graph connected.
pub fn find_removable_vertex(g: &BipartiteGraph, k: usize) -> Result<VertexRef> {
    require(removal_hypotheses(g, k, false)?)?;
    let part = larger_part(g);
    (0..g.part_size(part))
        .map(|i| VertexRef::new(part, i))
        .find(|&x| is_removable_vertex(g, k, x))
        .ok_or_else(|| falsified(Lemma::RemovableVertex, k, g))
}

/// Removable vertex built from a DFS tree rooted at the first vertex of the
/// smaller part: a leaf in the larger part if its degree is small enough,
/// otherwise the first larger-part vertex off that leaf's root path.
pub fn find_removable_vertex_constructive(g: &BipartiteGraph, k: usize) -> Result<VertexRef> {
    require(removal_hypotheses(g, k, false)?)?;
    let large = larger_part(g);
    let tree = dfs_tree(g, VertexRef::new(large.other(), 0), None)?;
    let leaf = leaf_in_part(&tree, g, large)?;
    let choice = if g.degree_unchecked(leaf) + 2 <= k {
        Some(leaf)
    } else {
        // the leaf closes a cycle through the whole root path
        let path = tree.root_path(leaf);
        (0..g.part_size(large))
            .map(|i| VertexRef::new(large, i))
            .find(|v| !path.contains(v))
    };
    match choice {
        Some(x) if is_removable_vertex(g, k, x) => Ok(x),
        _ => Err(falsified(Lemma::RemovableVertex, k, g)),
    }
}

/// First cross pair `((A,i), (B,j))` in lexicographic order that can be
/// removed from a balanced graph.
pub fn find_removable_pair(g: &BipartiteGraph, k: usize) -> Result<(VertexRef, VertexRef)> {
    require(removal_hypotheses(g, k, true)?)?;
    let n = g.a();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (VertexRef::a(i), VertexRef::b(j));
            if is_removable_pair(g, k, x, y) {
                return Ok((x, y));
            }
        }
    }
    Err(falsified(Lemma::RemovablePair, k, g))
}

/// Removable pair built from a longest path `u_1 .. u_p`: its endpoints when
/// they lie in different parts, otherwise `u_1` together with a leaf in the
/// other part of a DFS tree that first walks the whole path.
pub fn find_removable_pair_constructive(g: &BipartiteGraph, k: usize) -> Result<(VertexRef, VertexRef)> {
    require(removal_hypotheses(g, k, true)?)?;
    let path = PathFinder::new(g).longest_path(None)?;
    let (first, last) = match (path.first(), path.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => return Err(falsified(Lemma::RemovablePair, k, g)),
    };
    let (x, y) = if first.part != last.part {
        (first, last)
    } else {
        let tree = dfs_tree(g, first, Some(&path))?;
        let leaf = leaf_in_part(&tree, g, first.part.other())?;
        (first, leaf)
    };
    let (x, y) = if x.part == Part::A { (x, y) } else { (y, x) };
    if is_removable_pair(g, k, x, y) {
        Ok((x, y))
    } else {
        Err(falsified(Lemma::RemovablePair, k, g))
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaWitness {
    pub vertices: Vec<VertexRef>,
    pub degrees: Vec<usize>,
    pub edge_count: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub k: usize,
    pub d: Option<usize>,
    pub hypotheses_met: bool,
    /// Reported as `true` (vacuously) whenever the hypotheses fail.
    pub conclusion_holds: bool,
    pub reason: Option<String>,
    pub witness: Option<LemmaWitness>,
}

impl LemmaReport {
    fn vacuous(lemma: Lemma, k: usize, d: Option<usize>, reason: String) -> Self {
        LemmaReport {
            lemma,
            k,
            d,
            hypotheses_met: false,
            conclusion_holds: true,
            reason: Some(reason),
            witness: None,
        }
    }
}

/// If some vertex starts no path on `2k` vertices, the graph has at most
/// `(k-1)(a+b)` edges.
pub fn check_endpoint_lemma(g: &BipartiteGraph, k: usize) -> Result<LemmaReport> {
    if k < 1 {
        return Err(Error::HypothesisViolated("endpoint lemma needs k >= 1".into()));
    }
    if !g.is_connected() {
        return Ok(LemmaReport::vacuous(Lemma::Endpoint, k, None, "graph is not connected".into()));
    }
    let want = 2 * k;
    let mut starters = Vec::new();
    for v in g.vertices() {
        if longest_path_from(g, v, Some(want))? < want {
            starters.push(v);
        }
    }
    if starters.is_empty() {
        return Ok(LemmaReport::vacuous(
            Lemma::Endpoint,
            k,
            None,
            format!("every vertex starts a path on {want} vertices"),
        ));
    }
    let edges = g.edge_count();
    let bound = (k - 1) * (g.a() + g.b());
    Ok(LemmaReport {
        lemma: Lemma::Endpoint,
        k,
        d: None,
        hypotheses_met: true,
        conclusion_holds: edges <= bound,
        reason: None,
        witness: Some(LemmaWitness { vertices: starters, degrees: Vec::new(), edge_count: edges, bound }),
    })
}

/// A connected `Broom(2k+1, d)`-free graph with both parts at least `k` and at
/// least `k(a+b) + 1` edges has maximum degree at most `k + d - 1`.
pub fn check_degree_lemma(g: &BipartiteGraph, k: usize, d: usize) -> Result<LemmaReport> {
    if k < 1 || d < 1 {
        return Err(Error::HypothesisViolated("degree lemma needs k, d >= 1".into()));
    }
    let vacuous = |reason: String| Ok(LemmaReport::vacuous(Lemma::Degree, k, Some(d), reason));
    let edges = g.edge_count();
    let need = k * (g.a() + g.b()) + 1;
    if !g.is_connected() {
        return vacuous("graph is not connected".into());
    }
    if g.a().min(g.b()) < k {
        return vacuous(format!("smaller part has fewer than k = {k} vertices"));
    }
    if edges < need {
        return vacuous(format!("{edges} edges, fewer than {need}"));
    }
    let broom = Pattern::Broom { p: 2 * k + 1, d };
    if !is_free(g, &broom)? {
        return vacuous(format!("graph contains {broom}"));
    }
    let bound = k + d - 1;
    let offenders: Vec<VertexRef> = g.vertices().filter(|&v| g.degree_unchecked(v) > bound).collect();
    let degrees = offenders.iter().map(|&v| g.degree_unchecked(v)).collect();
    Ok(LemmaReport {
        lemma: Lemma::Degree,
        k,
        d: Some(d),
        hypotheses_met: true,
        conclusion_holds: offenders.is_empty(),
        reason: None,
        witness: Some(LemmaWitness { vertices: offenders, degrees, edge_count: g.max_degree(), bound }),
    })
}

fn removal_report(
    g: &BipartiteGraph,
    k: usize,
    lemma: Lemma,
    balanced: bool,
    run: impl Fn() -> Result<Vec<VertexRef>>,
) -> Result<LemmaReport> {
    if let Some(reason) = removal_hypotheses(g, k, balanced)? {
        return Ok(LemmaReport::vacuous(lemma, k, None, reason));
    }
    let bound = if balanced { k - 1 } else { k - 2 };
    match run() {
        Ok(vertices) => {
            let degrees = vertices.iter().map(|&v| g.degree_unchecked(v)).collect();
            Ok(LemmaReport {
                lemma,
                k,
                d: None,
                hypotheses_met: true,
                conclusion_holds: true,
                reason: None,
                witness: Some(LemmaWitness { vertices, degrees, edge_count: g.edge_count(), bound }),
            })
        }
        Err(Error::LemmaFalsified { .. }) => Ok(LemmaReport {
            lemma,
            k,
            d: None,
            hypotheses_met: true,
            conclusion_holds: false,
            reason: Some("no vertex set satisfies the conclusion".into()),
            witness: Some(LemmaWitness { edge_count: g.edge_count(), bound, ..Default::default() }),
        }),
        Err(e) => Err(e),
    }
}

/// Runs both removable-vertex finders. The witness lists the declarative
/// choice followed by the constructive one.
pub fn check_removable_vertex_lemma(g: &BipartiteGraph, k: usize) -> Result<LemmaReport> {
    removal_report(g, k, Lemma::RemovableVertex, false, || {
        Ok(vec![find_removable_vertex(g, k)?, find_removable_vertex_constructive(g, k)?])
    })
}

/// Runs both removable-pair finders; the witness holds both pairs in order.
pub fn check_removable_pair_lemma(g: &BipartiteGraph, k: usize) -> Result<LemmaReport> {
    removal_report(g, k, Lemma::RemovablePair, true, || {
        let (x, y) = find_removable_pair(g, k)?;
        let (u, v) = find_removable_pair_constructive(g, k)?;
        Ok(vec![x, y, u, v])
    })
}

/// Vertices whose removal keeps `g` connected; handy for assertions.
pub fn non_cut_vertices(g: &BipartiteGraph) -> Vec<VertexRef> {
    bits(g.all_mask())
        .filter(|&id| g.is_connected_within(g.all_mask() & !(1u64 << id)))
        .map(|id| g.vertex(id))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{broom_circulant, complete_bipartite, path_extremal};

    pub(crate) fn double_star() -> BipartiteGraph {
        BipartiteGraph::from_edges(3, 3, &[(0, 0), (2, 0), (1, 0), (1, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn dfs_tree_on_cycle_is_a_hamiltonian_path() {
        let c6 = broom_circulant(3, 2).unwrap();
        for root in c6.vertices() {
            let t = dfs_tree(&c6, root, None).unwrap();
            assert!(t.is_spanning_tree_of(&c6));
            let leaves = t.leaves();
            assert_eq!(leaves.len(), 1);
            let path = t.root_path(leaves[0]);
            assert_eq!(path.len(), 6);
            assert!(c6.neighbors(leaves[0]).any(|w| w == root));
            assert!(t.has_leaf_ancestry_property(&c6));
        }
    }

    #[test]
    fn dfs_tree_on_star() {
        let star = complete_bipartite(1, 3).unwrap();
        let t = dfs_tree(&star, VertexRef::a(0), None).unwrap();
        assert_eq!(t.leaves(), vec![VertexRef::b(0), VertexRef::b(1), VertexRef::b(2)]);
    }

    #[test]
    fn dfs_tree_pendants_are_leaves() {
        let g = path_extremal(3, 4, 3).unwrap();
        let t = dfs_tree(&g, VertexRef::a(0), None).unwrap();
        let leaves = t.leaves();
        assert!(leaves.contains(&VertexRef::a(1)));
        assert!(leaves.contains(&VertexRef::a(2)));
        assert!(t.has_leaf_ancestry_property(&g));
    }

    #[test]
    fn dfs_tree_with_seed() {
        let c6 = broom_circulant(3, 2).unwrap();
        // a0 - b1 - a1 is a path: (A,0)-(B,1) since 0+1, (A,1)-(B,1)
        let seed = [VertexRef::a(0), VertexRef::b(1), VertexRef::a(1)];
        let t = dfs_tree(&c6, seed[0], Some(&seed)).unwrap();
        assert_eq!(&t.visit_order()[..3], &seed);
        assert_eq!(t.parent(seed[2]), Some(seed[1]));
        assert!(t.has_leaf_ancestry_property(&c6));

        let bad = [VertexRef::a(0), VertexRef::a(1)];
        assert!(matches!(dfs_tree(&c6, bad[0], Some(&bad)), Err(Error::InvalidSeedPath(_))));
        let wrong_root = [VertexRef::b(1), VertexRef::a(0)];
        assert!(matches!(dfs_tree(&c6, VertexRef::a(0), Some(&wrong_root)), Err(Error::InvalidSeedPath(_))));
        let disconnected = BipartiteGraph::new(2, 2).unwrap();
        assert_eq!(dfs_tree(&disconnected, VertexRef::a(0), None), Err(Error::NotConnected));
    }

    #[test]
    fn leaf_in_part_examples() {
        let p4 = BipartiteGraph::from_edges(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap();
        let t = dfs_tree(&p4, VertexRef::a(0), None).unwrap();
        assert_eq!(leaf_in_part(&t, &p4, Part::B).unwrap(), VertexRef::b(1));

        let star = complete_bipartite(1, 3).unwrap();
        let t = dfs_tree(&star, VertexRef::a(0), None).unwrap();
        assert_eq!(leaf_in_part(&t, &star, Part::B).unwrap().part, Part::B);

        let g = path_extremal(3, 4, 3).unwrap();
        let t = dfs_tree(&g, VertexRef::a(0), None).unwrap();
        let leaf = leaf_in_part(&t, &g, Part::B).unwrap();
        assert_eq!(leaf.part, Part::B);
        assert!(t.is_leaf(leaf));

        // root in B of a balanced graph: no guarantee
        let t = dfs_tree(&p4, VertexRef::b(0), None).unwrap();
        assert!(matches!(leaf_in_part(&t, &p4, Part::B), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn removable_vertex_examples() {
        let g = path_extremal(3, 4, 3).unwrap();
        assert_eq!(find_removable_vertex(&g, 3).unwrap(), VertexRef::b(0));
        let c = find_removable_vertex_constructive(&g, 3).unwrap();
        assert!(is_removable_vertex(&g, 3, c));

        let k34 = complete_bipartite(3, 4).unwrap();
        assert!(matches!(find_removable_vertex(&k34, 3), Err(Error::HypothesisViolated(_))));

        let g = path_extremal(4, 5, 4).unwrap();
        let x = find_removable_vertex(&g, 4).unwrap();
        assert_eq!(x.part, Part::B);
        assert!(g.degree(x).unwrap() <= 2);
        assert!(is_removable_vertex(&g, 4, find_removable_vertex_constructive(&g, 4).unwrap()));
    }

    #[test]
    fn constructive_vertex_returns_the_low_degree_leaf() {
        // a tree: a0 joined to b0..b3, a1 and a2 hang off b3. Leaves in B have degree 1.
        let g = path_extremal(3, 4, 3).unwrap();
        let t = dfs_tree(&g, VertexRef::a(0), None).unwrap();
        let leaf = leaf_in_part(&t, &g, Part::B).unwrap();
        assert_eq!(g.degree(leaf).unwrap(), 1);
        assert_eq!(find_removable_vertex_constructive(&g, 3).unwrap(), leaf);
    }

    #[test]
    fn removable_pair_examples() {
        let ds = double_star();
        assert_eq!(find_removable_pair(&ds, 3).unwrap(), (VertexRef::a(0), VertexRef::b(1)));
        let (x, y) = find_removable_pair_constructive(&ds, 3).unwrap();
        assert!(is_removable_pair(&ds, 3, x, y));

        let g = path_extremal(4, 4, 4).unwrap();
        let (x, y) = find_removable_pair(&g, 4).unwrap();
        assert!(g.degree(x).unwrap() + g.degree(y).unwrap() <= 3);
        assert_eq!(g.degree(x).unwrap(), 1, "a pendant A-vertex comes first");

        let c6 = broom_circulant(3, 2).unwrap();
        assert!(matches!(find_removable_pair(&c6, 3), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn removable_pair_takes_opposite_endpoints() {
        // longest paths here have 4 vertices, so their ends lie in different parts
        let g = path_extremal(3, 3, 3).unwrap();
        let path = PathFinder::new(&g).longest_path(None).unwrap();
        assert_eq!(path.len(), 4);
        let (first, last) = (path[0], path[3]);
        assert_ne!(first.part, last.part);
        let expected = if first.part == Part::A { (first, last) } else { (last, first) };
        assert_eq!(find_removable_pair_constructive(&g, 3).unwrap(), expected);
    }

    #[test]
    fn endpoint_lemma_examples() {
        let star = complete_bipartite(1, 3).unwrap();
        let r = check_endpoint_lemma(&star, 2).unwrap();
        assert!(r.hypotheses_met && r.conclusion_holds);
        assert_eq!(r.witness.as_ref().unwrap().vertices.len(), 4);

        let c8 = broom_circulant(4, 2).unwrap();
        let r = check_endpoint_lemma(&c8, 2).unwrap();
        assert!(!r.hypotheses_met && r.conclusion_holds);

        let g = path_extremal(3, 5, 3).unwrap();
        let r = check_endpoint_lemma(&g, 3).unwrap();
        assert!(r.hypotheses_met && r.conclusion_holds);
        let w = r.witness.unwrap();
        assert_eq!((w.edge_count, w.bound), (7, 16));
    }

    #[test]
    fn degree_lemma_examples() {
        let g = broom_circulant(13, 5).unwrap();
        let r = check_degree_lemma(&g, 2, 5).unwrap();
        assert!(r.hypotheses_met && r.conclusion_holds);

        let c6 = broom_circulant(3, 2).unwrap();
        let r = check_degree_lemma(&c6, 2, 2).unwrap();
        assert!(!r.hypotheses_met && r.conclusion_holds);

        let k33 = complete_bipartite(3, 3).unwrap();
        let r = check_degree_lemma(&k33, 1, 2).unwrap();
        assert!(!r.hypotheses_met);
        assert!(r.reason.unwrap().contains("broom:3:2"));
    }

    #[test]
    fn removal_reports() {
        let r = check_removable_vertex_lemma(&path_extremal(3, 4, 3).unwrap(), 3).unwrap();
        assert!(r.hypotheses_met && r.conclusion_holds);
        assert_eq!(r.witness.unwrap().vertices.len(), 2);
        let r = check_removable_pair_lemma(&double_star(), 3).unwrap();
        assert!(r.hypotheses_met && r.conclusion_holds);
        let r = check_removable_pair_lemma(&path_extremal(3, 4, 3).unwrap(), 3).unwrap();
        assert!(!r.hypotheses_met);
    }
}
