//! Bipartite graphs with fixed-width bit-mask adjacency.
//!
//! A graph has two labelled parts `A` (size `a`) and `B` (size `b`). Edges only
//! ever join an `A`-vertex to a `B`-vertex, so bipartiteness holds by
//! construction. Row `i` is the set of `B`-indices adjacent to `(A, i)`; the
//! column masks are kept in sync so degrees on either side are a popcount.
//!
//! Algorithms that do not care about the parts work on *global ids*: `(A, i)`
//! is `i` and `(B, j)` is `a + j`. With both parts capped at [`MAX_PART`] every
//! neighbourhood fits in a `u64`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported part size.
pub const MAX_PART: usize = 32;

/// Default part-size guard for [`BipartiteGraph::canonical_key`].
pub const DEFAULT_KEY_GUARD: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    A,
    B,
}

impl Part {
    pub fn other(self) -> Part {
        match self {
            Part::A => Part::B,
            Part::B => Part::A,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::A => "A",
            Part::B => "B",
        })
    }
}

/// A vertex named by its part and its 0-based position within that part.
///
/// Ordering is `A < B`, then by index; this is the tie-break used by every
/// deterministic traversal in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub part: Part,
    pub index: usize,
}

impl VertexRef {
    pub const fn new(part: Part, index: usize) -> Self {
        VertexRef { part, index }
    }

    pub const fn a(index: usize) -> Self {
        VertexRef::new(Part::A, index)
    }

    pub const fn b(index: usize) -> Self {
        VertexRef::new(Part::B, index)
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.part, self.index)
    }
}

impl FromStr for VertexRef {
    type Err = Error;

    /// Parses `A:3` / `b:0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::HypothesisViolated(alloc::format!("bad vertex `{s}`, expected PART:INDEX"));
        let (part, index) = s.split_once(':').ok_or_else(bad)?;
        let part = match part.trim() {
            "A" | "a" => Part::A,
            "B" | "b" => Part::B,
            _ => return Err(bad()),
        };
        let index = index.trim().parse().map_err(|_| bad())?;
        Ok(VertexRef { part, index })
    }
}

#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    a: usize,
    b: usize,
    rows: [u32; MAX_PART],
    cols: [u32; MAX_PART],
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl BipartiteGraph {
    /// Empty graph on parts of sizes `a` and `b`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidSize { a, b });
        }
        if a > MAX_PART || b > MAX_PART {
            return Err(Error::CapacityExceeded { a, b, max: MAX_PART });
        }
        Ok(BipartiteGraph {
            a,
            b,
            rows: [0; MAX_PART],
            cols: [0; MAX_PART],
        })
    }

    /// Builds a graph from its row masks (bit `j` of `rows[i]` is the edge `(A,i)-(B,j)`).
    pub fn from_rows(a: usize, b: usize, rows: &[u32]) -> Result<Self> {
        let mut g = Self::new(a, b)?;
        if rows.len() != a {
            return Err(Error::HypothesisViolated(alloc::format!(
                "expected {a} rows, got {}",
                rows.len()
            )));
        }
        let allowed = low_bits(b) as u32;
        for (i, &row) in rows.iter().enumerate() {
            if row & !allowed != 0 {
                let j = (row & !allowed).trailing_zeros() as usize;
                return Err(Error::IndexOutOfRange { part: Part::B, index: j, size: b });
            }
            g.set_row(i, row);
        }
        Ok(g)
    }

    pub fn from_edges(a: usize, b: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(a, b)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn a(&self) -> usize {
        self.a
    }

    #[inline]
    pub fn b(&self) -> usize {
        self.b
    }

    #[inline]
    pub fn part_size(&self, part: Part) -> usize {
        match part {
            Part::A => self.a,
            Part::B => self.b,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.a + self.b
    }

    #[inline]
    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    #[inline]
    pub fn col(&self, j: usize) -> u32 {
        self.cols[j]
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.a]
    }

    fn check(&self, part: Part, index: usize) -> Result<()> {
        let size = self.part_size(part);
        if index >= size {
            Err(Error::IndexOutOfRange { part, index, size })
        } else {
            Ok(())
        }
    }

    /// Adds `(A,i)-(B,j)`. Returns whether the edge was new.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<bool> {
        self.check(Part::A, i)?;
        self.check(Part::B, j)?;
        let fresh = !self.has_edge_unchecked(i, j);
        self.set_edge(i, j);
        Ok(fresh)
    }

    /// Removes `(A,i)-(B,j)`. Returns whether the edge was present.
    pub fn remove_edge(&mut self, i: usize, j: usize) -> Result<bool> {
        self.check(Part::A, i)?;
        self.check(Part::B, j)?;
        let present = self.has_edge_unchecked(i, j);
        self.clear_edge(i, j);
        Ok(present)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> Result<bool> {
        self.check(Part::A, i)?;
        self.check(Part::B, j)?;
        Ok(self.has_edge_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn has_edge_unchecked(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
        self.cols[j] |= 1 << i;
    }

    #[inline]
    pub(crate) fn clear_edge(&mut self, i: usize, j: usize) {
        self.rows[i] &= !(1 << j);
        self.cols[j] &= !(1 << i);
    }

    pub(crate) fn set_row(&mut self, i: usize, row: u32) {
        for j in bits(self.rows[i] as u64) {
            self.cols[j] &= !(1 << i);
        }
        self.rows[i] = row;
        for j in bits(row as u64) {
            self.cols[j] |= 1 << i;
        }
    }

    /// Edges as `(A-index, B-index)` pairs in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.a).flat_map(move |i| bits(self.rows[i] as u64).map(move |j| (i, j)))
    }

    pub fn degree(&self, v: VertexRef) -> Result<usize> {
        self.check(v.part, v.index)?;
        Ok(self.degree_unchecked(v))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: VertexRef) -> usize {
        match v.part {
            Part::A => self.rows[v.index].count_ones() as usize,
            Part::B => self.cols[v.index].count_ones() as usize,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        let ra = self.rows[..self.a].iter().map(|r| r.count_ones());
        let cb = self.cols[..self.b].iter().map(|c| c.count_ones());
        ra.chain(cb).max().unwrap_or(0) as usize
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> {
        let (a, b) = (self.a, self.b);
        (0..a).map(VertexRef::a).chain((0..b).map(VertexRef::b))
    }

    // --- global ids -------------------------------------------------------

    #[inline]
    pub fn id(&self, v: VertexRef) -> usize {
        match v.part {
            Part::A => v.index,
            Part::B => self.a + v.index,
        }
    }

    #[inline]
    pub fn vertex(&self, id: usize) -> VertexRef {
        if id < self.a {
            VertexRef::a(id)
        } else {
            VertexRef::b(id - self.a)
        }
    }

    /// Neighbourhood of a global id as a global-id mask.
    #[inline]
    pub fn neighbors_mask(&self, id: usize) -> u64 {
        if id < self.a {
            (self.rows[id] as u64) << self.a
        } else {
            self.cols[id - self.a] as u64
        }
    }

    #[inline]
    pub fn all_mask(&self) -> u64 {
        low_bits(self.a + self.b)
    }

    #[inline]
    pub fn part_mask(&self, part: Part) -> u64 {
        match part {
            Part::A => low_bits(self.a),
            Part::B => low_bits(self.a + self.b) & !low_bits(self.a),
        }
    }

    pub fn neighbors(&self, v: VertexRef) -> impl Iterator<Item = VertexRef> + '_ {
        let id = self.id(v);
        bits(self.neighbors_mask(id)).map(move |w| self.vertex(w))
    }

    /// Global-id mask of the vertices reachable from `start` through `allowed`.
    /// `start` itself is always included.
    pub fn component_mask(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.neighbors_mask(v);
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    /// Whether the graph on all `a + b` vertices has a single component,
    /// traversing breadth-first from `(A, 0)`.
    pub fn is_connected(&self) -> bool {
        self.component_mask(0, self.all_mask()) == self.all_mask()
    }

    /// Connectivity of the subgraph induced by `alive` (a global-id mask).
    pub fn is_connected_within(&self, alive: u64) -> bool {
        if alive == 0 {
            return true;
        }
        let start = alive.trailing_zeros() as usize;
        self.component_mask(start, alive) == alive
    }

    // --- structural operations --------------------------------------------

    /// Induced subgraph on the vertices not in `victims`. Survivor indices are
    /// compacted in their original order; the returned [`Deletion`] records
    /// the translation.
    pub fn delete_vertices(&self, victims: &[VertexRef]) -> Result<Deletion> {
        let mut kill_a = 0u32;
        let mut kill_b = 0u32;
        for v in victims {
            self.check(v.part, v.index)?;
            match v.part {
                Part::A => kill_a |= 1 << v.index,
                Part::B => kill_b |= 1 << v.index,
            }
        }
        let keep_a: Vec<usize> = (0..self.a).filter(|i| kill_a >> i & 1 == 0).collect();
        let keep_b: Vec<usize> = (0..self.b).filter(|j| kill_b >> j & 1 == 0).collect();
        if keep_a.is_empty() {
            return Err(Error::AllOfOnePartDeleted(Part::A));
        }
        if keep_b.is_empty() {
            return Err(Error::AllOfOnePartDeleted(Part::B));
        }
        let mut graph = BipartiteGraph::new(keep_a.len(), keep_b.len())?;
        for (ni, &i) in keep_a.iter().enumerate() {
            for (nj, &j) in keep_b.iter().enumerate() {
                if self.has_edge_unchecked(i, j) {
                    graph.set_edge(ni, nj);
                }
            }
        }
        let mut a_map = vec![None; self.a];
        let mut b_map = vec![None; self.b];
        for (ni, &i) in keep_a.iter().enumerate() {
            a_map[i] = Some(ni);
        }
        for (nj, &j) in keep_b.iter().enumerate() {
            b_map[j] = Some(nj);
        }
        Ok(Deletion {
            graph,
            a_map,
            b_map,
            a_origin: keep_a,
            b_origin: keep_b,
        })
    }

    /// Same graph with the roles of the two parts exchanged.
    pub fn transpose(&self) -> BipartiteGraph {
        let mut t = BipartiteGraph {
            a: self.b,
            b: self.a,
            rows: [0; MAX_PART],
            cols: [0; MAX_PART],
        };
        t.rows = self.cols;
        t.cols = self.rows;
        t
    }

    /// Relabels `(A,i) -> (A,perm_a[i])` and `(B,j) -> (B,perm_b[j])`.
    pub fn relabel(&self, perm_a: &[usize], perm_b: &[usize]) -> Result<BipartiteGraph> {
        if !is_permutation(perm_a, self.a) || !is_permutation(perm_b, self.b) {
            return Err(Error::HypothesisViolated("relabeling is not a permutation".into()));
        }
        let mut g = BipartiteGraph::new(self.a, self.b)?;
        for (i, j) in self.edges() {
            g.set_edge(perm_a[i], perm_b[j]);
        }
        Ok(g)
    }

    /// Isomorphism-class key with the default part-size guard.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        self.canonical_key_with_guard(DEFAULT_KEY_GUARD)
    }

    /// The lexicographically least row-major adjacency matrix over all
    /// permutations of the rows and columns, and over the part swap when the
    /// parts have equal size. For a fixed column order the best row order is
    /// simply the sorted one, so only column orders are enumerated.
    pub fn canonical_key_with_guard(&self, guard: usize) -> Result<CanonicalKey> {
        if self.a > guard || self.b > guard {
            return Err(Error::CapacityExceeded { a: self.a, b: self.b, max: guard });
        }
        let mut best = least_matrix(self);
        if self.a == self.b {
            let t = least_matrix(&self.transpose());
            if t < best {
                best = t;
            }
        }
        let mut key = Vec::with_capacity(2 + 4 * self.a);
        key.push(self.a as u8);
        key.push(self.b as u8);
        for r in best {
            key.extend_from_slice(&r.to_be_bytes());
        }
        Ok(CanonicalKey(key))
    }

    /// A key that identifies this exact labelled graph.
    pub fn labeled_key(&self) -> CanonicalKey {
        let mut key = Vec::with_capacity(2 + 4 * self.a);
        key.push(self.a as u8);
        key.push(self.b as u8);
        for r in self.rows() {
            key.extend_from_slice(&r.to_be_bytes());
        }
        CanonicalKey(key)
    }
}

/// Byte-string isomorphism key; see [`BipartiteGraph::canonical_key`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The graph whose adjacency matrix is spelled out by the key.
    pub fn to_graph(&self) -> Result<BipartiteGraph> {
        let bad = || Error::HypothesisViolated("malformed canonical key".into());
        let (&a, rest) = self.0.split_first().ok_or_else(bad)?;
        let (&b, rest) = rest.split_first().ok_or_else(bad)?;
        let (a, b) = (a as usize, b as usize);
        if rest.len() != 4 * a {
            return Err(bad());
        }
        let mut g = BipartiteGraph::new(a, b)?;
        for (i, chunk) in rest.chunks_exact(4).enumerate() {
            let v = u32::from_be_bytes([chunk[0], chunk[1], chunk[2], chunk[3]]);
            // column p is stored most-significant first
            let row = if b == 0 { 0 } else { v.reverse_bits() >> (32 - b) };
            if row & !(low_bits(b) as u32) != 0 {
                return Err(bad());
            }
            g.set_row(i, row);
        }
        Ok(g)
    }
}

/// Result of [`BipartiteGraph::delete_vertices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deletion {
    pub graph: BipartiteGraph,
    a_map: Vec<Option<usize>>,
    b_map: Vec<Option<usize>>,
    a_origin: Vec<usize>,
    b_origin: Vec<usize>,
}

impl Deletion {
    /// Where an old vertex went, or `None` if it was deleted.
    pub fn translate(&self, v: VertexRef) -> Option<VertexRef> {
        let map = match v.part {
            Part::A => &self.a_map,
            Part::B => &self.b_map,
        };
        map.get(v.index).copied().flatten().map(|i| VertexRef::new(v.part, i))
    }

    /// The old name of a surviving vertex.
    pub fn origin(&self, v: VertexRef) -> VertexRef {
        let index = match v.part {
            Part::A => self.a_origin[v.index],
            Part::B => self.b_origin[v.index],
        };
        VertexRef::new(v.part, index)
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = 0u64;
    for &x in p {
        if x >= n || seen >> x & 1 == 1 {
            return false;
        }
        seen |= 1 << x;
    }
    true
}

/// Least sorted row vector over all column permutations. Column `perm[p]`
/// lands at position `p`, read most-significant first.
fn least_matrix(g: &BipartiteGraph) -> Vec<u32> {
    let (a, b) = (g.a, g.b);
    let mut perm: Vec<usize> = (0..b).collect();
    let mut best: Option<Vec<u32>> = None;
    let mut cur = vec![0u32; a];
    loop {
        for (i, slot) in cur.iter_mut().enumerate() {
            let row = g.rows[i];
            let mut v = 0u32;
            for &c in &perm {
                v = (v << 1) | (row >> c & 1);
            }
            *slot = v;
        }
        cur.sort_unstable();
        match &best {
            Some(bv) if *bv <= cur => {}
            _ => best = Some(cur.clone()),
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
