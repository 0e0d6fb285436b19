//! Forbidden patterns and exact containment.
//!
//! Paths are counted in vertices: `Path(m)` has `m` vertices. A broom
//! `Broom(p, d)` is a path on `p` vertices with `d` extra pendant leaves on its
//! last vertex, so the attachment vertex has degree `d + 1` in the pattern.
//!
//! Containment is decided by backtracking over simple paths with bit-mask
//! visited sets. Each extension is bounded by what is still reachable: the
//! remaining path alternates sides, and every vertex except the last must keep
//! two usable neighbours.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{bits, BipartiteGraph, Part, VertexRef};

/// Default node-expansion budget for a single path query.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    Path { m: usize },
    Broom { p: usize, d: usize },
}

impl Pattern {
    pub fn path(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPattern("a path needs at least one vertex".into()));
        }
        Ok(Pattern::Path { m })
    }

    pub fn broom(p: usize, d: usize) -> Result<Self> {
        if p < 2 || d < 1 {
            return Err(Error::InvalidPattern(format!(
                "broom needs p >= 2 and d >= 1 (got p = {p}, d = {d})"
            )));
        }
        Ok(Pattern::Broom { p, d })
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Pattern::Path { m } => m,
            Pattern::Broom { p, d } => p + d,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pattern::Path { m } => write!(f, "path:{m}"),
            Pattern::Broom { p, d } => write!(f, "broom:{p}:{d}"),
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// `path:<m>` or `broom:<p>:<d>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPattern(format!("`{s}` (expected path:<m> or broom:<p>:<d>)"));
        let mut parts = s.trim().split(':');
        let kind = parts.next().ok_or_else(bad)?;
        let nums: Vec<usize> = parts
            .map(|x| x.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("path", [m]) => Pattern::path(*m),
            ("broom", [p, d]) => Pattern::broom(*p, *d),
            _ => Err(bad()),
        }
    }
}

/// A copy of a pattern inside a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// Path vertices in order; for a broom the last one carries the leaves.
    pub spine: Vec<VertexRef>,
    /// Star leaves (empty for paths).
    pub leaves: Vec<VertexRef>,
}

impl Embedding {
    /// Re-checks the embedding against the host: shape matches the pattern,
    /// vertices are distinct and in range, and every required edge exists.
    pub fn validate(&self, g: &BipartiteGraph, pat: &Pattern) -> bool {
        let (want_spine, want_leaves) = match *pat {
            Pattern::Path { m } => (m, 0),
            Pattern::Broom { p, d } => (p, d),
        };
        if self.spine.len() != want_spine || self.leaves.len() != want_leaves {
            return false;
        }
        let mut seen = 0u64;
        for v in self.spine.iter().chain(&self.leaves) {
            if v.index >= g.part_size(v.part) {
                return false;
            }
            let bit = 1u64 << g.id(*v);
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
        let adjacent = |x: &VertexRef, y: &VertexRef| g.neighbors_mask(g.id(*x)) >> g.id(*y) & 1 == 1;
        if !self.spine.windows(2).all(|w| adjacent(&w[0], &w[1])) {
            return false;
        }
        match self.spine.last() {
            Some(anchor) => self.leaves.iter().all(|l| adjacent(anchor, l)),
            None => false,
        }
    }
}

/// Backtracking path search over one graph, with a node-expansion budget.
pub struct PathFinder<'g> {
    g: &'g BipartiteGraph,
    nbr: [u64; 64],
    side_a: u64,
    budget: u64,
    expanded: u64,
    // current path, global ids
    stack: [u8; 64],
    best: usize,
    best_path: [u8; 64],
    target: usize,
}

impl<'g> PathFinder<'g> {
    pub fn new(g: &'g BipartiteGraph) -> Self {
        Self::with_budget(g, DEFAULT_BUDGET)
    }

    pub fn with_budget(g: &'g BipartiteGraph, budget: u64) -> Self {
        let mut nbr = [0u64; 64];
        for (v, slot) in nbr.iter_mut().enumerate().take(g.vertex_count()) {
            *slot = g.neighbors_mask(v);
        }
        PathFinder {
            g,
            nbr,
            side_a: g.part_mask(Part::A),
            budget,
            expanded: 0,
            stack: [0; 64],
            best: 0,
            best_path: [0; 64],
            target: usize::MAX,
        }
    }

    /// Node expansions spent so far.
    pub fn expanded(&self) -> u64 {
        self.expanded
    }

    /// Upper bound on how many more vertices a path ending at `end` can gain
    /// when the vertices in `visited` are used up.
    #[inline]
    fn extension_bound(&self, end: usize, visited: u64) -> usize {
        let free = self.g.all_mask() & !visited;
        let mut reach = 0u64;
        let mut frontier = self.nbr[end] & free;
        while frontier != 0 {
            reach |= frontier;
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.nbr[v];
            }
            frontier = next & free & !reach;
        }
        if reach == 0 {
            return 0;
        }
        let (same, opp) = if self.side_a >> end & 1 == 1 {
            (self.side_a, !self.side_a)
        } else {
            (!self.side_a, self.side_a)
        };
        let alternating = |y: u32, x: u32| (2 * y.min(x) + u32::from(y > x)) as usize;
        let plain = alternating((reach & opp).count_ones(), (reach & same).count_ones());
        // interior vertices need two neighbours among free ∪ {end}
        let usable = free | 1u64 << end;
        let mut inner = 0u64;
        for v in bits(reach) {
            if (self.nbr[v] & usable).count_ones() >= 2 {
                inner |= 1u64 << v;
            }
        }
        let interior = alternating((inner & opp).count_ones(), (inner & same).count_ones());
        plain.min(interior + 1)
    }

    fn tick(&mut self) -> Result<()> {
        self.expanded += 1;
        if self.expanded > self.budget {
            Err(Error::Timeout { budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// Returns `true` once `target` vertices have been reached.
    fn extend(&mut self, end: usize, visited: u64, len: usize) -> Result<bool> {
        if len > self.best {
            self.best = len;
            self.best_path[..len].copy_from_slice(&self.stack[..len]);
            if len >= self.target {
                return Ok(true);
            }
        }
        self.tick()?;
        if len + self.extension_bound(end, visited) <= self.best {
            return Ok(false);
        }
        for w in bits(self.nbr[end] & !visited) {
            self.stack[len] = w as u8;
            if self.extend(w, visited | 1u64 << w, len + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn run_from(&mut self, start: usize) -> Result<bool> {
        self.stack[0] = start as u8;
        self.extend(start, 1u64 << start, 1)
    }

    fn reset(&mut self, cutoff: Option<usize>) {
        self.best = 0;
        self.target = cutoff.unwrap_or(usize::MAX);
    }

    fn best_path(&self) -> Vec<VertexRef> {
        self.best_path[..self.best].iter().map(|&v| self.g.vertex(v as usize)).collect()
    }

    /// Maximum number of vertices on a simple path; stops early at `cutoff`.
    pub fn longest_path_length(&mut self, cutoff: Option<usize>) -> Result<usize> {
        self.longest_path(cutoff).map(|p| p.len())
    }

    /// A longest simple path (or the first one reaching `cutoff`), scanning
    /// start vertices in `(part, index)` order.
    pub fn longest_path(&mut self, cutoff: Option<usize>) -> Result<Vec<VertexRef>> {
        self.reset(cutoff);
        if cutoff == Some(0) {
            return Ok(Vec::new());
        }
        for start in 0..self.g.vertex_count() {
            if self.run_from(start)? {
                break;
            }
        }
        Ok(self.best_path())
    }

    /// Maximum number of vertices on a simple path starting at `v`.
    pub fn longest_path_from(&mut self, v: VertexRef, cutoff: Option<usize>) -> Result<usize> {
        self.g.degree(v)?;
        self.reset(cutoff);
        if cutoff == Some(0) {
            return Ok(0);
        }
        self.run_from(self.g.id(v))?;
        Ok(self.best)
    }

    /// Spine search for a broom anchored at `anchor`: grow a path backwards
    /// from the anchor, keeping at least `d` anchor neighbours off the path.
    fn broom_from(&mut self, anchor: usize, end: usize, visited: u64, len: usize, p: usize, d: usize) -> Result<bool> {
        if len == p {
            return Ok(true);
        }
        self.tick()?;
        if len + self.extension_bound(end, visited) < p {
            return Ok(false);
        }
        for w in bits(self.nbr[end] & !visited) {
            let vis = visited | 1u64 << w;
            if (self.nbr[anchor] & !vis).count_ones() < d as u32 {
                continue;
            }
            self.stack[len] = w as u8;
            if self.broom_from(anchor, w, vis, len + 1, p, d)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn contains(&mut self, pat: &Pattern) -> Result<Option<Embedding>> {
        let found = match *pat {
            Pattern::Path { m } => {
                if m > self.g.vertex_count() {
                    return Ok(None);
                }
                let path = self.longest_path(Some(m))?;
                (path.len() >= m).then(|| Embedding { spine: path, leaves: Vec::new() })
            }
            Pattern::Broom { p, d } => self.find_broom(p, d)?,
        };
        debug_assert!(found.as_ref().is_none_or(|e| e.validate(self.g, pat)));
        Ok(found)
    }

    fn find_broom(&mut self, p: usize, d: usize) -> Result<Option<Embedding>> {
        if p + d > self.g.vertex_count() {
            return Ok(None);
        }
        for anchor in 0..self.g.vertex_count() {
            if (self.nbr[anchor].count_ones() as usize) < d + 1 {
                continue;
            }
            self.stack[0] = anchor as u8;
            if self.broom_from(anchor, anchor, 1u64 << anchor, 1, p, d)? {
                let mut visited = 0u64;
                let mut spine: Vec<VertexRef> = self.stack[..p]
                    .iter()
                    .map(|&v| {
                        visited |= 1u64 << v;
                        self.g.vertex(v as usize)
                    })
                    .collect();
                spine.reverse();
                let leaves = bits(self.nbr[anchor] & !visited)
                    .take(d)
                    .map(|v| self.g.vertex(v))
                    .collect();
                return Ok(Some(Embedding { spine, leaves }));
            }
        }
        Ok(None)
    }
}

pub fn longest_path_length(g: &BipartiteGraph, cutoff: Option<usize>) -> Result<usize> {
    PathFinder::new(g).longest_path_length(cutoff)
}

pub fn longest_path_from(g: &BipartiteGraph, v: VertexRef, cutoff: Option<usize>) -> Result<usize> {
    PathFinder::new(g).longest_path_from(v, cutoff)
}

/// Some embedding of `pat` in `g`, or `None` when `g` is `pat`-free.
pub fn contains_pattern(g: &BipartiteGraph, pat: &Pattern) -> Result<Option<Embedding>> {
    PathFinder::new(g).contains(pat)
}

pub fn is_free(g: &BipartiteGraph, pat: &Pattern) -> Result<bool> {
    contains_pattern(g, pat).map(|e| e.is_none())
}
