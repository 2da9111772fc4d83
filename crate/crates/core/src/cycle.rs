//! Cycles, canonical cycle sets and GF(2) incidence vectors.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::{GraphError, WeightedGraph};

/// Simple cycle, stored canonically as its sorted edge list.
///
/// The defining invariant is that the edge set induces a connected subgraph
/// in which every vertex has degree exactly two. Two representations of the
/// same cycle (rotations, reflections) therefore compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    /// Normalized `(min, max)` pairs, sorted.
    edges: Vec<(usize, usize)>,
    /// Sorted, deduplicated.
    vertices: Vec<usize>,
    weight: u64,
}

impl Cycle {
    /// Builds a cycle from an edge set, validating the degree-two and
    /// connectivity invariants against the host graph.
    pub fn from_edges(g: &WeightedGraph, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        if edge_list.len() < 3 {
            return Err(GraphError::InvalidPath(format!(
                "a cycle needs at least 3 edges, got {}",
                edge_list.len()
            )));
        }
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(edge_list.len());
        let mut weight = 0u64;
        for &(a, b) in edge_list {
            weight += g
                .weight(a, b)
                .ok_or(GraphError::MissingEdge { u: a, v: b })?;
            edges.push(if a < b { (a, b) } else { (b, a) });
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::InvalidPath("repeated edge in cycle".into()));
        }
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vertices.sort_unstable();
        let mut degree_ok = true;
        let mut i = 0;
        let mut dedup = Vec::with_capacity(vertices.len() / 2);
        while i < vertices.len() {
            let j = vertices[i..]
                .iter()
                .take_while(|&&v| v == vertices[i])
                .count();
            if j != 2 {
                degree_ok = false;
                break;
            }
            dedup.push(vertices[i]);
            i += j;
        }
        if !degree_ok {
            return Err(GraphError::InvalidPath(
                "cycle edge set has a vertex of degree != 2".into(),
            ));
        }
        let c = Cycle {
            edges,
            vertices: dedup,
            weight,
        };
        if !c.is_connected() {
            return Err(GraphError::InvalidPath(
                "cycle edge set is disconnected".into(),
            ));
        }
        Ok(c)
    }

    /// Builds a cycle from a closed vertex sequence `v0, v1, ..., vk` (the
    /// closing edge `vk-v0` is implied).
    pub fn from_vertex_cycle(g: &WeightedGraph, seq: &[usize]) -> Result<Self, GraphError> {
        if seq.len() < 3 {
            return Err(GraphError::InvalidPath(
                "cycle needs at least 3 vertices".into(),
            ));
        }
        let mut edge_list: Vec<(usize, usize)> = seq.windows(2).map(|w| (w[0], w[1])).collect();
        edge_list.push((*seq.last().unwrap(), seq[0]));
        Self::from_edges(g, &edge_list)
    }

    fn is_connected(&self) -> bool {
        // walk from the smallest vertex; a degree-2 edge set is a single
        // cycle iff the walk visits every vertex
        self.vertex_sequence().len() == self.vertices.len()
    }

    /// Sorted canonical edge list.
    pub fn edge_set(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted vertex list.
    pub fn vertex_set(&self) -> &[usize] {
        &self.vertices
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Number of edges (equals the number of vertices).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Canonical traversal: starts at the smallest vertex and moves to its
    /// smaller neighbor first.
    pub fn vertex_sequence(&self) -> Vec<usize> {
        let start = self.vertices[0];
        let nbrs = self.neighbors_in_cycle(start);
        let mut seq = vec![start];
        let mut prev = start;
        let mut cur = nbrs.0.min(nbrs.1);
        while cur != start {
            seq.push(cur);
            let (a, b) = self.neighbors_in_cycle(cur);
            let next = if a == prev { b } else { a };
            prev = cur;
            cur = next;
        }
        seq
    }

    fn neighbors_in_cycle(&self, v: usize) -> (usize, usize) {
        let mut found = [usize::MAX; 2];
        let mut k = 0;
        for &(a, b) in &self.edges {
            if a == v || b == v {
                found[k] = if a == v { b } else { a };
                k += 1;
                if k == 2 {
                    break;
                }
            }
        }
        (found[0], found[1])
    }

    /// Relabels vertices through a strictly monotone map; canonical order is
    /// preserved, weight is unchanged.
    pub(crate) fn remap_monotone(&self, map: impl Fn(usize) -> usize) -> Cycle {
        Cycle {
            edges: self.edges.iter().map(|&(u, v)| (map(u), map(v))).collect(),
            vertices: self.vertices.iter().map(|&v| map(v)).collect(),
            weight: self.weight,
        }
    }
}

/// Weight first, then canonical edge list: the deterministic order used for
/// cycle sets and greedy basis selection.
impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertex_sequence()
            .iter()
            .map(|v| v.to_string())
            .collect();
        write!(f, "{} (weight {})", parts.join("-"), self.weight)
    }
}

/// Deduplicated collection of cycles in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleSet {
    cycles: Vec<Cycle>,
}

impl CycleSet {
    pub fn from_cycles(mut cycles: Vec<Cycle>) -> Self {
        cycles.sort_unstable();
        cycles.dedup();
        CycleSet { cycles }
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cycle> {
        self.cycles.iter()
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn total_weight(&self) -> u64 {
        self.cycles.iter().map(|c| c.weight()).sum()
    }

    pub fn contains(&self, c: &Cycle) -> bool {
        self.cycles.binary_search(c).is_ok()
    }

    /// Set equality on canonical edge lists.
    pub fn same_cycles(&self, other: &CycleSet) -> bool {
        self.cycles == other.cycles
    }
}

impl IntoIterator for CycleSet {
    type Item = Cycle;
    type IntoIter = std::vec::IntoIter<Cycle>;
    fn into_iter(self) -> Self::IntoIter {
        self.cycles.into_iter()
    }
}

impl<'a> IntoIterator for &'a CycleSet {
    type Item = &'a Cycle;
    type IntoIter = std::slice::Iter<'a, Cycle>;
    fn into_iter(self) -> Self::IntoIter {
        self.cycles.iter()
    }
}

/// Fixed-width bit vector over the host graph's edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// Incidence vector of `c` over the global edge ordering of `g`: bit `e` is
/// set iff edge `e` belongs to the cycle.
pub fn incidence_vector(g: &WeightedGraph, c: &Cycle) -> Result<BitVector, GraphError> {
    let mut bits = BitVector::zeros(g.m());
    for &(u, v) in c.edge_set() {
        let idx = g.edge_index(u, v).ok_or(GraphError::MissingEdge { u, v })?;
        bits.set(idx);
    }
    Ok(bits)
}
