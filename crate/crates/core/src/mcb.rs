//! Minimum cycle basis extraction and GF(2) verification.
//!
//! For partial 2-trees the basis is exactly the set of lex short cycles, no
//! selection step involved; `horton_mcb` is the oracle for arbitrary
//! connected graphs (candidate cycles from the lex-shortest-path trees,
//! greedy weight-ordered selection of independent incidence vectors), and
//! `exhaustive_mcb` the same greedy over every simple cycle.

use thiserror::Error;

use crate::cycle::{incidence_vector, BitVector, Cycle, CycleSet};
use crate::graph::WeightedGraph;
use crate::lexpath::lsp_table;
use crate::lsc::{
    enumerate_all_simple_cycles, enumerate_lex_short_cycles, horton_candidates, LscError,
};
use crate::structure::is_partial_2tree;

/// The Horton oracle enumerates O(n·m) candidates against an all-pairs
/// table; keep it to desk scale.
pub const HORTON_MAX_VERTICES: usize = 60;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum McbError {
    #[error("graph is not a partial 2-tree")]
    NotPartial2Tree,
    #[error("graph has {n} vertices, oracle guard allows at most {max}")]
    GuardExceeded { n: usize, max: usize },
    #[error("internal verification failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Oracle(#[from] LscError),
}

/// Rows of incidence vectors over a fixed edge ordering.
#[derive(Debug, Clone, Default)]
pub struct Gf2Matrix {
    rows: Vec<BitVector>,
}

impl Gf2Matrix {
    pub fn new() -> Self {
        Gf2Matrix { rows: Vec::new() }
    }

    pub fn from_cycles(g: &WeightedGraph, cycles: &[Cycle]) -> Self {
        let rows = cycles
            .iter()
            .map(|c| incidence_vector(g, c).expect("cycle lives in g"))
            .collect();
        Gf2Matrix { rows }
    }

    pub fn push_row(&mut self, row: BitVector) {
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }
}

/// Rank over GF(2) by elimination; independent of row order.
pub fn gf2_rank(matrix: &Gf2Matrix) -> usize {
    let mut basis = Gf2Basis::new();
    for row in &matrix.rows {
        basis.try_insert(row.clone());
    }
    basis.len()
}

/// Incremental reduced basis: rows indexed by pivot bit.
#[derive(Debug, Clone, Default)]
pub struct Gf2Basis {
    pivots: Vec<(usize, BitVector)>,
}

impl Gf2Basis {
    pub fn new() -> Self {
        Gf2Basis { pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    fn reduce(&self, v: &mut BitVector) {
        for (pivot, row) in &self.pivots {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
    }

    /// Adds `v` if it is independent of the current rows.
    pub fn try_insert(&mut self, mut v: BitVector) -> bool {
        self.reduce(&mut v);
        match v.first_one() {
            Some(pivot) => {
                self.pivots.push((pivot, v));
                true
            }
            None => false,
        }
    }

    /// True iff `v` lies in the span of the inserted rows.
    pub fn spans(&self, v: &BitVector) -> bool {
        let mut r = v.clone();
        self.reduce(&mut r);
        r.is_zero()
    }
}

/// Cycle basis of a connected graph: `m - n + 1` independent cycles.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    pub cycles: CycleSet,
    pub total_weight: u64,
    pub dimension: usize,
}

/// Greedy minimum-weight basis over a candidate set that spans the cycle
/// space: candidates in canonical order (weight, then edge list), keeping
/// each one whose incidence vector is independent of those kept so far.
pub fn greedy_min_basis(g: &WeightedGraph, candidates: &[Cycle]) -> Result<CycleBasis, McbError> {
    let dimension = g.cycle_space_dimension();
    let mut sorted: Vec<&Cycle> = candidates.iter().collect();
    sorted.sort_unstable();
    let mut basis = Gf2Basis::new();
    let mut chosen: Vec<Cycle> = Vec::with_capacity(dimension);
    for c in sorted {
        if chosen.len() == dimension {
            break;
        }
        let vec = incidence_vector(g, c).expect("candidate lives in g");
        if basis.try_insert(vec) {
            chosen.push(c.clone());
        }
    }
    if chosen.len() != dimension {
        return Err(McbError::Internal(format!(
            "candidate set spans rank {} of {dimension}",
            chosen.len()
        )));
    }
    let cycles = CycleSet::from_cycles(chosen);
    let total_weight = cycles.total_weight();
    Ok(CycleBasis {
        cycles,
        total_weight,
        dimension,
    })
}

/// Exact minimum cycle basis of an arbitrary connected graph via greedy
/// selection from the lex-shortest-path Horton candidates.
pub fn horton_mcb(g: &WeightedGraph) -> Result<CycleBasis, McbError> {
    if g.n() > HORTON_MAX_VERTICES {
        return Err(McbError::GuardExceeded {
            n: g.n(),
            max: HORTON_MAX_VERTICES,
        });
    }
    let table = lsp_table(g);
    let candidates = horton_candidates(g, &table);
    greedy_min_basis(g, &candidates)
}

/// Brute-force oracle: greedy over every simple cycle. Subject to the
/// all-cycles guards.
pub fn exhaustive_mcb(g: &WeightedGraph) -> Result<CycleBasis, McbError> {
    let all = enumerate_all_simple_cycles(g)?;
    greedy_min_basis(g, all.cycles())
}

/// Minimum cycle basis of a connected weighted partial 2-tree: exactly the
/// lex short cycles, packaged after verifying the count and independence.
/// A verification failure is an internal error, never a silent return.
pub fn mcb_partial_2tree(g: &WeightedGraph) -> Result<CycleBasis, McbError> {
    if !is_partial_2tree(g) {
        return Err(McbError::NotPartial2Tree);
    }
    let lsc = enumerate_lex_short_cycles(g);
    let dimension = g.cycle_space_dimension();
    if lsc.len() != dimension {
        return Err(McbError::Internal(format!(
            "expected {dimension} lex short cycles, found {}",
            lsc.len()
        )));
    }
    let rank = gf2_rank(&Gf2Matrix::from_cycles(g, lsc.cycles()));
    if rank != dimension {
        return Err(McbError::Internal(format!(
            "lex short cycles have GF(2) rank {rank}, expected {dimension}"
        )));
    }
    let total_weight = lsc.total_weight();
    Ok(CycleBasis {
        cycles: lsc,
        total_weight,
        dimension,
    })
}

/// Per-check verification result; all findings are fields, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub cardinality_ok: bool,
    pub independent: bool,
    pub spans: bool,
    pub total_weight: u64,
    pub count: usize,
    pub expected_dimension: usize,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.cardinality_ok && self.independent && self.spans
    }
}

/// Checks a claimed basis: cardinality `m - n + 1`, GF(2) independence, and
/// span (every spanning-tree fundamental cycle reduces to zero against it).
pub fn verify_cycle_basis(g: &WeightedGraph, cycles: &[Cycle]) -> VerifyReport {
    let expected_dimension = g.cycle_space_dimension();
    let count = cycles.len();
    let mut basis = Gf2Basis::new();
    let mut independent = true;
    for c in cycles {
        let vec = incidence_vector(g, c).expect("cycle lives in g");
        if !basis.try_insert(vec) {
            independent = false;
        }
    }
    let spans = fundamental_cycles(g)
        .iter()
        .all(|c| basis.spans(&incidence_vector(g, c).expect("fundamental cycle lives in g")));
    VerifyReport {
        cardinality_ok: count == expected_dimension,
        independent,
        spans,
        total_weight: cycles.iter().map(|c| c.weight()).sum(),
        count,
        expected_dimension,
    }
}

/// Fundamental cycles of a BFS spanning tree rooted at vertex 0: one cycle
/// per non-tree edge. A basis of the cycle space by construction.
pub fn fundamental_cycles(g: &WeightedGraph) -> Vec<Cycle> {
    let n = g.n();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n]; // (vertex, edge idx)
    let mut depth = vec![0usize; n];
    let mut tree_edge = vec![false; g.m()];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(w, ei) in g.neighbors(v) {
            if !visited[w] {
                visited[w] = true;
                parent[w] = Some((v, ei));
                depth[w] = depth[v] + 1;
                tree_edge[ei] = true;
                queue.push_back(w);
            }
        }
    }
    let mut out = Vec::with_capacity(g.cycle_space_dimension());
    for (ei, e) in g.edges().iter().enumerate() {
        if tree_edge[ei] {
            continue;
        }
        // tree path between the endpoints: climb to the common ancestor
        let (mut a, mut b) = (e.u, e.v);
        let mut edges: Vec<(usize, usize)> = vec![(e.u, e.v)];
        while depth[a] > depth[b] {
            let (pa, _) = parent[a].unwrap();
            edges.push((a, pa));
            a = pa;
        }
        while depth[b] > depth[a] {
            let (pb, _) = parent[b].unwrap();
            edges.push((b, pb));
            b = pb;
        }
        while a != b {
            let (pa, _) = parent[a].unwrap();
            let (pb, _) = parent[b].unwrap();
            edges.push((a, pa));
            edges.push((b, pb));
            a = pa;
            b = pb;
        }
        out.push(Cycle::from_edges(g, &edges).expect("fundamental cycle is valid"));
    }
    out
}
