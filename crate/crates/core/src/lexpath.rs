//! Lex shortest paths.
//!
//! Paths between the same endpoints are ordered by weight, then edge count,
//! then by the smaller minimum vertex of the symmetric set difference. That
//! order has a unique minimum for every vertex pair, the lex shortest path.
//! `brute_force_lsp` is the independent oracle (exhaustive enumeration);
//! `lex_shortest_paths_from` is the production search, cross-validated
//! against the oracle at desk scale.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::{Path, WeightedGraph};

/// Exhaustive enumeration stays tractable only for small instances.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexPathError {
    #[error("graph has {n} vertices, brute-force guard allows at most {max}")]
    GuardExceeded { n: usize, max: usize },
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Compares two paths with the same endpoint pair.
///
/// `Less` means `p` precedes `q`: smaller weight; else fewer edges; else
/// smaller minimum vertex in the set difference. Distinct paths with equal
/// weight, length and vertex set (possible only as reorderings of the same
/// vertices) fall back to lexicographic comparison of the sorted edge
/// lists, so the order is total. The edge-list fallback keeps the whole
/// order extension-consistent: appending one edge to two tied paths
/// inserts the same element into both sorted lists and cannot flip the
/// comparison (a tie-break on vertex sequences read from an endpoint
/// would flip whenever the extension changes which endpoint is smaller).
///
/// Panics if the endpoint pairs differ; comparing paths of different pairs
/// is a programming error.
pub fn compare_paths(p: &Path, q: &Path) -> Ordering {
    assert_eq!(
        p.endpoints(),
        q.endpoints(),
        "compare_paths requires identical endpoint pairs"
    );
    match p.weight().cmp(&q.weight()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    match p.len().cmp(&q.len()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    let size = 1 + p.vertices().iter().chain(q.vertices()).max().unwrap();
    let in_q = vertex_mask(q, size);
    let in_p = vertex_mask(p, size);
    let min_p_not_q = p.vertices().iter().filter(|&&v| !in_q[v]).min();
    let min_q_not_p = q.vertices().iter().filter(|&&v| !in_p[v]).min();
    match (min_p_not_q, min_q_not_p) {
        (Some(a), Some(b)) => a.cmp(b),
        // equal vertex sets: same length forces both differences empty
        (None, None) => sorted_edges(p).cmp(&sorted_edges(q)),
        _ => unreachable!("equal-length paths have equally sized set differences"),
    }
}

fn sorted_edges(p: &Path) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = p.edges().collect();
    edges.sort_unstable();
    edges
}

fn vertex_mask(p: &Path, size: usize) -> Vec<bool> {
    let mut mask = vec![false; size];
    for &v in p.vertices() {
        mask[v] = true;
    }
    mask
}

fn better(candidate: &Path, incumbent: &Option<Path>) -> bool {
    match incumbent {
        None => true,
        Some(best) => compare_paths(candidate, best) == Ordering::Less,
    }
}

/// All-pairs table of lex shortest paths.
///
/// Stored once per unordered pair, oriented from the smaller endpoint;
/// `path(u, v)` reverses on demand so that `lsp(u,v)` is the reverse of
/// `lsp(v,u)`.
#[derive(Debug, Clone)]
pub struct LspTable {
    n: usize,
    paths: Vec<Option<Path>>,
}

impl LspTable {
    fn slot(&self, u: usize, v: usize) -> usize {
        debug_assert!(u < v && v < self.n);
        u * self.n + v
    }

    /// Lex shortest path oriented from `u` to `v`. For `u == v` this is the
    /// trivial single-vertex path.
    pub fn path(&self, u: usize, v: usize) -> Path {
        if u == v {
            return Path::single(u);
        }
        let stored = self.paths[self.slot(u.min(v), u.max(v))]
            .as_ref()
            .expect("table covers all pairs");
        if u < v {
            stored.clone()
        } else {
            stored.reversed()
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Lex shortest paths from `s` to every vertex, indexed by target.
///
/// Best-first search over full-path labels: each vertex keeps its current
/// best path, relaxation extends the popped vertex's best path by one edge
/// and keeps the winner under `compare_paths`. An improved label re-enters
/// the queue, so the result does not depend on tie handling in the heap.
/// Positive weights keep every label simple.
pub fn lex_shortest_paths_from(g: &WeightedGraph, s: usize) -> Vec<Path> {
    assert!(s < g.n(), "source vertex out of range");
    let mut best: Vec<Option<Path>> = vec![None; g.n()];
    best[s] = Some(Path::single(s));
    // key: (weight, length, vertex) — ordering is a performance detail only
    let mut heap: BinaryHeap<std::cmp::Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    heap.push(std::cmp::Reverse((0, 0, s)));
    while let Some(std::cmp::Reverse((w, l, v))) = heap.pop() {
        let current = best[v].clone().expect("queued vertex has a label");
        if current.weight() != w || current.len() != l {
            continue; // stale entry
        }
        for &(next, ei) in g.neighbors(v) {
            if current.contains_vertex(next) {
                continue;
            }
            let mut verts = current.vertices().to_vec();
            verts.push(next);
            let candidate = Path::new(g, verts).expect("extension by a graph edge");
            debug_assert_eq!(candidate.weight(), w + g.edge(ei).weight);
            if better(&candidate, &best[next]) {
                heap.push(std::cmp::Reverse((
                    candidate.weight(),
                    candidate.len(),
                    next,
                )));
                best[next] = Some(candidate);
            }
        }
    }
    best.into_iter()
        .map(|p| p.expect("graph is connected"))
        .collect()
}

/// All-pairs lex shortest paths via one search per source.
pub fn lsp_table(g: &WeightedGraph) -> LspTable {
    let n = g.n();
    let mut paths = vec![None; n * n];
    for u in 0..n {
        let from_u = lex_shortest_paths_from(g, u);
        for (v, p) in from_u.into_iter().enumerate() {
            if u < v {
                paths[u * n + v] = Some(p);
            }
        }
    }
    LspTable { n, paths }
}

/// Independent oracle: enumerates every simple `u`-`v` path by backtracking
/// and returns the minimum under `compare_paths`. Guarded to small graphs.
pub fn brute_force_lsp(g: &WeightedGraph, u: usize, v: usize) -> Result<Path, LexPathError> {
    if g.n() > BRUTE_FORCE_MAX_VERTICES {
        return Err(LexPathError::GuardExceeded {
            n: g.n(),
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    for x in [u, v] {
        if x >= g.n() {
            return Err(LexPathError::VertexOutOfRange { v: x, n: g.n() });
        }
    }
    let mut best: Option<Path> = None;
    let mut stack = vec![u];
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    enumerate_paths(g, v, &mut stack, &mut on_path, &mut |candidate| {
        if better(candidate, &best) {
            best = Some(candidate.clone());
        }
    });
    Ok(best.expect("graph is connected"))
}

fn enumerate_paths(
    g: &WeightedGraph,
    target: usize,
    stack: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    found: &mut impl FnMut(&Path),
) {
    let v = *stack.last().unwrap();
    if v == target {
        let p = Path::new(g, stack.clone()).expect("stack is a valid simple path");
        found(&p);
        return;
    }
    for &(next, _) in g.neighbors(v) {
        if on_path[next] {
            continue;
        }
        stack.push(next);
        on_path[next] = true;
        enumerate_paths(g, target, stack, on_path, found);
        stack.pop();
        on_path[next] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_connected;
    use crate::graph::WeightedGraph;

    fn all_simple_paths(g: &WeightedGraph, u: usize, v: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![u];
        let mut on_path = vec![false; g.n()];
        on_path[u] = true;
        enumerate_paths(g, v, &mut stack, &mut on_path, &mut |p| out.push(p.clone()));
        out
    }

    fn square() -> WeightedGraph {
        WeightedGraph::new(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]).unwrap()
    }

    fn k23() -> WeightedGraph {
        // parts {0,1} and {2,3,4}
        WeightedGraph::new(
            5,
            &[
                (0, 2, 1),
                (0, 3, 1),
                (0, 4, 1),
                (1, 2, 1),
                (1, 3, 1),
                (1, 4, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rule_one_weight_wins() {
        let g = WeightedGraph::new(3, &[(0, 1, 5), (0, 2, 3), (1, 2, 3)]).unwrap();
        let p = Path::new(&g, vec![0, 1]).unwrap(); // weight 5
        let q = Path::new(&g, vec![0, 2, 1]).unwrap(); // weight 6
        assert_eq!(compare_paths(&p, &q), Ordering::Less);
        assert_eq!(compare_paths(&q, &p), Ordering::Greater);
    }

    #[test]
    fn rule_two_length_breaks_weight_ties() {
        let g = WeightedGraph::new(3, &[(0, 1, 2), (0, 2, 1), (1, 2, 1)]).unwrap();
        let p = Path::new(&g, vec![0, 1]).unwrap(); // weight 2, 1 edge
        let q = Path::new(&g, vec![0, 2, 1]).unwrap(); // weight 2, 2 edges
        assert_eq!(compare_paths(&p, &q), Ordering::Less);
    }

    #[test]
    fn rule_three_smaller_interior_vertex_wins() {
        let g = square();
        let p = Path::new(&g, vec![0, 1, 2]).unwrap();
        let q = Path::new(&g, vec![0, 3, 2]).unwrap();
        assert_eq!(compare_paths(&p, &q), Ordering::Less);
    }

    #[test]
    #[should_panic(expected = "identical endpoint pairs")]
    fn differing_endpoints_panic() {
        let g = square();
        let p = Path::new(&g, vec![0, 1]).unwrap();
        let q = Path::new(&g, vec![0, 3]).unwrap();
        let _ = compare_paths(&p, &q);
    }

    #[test]
    fn square_lsp_uses_rule_three() {
        let g = square();
        let from0 = lex_shortest_paths_from(&g, 0);
        assert_eq!(from0[2].vertices(), &[0, 1, 2]);
        assert_eq!(brute_force_lsp(&g, 0, 2).unwrap().vertices(), &[0, 1, 2]);
    }

    #[test]
    fn triangle_lsp_is_direct_edge() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let from0 = lex_shortest_paths_from(&g, 0);
        assert_eq!(from0[1].vertices(), &[0, 1]);
        let table = lsp_table(&g);
        for u in 0..3 {
            for v in (u + 1)..3 {
                assert_eq!(table.path(u, v).len(), 1);
            }
        }
    }

    #[test]
    fn k23_lsp_prefers_smallest_middle_vertex() {
        let g = k23();
        let table = lsp_table(&g);
        assert_eq!(table.path(0, 1).vertices(), &[0, 2, 1]);
        assert_eq!(table.path(1, 0).vertices(), &[1, 2, 0]);
        assert_eq!(brute_force_lsp(&g, 0, 1).unwrap().vertices(), &[0, 2, 1]);
    }

    #[test]
    fn path_graph_has_unique_paths() {
        let g = WeightedGraph::new(4, &[(0, 1, 2), (1, 2, 5), (2, 3, 1)]).unwrap();
        let table = lsp_table(&g);
        assert_eq!(table.path(0, 3).vertices(), &[0, 1, 2, 3]);
        assert_eq!(table.path(0, 3).weight(), 8);
        assert_eq!(brute_force_lsp(&g, 0, 3).unwrap().vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn brute_force_guard() {
        let edges: Vec<(usize, usize, u64)> = (0..14).map(|i| (i, i + 1, 1)).collect();
        let g = WeightedGraph::new(15, &edges).unwrap();
        assert_eq!(
            brute_force_lsp(&g, 0, 14).unwrap_err(),
            LexPathError::GuardExceeded { n: 15, max: 14 }
        );
    }

    #[test]
    fn table_is_reversal_consistent() {
        let g = k23();
        let table = lsp_table(&g);
        for u in 0..g.n() {
            for v in 0..g.n() {
                if u == v {
                    continue;
                }
                assert_eq!(table.path(u, v), table.path(v, u));
                assert_eq!(table.path(u, v).vertices()[0], u);
            }
        }
    }

    #[test]
    fn comparator_is_antisymmetric_and_total() {
        for seed in 0..20 {
            let g = gen_connected(7, 4, 2, seed);
            for u in 0..g.n() {
                for v in (u + 1)..g.n() {
                    let paths = all_simple_paths(&g, u, v);
                    for (i, p) in paths.iter().enumerate() {
                        for q in &paths[i + 1..] {
                            let pq = compare_paths(p, q);
                            let qp = compare_paths(q, p);
                            if p == q {
                                assert_eq!(pq, Ordering::Equal);
                            } else {
                                assert_ne!(pq, Ordering::Equal, "{p} vs {q}");
                            }
                            assert_eq!(pq, qp.reverse());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn comparator_is_extension_consistent() {
        // if p < q and edge e extends both at the shared endpoint, p+e < q+e
        for seed in 0..20 {
            let g = gen_connected(7, 4, 2, seed);
            for u in 0..g.n() {
                for v in (u + 1)..g.n() {
                    let paths = all_simple_paths(&g, u, v);
                    for p in &paths {
                        for q in &paths {
                            if p == q {
                                continue;
                            }
                            for &(next, _) in g.neighbors(v) {
                                if p.contains_vertex(next) || q.contains_vertex(next) {
                                    continue;
                                }
                                let extend = |base: &Path| {
                                    let mut verts =
                                        base.oriented_from(u).unwrap().vertices().to_vec();
                                    verts.push(next);
                                    Path::new(&g, verts).unwrap()
                                };
                                assert_eq!(
                                    compare_paths(p, q),
                                    compare_paths(&extend(p), &extend(q)),
                                    "extension by {next} flipped the order of {p} and {q}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn search_matches_oracle_on_random_graphs() {
        for seed in 0..30 {
            let g = gen_connected(4 + (seed as usize % 6), (seed as usize) % 5, 3, 1000 + seed);
            for u in 0..g.n() {
                let from_u = lex_shortest_paths_from(&g, u);
                for (v, computed) in from_u.iter().enumerate() {
                    if u == v {
                        continue;
                    }
                    let oracle = brute_force_lsp(&g, u, v).unwrap();
                    assert_eq!(computed, &oracle, "seed {seed}: lsp({u},{v})");
                }
            }
        }
    }

    #[test]
    fn subgraph_consistency_of_lex_shortest_paths() {
        // a lex shortest path that survives edge deletions stays lex shortest
        use crate::graph::Subgraph;
        for seed in 0..20 {
            let g = gen_connected(8, 5, 3, 2000 + seed);
            let table = lsp_table(&g);
            // drop each single edge; skip deletions that disconnect
            for skip in 0..g.m() {
                let keep: Vec<usize> = (0..g.m()).filter(|&i| i != skip).collect();
                let Ok(sub) = Subgraph::from_edge_indices(&g, &keep) else {
                    continue;
                };
                if sub.graph().n() != g.n() {
                    continue;
                }
                let sub_table = lsp_table(sub.graph());
                for u in 0..g.n() {
                    for v in (u + 1)..g.n() {
                        let p = table.path(u, v);
                        if let Some(projected) = sub.path_to_local(&p) {
                            assert_eq!(
                                sub_table.path(projected.first(), projected.last()),
                                projected,
                                "seed {seed}: surviving lsp({u},{v}) lost minimality"
                            );
                        }
                    }
                }
            }
        }
    }
}
