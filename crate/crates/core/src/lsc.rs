//! Lex short cycle enumeration.
//!
//! A cycle is lex short when it contains the lex shortest path between
//! every pair of its vertices. The fast path generates Horton-style
//! candidates `lsp(v,x) + (x,y) + lsp(y,v)` from the all-pairs table and
//! filters them; `enumerate_all_simple_cycles` is the guarded brute-force
//! oracle the fast path is validated against.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cycle::{Cycle, CycleSet};
use crate::graph::WeightedGraph;
use crate::lexpath::{lsp_table, LspTable};

/// Guards for the all-cycles oracle.
pub const ALL_CYCLES_MAX_VERTICES: usize = 14;
pub const ALL_CYCLES_MAX_COUNT: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LscError {
    #[error("graph has {n} vertices, all-cycles guard allows at most {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("cycle count exceeds the {max} oracle guard")]
    TooManyCycles { max: usize },
}

/// True iff every pairwise lex shortest path of `c`'s vertices runs inside
/// `c`. `table` must be the all-pairs table of `g`.
pub fn is_lex_short(g: &WeightedGraph, c: &Cycle, table: &LspTable) -> bool {
    debug_assert_eq!(table.n(), g.n());
    let verts = c.vertex_set();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            let p = table.path(u, v);
            if p.edges().any(|(a, b)| !c.contains_edge(a, b)) {
                return false;
            }
        }
    }
    true
}

/// Horton-style candidate cycles `lsp(v,x) + (x,y) + lsp(y,v)`, one per
/// root vertex and edge, deduplicated by canonical edge set.
///
/// Every lex short cycle is such a candidate: walking around a lex short
/// cycle from any root, the side on which the root's lex shortest path runs
/// can only switch once (subpaths of lex shortest paths are lex shortest),
/// and the switch edge closes the cycle. The minimum-cycle-basis oracle
/// reuses the same set, which also contains a minimum cycle basis.
pub fn horton_candidates(g: &WeightedGraph, table: &LspTable) -> Vec<Cycle> {
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    for root in 0..g.n() {
        for e in g.edges() {
            let (x, y) = e.endpoints();
            if let Some(c) = candidate_cycle(g, table, root, x, y) {
                if seen.insert(c.edge_set().to_vec()) {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn candidate_cycle(
    g: &WeightedGraph,
    table: &LspTable,
    root: usize,
    x: usize,
    y: usize,
) -> Option<Cycle> {
    let px = table.path(root, x);
    let py = table.path(root, y);
    // the two paths may share only the root, and neither may use (x,y)
    for &v in px.vertices() {
        if v != root && py.contains_vertex(v) {
            return None;
        }
    }
    if px.contains_edge(x, y) || py.contains_edge(x, y) {
        return None;
    }
    let mut edges: Vec<(usize, usize)> = px.edges().chain(py.edges()).collect();
    edges.push(if x < y { (x, y) } else { (y, x) });
    if edges.len() < 3 {
        return None;
    }
    Cycle::from_edges(g, &edges).ok()
}

/// The set of lex short cycles of `g`, deduplicated and canonically ordered.
pub fn enumerate_lex_short_cycles(g: &WeightedGraph) -> CycleSet {
    let table = lsp_table(g);
    let cycles = horton_candidates(g, &table)
        .into_iter()
        .filter(|c| is_lex_short(g, c, &table))
        .collect();
    CycleSet::from_cycles(cycles)
}

/// Brute-force oracle: every simple cycle of `g`, each exactly once.
///
/// Backtracking DFS rooted at each vertex in turn, restricted to vertices
/// larger than the root so each cycle is found from its minimum vertex
/// only; the `second < last` check drops the reversed traversal.
pub fn enumerate_all_simple_cycles(g: &WeightedGraph) -> Result<CycleSet, LscError> {
    enumerate_all_simple_cycles_capped(g, ALL_CYCLES_MAX_COUNT)
}

pub(crate) fn enumerate_all_simple_cycles_capped(
    g: &WeightedGraph,
    cap: usize,
) -> Result<CycleSet, LscError> {
    if g.n() > ALL_CYCLES_MAX_VERTICES {
        return Err(LscError::TooManyVertices {
            n: g.n(),
            max: ALL_CYCLES_MAX_VERTICES,
        });
    }
    let mut cycles: Vec<Cycle> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut on_path = vec![false; g.n()];
    for root in 0..g.n() {
        stack.push(root);
        on_path[root] = true;
        extend_cycle_search(g, root, cap, &mut stack, &mut on_path, &mut cycles)?;
        stack.pop();
        on_path[root] = false;
    }
    Ok(CycleSet::from_cycles(cycles))
}

fn extend_cycle_search(
    g: &WeightedGraph,
    root: usize,
    cap: usize,
    stack: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    cycles: &mut Vec<Cycle>,
) -> Result<(), LscError> {
    let v = *stack.last().unwrap();
    for &(next, _) in g.neighbors(v) {
        if next == root && stack.len() >= 3 {
            if stack[1] < *stack.last().unwrap() {
                if cycles.len() >= cap {
                    return Err(LscError::TooManyCycles { max: cap });
                }
                cycles.push(Cycle::from_vertex_cycle(g, stack).expect("closed simple walk"));
            }
        } else if next > root && !on_path[next] {
            stack.push(next);
            on_path[next] = true;
            extend_cycle_search(g, root, cap, stack, on_path, cycles)?;
            stack.pop();
            on_path[next] = false;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k23() -> WeightedGraph {
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

    fn k4() -> WeightedGraph {
        WeightedGraph::new(
            4,
            &[
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_has_one_lex_short_cycle() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let lsc = enumerate_lex_short_cycles(&g);
        assert_eq!(lsc.len(), 1);
        assert_eq!(lsc.cycles()[0].weight(), 3);
    }

    #[test]
    fn k23_lex_short_cycles() {
        let g = k23();
        let table = lsp_table(&g);
        let through_34 = Cycle::from_vertex_cycle(&g, &[0, 3, 1, 4]).unwrap();
        assert!(!is_lex_short(&g, &through_34, &table)); // lsp(0,1) = 0-2-1 is outside
        let through_23 = Cycle::from_vertex_cycle(&g, &[0, 2, 1, 3]).unwrap();
        assert!(is_lex_short(&g, &through_23, &table));

        let lsc = enumerate_lex_short_cycles(&g);
        assert_eq!(lsc.len(), 2); // = m - n + 1
        let expected = CycleSet::from_cycles(vec![
            Cycle::from_vertex_cycle(&g, &[0, 2, 1, 3]).unwrap(),
            Cycle::from_vertex_cycle(&g, &[0, 2, 1, 4]).unwrap(),
        ]);
        assert!(lsc.same_cycles(&expected));
    }

    #[test]
    fn k4_has_seven_simple_cycles() {
        let all = enumerate_all_simple_cycles(&k4()).unwrap();
        assert_eq!(all.len(), 7);
        assert_eq!(all.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(all.iter().filter(|c| c.len() == 4).count(), 3);
    }

    #[test]
    fn triangle_has_one_simple_cycle() {
        let g = WeightedGraph::new(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(enumerate_all_simple_cycles(&g).unwrap().len(), 1);
    }

    #[test]
    fn oracle_guard_rejects_large_graphs() {
        let edges: Vec<(usize, usize, u64)> = (0..15).map(|i| (i, (i + 1) % 15, 1)).collect();
        let g = WeightedGraph::new(15, &edges).unwrap();
        assert!(matches!(
            enumerate_all_simple_cycles(&g).unwrap_err(),
            LscError::TooManyVertices { .. }
        ));
    }

    #[test]
    fn oracle_guard_caps_cycle_count() {
        // K6 has 197 simple cycles; a cap of 50 must trip
        let edges: Vec<(usize, usize, u64)> = (0..6)
            .flat_map(|u| ((u + 1)..6).map(move |v| (u, v, 1)))
            .collect();
        let g = WeightedGraph::new(6, &edges).unwrap();
        assert_eq!(enumerate_all_simple_cycles(&g).unwrap().len(), 197);
        assert_eq!(
            enumerate_all_simple_cycles_capped(&g, 50).unwrap_err(),
            LscError::TooManyCycles { max: 50 }
        );
    }

    #[test]
    fn wheel_cycle_count_matches_closed_form() {
        // cycles of a wheel: the rim, plus one cycle per contiguous rim arc
        // (r arcs for each of the r-1 lengths): r(r-1) + 1 in total
        for n in [4usize, 6, 9] {
            let g = crate::generate::gen_wheel(n, 1, 100).unwrap();
            let r = n - 1;
            let all = enumerate_all_simple_cycles(&g).unwrap();
            assert_eq!(all.len(), r * (r - 1) + 1, "wheel on {n} vertices");
        }
    }

    #[test]
    fn wheel9_lsc_is_triangles_plus_rim() {
        let g = crate::generate::gen_wheel(9, 1, 100).unwrap();
        let lsc = enumerate_lex_short_cycles(&g);
        assert_eq!(lsc.len(), 9);
        assert_eq!(lsc.iter().filter(|c| c.len() == 3).count(), 8);
        assert_eq!(lsc.iter().filter(|c| c.len() == 8).count(), 1);
    }

    #[test]
    fn lex_short_cycles_survive_into_blocks() {
        // a lex short cycle contained in a subgraph is lex short there
        use crate::generate::{gen_partial_2tree, Family, GeneratorSpec};
        for seed in 0..20 {
            let mut spec = GeneratorSpec::new(Family::Partial2Tree, 10, 3000 + seed);
            spec.delete_count = (seed as usize) % 5;
            let g = gen_partial_2tree(&spec).unwrap();
            let whole = enumerate_lex_short_cycles(&g);
            for block in g.blocks() {
                let local = enumerate_lex_short_cycles(block.graph());
                for c in &whole {
                    if let Some(projected) = block.cycle_to_local(c) {
                        assert!(
                            local.contains(&projected),
                            "seed {seed}: cycle {c} lost lex-shortness in its block"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fast_path_matches_brute_force_filter() {
        use crate::generate::gen_connected;
        for seed in 0..25 {
            let g = gen_connected(4 + (seed as usize) % 6, (seed as usize) % 5, 2, 4000 + seed);
            let table = lsp_table(&g);
            let fast = enumerate_lex_short_cycles(&g);
            let brute = CycleSet::from_cycles(
                enumerate_all_simple_cycles(&g)
                    .unwrap()
                    .into_iter()
                    .filter(|c| is_lex_short(&g, c, &table))
                    .collect(),
            );
            assert!(fast.same_cycles(&brute), "seed {seed}");
        }
    }
}
