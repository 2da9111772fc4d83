//! Structural recognition and decomposition of partial 2-trees.
//!
//! Recognition runs the series-parallel reduction (delete degree-0/1
//! vertices, suppress degree-2 vertices); outerplanarity of a partial
//! 2-tree is decided per block through the three-component separator
//! criterion. `decomp` splits a graph at a separator pair `{u,v}` into the
//! avoided component side and the rest, overlapping exactly in `lsp(u,v)`.

use thiserror::Error;

use crate::graph::{GraphError, Path, Subgraph, WeightedGraph};
use crate::lexpath::lex_shortest_paths_from;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("graph is not a partial 2-tree")]
    NotPartial2Tree,
    #[error(
        "{{{u},{v}}} does not separate the graph into at least {required} components (got {got})"
    )]
    NotASeparator {
        u: usize,
        v: usize,
        required: usize,
        got: usize,
    },
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("no component avoids the separator path; graph state is inconsistent")]
    NoAvoidingComponent,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Treewidth-at-most-2 test by reduction: repeatedly delete degree-0/1
/// vertices and suppress degree-2 vertices (merging any parallel edge that
/// appears); the graph is a partial 2-tree iff the reduction empties it.
/// Works on an unweighted copy.
pub fn is_partial_2tree(g: &WeightedGraph) -> bool {
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for e in g.edges() {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut queue: Vec<usize> = (0..n).filter(|&v| adj[v].len() <= 2).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        match nbrs.len() {
            0 => {}
            1 => {
                let a = nbrs[0];
                adj[a].remove(&v);
                if adj[a].len() <= 2 {
                    queue.push(a);
                }
            }
            2 => {
                let (a, b) = (nbrs[0], nbrs[1]);
                adj[a].remove(&v);
                adj[b].remove(&v);
                // suppression: connect the neighbors; a parallel edge merges
                if adj[a].contains(&b) {
                    if adj[a].len() <= 2 {
                        queue.push(a);
                    }
                    if adj[b].len() <= 2 {
                        queue.push(b);
                    }
                } else {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
            _ => unreachable!(),
        }
        adj[v].clear();
        alive[v] = false;
        remaining -= 1;
    }
    remaining == 0
}

/// Connected components of `g - {u, v}` as sorted vertex lists, ordered by
/// their minimum vertex.
fn components_without_pair(g: &WeightedGraph, u: usize, v: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if start == u || start == v || comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, _) in g.neighbors(x) {
                if y == u || y == v || comp[y] != usize::MAX {
                    continue;
                }
                comp[y] = id;
                members.push(y);
                stack.push(y);
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out.sort_by_key(|m| m[0]);
    out
}

/// Smallest vertex pair (lexicographic) whose removal leaves at least three
/// connected components, if any. Exhaustive over all pairs.
///
/// Requires a partial 2-tree; in that class such a pair exists exactly when
/// the graph is not outerplanar.
pub fn find_three_component_separator(
    g: &WeightedGraph,
) -> Result<Option<(usize, usize)>, StructureError> {
    if !is_partial_2tree(g) {
        return Err(StructureError::NotPartial2Tree);
    }
    Ok(three_component_pair(g))
}

fn three_component_pair(g: &WeightedGraph) -> Option<(usize, usize)> {
    let n = g.n();
    for u in 0..n {
        for v in (u + 1)..n {
            if components_without_pair(g, u, v).len() >= 3 {
                return Some((u, v));
            }
        }
    }
    None
}

/// Outerplanarity of a connected partial 2-tree.
///
/// A block of a partial 2-tree contains a `K_{2,3}` subdivision iff some
/// vertex pair splits the block into three or more components, so the graph
/// is outerplanar iff no block admits such a pair.
pub fn is_outerplanar(g: &WeightedGraph) -> Result<bool, StructureError> {
    if !is_partial_2tree(g) {
        return Err(StructureError::NotPartial2Tree);
    }
    for block in g.blocks() {
        let b = block.graph();
        if b.n() < 5 {
            continue; // three components need at least 5 vertices
        }
        for u in 0..b.n() {
            for v in (u + 1)..b.n() {
                if components_without_pair(b, u, v).len() >= 3 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The component of `g - {u,v}` that avoids the separator path `p` in both
/// vertices and edges; ties go to the component with the smallest vertex.
///
/// At least two components and a path that is the lex shortest `u`-`v` path
/// guarantee such a component exists.
pub fn choose_avoiding_component(
    g: &WeightedGraph,
    u: usize,
    v: usize,
    p: &Path,
) -> Result<Vec<usize>, StructureError> {
    let comps = components_without_pair(g, u, v);
    if comps.len() < 2 {
        return Err(StructureError::NotASeparator {
            u,
            v,
            required: 2,
            got: comps.len(),
        });
    }
    comps
        .into_iter()
        .find(|members| !members.iter().any(|&x| p.contains_vertex(x)))
        .ok_or(StructureError::NoAvoidingComponent)
}

/// Result of splitting `g` at a separator pair.
///
/// `g1` is the avoided component plus the separator path plus the edges
/// from the component to the pair; `g2` is induced on everything outside
/// the component. The two overlap exactly in the separator path.
#[derive(Debug, Clone)]
pub struct DecompResult {
    pub g1: Subgraph,
    pub g2: Subgraph,
    pub separator: (usize, usize),
    pub sep_path: Path,
    pub avoided: Vec<usize>,
}

/// Splits `g` at `{u, v}`, which must leave at least three components.
pub fn decomp(g: &WeightedGraph, u: usize, v: usize) -> Result<DecompResult, StructureError> {
    let n = g.n();
    for x in [u, v] {
        if x >= n {
            return Err(StructureError::VertexOutOfRange { v: x, n });
        }
    }
    let got = components_without_pair(g, u, v).len();
    if u == v || got < 3 {
        return Err(StructureError::NotASeparator {
            u,
            v,
            required: 3,
            got,
        });
    }
    let sep_path = lex_shortest_paths_from(g, u)
        .into_iter()
        .nth(v)
        .expect("v is a vertex of g");
    let avoided = choose_avoiding_component(g, u, v, &sep_path)?;

    let in_h = |x: usize| avoided.binary_search(&x).is_ok();
    let mut g1_edges: Vec<usize> = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let inside_h = in_h(e.u) && in_h(e.v);
        let cross = (in_h(e.u) && (e.v == u || e.v == v)) || (in_h(e.v) && (e.u == u || e.u == v));
        let on_path = sep_path.contains_edge(e.u, e.v);
        if inside_h || cross || on_path {
            g1_edges.push(i);
        }
    }
    let g1 = Subgraph::from_edge_indices(g, &g1_edges)?;
    let g2_vertices: Vec<usize> = (0..n).filter(|&x| !in_h(x)).collect();
    let g2 = Subgraph::induced(g, &g2_vertices)?;
    Ok(DecompResult {
        g1,
        g2,
        separator: (u, v),
        sep_path,
        avoided,
    })
}
