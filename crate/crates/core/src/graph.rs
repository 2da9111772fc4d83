//! Weighted graph representation, edge-list parsing and block decomposition.
//!
//! Vertices are `0..n` and the numeric order of the ids is the total order
//! used everywhere else in the crate. The position of an edge in the input
//! (file order) is its index in the global edge ordering, which also fixes
//! the bit layout of incidence vectors.

use std::fmt;

use thiserror::Error;

use crate::cycle::Cycle;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: loop edge ({v},{v})")]
    LoopEdge { line: usize, v: usize },
    #[error("line {line}: duplicate edge ({u},{v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: weight must be a positive integer")]
    NonPositiveWeight { line: usize },
    #[error("line {line}: vertex id {v} out of range (n = {n})")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex count must be at least 1")]
    EmptyGraph,
    #[error("edge ({u},{v}) not present in graph")]
    MissingEdge { u: usize, v: usize },
    #[error("path is not valid in this graph: {0}")]
    InvalidPath(String),
    #[error("subgraph is empty")]
    EmptySubgraph,
}

/// Undirected edge, endpoints normalized so `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
}

impl Edge {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// Simple connected undirected graph with positive integer edge weights.
///
/// Immutable after construction; all algorithms in the crate take `&self`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    /// Per vertex: `(neighbor, edge index)`, sorted by neighbor id.
    adj: Vec<Vec<(usize, usize)>>,
}

impl WeightedGraph {
    /// Builds and validates a graph from `(u, v, weight)` triples.
    ///
    /// The triple order becomes the global edge ordering. Rejects loops,
    /// duplicate edges, zero weights, out-of-range ids and disconnected
    /// inputs.
    pub fn new(n: usize, edge_list: &[(usize, usize, u64)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for (i, &(a, b, w)) in edge_list.iter().enumerate() {
            let line = i + 2; // after the header line, for error reporting
            if a >= n {
                return Err(GraphError::VertexOutOfRange { line, v: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { line, v: b, n });
            }
            if a == b {
                return Err(GraphError::LoopEdge { line, v: a });
            }
            if w == 0 {
                return Err(GraphError::NonPositiveWeight { line });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if edges.iter().any(|e: &Edge| e.u == u && e.v == v) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            edges.push(Edge { u, v, weight: w });
        }
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = WeightedGraph { n, edges, adj };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    /// Neighbors of `v` as `(neighbor, edge index)`, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Index of edge `{a, b}` in the global edge ordering.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.n || b >= self.n {
            return None;
        }
        self.adj[a]
            .iter()
            .find(|&&(nb, _)| nb == b)
            .map(|&(_, idx)| idx)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<u64> {
        self.edge_index(a, b).map(|i| self.edges[i].weight)
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Cycle space dimension `m - n + 1` of a connected graph.
    pub fn cycle_space_dimension(&self) -> usize {
        self.m() + 1 - self.n
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Parses the line-oriented edge-list format.
    ///
    /// `#` starts a comment line; the first payload line is `p <n> <m>`,
    /// followed by exactly `m` lines `e <u> <v> <w>`. Edge file order is
    /// the global edge ordering.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut triples: Vec<(usize, usize, u64)> = Vec::new();
        let mut edge_lines: Vec<usize> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(GraphError::Malformed {
                            line,
                            reason: "duplicate 'p' line".into(),
                        });
                    }
                    if fields.len() != 3 {
                        return Err(GraphError::Malformed {
                            line,
                            reason: "expected 'p <n> <m>'".into(),
                        });
                    }
                    let n = parse_usize(fields[1], line)?;
                    let m = parse_usize(fields[2], line)?;
                    if n == 0 {
                        return Err(GraphError::EmptyGraph);
                    }
                    header = Some((n, m));
                }
                "e" => {
                    let (n, _) = header.ok_or(GraphError::Malformed {
                        line,
                        reason: "'e' line before 'p' line".into(),
                    })?;
                    if fields.len() != 4 {
                        return Err(GraphError::Malformed {
                            line,
                            reason: "expected 'e <u> <v> <w>'".into(),
                        });
                    }
                    let u = parse_usize(fields[1], line)?;
                    let v = parse_usize(fields[2], line)?;
                    let w: i64 = fields[3].parse().map_err(|_| GraphError::Malformed {
                        line,
                        reason: format!("invalid integer '{}'", fields[3]),
                    })?;
                    if w <= 0 {
                        return Err(GraphError::NonPositiveWeight { line });
                    }
                    if u >= n {
                        return Err(GraphError::VertexOutOfRange { line, v: u, n });
                    }
                    if v >= n {
                        return Err(GraphError::VertexOutOfRange { line, v, n });
                    }
                    triples.push((u, v, w as u64));
                    edge_lines.push(line);
                }
                other => {
                    return Err(GraphError::Malformed {
                        line,
                        reason: format!("unknown line type '{other}'"),
                    });
                }
            }
        }
        let (n, m) = header.ok_or(GraphError::Malformed {
            line: 0,
            reason: "missing 'p' line".into(),
        })?;
        if triples.len() != m {
            return Err(GraphError::Malformed {
                line: 0,
                reason: format!("header declares m = {m} but found {} edges", triples.len()),
            });
        }
        // Re-validate through the constructor, remapping errors to file lines.
        match WeightedGraph::new(n, &triples) {
            Ok(g) => Ok(g),
            Err(e) => Err(relocate_error(e, &edge_lines)),
        }
    }

    /// Canonical text form: `p` header then edges in global order, `u < v`.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.m());
        for e in &self.edges {
            out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.weight));
        }
        out
    }

    /// Maximal 2-connected subgraphs plus bridge edges.
    ///
    /// Standard articulation-point DFS with an edge stack. Every edge lands
    /// in exactly one block; block vertex ids keep the parent's relative
    /// order. Blocks are emitted in a deterministic DFS order.
    pub fn blocks(&self) -> Vec<Subgraph> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut out: Vec<Vec<usize>> = Vec::new();

        // Iterative DFS; frames are (vertex, parent edge index, adj cursor).
        let mut frames: Vec<(usize, Option<usize>, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            frames.push((root, None, 0));
            while let Some(&mut (v, pe, ref mut cursor)) = frames.last_mut() {
                if *cursor < self.adj[v].len() {
                    let (w, ei) = self.adj[v][*cursor];
                    *cursor += 1;
                    if Some(ei) == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(ei);
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        frames.push((w, Some(ei), 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(ei);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&mut (parent, _, _)) = frames.last_mut() {
                        if low[v] >= disc[parent] {
                            // parent is a cut vertex (or root); pop one block
                            let parent_edge = self.edge_index_on_stack(&edge_stack, parent, v);
                            let mut block = Vec::new();
                            while let Some(ei) = edge_stack.pop() {
                                block.push(ei);
                                if Some(ei) == parent_edge {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            out.push(block);
                        }
                        low[parent] = low[parent].min(low[v]);
                    }
                }
            }
        }
        out.iter()
            .map(|ixs| Subgraph::from_edge_indices(self, ixs).expect("block is connected"))
            .collect()
    }

    fn edge_index_on_stack(&self, stack: &[usize], parent: usize, child: usize) -> Option<usize> {
        stack
            .iter()
            .rev()
            .find(|&&ei| {
                let e = &self.edges[ei];
                (e.u == parent && e.v == child) || (e.u == child && e.v == parent)
            })
            .copied()
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_usize(s: &str, line: usize) -> Result<usize, GraphError> {
    s.parse().map_err(|_| GraphError::Malformed {
        line,
        reason: format!("invalid integer '{s}'"),
    })
}

fn relocate_error(e: GraphError, edge_lines: &[usize]) -> GraphError {
    // Constructor errors carry synthetic line numbers (edge index + 2);
    // map them back to the actual file lines.
    let fix = |line: usize| {
        edge_lines
            .get(line.wrapping_sub(2))
            .copied()
            .unwrap_or(line)
    };
    match e {
        GraphError::LoopEdge { line, v } => GraphError::LoopEdge { line: fix(line), v },
        GraphError::DuplicateEdge { line, u, v } => GraphError::DuplicateEdge {
            line: fix(line),
            u,
            v,
        },
        GraphError::NonPositiveWeight { line } => GraphError::NonPositiveWeight { line: fix(line) },
        GraphError::VertexOutOfRange { line, v, n } => GraphError::VertexOutOfRange {
            line: fix(line),
            v,
            n,
        },
        other => other,
    }
}

/// Simple path: a sequence of distinct vertices joined by host-graph edges.
///
/// The weight is cached at construction. A single-vertex path (weight 0,
/// length 0) is allowed as the trivial path of a vertex to itself.
#[derive(Debug, Clone)]
pub struct Path {
    vertices: Vec<usize>,
    weight: u64,
}

impl Path {
    pub fn new(g: &WeightedGraph, vertices: Vec<usize>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::InvalidPath("empty vertex sequence".into()));
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            if v >= g.n() {
                return Err(GraphError::InvalidPath(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(GraphError::InvalidPath(format!("repeated vertex {v}")));
            }
            seen[v] = true;
        }
        let mut weight = 0u64;
        for pair in vertices.windows(2) {
            weight += g.weight(pair[0], pair[1]).ok_or(GraphError::MissingEdge {
                u: pair[0],
                v: pair[1],
            })?;
        }
        Ok(Path { vertices, weight })
    }

    /// Trivial path consisting of one vertex.
    pub fn single(v: usize) -> Self {
        Path {
            vertices: vec![v],
            weight: 0,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Number of edges.
    #[allow(clippy::len_without_is_empty)] // a path always has a vertex; see is_trivial
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Unordered endpoint pair, smaller id first.
    pub fn endpoints(&self) -> (usize, usize) {
        let (a, b) = (self.first(), self.last());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Edges as normalized `(min, max)` pairs in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| {
            if w[0] < w[1] {
                (w[0], w[1])
            } else {
                (w[1], w[0])
            }
        })
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges().any(|e| e == key)
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path {
            vertices,
            weight: self.weight,
        }
    }

    /// Same sequence oriented so it starts at `v`; `None` if `v` is not an
    /// endpoint.
    pub fn oriented_from(&self, v: usize) -> Option<Path> {
        if self.first() == v {
            Some(self.clone())
        } else if self.last() == v {
            Some(self.reversed())
        } else {
            None
        }
    }

    /// Contiguous subpath between two on-path vertices, reweighed against
    /// the host graph.
    pub fn subpath(&self, g: &WeightedGraph, x: usize, y: usize) -> Option<Path> {
        let i = self.vertices.iter().position(|&v| v == x)?;
        let j = self.vertices.iter().position(|&v| v == y)?;
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let vertices: Vec<usize> = self.vertices[lo..=hi].to_vec();
        Path::new(g, vertices).ok()
    }

    pub(crate) fn remap_vertices(&self, map: impl Fn(usize) -> usize) -> Path {
        Path {
            vertices: self.vertices.iter().map(|&v| map(v)).collect(),
            weight: self.weight,
        }
    }
}

/// Undirected equality: the same sequence or its reverse.
impl PartialEq for Path {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices || self.vertices.iter().rev().eq(other.vertices.iter())
    }
}

impl Eq for Path {}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("-"))
    }
}

/// A connected subgraph with vertices relabeled to `0..k`, order-preserving.
///
/// The relabeling is monotone in the parent ids, so the induced total order
/// of the parent is exactly the numeric order of the local ids and lex
/// comparisons transfer unchanged.
#[derive(Debug, Clone)]
pub struct Subgraph {
    graph: WeightedGraph,
    to_parent: Vec<usize>,
}

impl Subgraph {
    /// Edge-induced subgraph from parent edge indices (kept in parent order).
    pub fn from_edge_indices(
        parent: &WeightedGraph,
        indices: &[usize],
    ) -> Result<Self, GraphError> {
        if indices.is_empty() {
            return Err(GraphError::EmptySubgraph);
        }
        let mut verts: Vec<usize> = indices
            .iter()
            .flat_map(|&i| {
                let e = parent.edge(i);
                [e.u, e.v]
            })
            .collect();
        verts.sort_unstable();
        verts.dedup();
        Self::build(parent, verts, indices)
    }

    /// Vertex-induced subgraph: keeps every parent edge inside `vertices`.
    pub fn induced(parent: &WeightedGraph, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut verts = vertices.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if verts.is_empty() {
            return Err(GraphError::EmptySubgraph);
        }
        let inside = |v: usize| verts.binary_search(&v).is_ok();
        let indices: Vec<usize> = (0..parent.m())
            .filter(|&i| {
                let e = parent.edge(i);
                inside(e.u) && inside(e.v)
            })
            .collect();
        Self::build(parent, verts, &indices)
    }

    fn build(
        parent: &WeightedGraph,
        verts: Vec<usize>,
        indices: &[usize],
    ) -> Result<Self, GraphError> {
        let local = |v: usize| verts.binary_search(&v).unwrap();
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        let triples: Vec<(usize, usize, u64)> = sorted
            .iter()
            .map(|&i| {
                let e = parent.edge(i);
                (local(e.u), local(e.v), e.weight)
            })
            .collect();
        let graph = WeightedGraph::new(verts.len(), &triples)?;
        Ok(Subgraph {
            graph,
            to_parent: verts,
        })
    }

    /// The whole parent as a subgraph of itself (identity relabeling).
    pub fn whole(parent: &WeightedGraph) -> Self {
        Subgraph {
            graph: parent.clone(),
            to_parent: (0..parent.n()).collect(),
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn parent_vertices(&self) -> &[usize] {
        &self.to_parent
    }

    pub fn to_parent(&self, local: usize) -> usize {
        self.to_parent[local]
    }

    pub fn to_local(&self, parent: usize) -> Option<usize> {
        self.to_parent.binary_search(&parent).ok()
    }

    pub fn contains_parent_vertex(&self, v: usize) -> bool {
        self.to_local(v).is_some()
    }

    pub fn contains_parent_edge(&self, a: usize, b: usize) -> bool {
        match (self.to_local(a), self.to_local(b)) {
            (Some(x), Some(y)) => self.graph.has_edge(x, y),
            _ => false,
        }
    }

    /// Lifts a cycle of the subgraph back to parent vertex ids.
    pub fn cycle_to_parent(&self, c: &Cycle) -> Cycle {
        c.remap_monotone(|v| self.to_parent[v])
    }

    /// Lifts a path of the subgraph back to parent vertex ids.
    pub fn path_to_parent(&self, p: &Path) -> Path {
        p.remap_vertices(|v| self.to_parent[v])
    }

    /// Projects a parent path into local ids; `None` if it leaves the
    /// subgraph.
    pub fn path_to_local(&self, p: &Path) -> Option<Path> {
        let mut vertices = Vec::with_capacity(p.vertices().len());
        for &v in p.vertices() {
            vertices.push(self.to_local(v)?);
        }
        for pair in vertices.windows(2) {
            if !self.graph.has_edge(pair[0], pair[1]) {
                return None;
            }
        }
        Some(Path {
            vertices,
            weight: p.weight(),
        })
    }

    /// Projects a parent cycle into local ids; `None` if it leaves the
    /// subgraph.
    pub fn cycle_to_local(&self, c: &Cycle) -> Option<Cycle> {
        for &(u, v) in c.edge_set() {
            if !self.contains_parent_edge(u, v) {
                return None;
            }
        }
        Some(c.remap_monotone(|v| self.to_local(v).unwrap()))
    }
}
