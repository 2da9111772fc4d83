//! Seeded graph generators for test corpora.
//!
//! All generators draw from a ChaCha8 stream seeded with a 64-bit value, so
//! a `(family, parameters, seed)` triple reproduces the same graph on any
//! machine.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::WeightedGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("{0}")]
    InvalidParameter(String),
    #[error(
        "cannot delete {requested} edges: only {deletable} are deletable without disconnecting"
    )]
    InfeasibleDeletions { requested: usize, deletable: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Partial2Tree,
    Outerplanar,
    Wheel,
}

/// Parameters for the seeded generators. `delete_count` applies to the
/// partial-2-tree family, `chords` (attempt count) to the outerplanar
/// family, `rim_weight`/`spoke_weight` to the wheel family.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub delete_count: usize,
    pub chords: usize,
    pub max_weight: u64,
    pub rim_weight: u64,
    pub spoke_weight: u64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            family,
            n,
            delete_count: 0,
            chords: 2 * n,
            max_weight: 100,
            rim_weight: 1,
            spoke_weight: 100,
            seed,
        }
    }
}

/// Dispatches to the family generator.
pub fn generate(spec: &GeneratorSpec) -> Result<WeightedGraph, GenerateError> {
    match spec.family {
        Family::Partial2Tree => gen_partial_2tree(spec),
        Family::Outerplanar => gen_outerplanar(spec),
        Family::Wheel => gen_wheel(spec.n, spec.rim_weight, spec.spoke_weight),
    }
}

fn check_common(spec: &GeneratorSpec) -> Result<(), GenerateError> {
    if spec.n < 3 {
        return Err(GenerateError::InvalidParameter(format!(
            "n must be at least 3, got {}",
            spec.n
        )));
    }
    if spec.max_weight == 0 {
        return Err(GenerateError::InvalidParameter(
            "max_weight must be positive".into(),
        ));
    }
    Ok(())
}

/// Random weighted partial 2-tree: a 2-tree grown by the inductive
/// definition (every new vertex joins both endpoints of a uniformly chosen
/// existing edge), uniform weights in `[1, max_weight]`, then
/// `delete_count` random connectivity-preserving edge deletions.
pub fn gen_partial_2tree(spec: &GeneratorSpec) -> Result<WeightedGraph, GenerateError> {
    check_common(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let mut triples: Vec<(usize, usize, u64)> = Vec::with_capacity(2 * n - 3);
    let w = |rng: &mut ChaCha8Rng| rng.gen_range(1..=spec.max_weight);
    triples.push((0, 1, w(&mut rng)));
    triples.push((1, 2, w(&mut rng)));
    triples.push((0, 2, w(&mut rng)));
    for v in 3..n {
        let (a, b, _) = triples[rng.gen_range(0..triples.len())];
        triples.push((a, v, w(&mut rng)));
        triples.push((b, v, w(&mut rng)));
    }
    let deletable = triples.len() - (n - 1);
    if spec.delete_count > deletable {
        return Err(GenerateError::InfeasibleDeletions {
            requested: spec.delete_count,
            deletable,
        });
    }
    for _ in 0..spec.delete_count {
        let candidates: Vec<usize> = (0..triples.len())
            .filter(|&i| stays_connected(n, &triples, i))
            .collect();
        if candidates.is_empty() {
            return Err(GenerateError::InfeasibleDeletions {
                requested: spec.delete_count,
                deletable: 0,
            });
        }
        let victim = candidates[rng.gen_range(0..candidates.len())];
        triples.remove(victim);
    }
    Ok(WeightedGraph::new(n, &triples).expect("generator output is valid"))
}

fn stays_connected(n: usize, triples: &[(usize, usize, u64)], skip: usize) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v, _)) in triples.iter().enumerate() {
        if i == skip {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

/// Wheel: hub 0 joined to a rim cycle on `1..n`, rim edges weighted `a`,
/// spokes weighted `b`.
///
/// With `b > (n-1) * a` every rim arc is lighter than a spoke pair, which
/// makes all faces lex short; the defaults a=1, b=100 satisfy this for
/// every wheel the oracles can handle.
pub fn gen_wheel(n: usize, a: u64, b: u64) -> Result<WeightedGraph, GenerateError> {
    if n < 4 {
        return Err(GenerateError::InvalidParameter(format!(
            "a wheel needs at least 4 vertices, got {n}"
        )));
    }
    if a == 0 || b == 0 {
        return Err(GenerateError::InvalidParameter(
            "wheel weights must be positive".into(),
        ));
    }
    let mut triples: Vec<(usize, usize, u64)> = Vec::with_capacity(2 * (n - 1));
    for i in 1..(n - 1) {
        triples.push((i, i + 1, a));
    }
    triples.push((1, n - 1, a));
    for i in 1..n {
        triples.push((0, i, b));
    }
    Ok(WeightedGraph::new(n, &triples).expect("wheel is valid"))
}

/// Random weighted outerplanar graph: a cycle on `0..n` plus chords from
/// `chords` random draws, kept only when they neither cross nor duplicate
/// earlier chords (nested chords keep the drawing outerplanar).
pub fn gen_outerplanar(spec: &GeneratorSpec) -> Result<WeightedGraph, GenerateError> {
    check_common(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let mut triples: Vec<(usize, usize, u64)> = Vec::new();
    let w = |rng: &mut ChaCha8Rng| rng.gen_range(1..=spec.max_weight);
    for i in 0..(n - 1) {
        triples.push((i, i + 1, w(&mut rng)));
    }
    triples.push((0, n - 1, w(&mut rng)));
    let mut chords: Vec<(usize, usize)> = Vec::new();
    for _ in 0..spec.chords {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        if i == j || j - i == 1 || (i == 0 && j == n - 1) {
            continue;
        }
        if chords.contains(&(i, j)) {
            continue;
        }
        let crosses = chords
            .iter()
            .any(|&(c, d)| (c < i && i < d && d < j) || (i < c && c < j && j < d));
        if crosses {
            continue;
        }
        chords.push((i, j));
        triples.push((i, j, w(&mut rng)));
    }
    Ok(WeightedGraph::new(n, &triples).expect("outerplanar generator output is valid"))
}

/// Random connected weighted graph of any treewidth: a random recursive
/// spanning tree plus `extra_edges` distinct extra edges. Test-corpus
/// support for properties that hold on arbitrary graphs.
pub fn gen_connected(n: usize, extra_edges: usize, max_weight: u64, seed: u64) -> WeightedGraph {
    assert!(n >= 2, "need at least 2 vertices");
    assert!(max_weight >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples: Vec<(usize, usize, u64)> = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        triples.push((parent, v, rng.gen_range(1..=max_weight)));
    }
    let mut non_edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if !triples
                .iter()
                .any(|&(a, b, _)| (a.min(b), a.max(b)) == (u, v))
            {
                non_edges.push((u, v));
            }
        }
    }
    for _ in 0..extra_edges.min(non_edges.len()) {
        let idx = rng.gen_range(0..non_edges.len());
        let (u, v) = non_edges.swap_remove(idx);
        triples.push((u, v, rng.gen_range(1..=max_weight)));
    }
    WeightedGraph::new(n, &triples).expect("tree plus extras is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_outerplanar, is_partial_2tree};

    #[test]
    fn two_tree_base_case_is_k3() {
        let spec = GeneratorSpec::new(Family::Partial2Tree, 3, 7);
        let g = gen_partial_2tree(&spec).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn two_tree_edge_count() {
        let spec = GeneratorSpec::new(Family::Partial2Tree, 5, 11);
        let g = gen_partial_2tree(&spec).unwrap();
        assert_eq!(g.m(), 2 * 5 - 3);
    }

    #[test]
    fn partial_2trees_are_recognized() {
        for seed in 0..100 {
            let mut spec = GeneratorSpec::new(Family::Partial2Tree, 4 + (seed as usize % 17), seed);
            spec.delete_count = (seed as usize % 4).min(spec.n - 2);
            let g = gen_partial_2tree(&spec).unwrap();
            assert!(is_partial_2tree(&g), "seed {seed}");
            assert!(WeightedGraph::parse(&g.to_text()).is_ok());
        }
    }

    #[test]
    fn infeasible_deletions_error() {
        let mut spec = GeneratorSpec::new(Family::Partial2Tree, 5, 3);
        spec.delete_count = 5; // 7 edges, spanning tree needs 4 -> max 3
        assert!(matches!(
            gen_partial_2tree(&spec).unwrap_err(),
            GenerateError::InfeasibleDeletions { deletable: 3, .. }
        ));
    }

    #[test]
    fn wheel_shape_and_weights() {
        let g = gen_wheel(9, 1, 100).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.m(), 16);
        assert_eq!(g.edges().iter().filter(|e| e.weight == 1).count(), 8);
        assert_eq!(g.edges().iter().filter(|e| e.weight == 100).count(), 8);
        assert_eq!(g.degree(0), 8);
        assert!(gen_wheel(3, 1, 1).is_err());
    }

    #[test]
    fn wheel_on_4_vertices_is_k4() {
        let g = gen_wheel(4, 2, 2).unwrap();
        assert_eq!(g.m(), 6);
        for u in 0..4 {
            for v in (u + 1)..4 {
                assert!(g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn outerplanar_outputs_are_recognized() {
        for seed in 0..100 {
            let spec = GeneratorSpec::new(Family::Outerplanar, 4 + (seed as usize % 17), seed);
            let g = gen_outerplanar(&spec).unwrap();
            assert!(is_outerplanar(&g).unwrap(), "seed {seed}");
            assert!(WeightedGraph::parse(&g.to_text()).is_ok());
        }
    }

    #[test]
    fn no_chord_attempts_gives_plain_cycle() {
        let mut spec = GeneratorSpec::new(Family::Outerplanar, 4, 5);
        spec.chords = 0;
        let g = gen_outerplanar(&spec).unwrap();
        assert_eq!(g.m(), 4);
    }

    #[test]
    fn generation_is_deterministic() {
        for family in [Family::Partial2Tree, Family::Outerplanar] {
            let spec = GeneratorSpec::new(family, 12, 99);
            let a = generate(&spec).unwrap();
            let b = generate(&spec).unwrap();
            assert_eq!(a.to_text(), b.to_text());
        }
    }

    #[test]
    fn connected_generator_is_connected_and_deterministic() {
        for seed in 0..50 {
            let g = gen_connected(9, 4, 10, seed);
            assert_eq!(g.n(), 9);
            assert_eq!(g.m(), 8 + 4);
            let h = gen_connected(9, 4, 10, seed);
            assert_eq!(g.to_text(), h.to_text());
        }
    }
}
