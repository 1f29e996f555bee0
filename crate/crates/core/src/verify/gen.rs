//! Seeded pseudo-random instances. Equal seeds give equal instances.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::face::{Face, GroundSet};
use crate::graph::{Digraph, Graph};

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Random tree by attaching each vertex to an earlier one, then one random
/// edge deleted (when there is an edge to delete).
pub fn random_forest(n: usize, seed: u64) -> Graph {
    random_forest_with(&mut rng(seed, 0), n)
}

pub fn random_forest_with(rng: &mut impl Rng, n: usize) -> Graph {
    let names = vertex_names(n);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    if !edges.is_empty() {
        let k = rng.gen_range(0..edges.len());
        edges.remove(k);
    }
    graph_from_indices(&names, &edges)
}

pub(crate) fn graph_from_indices(names: &[String], edges: &[(usize, usize)]) -> Graph {
    let pairs: Vec<(&str, &str)> = edges
        .iter()
        .map(|&(u, v)| (names[u].as_str(), names[v].as_str()))
        .collect();
    Graph::new(names.iter().cloned(), &pairs).expect("generated graph is simple")
}

/// Random simple graph, each edge present with probability `p`.
pub fn random_graph_with(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let names = vertex_names(n);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    graph_from_indices(&names, &edges)
}

/// Random complex on `x0, …, x{n-1}`: up to `n + 1` generators, each
/// containing every element with probability `density`; occasionally void.
pub fn random_complex(ground: usize, density: f64, seed: u64) -> Complex {
    random_complex_with(&mut rng(seed, 1), ground, density)
}

pub fn random_complex_with(rng: &mut impl Rng, ground: usize, density: f64) -> Complex {
    let names: Vec<String> = (0..ground).map(|i| format!("x{i}")).collect();
    let universe = Arc::new(GroundSet::new(names).expect("generated names"));
    let full = Face::full(ground);
    if rng.gen_ratio(1, 16) {
        return Complex::from_parts(universe, full, []);
    }
    let density = density.clamp(0.0, 1.0);
    let count = rng.gen_range(1..=ground + 1);
    let generators: Vec<Face> = (0..count)
        .map(|_| (0..ground).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    Complex::from_parts(universe, full, generators)
}

/// Names `s`, `t`, then `a`, `b`, …; with one vertex `s = t`.
pub(crate) fn digraph_vertex_names(n: usize) -> Vec<String> {
    let mut names = vec!["s".to_string()];
    if n >= 2 {
        names.push("t".into());
    }
    names.extend((2..n).map(|i| ((b'a' + (i - 2) as u8) as char).to_string()));
    names
}

/// Random digraph with arcs `e0, e1, …` drawn uniformly between distinct
/// vertices (loops only when there is a single vertex).
pub fn random_digraph(v: usize, arcs: usize, seed: u64) -> Digraph {
    random_digraph_with(&mut rng(seed, 2), v, arcs)
}

pub fn random_digraph_with(rng: &mut impl Rng, v: usize, arcs: usize) -> Digraph {
    let v = v.max(1);
    let names = digraph_vertex_names(v);
    let arcs: Vec<(String, &str, &str)> = (0..arcs)
        .map(|i| {
            let src = rng.gen_range(0..v);
            let tgt = if v == 1 {
                0
            } else {
                (src + rng.gen_range(1..v)) % v
            };
            (format!("e{i}"), names[src].as_str(), names[tgt].as_str())
        })
        .collect();
    let refs: Vec<(&str, &str, &str)> = arcs.iter().map(|(i, s, t)| (i.as_str(), *s, *t)).collect();
    let t = if v == 1 { "s" } else { "t" };
    Digraph::new(names.iter().cloned(), &refs, "s", t).expect("generated digraph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_shapes() {
        let f = random_forest(1, 7);
        assert_eq!((f.vertex_count(), f.edge_count()), (1, 0));
        for seed in 0..20 {
            let c = random_complex(0, 0.5, seed);
            assert!(c.is_void() || c.is_irrelevant());
            let d = random_digraph(2, 1, seed);
            assert_eq!(d.arc_count(), 1);
            let a = &d.arcs()[0];
            assert_ne!(a.src, a.tgt);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(random_complex(5, 0.5, 42), random_complex(5, 0.5, 42));
        assert_eq!(random_digraph(4, 6, 9), random_digraph(4, 6, 9));
        assert_eq!(random_forest(8, 3), random_forest(8, 3));
        let distinct = (0..10u64)
            .map(|s| format!("{:?}", random_complex(5, 0.5, s)))
            .collect::<std::collections::HashSet<_>>();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn forests_are_forests() {
        for seed in 0..30 {
            let f = random_forest(1 + (seed as usize % 8), seed);
            assert!(f.is_forest());
            assert!(f.vertex_count() <= 1 || f.edge_count() + 2 == f.vertex_count());
        }
    }
}
