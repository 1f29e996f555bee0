//! Exhaustive instance families at tiny sizes.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::Complex;
use crate::face::{Face, GroundSet};
use crate::graph::{Digraph, Graph};

use super::gen::{digraph_vertex_names, graph_from_indices};

/// Every simplicial complex on the ground `x0, …, x{n-1}`, void included.
///
/// Enumerates all families of subsets and keeps the downward-closed ones,
/// so `n` is capped at 4.
pub fn all_complexes(n: usize) -> Vec<Complex> {
    assert!(n <= 4, "exhaustive enumeration is limited to 4 elements");
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let universe = Arc::new(GroundSet::new(names).expect("generated names"));
    let subsets = 1usize << n;
    let mut out = Vec::new();
    for family in 0u64..1 << subsets {
        let member = |s: usize| family >> s & 1 == 1;
        let closed = (0..subsets)
            .filter(|&s| member(s))
            .all(|s| (0..n).filter(|i| s >> i & 1 == 1).all(|i| member(s & !(1 << i))));
        if closed {
            let faces = (0..subsets)
                .filter(|&s| member(s))
                .map(|s| Face::from_bits(s as u64));
            out.push(Complex::from_parts(universe.clone(), Face::full(n), faces));
        }
    }
    out
}

/// All complexes on grounds of size `0..=max`.
pub fn all_complexes_up_to(max: usize) -> Vec<Complex> {
    (0..=max).flat_map(all_complexes).collect()
}

/// One tree per isomorphism class on exactly `n` vertices, `n ≥ 1`.
///
/// Every tree has a labeling in which each vertex after the first hangs off
/// an earlier one, so walking all such parent arrays reaches every class;
/// duplicates are removed by a canonical encoding rooted at the center.
pub fn unlabeled_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut parents = vec![0usize; n];
    loop {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (parents[i], i)).collect();
        if seen.insert(canonical_tree(n, &edges)) {
            out.push(graph_from_indices(&names, &edges));
        }
        // odometer over parents[i] ∈ 0..i
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            if parents[i] + 1 < i {
                parents[i] += 1;
                parents[i + 1..].iter_mut().for_each(|p| *p = 0);
                break;
            }
        }
    }
}

/// All trees with `1..=max` vertices up to isomorphism.
pub fn unlabeled_trees_up_to(max: usize) -> Vec<Graph> {
    (1..=max).flat_map(unlabeled_trees).collect()
}

fn canonical_tree(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    // peel leaves to find the center
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&root| encode(&adj, root, usize::MAX))
        .min()
        .expect("a tree has a center")
}

fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| encode(adj, w, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Every digraph on `1..=max_v` vertices with at most `max_arcs` arcs, as
/// arc multisets over ordered vertex pairs (loops included). Each vertex
/// count is paired with `s ≠ t` (when possible) and with `s = t`.
pub fn all_digraphs(max_v: usize, max_arcs: usize) -> Vec<Digraph> {
    let mut out = Vec::new();
    for v in 1..=max_v {
        let names = digraph_vertex_names(v);
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (0..v).map(move |b| (a, b))).collect();
        let mut multisets = Vec::new();
        multisets_up_to(pairs.len(), max_arcs, 0, &mut Vec::new(), &mut multisets);
        let terminals: Vec<&str> = if v >= 2 { vec!["t", "s"] } else { vec!["s"] };
        for t in terminals {
            for ms in &multisets {
                let arcs: Vec<(String, &str, &str)> = ms
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| {
                        let (a, b) = pairs[p];
                        (format!("e{i}"), names[a].as_str(), names[b].as_str())
                    })
                    .collect();
                let refs: Vec<(&str, &str, &str)> =
                    arcs.iter().map(|(i, a, b)| (i.as_str(), *a, *b)).collect();
                out.push(
                    Digraph::new(names.iter().cloned(), &refs, "s", t)
                        .expect("enumerated digraph is valid"),
                );
            }
        }
    }
    out
}

fn multisets_up_to(kinds: usize, max: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(cur.clone());
    if cur.len() == max {
        return;
    }
    for k in from..kinds {
        cur.push(k);
        multisets_up_to(kinds, max, k, cur, out);
        cur.pop();
    }
}
