//! Graphs, directed multigraphs, and the simplicial complexes built from them.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::{Face, GroundSet, MAX_GROUND};

/// Finite simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<u64>,
    /// Endpoint pairs `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
}

/// `{"vertices": ["a", "b"], "edges": [["a", "b"]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    /// Domination number.
    pub gamma: usize,
    /// Independent domination number.
    pub i_dom: usize,
    /// Vertex cover number.
    pub alpha0: usize,
    /// Matching number.
    pub beta1: usize,
}

impl Graph {
    pub fn new<V, S>(vertices: V, edges: &[(&str, &str)]) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        Self::from_json(&GraphJson {
            vertices,
            edges: edges
                .iter()
                .map(|(u, v)| [u.to_string(), v.to_string()])
                .collect(),
        })
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let table = GroundSet::new(json.vertices.iter().cloned())?;
        let n = table.len();
        let mut adj = vec![0u64; n];
        let mut edges = Vec::new();
        for [u, v] in &json.edges {
            let (iu, iv) = (lookup(&table, u)?, lookup(&table, v)?);
            if iu == iv {
                return Err(Error::Input(format!("loop at `{u}` in a simple graph")));
            }
            if adj[iu] >> iv & 1 == 1 {
                return Err(Error::Input(format!("repeated edge {u}-{v}")));
            }
            adj[iu] |= 1 << iv;
            adj[iv] |= 1 << iu;
            edges.push((iu.min(iv), iu.max(iv)));
        }
        edges.sort_unstable();
        Ok(Graph {
            names: json.vertices.clone(),
            adj,
            edges,
        })
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Names used for edges as ground elements: `"u-v"`.
    pub fn edge_names(&self) -> Vec<String> {
        self.edges
            .iter()
            .map(|&(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect()
    }

    fn vertex_ground(&self) -> (Arc<GroundSet>, Face) {
        let g = GroundSet::new(self.names.iter().cloned()).expect("validated names");
        (Arc::new(g), Face::full(self.names.len()))
    }

    fn edge_ground(&self) -> Result<(Arc<GroundSet>, Face)> {
        let g = GroundSet::new(self.edge_names())?;
        Ok((Arc::new(g), Face::full(self.edges.len())))
    }

    fn closed_nbhd(&self, v: usize) -> u64 {
        self.adj[v] | 1 << v
    }

    fn full_mask(&self) -> u64 {
        Face::full(self.names.len()).bits()
    }

    pub fn is_independent(&self, set: u64) -> bool {
        Face::from_bits(set).iter().all(|v| self.adj[v] & set == 0)
    }

    pub fn is_dominating(&self, set: u64) -> bool {
        (0..self.names.len()).all(|v| self.closed_nbhd(v) & set != 0)
    }

    pub fn is_vertex_cover(&self, set: u64) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| set >> u & 1 == 1 || set >> v & 1 == 1)
    }

    /// Union of endpoints of the edges with indices in `edge_set`.
    fn covered(&self, edge_set: u64) -> u64 {
        Face::from_bits(edge_set)
            .iter()
            .fold(0, |acc, e| acc | 1 << self.edges[e].0 | 1 << self.edges[e].1)
    }

    fn edges_meet(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.edges[a], self.edges[b]);
        x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1
    }

    pub fn is_edge_cover(&self, edge_set: u64) -> bool {
        self.covered(edge_set) == self.full_mask()
    }

    /// Every edge meets some edge of `edge_set`.
    pub fn is_edge_dominating(&self, edge_set: u64) -> bool {
        (0..self.edges.len())
            .all(|e| Face::from_bits(edge_set).iter().any(|f| self.edges_meet(e, f)))
    }

    /// `Ind(G)`: independent sets.
    pub fn independence_complex(&self) -> Result<Complex> {
        let (u, ground) = self.vertex_ground();
        Complex::from_predicate(u, ground, |f| self.is_independent(f.bits()))
    }

    /// `Dom(G)`: sets whose complement dominates.
    pub fn dominance_complex(&self) -> Result<Complex> {
        let (u, ground) = self.vertex_ground();
        let full = self.full_mask();
        Complex::from_predicate(u, ground, |f| self.is_dominating(full & !f.bits()))
    }

    /// `EC(G)`: edge sets whose complement is an edge cover.
    pub fn edge_cover_complex(&self) -> Result<Complex> {
        let (u, ground) = self.edge_ground()?;
        let full = ground.bits();
        Complex::from_predicate(u, ground, |f| self.is_edge_cover(full & !f.bits()))
    }

    /// `ED(G)`: edge sets whose complement dominates the line dual.
    pub fn edge_dominance_complex(&self) -> Result<Complex> {
        let (u, ground) = self.edge_ground()?;
        let full = ground.bits();
        Complex::from_predicate(u, ground, |f| self.is_edge_dominating(full & !f.bits()))
    }

    /// Graph on the edges, two edges adjacent when they share an endpoint.
    pub fn line_dual(&self) -> Graph {
        let m = self.edges.len();
        let mut adj = vec![0u64; m];
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if self.edges_meet(a, b) {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                    edges.push((a, b));
                }
            }
        }
        Graph {
            names: self.edge_names(),
            adj,
            edges,
        }
    }

    /// Exact `γ`, `i`, `α₀`, `β₁` by exhaustive search.
    pub fn invariants(&self) -> Result<GraphInvariants> {
        let n = self.names.len();
        if n > 26 {
            return Err(Error::Input(format!(
                "exhaustive invariants over {n} vertices are too large"
            )));
        }
        let mut gamma = n;
        let mut i_dom = n;
        let mut alpha0 = n;
        for set in 0..1u64 << n {
            let size = set.count_ones() as usize;
            if size < gamma.max(i_dom).max(alpha0) {
                if self.is_dominating(set) {
                    gamma = gamma.min(size);
                    if self.is_independent(set) {
                        i_dom = i_dom.min(size);
                    }
                }
                if self.is_vertex_cover(set) {
                    alpha0 = alpha0.min(size);
                }
            }
        }
        Ok(GraphInvariants {
            gamma,
            i_dom,
            alpha0,
            beta1: self.matching_number(),
        })
    }

    fn matching_number(&self) -> usize {
        fn go(edges: &[(usize, usize)], used: u64) -> usize {
            match edges.split_first() {
                None => 0,
                Some((&(u, v), rest)) => {
                    let skip = go(rest, used);
                    if used >> u & 1 == 0 && used >> v & 1 == 0 {
                        skip.max(1 + go(rest, used | 1 << u | 1 << v))
                    } else {
                        skip
                    }
                }
            }
        }
        go(&self.edges, 0)
    }

    fn components(&self) -> usize {
        let mut seen = 0u64;
        let mut count = 0;
        for v in 0..self.names.len() {
            if seen >> v & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier = 1u64 << v;
            while frontier != 0 {
                seen |= frontier;
                frontier = Face::from_bits(frontier)
                    .iter()
                    .fold(0, |acc, u| acc | self.adj[u])
                    & !seen;
            }
        }
        count
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components() == self.names.len()
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.names.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let cu = color[u].expect("colored before push");
                for w in Face::from_bits(self.adj[u]).iter() {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

fn lookup(table: &GroundSet, name: &str) -> Result<usize> {
    table
        .index_of(name)
        .ok_or_else(|| Error::UnknownElement(name.to_owned()))
}

/// Arc of a directed multigraph; endpoints are vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiArc {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// Directed multigraph with distinguished vertices `s` and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    arcs: Vec<DiArc>,
    s: usize,
    t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `{"vertices": [...], "arcs": [{"id": "A", "src": "s", "tgt": "u"}], "s": "s", "t": "t"}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub vertices: Vec<String>,
    pub arcs: Vec<ArcJson>,
    pub s: String,
    pub t: String,
}

impl Digraph {
    /// Arcs are `(id, source, target)`.
    pub fn new<V, S>(vertices: V, arcs: &[(&str, &str, &str)], s: &str, t: &str) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::from_json(&DigraphJson {
            vertices: vertices.into_iter().map(Into::into).collect(),
            arcs: arcs
                .iter()
                .map(|(id, src, tgt)| ArcJson {
                    id: id.to_string(),
                    src: src.to_string(),
                    tgt: tgt.to_string(),
                })
                .collect(),
            s: s.to_owned(),
            t: t.to_owned(),
        })
    }

    pub fn from_json(json: &DigraphJson) -> Result<Self> {
        let table = GroundSet::new(json.vertices.iter().cloned())?;
        if json.arcs.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(json.arcs.len()));
        }
        let mut ids = HashSet::new();
        let arcs = json
            .arcs
            .iter()
            .map(|a| {
                if a.id.is_empty() {
                    return Err(Error::EmptyName);
                }
                if !ids.insert(a.id.as_str()) {
                    return Err(Error::DuplicateElement(a.id.clone()));
                }
                Ok(DiArc {
                    id: a.id.clone(),
                    src: lookup(&table, &a.src)?,
                    tgt: lookup(&table, &a.tgt)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Digraph {
            names: json.vertices.clone(),
            arcs,
            s: lookup(&table, &json.s)?,
            t: lookup(&table, &json.t)?,
        })
    }

    pub fn to_json(&self) -> DigraphJson {
        DigraphJson {
            vertices: self.names.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcJson {
                    id: a.id.clone(),
                    src: self.names[a.src].clone(),
                    tgt: self.names[a.tgt].clone(),
                })
                .collect(),
            s: self.names[self.s].clone(),
            t: self.names[self.t].clone(),
        }
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn arcs(&self) -> &[DiArc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> &str {
        &self.names[self.s]
    }

    pub fn sink(&self) -> &str {
        &self.names[self.t]
    }

    fn arc_index(&self, id: &str) -> Result<usize> {
        self.arcs
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::UnknownElement(id.to_owned()))
    }

    fn arc_ground(&self) -> (Arc<GroundSet>, Face) {
        let g = GroundSet::new(self.arcs.iter().map(|a| a.id.clone())).expect("validated ids");
        (Arc::new(g), Face::full(self.arcs.len()))
    }

    /// Vertices reachable from `from` using only arcs with indices in `arcs`.
    fn reachable(&self, from: usize, arcs: u64) -> u64 {
        let mut seen = 1u64 << from;
        loop {
            let next = Face::from_bits(arcs)
                .iter()
                .map(|e| &self.arcs[e])
                .filter(|a| seen >> a.src & 1 == 1)
                .fold(seen, |acc, a| acc | 1 << a.tgt);
            if next == seen {
                return seen;
            }
            seen = next;
        }
    }

    /// Whether the arcs with indices in `arcs` contain a path from `s` to `t`.
    pub fn has_st_path(&self, arcs: u64) -> bool {
        self.reachable(self.s, arcs) >> self.t & 1 == 1
    }

    /// `PF`: arc sets containing no path from `s` to `t`.
    pub fn path_free_complex(&self) -> Result<Complex> {
        let (u, ground) = self.arc_ground();
        Complex::from_predicate(u, ground, |f| !self.has_st_path(f.bits()))
    }

    /// `PM`: arc sets whose complement contains a path from `s` to `t`.
    pub fn path_missing_complex(&self) -> Result<Complex> {
        let (u, ground) = self.arc_ground();
        let full = ground.bits();
        Complex::from_predicate(u, ground, |f| self.has_st_path(full & !f.bits()))
    }

    /// Ids of arcs lying on no simple `s → t` path.
    pub fn useless_arcs(&self) -> BTreeSet<String> {
        let mut used = 0u64;
        if self.s != self.t {
            self.mark_paths(self.s, 1 << self.s, 0, &mut used);
        }
        self.arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| used >> i & 1 == 0)
            .map(|(_, a)| a.id.clone())
            .collect()
    }

    fn mark_paths(&self, at: usize, visited: u64, path: u64, used: &mut u64) {
        for (i, a) in self.arcs.iter().enumerate() {
            if a.src != at || visited >> a.tgt & 1 == 1 {
                continue;
            }
            if a.tgt == self.t {
                *used |= path | 1 << i;
            } else {
                self.mark_paths(a.tgt, visited | 1 << a.tgt, path | 1 << i, used);
            }
        }
    }

    /// Some nontrivial closed walk exists; anti-parallel arcs count.
    pub fn has_cycle(&self) -> bool {
        let all = Face::full(self.arcs.len()).bits();
        self.arcs
            .iter()
            .any(|a| self.reachable(a.tgt, all) >> a.src & 1 == 1)
    }

    /// Names of vertices that are the source of some arc.
    pub fn nonsinks(&self) -> BTreeSet<String> {
        self.arcs.iter().map(|a| self.names[a.src].clone()).collect()
    }

    pub fn delete_arc(&self, id: &str) -> Result<Digraph> {
        let i = self.arc_index(id)?;
        let mut d = self.clone();
        d.arcs.remove(i);
        Ok(d)
    }

    /// Contracts an arc whose source is `s`, merging its target into `s`.
    ///
    /// Other arcs keep their ids; parallel arcs and loops produced by the
    /// merge are kept. If the target was `t`, the result has `s = t`.
    pub fn contract_arc(&self, id: &str) -> Result<Digraph> {
        let i = self.arc_index(id)?;
        let e = &self.arcs[i];
        if e.src != self.s {
            return Err(Error::Input(format!(
                "arc `{id}` does not start at the source `{}`",
                self.names[self.s]
            )));
        }
        let w = e.tgt;
        if w == self.s {
            return self.delete_arc(id);
        }
        // drop vertex w and shift the indices above it
        let remap = |v: usize| -> usize {
            let v = if v == w { self.s } else { v };
            if v > w {
                v - 1
            } else {
                v
            }
        };
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, a)| DiArc {
                id: a.id.clone(),
                src: remap(a.src),
                tgt: remap(a.tgt),
            })
            .collect();
        let mut names = self.names.clone();
        names.remove(w);
        Ok(Digraph {
            names,
            arcs,
            s: remap(self.s),
            t: remap(self.t),
        })
    }
}
