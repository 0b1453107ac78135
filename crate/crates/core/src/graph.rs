//! Finite directed graphs with no sources, and the hereditary / saturated
//! vertex-set combinatorics everything else is built on.
//!
//! Edge orientation follows the Cuntz–Krieger convention used throughout the
//! crate: an edge `e` goes from its source `s(e)` to its range `r(e)`, and a
//! path `e_1 e_2 … e_n` satisfies `s(e_i) = r(e_{i+1})`, so reading a path
//! left to right walks *backwards* along the edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of vertex ids, ordered lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<String>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.0.contains(v)
    }

    pub fn insert(&mut self, v: impl Into<String>) -> bool {
        self.0.insert(v.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).cloned().collect())
    }

    /// Ordering used for every listing of vertex sets: by size, then
    /// lexicographically on the sorted member ids.
    pub fn size_lex_cmp(&self, other: &VertexSet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

impl<S: Into<String>> FromIterator<S> for VertexSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        VertexSet(iter.into_iter().map(Into::into).collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a String;
    type IntoIter = std::collections::btree_set::Iter<'a, String>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    /// `s(e)`
    pub src: String,
    /// `r(e)`
    pub rng: String,
}

impl Edge {
    pub fn new(id: impl Into<String>, src: impl Into<String>, rng: impl Into<String>) -> Self {
        Edge {
            id: id.into(),
            src: src.into(),
            rng: rng.into(),
        }
    }
}

/// Unvalidated graph data, as read from or written to JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl RawGraph {
    pub fn validate(&self) -> Result<DirectedGraph> {
        DirectedGraph::validate(self)
    }
}

/// A validated finite graph: nonempty, every edge endpoint declared, and
/// every vertex the range of at least one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    edge_index: BTreeMap<String, usize>,
    in_edges: BTreeMap<String, Vec<usize>>,
    out_edges: BTreeMap<String, Vec<usize>>,
}

impl DirectedGraph {
    pub fn validate(raw: &RawGraph) -> Result<Self> {
        let mut vertex_ids = BTreeSet::new();
        for v in &raw.vertices {
            if !vertex_ids.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        if vertex_ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut edges = raw.edges.clone();
        edges.sort();
        for pair in edges.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateEdge(pair[0].id.clone()));
            }
        }
        for e in &edges {
            for end in [&e.src, &e.rng] {
                if !vertex_ids.contains(end) {
                    return Err(Error::DanglingEndpoint {
                        edge: e.id.clone(),
                        vertex: end.clone(),
                    });
                }
            }
        }

        let vertices: Vec<String> = vertex_ids.into_iter().collect();
        let mut in_edges: BTreeMap<String, Vec<usize>> =
            vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
        let mut out_edges = in_edges.clone();
        let mut edge_index = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            edge_index.insert(e.id.clone(), i);
            in_edges.get_mut(&e.rng).expect("declared").push(i);
            out_edges.get_mut(&e.src).expect("declared").push(i);
        }
        if let Some((v, _)) = in_edges.iter().find(|(_, es)| es.is_empty()) {
            return Err(Error::SourceVertex(v.clone()));
        }

        Ok(DirectedGraph {
            vertices,
            edges,
            edge_index,
            in_edges,
            out_edges,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices.iter().cloned().collect()
    }

    /// Edges sorted by id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.in_edges.contains_key(v)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edge_index.get(id).map(|&i| &self.edges[i])
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Fails with `UnknownVertex` on the first member not declared in the graph.
    pub fn check_vertices(&self, set: &VertexSet) -> Result<()> {
        match set.iter().find(|v| !self.has_vertex(v)) {
            Some(v) => Err(Error::UnknownVertex(v.to_string())),
            None => Ok(()),
        }
    }

    /// `vE^1`: the edges with range `v`, ordered by edge id.
    pub fn in_edges(&self, v: &str) -> Result<Vec<&Edge>> {
        self.in_edges
            .get(v)
            .map(|es| es.iter().map(|&i| &self.edges[i]).collect())
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    fn in_iter<'a>(&'a self, v: &str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.in_edges
            .get(v)
            .into_iter()
            .flatten()
            .map(|&i| &self.edges[i])
    }

    fn out_iter<'a>(&'a self, v: &str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.out_edges
            .get(v)
            .into_iter()
            .flatten()
            .map(|&i| &self.edges[i])
    }

    pub fn is_hereditary(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|v| self.in_iter(v).all(|e| set.contains(&e.src)))
    }

    /// Smallest superset closed under `r(e) ∈ K ⇒ s(e) ∈ K`.
    pub fn hereditary_closure(&self, set: &VertexSet) -> VertexSet {
        let mut closed = set.clone();
        let mut queue: VecDeque<&str> = set.iter().collect();
        while let Some(v) = queue.pop_front() {
            for e in self.in_iter(v) {
                if closed.insert(e.src.clone()) {
                    queue.push_back(&e.src);
                }
            }
        }
        closed
    }

    /// Absorbs every vertex all of whose in-edges have their source in the set.
    pub fn saturate(&self, set: &VertexSet) -> Result<VertexSet> {
        if !self.is_hereditary(set) {
            return Err(Error::NotHereditary);
        }
        let mut closed = set.clone();
        loop {
            let absorbed: Vec<&String> = self
                .vertices
                .iter()
                .filter(|v| !closed.contains(v))
                .filter(|v| self.in_iter(v).all(|e| closed.contains(&e.src)))
                .collect();
            if absorbed.is_empty() {
                return Ok(closed);
            }
            for v in absorbed {
                closed.insert(v.clone());
            }
            closed = self.hereditary_closure(&closed);
        }
    }

    pub fn saturated_hereditary_closure(&self, set: &VertexSet) -> VertexSet {
        let mut current = set.clone();
        loop {
            let next = self
                .saturate(&self.hereditary_closure(&current))
                .expect("hereditary closure is hereditary");
            if next == current {
                return current;
            }
            current = next;
        }
    }

    pub fn is_saturated_hereditary(&self, set: &VertexSet) -> bool {
        self.saturated_hereditary_closure(set) == *set
    }

    /// `S` together with every `r(λ)` for a path `λ` with `s(λ) ∈ S`.
    pub fn reachable_ranges(&self, set: &VertexSet) -> VertexSet {
        let mut reached = set.clone();
        let mut queue: VecDeque<&str> = set.iter().collect();
        while let Some(v) = queue.pop_front() {
            for e in self.out_iter(v) {
                if reached.insert(e.rng.clone()) {
                    queue.push_back(&e.rng);
                }
            }
        }
        reached
    }

    /// `{s(μ) : μ ∈ vE*}`, including `v` itself.
    pub fn ancestors(&self, v: &str) -> VertexSet {
        let mut single = VertexSet::new();
        single.insert(v);
        self.hereditary_closure(&single)
    }

    /// The graph `E \ EH`: vertices outside `H` and the edges whose source is
    /// outside `H`. The result is not validated.
    pub fn subgraph_without(&self, hereditary: &VertexSet) -> Result<RawGraph> {
        if !self.is_hereditary(hereditary) {
            return Err(Error::NotHereditary);
        }
        Ok(RawGraph {
            vertices: self
                .vertices
                .iter()
                .filter(|v| !hereditary.contains(v))
                .cloned()
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| !hereditary.contains(&e.src))
                .cloned()
                .collect(),
        })
    }

    /// Forward closures of the strongly connected components that carry at
    /// least one edge, deduplicated and sorted by size then lexicographically.
    pub fn component_tails(&self) -> Vec<VertexSet> {
        let mut pg = DiGraph::<(), ()>::with_capacity(self.vertices.len(), self.edges.len());
        let nodes: BTreeMap<&str, _> = self
            .vertices
            .iter()
            .map(|v| (v.as_str(), pg.add_node(())))
            .collect();
        for e in &self.edges {
            pg.add_edge(nodes[e.src.as_str()], nodes[e.rng.as_str()], ());
        }
        let mut tails = BTreeSet::new();
        for component in tarjan_scc(&pg) {
            let carries_edge = component.len() > 1 || pg.contains_edge(component[0], component[0]);
            if !carries_edge {
                continue;
            }
            let members: VertexSet = component
                .iter()
                .map(|n| self.vertices[n.index()].clone())
                .collect();
            tails.insert(self.reachable_ranges(&members));
        }
        let mut tails: Vec<VertexSet> = tails.into_iter().collect();
        tails.sort_by(VertexSet::size_lex_cmp);
        tails
    }

    /// Every saturated hereditary set, sorted by size then lexicographically.
    ///
    /// In a finite graph with no sources the complement of a saturated
    /// hereditary set is exactly a union of component tails, so the sets are
    /// produced by closing the tails under union.
    pub fn enumerate_saturated_hereditary(&self) -> Vec<VertexSet> {
        let generators = self.component_tails();
        let mut unions: BTreeSet<VertexSet> = BTreeSet::new();
        unions.insert(VertexSet::new());
        let mut frontier = vec![VertexSet::new()];
        while let Some(current) = frontier.pop() {
            for g in &generators {
                let next = current.union(g);
                if !unions.contains(&next) {
                    unions.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        let all = self.all_vertices();
        let mut sets: Vec<VertexSet> = unions.iter().map(|u| all.difference(u)).collect();
        sets.sort_by(VertexSet::size_lex_cmp);
        sets
    }

    /// Whether `cycle` lies in `within` and each of its vertices `r(μ_i)`
    /// receives no edge from `within` other than `μ_i`.
    pub fn is_entrance_free(&self, cycle: &Cycle, within: &VertexSet) -> bool {
        cycle.edges().iter().all(|id| {
            let e = self.edge(id).expect("cycle edges belong to the graph");
            within.contains(&e.rng)
                && self
                    .in_iter(&e.rng)
                    .filter(|f| within.contains(&f.src))
                    .all(|f| f.id == e.id)
        })
    }

    /// One canonical representative of every cycle with no entrance in `within`.
    pub fn entrance_free_cycles(&self, within: &VertexSet) -> Vec<Cycle> {
        // Vertices with exactly one in-edge from `within`; an entrance-free
        // cycle is a cycle of this partial predecessor map.
        let mut only_in_edge: BTreeMap<&str, &Edge> = BTreeMap::new();
        for v in within.iter().filter(|v| self.has_vertex(v)) {
            let mut from_within = self.in_iter(v).filter(|e| within.contains(&e.src));
            if let (Some(e), None) = (from_within.next(), from_within.next()) {
                only_in_edge.insert(v, e);
            }
        }

        let mut found = BTreeSet::new();
        for &start in only_in_edge.keys() {
            let mut seen = BTreeSet::new();
            let mut edges = Vec::new();
            let mut current = start;
            while let Some(e) = only_in_edge.get(current) {
                edges.push(e.id.clone());
                current = e.src.as_str();
                if current == start {
                    found.insert(Cycle::canonical(edges));
                    break;
                }
                if !seen.insert(current) {
                    break;
                }
            }
        }
        found.into_iter().collect()
    }
}

/// A nonempty edge sequence `e_1 … e_n` with `s(e_i) = r(e_{i+1})`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<String>);

impl Path {
    pub fn new(graph: &DirectedGraph, edges: Vec<String>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::NotAPath("no edges".into()));
        }
        let resolved = resolve_edges(graph, &edges)?;
        for (i, pair) in resolved.windows(2).enumerate() {
            if pair[0].src != pair[1].rng {
                return Err(Error::NotAPath(format!(
                    "s({}) = {} but r({}) = {} at position {}",
                    pair[0].id,
                    pair[0].src,
                    pair[1].id,
                    pair[1].rng,
                    i + 1
                )));
            }
        }
        Ok(Path(edges))
    }

    pub fn edges(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `r(e_1)`
    pub fn range<'g>(&self, graph: &'g DirectedGraph) -> &'g str {
        &graph.edge(&self.0[0]).expect("validated").rng
    }

    /// `s(e_n)`
    pub fn source<'g>(&self, graph: &'g DirectedGraph) -> &'g str {
        &graph
            .edge(self.0.last().expect("nonempty"))
            .expect("validated")
            .src
    }
}

fn resolve_edges<'g>(graph: &'g DirectedGraph, ids: &[String]) -> Result<Vec<&'g Edge>> {
    ids.iter()
        .map(|id| graph.edge(id).ok_or_else(|| Error::UnknownEdge(id.clone())))
        .collect()
}

/// A closed path with pairwise distinct edge sources, stored as the
/// lexicographically least rotation of its edge ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Cycle(Vec<String>);

impl Cycle {
    pub fn new(graph: &DirectedGraph, edges: Vec<String>) -> Result<Self> {
        let path = Path::new(graph, edges).map_err(|e| match e {
            Error::NotAPath(msg) => Error::NotACycle(msg),
            other => other,
        })?;
        if path.range(graph) != path.source(graph) {
            return Err(Error::NotACycle("path does not close up".into()));
        }
        let mut sources = BTreeSet::new();
        for id in path.edges() {
            let src = &graph.edge(id).expect("validated").src;
            if !sources.insert(src) {
                return Err(Error::NotACycle(format!("vertex {src} is visited twice")));
            }
        }
        Ok(Cycle::canonical(path.0))
    }

    fn canonical(edges: Vec<String>) -> Self {
        let best = (0..edges.len())
            .map(|k| rotate(&edges, k))
            .min()
            .unwrap_or_default();
        Cycle(best)
    }

    pub fn edges(&self) -> &[String] {
        &self.0
    }

    /// `|μ|`
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The stored edge sequence started at position `k`.
    pub fn rotation(&self, k: usize) -> Vec<String> {
        rotate(&self.0, k % self.0.len().max(1))
    }

    /// `r(μ)` of the canonical rotation.
    pub fn base<'g>(&self, graph: &'g DirectedGraph) -> &'g str {
        &graph
            .edge(&self.0[0])
            .expect("cycle edges belong to the graph")
            .rng
    }

    /// `{r(μ_i)}`
    pub fn vertices(&self, graph: &DirectedGraph) -> VertexSet {
        self.0
            .iter()
            .map(|id| {
                graph
                    .edge(id)
                    .expect("cycle edges belong to the graph")
                    .rng
                    .clone()
            })
            .collect()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(""))
    }
}

fn rotate(edges: &[String], k: usize) -> Vec<String> {
    edges[k..].iter().chain(&edges[..k]).cloned().collect()
}
