//! Regular graphs, simplicial graph complexes and their filtrations.
//!
//! A filtration is a vertex ordering `b_0, ..., b_m` together with the edge
//! strata `E_0 ⊆ E_1 ⊆ ... ⊆ E_m`. At step `k + 1` the new vertex must be a
//! neighbour of the earliest vertex `b_{k'}` that still has a neighbour
//! outside `V_k`; the edges joining it to `V_k` form the stratum `F_{k+1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A vertex label. Labels are compared lexicographically, which is also the
/// tie-break rule used by the filtration algorithms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex(String);

impl Vertex {
    pub fn new(label: impl Into<String>) -> Result<Self, GraphError> {
        let label = label.into();
        if label.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        Ok(Vertex(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An undirected edge, stored with `lo < hi`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(a)),
        }
    }

    pub fn endpoints(&self) -> (&Vertex, &Vertex) {
        (&self.lo, &self.hi)
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        &self.lo == v || &self.hi == v
    }

    /// The endpoint different from `v`, if `v` is an endpoint.
    pub fn other(&self, v: &Vertex) -> Option<&Vertex> {
        if &self.lo == v {
            Some(&self.hi)
        } else if &self.hi == v {
            Some(&self.lo)
        } else {
            None
        }
    }

    /// This edge oriented away from `from`.
    pub fn oriented_from(&self, from: &Vertex) -> Option<OrientedEdge> {
        self.other(from).map(|to| OrientedEdge {
            source: from.clone(),
            target: to.clone(),
        })
    }

    pub fn orientations(&self) -> [OrientedEdge; 2] {
        let e = OrientedEdge {
            source: self.lo.clone(),
            target: self.hi.clone(),
        };
        [e.reversed(), e]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrientedEdge {
    pub source: Vertex,
    pub target: Vertex,
}

impl OrientedEdge {
    pub fn new(source: Vertex, target: Vertex) -> Result<Self, GraphError> {
        if source == target {
            return Err(GraphError::SelfLoop(source));
        }
        Ok(OrientedEdge { source, target })
    }

    pub fn reversed(&self) -> OrientedEdge {
        OrientedEdge {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    pub fn undirected(&self) -> Edge {
        Edge::new(self.source.clone(), self.target.clone()).expect("oriented edges have distinct endpoints")
    }
}

impl fmt::Display for OrientedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex labels must be non-empty")]
    EmptyLabel,
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0} has an endpoint outside the vertex set")]
    DanglingEndpoint(Edge),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(Vertex),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NonRegular {
        vertex: Vertex,
        degree: usize,
        expected: usize,
    },
    #[error("a complex needs at least one member graph")]
    EmptyComplex,
    #[error("intersection of members {0} and {1} is not a member of the complex")]
    IntersectionNotMember(usize, usize),
    #[error("intersection of members {0} and {1} is not a regular graph")]
    IntersectionNotRegular(usize, usize),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("graph is disconnected: {0} unreachable vertices after {1}")]
    Disconnected(usize, Vertex),
    #[error("no filtration exists: {0}")]
    NoFiltration(Box<StuckState>),
}

/// A finite simple graph; the output of [`intersect`] and the union graph of a complex.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new(vertices: BTreeSet<Vertex>, edges: BTreeSet<Edge>) -> Result<Self, GraphError> {
        for e in &edges {
            let (a, b) = e.endpoints();
            if !vertices.contains(a) || !vertices.contains(b) {
                return Err(GraphError::DanglingEndpoint(e.clone()));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn degree(&self, v: &Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Neighbours of `v` in label order.
    pub fn neighbours(&self, v: &Vertex) -> BTreeSet<Vertex> {
        self.edges.iter().filter_map(|e| e.other(v).cloned()).collect()
    }

    /// Edges emanating from `v`, oriented away from it.
    pub fn edges_at(&self, v: &Vertex) -> Vec<OrientedEdge> {
        self.edges.iter().filter_map(|e| e.oriented_from(v)).collect()
    }

    /// The common degree, or the first vertex whose degree differs from the first vertex's.
    pub fn regularity(&self) -> Result<usize, GraphError> {
        let degrees: BTreeMap<&Vertex, usize> = self.vertices.iter().map(|v| (v, self.degree(v))).collect();
        let expected = degrees.values().next().copied().unwrap_or(0);
        match degrees.iter().find(|(_, d)| **d != expected) {
            Some((v, d)) => Err(GraphError::NonRegular {
                vertex: (*v).clone(),
                degree: *d,
                expected,
            }),
            None => Ok(expected),
        }
    }

    fn adjacency(&self) -> BTreeMap<&Vertex, BTreeSet<&Vertex>> {
        let mut adj: BTreeMap<&Vertex, BTreeSet<&Vertex>> =
            self.vertices.iter().map(|v| (v, BTreeSet::new())).collect();
        for e in &self.edges {
            let (a, b) = e.endpoints();
            adj.get_mut(a).expect("endpoint").insert(b);
            adj.get_mut(b).expect("endpoint").insert(a);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.iter().next() else {
            return true;
        };
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in &adj[v] {
                if seen.insert(*w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

/// A named regular graph, one member of a simplicial graph complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegularGraph {
    name: String,
    graph: Graph,
    degree: usize,
}

/// Builds a regular graph from vertex labels and unordered edge pairs.
pub fn build_regular_graph<S: AsRef<str>>(
    name: &str,
    vertices: &[S],
    edge_pairs: &[(S, S)],
) -> Result<RegularGraph, GraphError> {
    let mut vs = BTreeSet::new();
    for v in vertices {
        let v = Vertex::new(v.as_ref())?;
        if !vs.insert(v.clone()) {
            return Err(GraphError::DuplicateVertex(v));
        }
    }
    let mut es = BTreeSet::new();
    for (a, b) in edge_pairs {
        let e = Edge::new(Vertex::new(a.as_ref())?, Vertex::new(b.as_ref())?)?;
        if !es.insert(e.clone()) {
            return Err(GraphError::DuplicateEdge(e));
        }
    }
    RegularGraph::from_graph(name, Graph::new(vs, es)?)
}

impl RegularGraph {
    pub fn from_graph(name: &str, graph: Graph) -> Result<Self, GraphError> {
        let degree = graph.regularity()?;
        Ok(RegularGraph {
            name: name.to_string(),
            graph,
            degree,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        self.graph.vertices()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        self.graph.edges()
    }
}

/// Vertex-wise and edge-wise intersection. The result need not be regular.
pub fn intersect(g1: &Graph, g2: &Graph) -> Graph {
    Graph {
        vertices: g1.vertices.intersection(&g2.vertices).cloned().collect(),
        edges: g1.edges.intersection(&g2.edges).cloned().collect(),
    }
}

/// A finite collection of regular graphs closed under non-empty intersection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialGraphComplex {
    members: Vec<RegularGraph>,
    union: Graph,
}

/// Checks that every non-empty pairwise intersection of members is itself a
/// regular member of the collection.
pub fn validate_complex(members: Vec<RegularGraph>) -> Result<SimplicialGraphComplex, GraphError> {
    if members.is_empty() {
        return Err(GraphError::EmptyComplex);
    }
    for (b, gb) in members.iter().enumerate() {
        for (d, gd) in members.iter().enumerate().skip(b + 1) {
            let meet = intersect(gb.graph(), gd.graph());
            if meet.is_empty() {
                continue;
            }
            if meet.regularity().is_err() {
                return Err(GraphError::IntersectionNotRegular(b, d));
            }
            if !members.iter().any(|m| m.graph() == &meet) {
                return Err(GraphError::IntersectionNotMember(b, d));
            }
        }
    }
    let mut union = Graph::default();
    for m in &members {
        union.vertices.extend(m.vertices().iter().cloned());
        union.edges.extend(m.edges().iter().cloned());
    }
    Ok(SimplicialGraphComplex { members, union })
}

impl SimplicialGraphComplex {
    pub fn single(member: RegularGraph) -> Self {
        validate_complex(vec![member]).expect("a single regular graph is a complex")
    }

    pub fn members(&self) -> &[RegularGraph] {
        &self.members
    }

    /// The union graph `(V(G), E(G))`.
    pub fn union(&self) -> &Graph {
        &self.union
    }

    /// Indices of the members whose edge set contains `e`.
    pub fn members_containing(&self, e: &Edge) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i].edges().contains(e))
            .collect()
    }

    /// The smallest member (fewest edges, then lowest index) containing every edge of `edges`.
    fn smallest_member_containing(&self, edges: &[Edge]) -> Option<usize> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| edges.iter().all(|e| m.edges().contains(e)))
            .min_by_key(|(i, m)| (m.edges().len(), *i))
            .map(|(i, _)| i)
    }
}

/// A vertex ordering with its edge strata.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Filtration {
    ordering: Vec<Vertex>,
    strata: Vec<BTreeSet<Edge>>,
    downward: Vec<Vec<OrientedEdge>>,
    members: Vec<Option<usize>>,
}

impl Filtration {
    pub fn ordering(&self) -> &[Vertex] {
        &self.ordering
    }

    /// The cumulative edge sets `E_0 ⊆ ... ⊆ E_m`.
    pub fn strata(&self) -> &[BTreeSet<Edge>] {
        &self.strata
    }

    /// Edges of `F_j` oriented from `b_j` down to earlier vertices, in order of the earlier vertex.
    pub fn downward_edges(&self, j: usize) -> &[OrientedEdge] {
        &self.downward[j]
    }

    /// `d_j`, the number of edges of `F_j`.
    pub fn degrees(&self) -> Vec<usize> {
        self.downward.iter().map(Vec::len).collect()
    }

    /// For complexes, the member graph that supplied the edges of step `j` (`None` for `j = 0`).
    pub fn step_members(&self) -> &[Option<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn position(&self, v: &Vertex) -> Option<usize> {
        self.ordering.iter().position(|w| w == v)
    }

    pub fn total_edges(&self) -> usize {
        self.downward.iter().map(Vec::len).sum()
    }
}

/// Where the search for a complex filtration got stuck.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StuckState {
    /// The longest partial ordering reached.
    pub ordering: Vec<Vertex>,
    /// A vertex that could not be added next.
    pub blocked_vertex: Vertex,
    /// Its edges into the partial ordering, which no single member contains.
    pub blocked_edges: Vec<Edge>,
}

impl fmt::Display for StuckState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<&str> = self.ordering.iter().map(Vertex::label).collect();
        let edges: Vec<String> = self.blocked_edges.iter().map(ToString::to_string).collect();
        write!(
            f,
            "after [{}], adding {} needs edges {{{}}} which lie in no single member",
            order.join(", "),
            self.blocked_vertex,
            edges.join(", ")
        )
    }
}

/// Partial filtration state shared by the regular and complex constructions.
struct Builder<'a> {
    graph: &'a Graph,
    ordering: Vec<Vertex>,
    placed: BTreeSet<Vertex>,
}

impl<'a> Builder<'a> {
    fn new(graph: &'a Graph, seed: &Vertex) -> Result<Self, GraphError> {
        if !graph.contains_vertex(seed) {
            return Err(GraphError::UnknownVertex(seed.clone()));
        }
        Ok(Builder {
            graph,
            ordering: vec![seed.clone()],
            placed: BTreeSet::from([seed.clone()]),
        })
    }

    fn done(&self) -> bool {
        self.placed.len() == self.graph.vertices().len()
    }

    /// Unplaced neighbours of `b_{k'}`, where `k'` is the earliest placed vertex with one.
    fn admissible(&self) -> Result<BTreeSet<Vertex>, GraphError> {
        for b in &self.ordering {
            let outside: BTreeSet<Vertex> = self
                .graph
                .neighbours(b)
                .into_iter()
                .filter(|w| !self.placed.contains(w))
                .collect();
            if !outside.is_empty() {
                return Ok(outside);
            }
        }
        Err(GraphError::Disconnected(
            self.graph.vertices().len() - self.placed.len(),
            self.ordering.last().expect("seeded").clone(),
        ))
    }

    /// Edges joining `v` to already placed vertices, ordered by the placement index of the far end.
    fn edges_into_placed(&self, v: &Vertex) -> Vec<OrientedEdge> {
        self.ordering
            .iter()
            .filter_map(|b| {
                let e = Edge::new(v.clone(), b.clone()).ok()?;
                self.graph.contains_edge(&e).then(|| OrientedEdge {
                    source: v.clone(),
                    target: b.clone(),
                })
            })
            .collect()
    }

    fn push(&mut self, v: Vertex) {
        self.placed.insert(v.clone());
        self.ordering.push(v);
    }

    fn pop(&mut self) {
        if let Some(v) = self.ordering.pop() {
            self.placed.remove(&v);
        }
    }
}

fn assemble(ordering: Vec<Vertex>, downward: Vec<Vec<OrientedEdge>>, members: Vec<Option<usize>>) -> Filtration {
    let mut strata = Vec::with_capacity(ordering.len());
    let mut acc = BTreeSet::new();
    for step in &downward {
        acc.extend(step.iter().map(OrientedEdge::undirected));
        strata.push(acc.clone());
    }
    Filtration {
        ordering,
        strata,
        downward,
        members,
    }
}

/// Filtration of a connected regular graph starting at `seed`.
///
/// Among admissible next vertices the lexicographically smallest label wins.
pub fn filter_regular(g: &RegularGraph, seed: &Vertex) -> Result<Filtration, GraphError> {
    filter_graph(g.graph(), seed)
}

fn filter_graph(g: &Graph, seed: &Vertex) -> Result<Filtration, GraphError> {
    let mut b = Builder::new(g, seed)?;
    let mut downward = vec![Vec::new()];
    while !b.done() {
        let next = b.admissible()?.into_iter().next().expect("non-empty admissible set");
        downward.push(b.edges_into_placed(&next));
        b.push(next);
    }
    let members = vec![None; downward.len()];
    Ok(assemble(b.ordering, downward, members))
}

/// Filtration of a simplicial graph complex starting at `seed`.
///
/// Each step must take all of its new edges from a single member graph. The
/// admissible choices are explored depth-first in label order; `NoFiltration`
/// is reported only once every choice has been exhausted.
pub fn filter_complex(c: &SimplicialGraphComplex, seed: &Vertex) -> Result<Filtration, GraphError> {
    let union = c.union();
    let mut b = Builder::new(union, seed)?;
    if !union.is_connected() {
        let reachable = reachable_from(union, seed);
        return Err(GraphError::Disconnected(
            union.vertices().len() - reachable,
            seed.clone(),
        ));
    }
    let mut downward = vec![Vec::new()];
    let mut members = vec![None];
    let mut deepest: Option<StuckState> = None;
    if search(c, &mut b, &mut downward, &mut members, &mut deepest) {
        return Ok(assemble(b.ordering, downward, members));
    }
    let stuck = deepest.expect("a failed search records a stuck state");
    Err(GraphError::NoFiltration(Box::new(stuck)))
}

fn reachable_from(g: &Graph, seed: &Vertex) -> usize {
    let mut seen = BTreeSet::from([seed.clone()]);
    let mut stack = vec![seed.clone()];
    while let Some(v) = stack.pop() {
        for w in g.neighbours(&v) {
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen.len()
}

fn search(
    c: &SimplicialGraphComplex,
    b: &mut Builder<'_>,
    downward: &mut Vec<Vec<OrientedEdge>>,
    members: &mut Vec<Option<usize>>,
    deepest: &mut Option<StuckState>,
) -> bool {
    if b.done() {
        return true;
    }
    let candidates = match b.admissible() {
        Ok(c) => c,
        Err(_) => return false,
    };
    for v in candidates {
        let new_edges = b.edges_into_placed(&v);
        let undirected: Vec<Edge> = new_edges.iter().map(OrientedEdge::undirected).collect();
        let Some(member) = c.smallest_member_containing(&undirected) else {
            if deepest.as_ref().is_none_or(|s| s.ordering.len() < b.ordering.len()) {
                *deepest = Some(StuckState {
                    ordering: b.ordering.clone(),
                    blocked_vertex: v.clone(),
                    blocked_edges: undirected,
                });
            }
            continue;
        };
        log::trace!("filtration step {}: {} via member {}", b.ordering.len(), v, member);
        downward.push(new_edges);
        members.push(Some(member));
        b.push(v);
        if search(c, b, downward, members, deepest) {
            return true;
        }
        b.pop();
        downward.pop();
        members.pop();
    }
    false
}
