//! Canonical simple undirected graphs, edge identity and matchings.
//!
//! Vertices are dense indices `0..n`. Edges are stored once as `(u, v)` with
//! `u < v`, sorted lexicographically; the position of an edge in that list is
//! its canonical identity and is what certificates refer to.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Index of an edge in [`Graph::edges`].
pub type EdgeId = usize;

/// An undirected edge, always stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[Vertex; 2]", into = "[Vertex; 2]")]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl From<[Vertex; 2]> for Edge {
    fn from(p: [Vertex; 2]) -> Self {
        Edge::new(p[0], p[1])
    }
}

impl From<Edge> for [Vertex; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from(p: (Vertex, Vertex)) -> Self {
        Edge::new(p.0, p.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge #{position}: self-loop at vertex {vertex}")]
    SelfLoop { position: usize, vertex: Vertex },
    #[error("edge #{position}: duplicate edge {edge}")]
    DuplicateEdge { position: usize, edge: Edge },
    #[error("edge #{position}: vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange {
        position: usize,
        vertex: Vertex,
        vertex_count: usize,
    },
    #[error("{given} labels given for {vertex_count} vertices")]
    LabelCount { given: usize, vertex_count: usize },
}

/// Immutable simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds the canonical graph on `vertex_count` vertices. Edge order and
    /// orientation in the input do not matter.
    pub fn from_edges<I, E>(vertex_count: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut list: Vec<(Edge, usize)> = Vec::new();
        for (position, e) in edges.into_iter().enumerate() {
            let e: Edge = e.into();
            if e.v >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    position,
                    vertex: e.v,
                    vertex_count,
                });
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { position, vertex: e.u });
            }
            list.push((e, position));
        }
        list.sort();
        for w in list.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GraphError::DuplicateEdge {
                    position: w[1].1.max(w[0].1),
                    edge: w[0].0,
                });
            }
        }
        let edges: Vec<Edge> = list.into_iter().map(|(e, _)| e).collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for e in &edges {
            adjacency[e.u].push(e.v);
            adjacency[e.v].push(e.u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            adjacency,
            edges,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph, GraphError> {
        if labels.len() != self.vertex_count {
            return Err(GraphError::LabelCount {
                given: labels.len(),
                vertex_count: self.vertex_count,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.vertex_count && b < self.vertex_count && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Canonical identity of the edge `{a, b}`.
    pub fn edge_id(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        self.edges.binary_search(&Edge::new(a, b)).ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of `v`, falling back to the index.
    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Subgraph induced by `vertices`, relabelled densely in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut position = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| position[e.u] != usize::MAX && position[e.v] != usize::MAX)
            .map(|e| Edge::new(position[e.u], position[e.v]));
        Graph::from_edges(vertices.len(), edges).expect("induced subgraph of a simple graph")
    }

    /// Graph with `removed` vertices deleted; remaining vertices keep their
    /// relative order.
    pub fn without_vertices(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut keep = vec![true; self.vertex_count];
        for &v in removed {
            keep[v] = false;
        }
        let kept: Vec<Vertex> = (0..self.vertex_count).filter(|&v| keep[v]).collect();
        (self.induced(&kept), kept)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Why a set of vertex pairs is not a matching of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingViolation {
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("edges {first} and {second} share endpoint {vertex}")]
    SharedEndpoint { vertex: Vertex, first: Edge, second: Edge },
}

/// Checks that every pair is an edge of `g` and that no vertex is used twice.
pub fn check_matching(g: &Graph, edges: &[Edge]) -> Result<(), MatchingViolation> {
    let mut owner: Vec<Option<Edge>> = vec![None; g.vertex_count()];
    for &e in edges {
        if !g.has_edge(e.u, e.v) {
            return Err(MatchingViolation::NotAnEdge(e));
        }
        for x in [e.u, e.v] {
            if let Some(first) = owner[x] {
                return Err(MatchingViolation::SharedEndpoint {
                    vertex: x,
                    first,
                    second: e,
                });
            }
            owner[x] = Some(e);
        }
    }
    Ok(())
}

pub fn is_matching(g: &Graph, edges: &[Edge]) -> bool {
    check_matching(g, edges).is_ok()
}

/// A set of pairwise vertex-disjoint edges of some host graph, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = Edge>) -> Result<Matching, MatchingViolation> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        check_matching(g, &edges)?;
        edges.sort_unstable();
        Ok(Matching { edges })
    }

    pub fn from_ids(g: &Graph, ids: &[EdgeId]) -> Result<Matching, MatchingViolation> {
        Matching::new(g, ids.iter().map(|&i| g.edge(i)))
    }

    pub fn empty() -> Matching {
        Matching::default()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// The endpoint set `T` of the matching, sorted.
    pub fn endpoints(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.edges.iter().flat_map(|e| [e.u, e.v]).collect();
        out.sort_unstable();
        out
    }

    /// Canonical edge identities in `g`; panics if an edge is absent.
    pub fn edge_ids(&self, g: &Graph) -> Vec<EdgeId> {
        self.edges
            .iter()
            .map(|e| g.edge_id(e.u, e.v).expect("matching edge missing from graph"))
            .collect()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Lexicographic enumeration of the matchings of a fixed size, as sorted
/// lists of canonical edge identities.
pub struct MatchingIds<'g> {
    graph: &'g Graph,
    size: usize,
    stack: Vec<EdgeId>,
    used: Vec<bool>,
    started: bool,
    finished: bool,
}

impl<'g> MatchingIds<'g> {
    pub fn new(graph: &'g Graph, size: usize) -> Self {
        MatchingIds {
            graph,
            size,
            stack: Vec::with_capacity(size),
            used: vec![false; graph.vertex_count()],
            started: false,
            finished: false,
        }
    }

    fn push(&mut self, id: EdgeId) {
        let e = self.graph.edge(id);
        self.used[e.u] = true;
        self.used[e.v] = true;
        self.stack.push(id);
    }

    fn pop(&mut self) -> Option<EdgeId> {
        let id = self.stack.pop()?;
        let e = self.graph.edge(id);
        self.used[e.u] = false;
        self.used[e.v] = false;
        Some(id)
    }

    /// Extends the stack to full size starting from candidate `next`,
    /// backtracking as needed.
    fn fill(&mut self, mut next: EdgeId) -> bool {
        let m = self.graph.edge_count();
        loop {
            if self.stack.len() == self.size {
                return true;
            }
            let need = self.size - self.stack.len();
            let mut found = None;
            let mut i = next;
            while i + need <= m {
                let e = self.graph.edge(i);
                if !self.used[e.u] && !self.used[e.v] {
                    found = Some(i);
                    break;
                }
                i += 1;
            }
            match found {
                Some(i) => {
                    self.push(i);
                    next = i + 1;
                }
                None => match self.pop() {
                    Some(j) => next = j + 1,
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for MatchingIds<'_> {
    type Item = Vec<EdgeId>;

    fn next(&mut self) -> Option<Vec<EdgeId>> {
        if self.finished {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            if self.size == 0 {
                self.finished = true;
                return Some(Vec::new());
            }
            self.fill(0)
        } else {
            match self.pop() {
                Some(last) => self.fill(last + 1),
                None => false,
            }
        };
        if ok {
            Some(self.stack.clone())
        } else {
            self.finished = true;
            None
        }
    }
}

/// Every matching of exactly `size` edges, once each, in lexicographic order
/// of canonical edge identities.
pub fn matchings_of_size(g: &Graph, size: usize) -> impl Iterator<Item = Matching> + '_ {
    MatchingIds::new(g, size).map(move |ids| Matching {
        edges: ids.iter().map(|&i| g.edge(i)).collect(),
    })
}

/// Size of a maximum matching, by exhaustive augmentation over sizes.
/// Exponential; intended for the same small graphs as the exact solvers.
pub fn maximum_matching_size(g: &Graph) -> usize {
    let mut k = 0;
    while MatchingIds::new(g, k + 1).next().is_some() {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_edges(1, Vec::<(usize, usize)>::new()).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn path_and_cycle_degrees() {
        let p = path(3);
        assert_eq!((0..3).map(|v| p.degree(v)).collect::<Vec<_>>(), vec![1, 2, 1]);
        let c = cycle(4);
        assert!((0..4).all(|v| c.degree(v) == 2));
    }

    #[test]
    fn order_and_orientation_do_not_matter() {
        let a = Graph::from_edges(4, [(3, 0), (1, 2), (0, 1), (2, 3)]).unwrap();
        assert_eq!(a, cycle(4));
        assert_eq!(a.edges()[0], Edge::new(0, 1));
        assert_eq!(a.edge_id(3, 0), Some(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(2, [(0, 0)]),
            Err(GraphError::SelfLoop { position: 0, vertex: 0 })
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn matching_checks() {
        let p = path(3);
        assert!(is_matching(&p, &[]));
        assert!(matches!(
            check_matching(&p, &[Edge::new(0, 1), Edge::new(1, 2)]),
            Err(MatchingViolation::SharedEndpoint { vertex: 1, .. })
        ));
        assert!(matches!(
            check_matching(&p, &[Edge::new(0, 2)]),
            Err(MatchingViolation::NotAnEdge(_))
        ));
        assert!(is_matching(&cycle(4), &[Edge::new(0, 1), Edge::new(2, 3)]));
    }

    #[test]
    fn cycle_matchings() {
        let c = cycle(4);
        assert_eq!(matchings_of_size(&c, 1).count(), 4);
        let two: Vec<Matching> = matchings_of_size(&c, 2).collect();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].edges(), &[Edge::new(0, 1), Edge::new(2, 3)]);
        assert_eq!(two[1].edges(), &[Edge::new(0, 3), Edge::new(1, 2)]);
        assert_eq!(matchings_of_size(&c, 3).count(), 0);
        assert_eq!(matchings_of_size(&c, 0).count(), 1);
    }

    #[test]
    fn k4_has_three_perfect_matchings() {
        // disjoint pairs of K4 edges: 01|23, 02|13, 03|12
        assert_eq!(matchings_of_size(&complete(4), 2).count(), 3);
        assert_eq!(maximum_matching_size(&complete(4)), 2);
    }

    #[test]
    fn induced_and_components() {
        let c = cycle(6);
        let (g, kept) = c.without_vertices(&[0, 3]);
        assert_eq!(kept, vec![1, 2, 4, 5]);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3]]);
    }
}
