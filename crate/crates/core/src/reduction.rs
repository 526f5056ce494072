//! Reduction from zero forcing to edge forcing.
//!
//! From `G` on vertices `0..n` build `Ḡ` on `0..2n`, where `x' = x + n`.
//! `Ḡ` keeps every edge of `G` (class E), joins each `x` to its copy `x'`
//! (class E′) and joins `y` to `x'` whenever `y` is a neighbor of `x` in `G`
//! (class E″). Zero forcing sets of `G` lift to edge-forcing sets of `Ḡ` of
//! the same size, and the two minimum values agree.
//!
//! Projecting back is the delicate direction. The straightforward rule maps
//! an E″ edge `(u, v')` to `(u, u')` and an E edge `(a, b)` to `(a, a')`,
//! but that rule is not sound on its own: on the path `1 - 0 - 3 - 2` the
//! single edge `(0, 1')` forces `Ḡ` while `{0}` does not force the path.
//! [`project_to_zero_forcing`] therefore tries the replacement rule first,
//! then every choice of one `G`-endpoint per edge, and finally an exact
//! search of the same size, reporting which route succeeded.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forcing::is_zero_forcing_set;
use crate::graph::{check_matching, Edge, Graph, Matching, MatchingViolation, Vertex};
use crate::solver::{min_edge_forcing, min_zero_forcing, SolverError, SolverOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    /// An edge of `G`.
    Base,
    /// `(x, x')`.
    Copy,
    /// `(y, x')` with `y` adjacent to `x`.
    Cross,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("not a matching of the lifted graph: {0}")]
    NotMatching(#[from] MatchingViolation),
    #[error("vertex {vertex} is not a vertex of the base graph ({n} vertices)")]
    NotBaseVertex { vertex: Vertex, n: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Clone, Debug)]
pub struct ReductionMap {
    pub base: Graph,
    pub lifted: Graph,
    /// Class of each lifted edge, indexed by canonical edge identity.
    pub edge_classes: Vec<EdgeClass>,
}

impl ReductionMap {
    pub fn n(&self) -> usize {
        self.base.vertex_count()
    }

    /// `(x, x')` as dense indices of `Ḡ`.
    pub fn vertex_pair(&self, x: Vertex) -> (Vertex, Vertex) {
        (x, x + self.n())
    }

    pub fn is_primed(&self, v: Vertex) -> bool {
        v >= self.n()
    }

    pub fn class_of(&self, e: &Edge) -> Option<EdgeClass> {
        self.lifted.edge_id(e.u, e.v).map(|id| self.edge_classes[id])
    }
}

pub fn build_gbar(g: &Graph) -> ReductionMap {
    let n = g.vertex_count();
    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.extend((0..n).map(|x| Edge::new(x, x + n)));
    for e in g.edges() {
        edges.push(Edge::new(e.v, e.u + n));
        edges.push(Edge::new(e.u, e.v + n));
    }
    let labels = (0..n)
        .map(|x| g.label(x))
        .chain((0..n).map(|x| format!("{}'", g.label(x))));
    let lifted = Graph::from_edges(2 * n, edges)
        .and_then(|h| h.with_labels(labels.collect()))
        .expect("lifted graph is simple");
    let edge_classes = lifted
        .edges()
        .iter()
        .map(|e| {
            if e.v < n {
                EdgeClass::Base
            } else if e.v == e.u + n {
                EdgeClass::Copy
            } else {
                EdgeClass::Cross
            }
        })
        .collect();
    ReductionMap {
        base: g.clone(),
        lifted,
        edge_classes,
    }
}

/// `{(x, x') : x in s}`.
pub fn lift_zero_forcing(m: &ReductionMap, s: &[Vertex]) -> Result<Matching, ReductionError> {
    let n = m.n();
    if let Some(&vertex) = s.iter().find(|&&x| x >= n) {
        return Err(ReductionError::NotBaseVertex { vertex, n });
    }
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(Matching::new(&m.lifted, s.iter().map(|&x| Edge::new(x, x + n)))?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    /// Edges of class E′ after replacement.
    pub copy_edges: Matching,
    /// `{x : (x, x') in copy_edges}`.
    pub vertices: Vec<Vertex>,
}

/// Replaces `(u, v')` by `(u, u')` and `(a, b)` by `(a, a')` for the smaller
/// endpoint `a`, keeps copy edges, and projects onto `G`.
pub fn normalize_and_project(m: &ReductionMap, x: &Matching) -> Result<Normalized, ReductionError> {
    check_matching(&m.lifted, x.edges())?;
    let n = m.n();
    // V' is independent in Ḡ, so the smaller endpoint of every lifted edge
    // lies in G and is exactly the vertex each rule keeps. Distinct matching
    // edges have distinct endpoints, so no two replacements coincide.
    let mut vertices: Vec<Vertex> = x.edges().iter().map(|e| e.u).collect();
    vertices.sort_unstable();
    let copy_edges = Matching::new(&m.lifted, vertices.iter().map(|&v| Edge::new(v, v + n)))?;
    Ok(Normalized { copy_edges, vertices })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionRoute {
    /// The replacement rule alone.
    Replacement,
    /// Some choice of one `G`-endpoint per edge.
    EndpointChoice,
    /// Exact search for a zero forcing set of the same size.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub vertices: Vec<Vertex>,
    pub route: ProjectionRoute,
    pub normalized: Normalized,
}

/// `G`-endpoints of a lifted edge: `(u, v')` may stand for `u` or `v`.
fn endpoint_options(m: &ReductionMap, e: &Edge) -> Vec<Vertex> {
    let n = m.n();
    let mut out = vec![e.u];
    let other = if e.v >= n { e.v - n } else { e.v };
    if other != e.u {
        out.push(other);
    }
    out
}

/// Zero forcing set of `G` with `|x|` vertices derived from an edge-forcing
/// set `x` of `Ḡ`. Returns `Ok(None)` only if every route fails.
pub fn project_to_zero_forcing(
    m: &ReductionMap,
    x: &Matching,
    opts: &SolverOptions,
) -> Result<Option<Projection>, ReductionError> {
    let normalized = normalize_and_project(m, x)?;
    let g = &m.base;
    let k = x.len();
    if normalized.vertices.len() == k && is_zero_forcing_set(g, &normalized.vertices) {
        return Ok(Some(Projection {
            vertices: normalized.vertices.clone(),
            route: ProjectionRoute::Replacement,
            normalized,
        }));
    }
    let options: Vec<Vec<Vertex>> = x.edges().iter().map(|e| endpoint_options(m, e)).collect();
    let mut pick = vec![0usize; k];
    loop {
        let mut s: Vec<Vertex> = pick.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        s.sort_unstable();
        s.dedup();
        if s.len() == k && is_zero_forcing_set(g, &s) {
            return Ok(Some(Projection {
                vertices: s,
                route: ProjectionRoute::EndpointChoice,
                normalized,
            }));
        }
        // odometer over the option lists
        let mut i = 0;
        while i < k {
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    let z = min_zero_forcing(g, opts)?;
    if z.value > k {
        return Ok(None);
    }
    let mut s = z.witness;
    for v in 0..g.vertex_count() {
        if s.len() == k {
            break;
        }
        if !s.contains(&v) {
            s.push(v);
        }
    }
    s.sort_unstable();
    Ok(Some(Projection {
        vertices: s,
        route: ProjectionRoute::Search,
        normalized,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub zero_forcing: usize,
    pub edge_forcing: Option<usize>,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.edge_forcing == Some(self.zero_forcing)
    }
}

/// Compares the zero forcing number of `g` with the edge-forcing number of
/// its lifted graph.
pub fn verify_equivalence(g: &Graph, opts: &SolverOptions) -> Result<Equivalence, ReductionError> {
    let z = min_zero_forcing(g, opts)?;
    let m = build_gbar(g);
    let lifted_opts = SolverOptions {
        max_vertices: opts.max_vertices.max(2 * g.vertex_count()),
        ..opts.clone()
    };
    let e = min_edge_forcing(&m.lifted, &lifted_opts)?;
    Ok(Equivalence {
        zero_forcing: z.value,
        edge_forcing: e.value(),
    })
}
