//! Self-verifying certificates (schema `efc-1`).
//!
//! A certificate names its graph (a butterfly dimension or an inline edge
//! list), the claim, the value and witness, and whatever evidence is needed
//! to re-check the claim from the document alone. Serialization is
//! deterministic: keys are sorted and edges appear in canonical order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::butterfly::Butterfly;
use crate::constructions::bounds::{self, known_bounds, BoundsReport, LowerBoundSource};
use crate::constructions::{structural_lower_bound, Construction, ConstructionMethod, Obstruction};
use crate::forcing::{check_edge_forcing_set, closure, is_zero_forcing_set, replay_trace, ColorState, ForcingTrace};
use crate::graph::{Edge, Graph, GraphError, Matching, Vertex};
use crate::reduction::{build_gbar, lift_zero_forcing, project_to_zero_forcing, ProjectionRoute};
use crate::solver::{
    exhaust_matchings, min_edge_forcing, min_zero_forcing, no_smaller_edge_forcing, EdgeForcingOutcome,
    EdgeForcingVerdict, ExhaustionReport, SearchMode, SolverOptions, ZeroForcingResult,
};
use crate::TOOL_VERSION;

pub const SCHEMA_VERSION: &str = "efc-1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphDescriptor {
    Butterfly { r: usize },
    Inline { n: usize, edges: Vec<[Vertex; 2]> },
}

impl GraphDescriptor {
    pub fn inline(g: &Graph) -> Self {
        GraphDescriptor::Inline {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&e| e.into()).collect(),
        }
    }

    pub fn build(&self) -> Result<Graph, CertificateError> {
        match self {
            GraphDescriptor::Butterfly { r } => Ok(Butterfly::new(*r)
                .map_err(|e| CertificateError::Graph(e.to_string()))?
                .into_graph()),
            GraphDescriptor::Inline { n, edges } => Graph::from_edges(*n, edges.iter().map(|&p| Edge::from(p)))
                .map_err(|e: GraphError| CertificateError::Graph(e.to_string())),
        }
    }

    pub fn butterfly_dimension(&self) -> Option<usize> {
        match self {
            GraphDescriptor::Butterfly { r } => Some(*r),
            GraphDescriptor::Inline { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    Closure,
    ZfsCheck,
    EfsCheck,
    ZfNumber,
    EfNumber,
    Nonexistence,
    Bounds,
    ReductionEquivalence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub edge: [Vertex; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeRecord>>,
}

impl Witness {
    pub fn of_vertices(g: &Graph, vertices: &[Vertex]) -> Self {
        Witness {
            vertices: Some(vertices.to_vec()),
            vertex_labels: g.labels().map(|_| vertices.iter().map(|&v| g.label(v)).collect()),
            edges: None,
        }
    }

    /// Edges in the given order; ids are looked up in `g` when present.
    pub fn of_edges(g: &Graph, edges: &[Edge]) -> Self {
        let records = edges
            .iter()
            .map(|e| EdgeRecord {
                id: g.edge_id(e.u, e.v).unwrap_or(usize::MAX),
                edge: [e.u, e.v],
                label: g.labels().map(|_| format!("{}-{}", g.label(e.u), g.label(e.v))),
            })
            .collect();
        Witness {
            vertices: None,
            vertex_labels: None,
            edges: Some(records),
        }
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges.iter().flatten().map(|r| Edge::from(r.edge)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundEvidence {
    /// Edge-disjoint obstructions, recomputable from the graph.
    Obstructions,
    /// No smaller matching forces, by exhaustive search.
    Exhaustive,
    /// Published value, not recomputed.
    Cited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: u64,
    pub evidence: LowerBoundEvidence,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explored: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_witness: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub repairs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub zero_forcing: u64,
    pub edge_forcing: Option<u64>,
    pub zero_forcing_witness: Vec<Vertex>,
    /// Lift of `zero_forcing_witness`, as pairs of lifted-graph vertices.
    pub lifted_witness: Vec<[Vertex; 2]>,
    /// Minimum edge-forcing set of the lifted graph.
    pub edge_forcing_witness: Vec<[Vertex; 2]>,
    pub projected_witness: Vec<Vertex>,
    pub projection_route: ProjectionRoute,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: String,
    pub tool_version: String,
    pub graph: GraphDescriptor,
    pub claim: ClaimKind,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_black: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<ForcingTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstructions: Option<Vec<Obstruction>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<LowerBound>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustion: Option<ExhaustionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchMeta>,
}

impl Certificate {
    pub fn new(graph: GraphDescriptor, claim: ClaimKind, holds: bool) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            graph,
            claim,
            holds,
            value: None,
            witness: None,
            final_black: None,
            trace: None,
            obstructions: None,
            lower_bound: None,
            bounds: None,
            exhaustion: None,
            reduction: None,
            search: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {found:?}, expected {SCHEMA_VERSION:?}")]
    SchemaMismatch { found: String },
    #[error("cannot rebuild graph: {0}")]
    Graph(String),
}

/// Sorted-key, pretty-printed JSON with a trailing newline.
pub fn emit_certificate(c: &Certificate) -> String {
    // serde_json's default map is ordered, so going through Value sorts keys
    let value = serde_json::to_value(c).expect("certificate serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

pub fn parse_certificate(text: &str) -> Result<Certificate, CertificateError> {
    let raw: serde_json::Value = serde_json::from_str(text)?;
    let found = raw.get("schema_version").and_then(|v| v.as_str()).unwrap_or("");
    if found != SCHEMA_VERSION {
        return Err(CertificateError::SchemaMismatch {
            found: found.to_string(),
        });
    }
    Ok(serde_json::from_value(raw)?)
}

// ---- builders ----

pub fn closure_certificate(descriptor: GraphDescriptor, g: &Graph, initial: &[Vertex]) -> Certificate {
    let c = closure(g, &ColorState::from_black(g.vertex_count(), initial.iter().copied()));
    let mut cert = Certificate::new(descriptor, ClaimKind::Closure, c.is_complete());
    cert.value = Some(c.state.black_count() as u64);
    cert.witness = Some(Witness::of_vertices(g, initial));
    cert.final_black = Some(c.state.black().collect());
    cert.trace = Some(c.trace);
    cert
}

pub fn zfs_check_certificate(descriptor: GraphDescriptor, g: &Graph, set: &[Vertex]) -> Certificate {
    let mut cert = Certificate::new(descriptor, ClaimKind::ZfsCheck, is_zero_forcing_set(g, set));
    cert.value = Some(set.len() as u64);
    cert.witness = Some(Witness::of_vertices(g, set));
    cert
}

pub fn efs_check_certificate(descriptor: GraphDescriptor, g: &Graph, edges: &[Edge]) -> Certificate {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let mut cert = Certificate::new(
        descriptor,
        ClaimKind::EfsCheck,
        check_edge_forcing_set(g, &sorted).is_forcing(),
    );
    cert.value = Some(sorted.len() as u64);
    cert.witness = Some(Witness::of_edges(g, &sorted));
    cert
}

pub fn zf_number_certificate(descriptor: GraphDescriptor, g: &Graph, r: &ZeroForcingResult) -> Certificate {
    let mut cert = Certificate::new(descriptor, ClaimKind::ZfNumber, true);
    cert.value = Some(r.value as u64);
    cert.witness = Some(Witness::of_vertices(g, &r.witness));
    cert.lower_bound = Some(LowerBound {
        value: r.value as u64,
        evidence: LowerBoundEvidence::Exhaustive,
    });
    cert.search = Some(SearchMeta {
        explored: Some(r.explored),
        canonical_witness: Some(true),
        ..Default::default()
    });
    cert
}

fn mode_flag(mode: SearchMode) -> String {
    match mode {
        SearchMode::Exhaustive => "exhaustive".into(),
        SearchMode::ObstructionPruned => "obstruction-pruned".into(),
    }
}

/// Certificate for a solver verdict: `ef-number` when a set exists,
/// `nonexistence` otherwise.
pub fn edge_forcing_certificate(
    descriptor: GraphDescriptor,
    g: &Graph,
    v: &EdgeForcingVerdict,
    threads: usize,
) -> Certificate {
    let search = SearchMeta {
        explored: Some(v.explored),
        flags: vec![mode_flag(v.mode), format!("threads={threads}")],
        canonical_witness: Some(v.canonical_witness),
        ..Default::default()
    };
    let lb = structural_lower_bound(g);
    let mut cert = match &v.outcome {
        EdgeForcingOutcome::Exists { value, witness } => {
            let mut c = Certificate::new(descriptor, ClaimKind::EfNumber, true);
            c.value = Some(*value as u64);
            c.witness = Some(Witness::of_edges(g, witness.edges()));
            c.lower_bound = Some(if lb.value == *value {
                LowerBound {
                    value: lb.value as u64,
                    evidence: LowerBoundEvidence::Obstructions,
                }
            } else {
                LowerBound {
                    value: *value as u64,
                    evidence: LowerBoundEvidence::Exhaustive,
                }
            });
            c
        }
        EdgeForcingOutcome::NotExists { .. } => {
            let mut c = Certificate::new(descriptor, ClaimKind::Nonexistence, true);
            c.exhaustion = exhaust_matchings(g, &SolverOptions::default()).ok();
            c
        }
    };
    if !lb.obstructions.is_empty() {
        cert.obstructions = Some(lb.obstructions);
    }
    cert.search = Some(search);
    cert
}

pub fn nonexistence_certificate(descriptor: GraphDescriptor, report: ExhaustionReport) -> Certificate {
    let mut cert = Certificate::new(descriptor, ClaimKind::Nonexistence, report.forcing_found.is_none());
    cert.exhaustion = Some(report);
    cert.search = Some(SearchMeta {
        flags: vec!["exhaustive".into()],
        ..Default::default()
    });
    cert
}

/// Certificate for a butterfly construction. For `r = 3` the value is
/// certified exact by obstructions, for `r = 4, 5` by the cited lower
/// bound; larger dimensions certify only the edge-forcing property and
/// attach the bounds.
pub fn construction_certificate(c: &Construction) -> Certificate {
    let bf = Butterfly::new(c.r).expect("constructed butterfly");
    let g = bf.graph();
    let report = known_bounds(c.r).expect("r >= 3");
    let descriptor = GraphDescriptor::Butterfly { r: c.r };
    let exact = report.exact == Some(c.matching.len() as u64);
    let mut cert = Certificate::new(
        descriptor,
        if exact {
            ClaimKind::EfNumber
        } else {
            ClaimKind::EfsCheck
        },
        true,
    );
    cert.value = Some(c.matching.len() as u64);
    cert.witness = Some(Witness::of_edges(g, c.matching.edges()));
    if exact {
        let lb = structural_lower_bound(g);
        cert.lower_bound = Some(match report.lower_source {
            Some(LowerBoundSource::Cited) => LowerBound {
                value: report.lower.expect("lower bound present"),
                evidence: LowerBoundEvidence::Cited,
            },
            _ => LowerBound {
                value: lb.value as u64,
                evidence: LowerBoundEvidence::Obstructions,
            },
        });
        cert.obstructions = Some(lb.obstructions);
    }
    cert.bounds = Some(report);
    let mut search = SearchMeta::default();
    match &c.method {
        ConstructionMethod::Explicit => search.method = Some("explicit".into()),
        ConstructionMethod::Search {
            seed,
            iterations,
            restarts,
        } => {
            search.method = Some("search".into());
            search.seed = Some(*seed);
            search.iterations = Some(*iterations);
            search.flags = vec![format!("restarts={restarts}")];
        }
        ConstructionMethod::Recursive { base, repairs } => {
            search.method = Some(format!("recursive-from-{base}"));
            search.repairs = repairs.clone();
        }
    }
    cert.search = Some(search);
    cert
}

pub fn bounds_certificate(report: BoundsReport) -> Certificate {
    let mut cert = Certificate::new(
        GraphDescriptor::Butterfly { r: report.r },
        ClaimKind::Bounds,
        report.is_consistent(),
    );
    cert.value = report.exact;
    cert.bounds = Some(report);
    cert
}

/// Runs both exact solvers and records lift and projection witnesses.
pub fn reduction_certificate(
    descriptor: GraphDescriptor,
    g: &Graph,
    opts: &SolverOptions,
) -> Result<Certificate, crate::reduction::ReductionError> {
    let z = min_zero_forcing(g, opts)?;
    let m = build_gbar(g);
    let lifted_opts = SolverOptions {
        max_vertices: opts.max_vertices.max(2 * g.vertex_count()),
        ..opts.clone()
    };
    let e = min_edge_forcing(&m.lifted, &lifted_opts)?;
    let lifted = lift_zero_forcing(&m, &z.witness)?;
    let (ef_witness, projected, route) = match e.witness() {
        Some(w) => {
            let p = project_to_zero_forcing(&m, w, opts)?;
            let (vs, route) = p.map_or((Vec::new(), ProjectionRoute::Search), |p| (p.vertices, p.route));
            (w.edges().iter().map(|&e| e.into()).collect(), vs, route)
        }
        None => (Vec::new(), Vec::new(), ProjectionRoute::Search),
    };
    let holds = e.value() == Some(z.value);
    let mut cert = Certificate::new(descriptor, ClaimKind::ReductionEquivalence, holds);
    cert.value = Some(z.value as u64);
    cert.reduction = Some(ReductionRecord {
        zero_forcing: z.value as u64,
        edge_forcing: e.value().map(|v| v as u64),
        zero_forcing_witness: z.witness,
        lifted_witness: lifted.edges().iter().map(|&e| e.into()).collect(),
        edge_forcing_witness: ef_witness,
        projected_witness: projected,
        projection_route: route,
    });
    cert.search = Some(SearchMeta {
        explored: Some(z.explored + e.explored),
        flags: vec![mode_flag(e.mode)],
        ..Default::default()
    });
    Ok(cert)
}

// ---- verification ----

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    /// Mismatches between the document and recomputation; empty means the
    /// certificate verified.
    pub diffs: Vec<String>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.diffs.is_empty()
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, stated: T, recomputed: T) {
        if stated != recomputed {
            self.diffs.push(format!(
                "{what}: certificate says {stated:?}, recomputed {recomputed:?}"
            ));
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.diffs.push(msg.into());
    }
}

pub fn verify_certificate(text: &str) -> Result<Verification, CertificateError> {
    let cert = parse_certificate(text)?;
    verify(&cert)
}

/// Re-checks a parsed certificate against its graph descriptor.
pub fn verify(cert: &Certificate) -> Result<Verification, CertificateError> {
    let g = cert.graph.build()?;
    let mut v = Verification::default();
    let opts = SolverOptions::default();
    match cert.claim {
        ClaimKind::Closure => verify_closure(cert, &g, &mut v),
        ClaimKind::ZfsCheck => {
            let set = witness_vertices(cert, &g, &mut v);
            v.expect("holds", cert.holds, is_zero_forcing_set(&g, &set));
            v.expect("value", cert.value, Some(set.len() as u64));
        }
        ClaimKind::EfsCheck => {
            let edges = witness_edges(cert, &g, &mut v);
            v.expect("holds", cert.holds, check_edge_forcing_set(&g, &edges).is_forcing());
            v.expect("value", cert.value, Some(edges.len() as u64));
            if let Some(b) = &cert.bounds {
                verify_bounds_report(b, &mut v);
                if let (true, Some(up)) = (cert.holds, b.upper_formula) {
                    if edges.len() as u64 > up {
                        v.fail(format!("witness size {} exceeds upper bound {up}", edges.len()));
                    }
                }
            }
        }
        ClaimKind::ZfNumber => {
            v.expect("holds", cert.holds, true);
            let set = witness_vertices(cert, &g, &mut v);
            if !is_zero_forcing_set(&g, &set) {
                v.fail("witness is not a zero forcing set");
            }
            v.expect("value", cert.value, Some(set.len() as u64));
            match min_zero_forcing(&g, &opts) {
                Ok(z) => v.expect("zero forcing number", cert.value, Some(z.value as u64)),
                Err(e) => v.fail(format!("cannot re-run solver: {e}")),
            }
        }
        ClaimKind::EfNumber => verify_ef_number(cert, &g, &opts, &mut v),
        ClaimKind::Nonexistence => match exhaust_matchings(&g, &opts) {
            Ok(report) => {
                v.expect("holds", cert.holds, report.forcing_found.is_none());
                if let Some(stated) = &cert.exhaustion {
                    v.expect("matching counts", &stated.counts, &report.counts);
                    v.expect("max matching size", stated.max_matching_size, report.max_matching_size);
                    v.expect("fewest white vertices", stated.min_white_left, report.min_white_left);
                }
            }
            Err(e) => v.fail(format!("cannot re-run exhaustion: {e}")),
        },
        ClaimKind::Bounds => match (&cert.bounds, cert.graph.butterfly_dimension()) {
            (Some(b), Some(r)) => {
                v.expect("dimension", b.r, r);
                verify_bounds_report(b, &mut v);
                v.expect("holds", cert.holds, b.is_consistent());
            }
            _ => v.fail("bounds claim needs a butterfly graph and a bounds report"),
        },
        ClaimKind::ReductionEquivalence => verify_reduction(cert, &g, &opts, &mut v),
    }
    Ok(v)
}

fn witness_vertices(cert: &Certificate, g: &Graph, v: &mut Verification) -> Vec<Vertex> {
    let set = cert
        .witness
        .as_ref()
        .and_then(|w| w.vertices.clone())
        .unwrap_or_default();
    if let Some(&bad) = set.iter().find(|&&x| x >= g.vertex_count()) {
        v.fail(format!("witness vertex {bad} out of range"));
        return Vec::new();
    }
    set
}

fn witness_edges(cert: &Certificate, g: &Graph, v: &mut Verification) -> Vec<Edge> {
    let Some(records) = cert.witness.as_ref().and_then(|w| w.edges.as_ref()) else {
        v.fail("missing edge witness");
        return Vec::new();
    };
    for r in records {
        let e = Edge::from(r.edge);
        match g.edge_id(e.u, e.v) {
            Some(id) if id == r.id => {}
            Some(id) => v.fail(format!("edge {e} has identity {id}, certificate says {}", r.id)),
            None => v.fail(format!("{e} is not an edge of the graph")),
        }
    }
    records.iter().map(|r| Edge::from(r.edge)).collect()
}

fn verify_closure(cert: &Certificate, g: &Graph, v: &mut Verification) {
    let initial = witness_vertices(cert, g, v);
    let c = closure(g, &ColorState::from_black(g.vertex_count(), initial.iter().copied()));
    v.expect("holds", cert.holds, c.is_complete());
    v.expect(
        "final black set",
        cert.final_black.clone(),
        Some(c.state.black().collect()),
    );
    if let Some(trace) = &cert.trace {
        match replay_trace(g, trace) {
            Ok(state) => {
                if state != c.state {
                    v.fail("trace replay does not reach the closure");
                }
            }
            Err(i) => v.fail(format!("trace event {i} is not a valid force")),
        }
        v.expect("trace initial set", &trace.initial, &initial);
    }
}

fn verify_bounds_report(b: &BoundsReport, v: &mut Verification) {
    match known_bounds(b.r) {
        Ok(expected) => v.expect("bounds report", b, &expected),
        Err(e) => v.fail(format!("bounds for r = {}: {e}", b.r)),
    }
}

fn verify_ef_number(cert: &Certificate, g: &Graph, opts: &SolverOptions, v: &mut Verification) {
    v.expect("holds", cert.holds, true);
    let edges = witness_edges(cert, g, v);
    if !check_edge_forcing_set(g, &edges).is_forcing() {
        v.fail("witness is not an edge-forcing set");
    }
    v.expect("value", cert.value, Some(edges.len() as u64));
    let Some(lb) = &cert.lower_bound else {
        v.fail("missing lower-bound evidence");
        return;
    };
    v.expect("lower bound", lb.value, edges.len() as u64);
    match lb.evidence {
        LowerBoundEvidence::Obstructions => {
            let s = structural_lower_bound(g);
            v.expect("obstruction lower bound", lb.value, s.value as u64);
            if let Some(stated) = &cert.obstructions {
                if stated.iter().any(|o| !o.holds_in(g)) {
                    v.fail("listed obstruction does not hold in the graph");
                }
            }
        }
        LowerBoundEvidence::Exhaustive => match no_smaller_edge_forcing(g, edges.len(), opts) {
            Ok(r) => {
                if !r.holds {
                    v.fail("a smaller edge-forcing set exists");
                }
            }
            Err(e) => v.fail(format!("cannot re-run search: {e}")),
        },
        LowerBoundEvidence::Cited => {
            let cited = cert.graph.butterfly_dimension().and_then(bounds::exact_value);
            v.expect("cited lower bound", Some(lb.value), cited);
        }
    }
    if let Some(b) = &cert.bounds {
        verify_bounds_report(b, v);
    }
}

fn verify_reduction(cert: &Certificate, g: &Graph, opts: &SolverOptions, v: &mut Verification) {
    let Some(rec) = &cert.reduction else {
        v.fail("missing reduction record");
        return;
    };
    let m = build_gbar(g);
    if !is_zero_forcing_set(g, &rec.zero_forcing_witness) {
        v.fail("zero forcing witness does not force the base graph");
    }
    let lifted: Vec<Edge> = rec.lifted_witness.iter().map(|&p| Edge::from(p)).collect();
    match lift_zero_forcing(&m, &rec.zero_forcing_witness) {
        Ok(l) => v.expect("lifted witness", l.edges().to_vec(), lifted.clone()),
        Err(e) => v.fail(format!("cannot lift: {e}")),
    }
    if !check_edge_forcing_set(&m.lifted, &lifted).is_forcing() {
        v.fail("lifted witness is not edge forcing in the lifted graph");
    }
    if rec.edge_forcing.is_some() {
        let ef: Vec<Edge> = rec.edge_forcing_witness.iter().map(|&p| Edge::from(p)).collect();
        if !check_edge_forcing_set(&m.lifted, &ef).is_forcing() {
            v.fail("edge-forcing witness does not force the lifted graph");
        }
        v.expect("edge-forcing witness size", rec.edge_forcing, Some(ef.len() as u64));
        if !is_zero_forcing_set(g, &rec.projected_witness) || rec.projected_witness.len() != ef.len() {
            v.fail("projected witness is not a zero forcing set of the same size");
        }
        if let Ok(x) = Matching::new(&m.lifted, ef) {
            match project_to_zero_forcing(&m, &x, opts) {
                Ok(Some(p)) => {
                    v.expect("projection route", rec.projection_route, p.route);
                    v.expect("projected witness", &rec.projected_witness, &p.vertices);
                }
                Ok(None) => v.fail("projection failed"),
                Err(e) => v.fail(format!("projection: {e}")),
            }
        }
    }
    match crate::reduction::verify_equivalence(g, opts) {
        Ok(eq) => {
            v.expect("zero forcing number", rec.zero_forcing, eq.zero_forcing as u64);
            v.expect(
                "edge-forcing number",
                rec.edge_forcing,
                eq.edge_forcing.map(|x| x as u64),
            );
            v.expect("holds", cert.holds, eq.holds());
        }
        Err(e) => v.fail(format!("cannot re-run solvers: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::construct_edge_forcing;

    #[test]
    fn bf3_certificate_verifies_and_detects_tampering() {
        let c = construct_edge_forcing(3).unwrap();
        let cert = construction_certificate(&c);
        assert_eq!(cert.claim, ClaimKind::EfNumber);
        let text = emit_certificate(&cert);
        assert!(verify_certificate(&text).unwrap().ok());

        let mut tampered = cert.clone();
        tampered.witness.as_mut().unwrap().edges.as_mut().unwrap().pop();
        let v = verify(&tampered).unwrap();
        assert!(!v.ok());
    }

    #[test]
    fn schema_is_checked() {
        let text = emit_certificate(&bounds_certificate(known_bounds(3).unwrap())).replace("efc-1", "efc-0");
        assert!(matches!(
            verify_certificate(&text),
            Err(CertificateError::SchemaMismatch { .. })
        ));
    }

    #[test]
    fn keys_are_sorted() {
        let text = emit_certificate(&bounds_certificate(known_bounds(5).unwrap()));
        let keys: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn closure_certificate_round_trip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let cert = closure_certificate(GraphDescriptor::inline(&g), &g, &[0]);
        assert!(cert.holds);
        let text = emit_certificate(&cert);
        assert_eq!(parse_certificate(&text).unwrap(), cert);
        assert!(verify_certificate(&text).unwrap().ok());
    }
}
