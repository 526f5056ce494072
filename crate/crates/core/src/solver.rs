//! Exact zero-forcing and edge-forcing numbers for small graphs.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::obstruction::{structural_lower_bound, StructuralLowerBound};
use crate::forcing::{ColorState, Propagator};
use crate::graph::{maximum_matching_size, EdgeId, Graph, Matching, MatchingIds, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph has {vertices} vertices, above the solver limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("search budget of {limit} candidates exhausted")]
    BudgetExceeded { limit: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Every matching of each size.
    Exhaustive,
    /// Only matchings that meet every 4-cycle obstruction, starting at the
    /// obstruction lower bound.
    ObstructionPruned,
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub max_vertices: usize,
    /// Refuse once this many candidate sets have been tested.
    pub max_candidates: u64,
    /// Worker threads for the edge-forcing search; 1 is sequential and
    /// returns the canonical witness.
    pub threads: usize,
    pub mode: SearchMode,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_vertices: 32,
            max_candidates: 100_000_000,
            threads: 1,
            mode: SearchMode::ObstructionPruned,
        }
    }
}

impl SolverOptions {
    pub fn exhaustive() -> Self {
        SolverOptions {
            mode: SearchMode::Exhaustive,
            ..Default::default()
        }
    }

    fn guard(&self, g: &Graph) -> Result<(), SolverError> {
        if g.vertex_count() > self.max_vertices {
            return Err(SolverError::TooLarge {
                vertices: g.vertex_count(),
                limit: self.max_vertices,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroForcingResult {
    pub value: usize,
    pub witness: Vec<Vertex>,
    pub explored: u64,
}

/// Smallest zero forcing set, first in lexicographic subset order.
pub fn min_zero_forcing(g: &Graph, opts: &SolverOptions) -> Result<ZeroForcingResult, SolverError> {
    opts.guard(g)?;
    let n = g.vertex_count();
    let mut prop = Propagator::new(g);
    let mut state = ColorState::new(n);
    let mut explored = 0u64;
    for k in g.min_degree()..=n {
        let mut subset: Vec<Vertex> = (0..k).collect();
        loop {
            explored += 1;
            if explored > opts.max_candidates {
                return Err(SolverError::BudgetExceeded {
                    limit: opts.max_candidates,
                });
            }
            if prop.forces_all(&subset, &mut state) {
                return Ok(ZeroForcingResult {
                    value: k,
                    witness: subset,
                    explored,
                });
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set is zero forcing")
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeForcingOutcome {
    Exists {
        value: usize,
        witness: Matching,
    },
    /// No matching of any size up to the maximum matching size forces.
    NotExists {
        max_matching_size_searched: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeForcingVerdict {
    pub outcome: EdgeForcingOutcome,
    pub explored: u64,
    pub mode: SearchMode,
    /// First size searched.
    pub start_size: usize,
    pub lower_bound: usize,
    /// False when a parallel search returned some optimum rather than the
    /// lexicographically first one.
    pub canonical_witness: bool,
}

impl EdgeForcingVerdict {
    pub fn value(&self) -> Option<usize> {
        match self.outcome {
            EdgeForcingOutcome::Exists { value, .. } => Some(value),
            EdgeForcingOutcome::NotExists { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Matching> {
        match &self.outcome {
            EdgeForcingOutcome::Exists { witness, .. } => Some(witness),
            EdgeForcingOutcome::NotExists { .. } => None,
        }
    }
}

/// Obstruction bookkeeping for the pruned search.
struct Pruning {
    obstruction_edges: Vec<[EdgeId; 4]>,
    last_edge: Vec<EdgeId>,
    in_family: Vec<bool>,
    by_edge: Vec<Vec<usize>>,
}

impl Pruning {
    fn new(g: &Graph, lb: &StructuralLowerBound) -> Pruning {
        let mut by_edge = vec![Vec::new(); g.edge_count()];
        let mut obstruction_edges = Vec::new();
        let mut last_edge = Vec::new();
        let mut in_family = Vec::new();
        for (i, o) in lb.all.iter().enumerate() {
            let ids = o.edges().map(|e| g.edge_id(e.u, e.v).expect("obstruction edge"));
            for &id in &ids {
                by_edge[id].push(i);
            }
            last_edge.push(*ids.iter().max().unwrap());
            obstruction_edges.push(ids);
            in_family.push(lb.obstructions.contains(o));
        }
        Pruning {
            obstruction_edges,
            last_edge,
            in_family,
            by_edge,
        }
    }
}

/// Depth-first enumeration of size-`k` matchings in lexicographic order,
/// testing each complete candidate with the forcing engine.
struct EdgeSearch<'a> {
    g: &'a Graph,
    k: usize,
    pruning: Option<&'a Pruning>,
    used: Vec<bool>,
    hits: Vec<u32>,
    unhit_family: usize,
    chosen: Vec<EdgeId>,
    prop: Propagator<'a>,
    scratch: ColorState,
    endpoints: Vec<Vertex>,
    explored: u64,
    budget: u64,
    spent: &'a AtomicU64,
    stop: &'a AtomicBool,
    over_budget: bool,
}

impl<'a> EdgeSearch<'a> {
    fn new(
        g: &'a Graph,
        k: usize,
        pruning: Option<&'a Pruning>,
        budget: u64,
        spent: &'a AtomicU64,
        stop: &'a AtomicBool,
    ) -> Self {
        let n_obs = pruning.map_or(0, |p| p.obstruction_edges.len());
        EdgeSearch {
            g,
            k,
            pruning,
            used: vec![false; g.vertex_count()],
            hits: vec![0; n_obs],
            unhit_family: pruning.map_or(0, |p| p.in_family.iter().filter(|&&f| f).count()),
            chosen: Vec::with_capacity(k),
            prop: Propagator::new(g),
            scratch: ColorState::new(g.vertex_count()),
            endpoints: Vec::with_capacity(2 * k),
            explored: 0,
            budget,
            spent,
            stop,
            over_budget: false,
        }
    }

    fn choose(&mut self, id: EdgeId) {
        let e = self.g.edge(id);
        self.used[e.u] = true;
        self.used[e.v] = true;
        self.chosen.push(id);
        if let Some(p) = self.pruning {
            for &o in &p.by_edge[id] {
                if self.hits[o] == 0 && p.in_family[o] {
                    self.unhit_family -= 1;
                }
                self.hits[o] += 1;
            }
        }
    }

    fn unchoose(&mut self) {
        let id = self.chosen.pop().expect("non-empty choice stack");
        let e = self.g.edge(id);
        self.used[e.u] = false;
        self.used[e.v] = false;
        if let Some(p) = self.pruning {
            for &o in &p.by_edge[id] {
                self.hits[o] -= 1;
                if self.hits[o] == 0 && p.in_family[o] {
                    self.unhit_family += 1;
                }
            }
        }
    }

    /// Whether the current partial choice, to be extended only by edges with
    /// identity above `last`, can still meet every obstruction.
    fn viable(&self, last: EdgeId) -> bool {
        let Some(p) = self.pruning else { return true };
        if self.unhit_family > self.k - self.chosen.len() {
            return false;
        }
        for (o, ids) in p.obstruction_edges.iter().enumerate() {
            if self.hits[o] > 0 {
                continue;
            }
            if p.last_edge[o] <= last {
                return false;
            }
            let reachable = ids.iter().any(|&id| {
                let e = self.g.edge(id);
                id > last && !self.used[e.u] && !self.used[e.v]
            });
            if !reachable {
                return false;
            }
        }
        true
    }

    fn test_candidate(&mut self) -> bool {
        self.explored += 1;
        if self.explored.is_multiple_of(4096) {
            let total = self.spent.fetch_add(4096, Ordering::Relaxed) + 4096;
            if total > self.budget {
                self.over_budget = true;
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        self.endpoints.clear();
        for &id in &self.chosen {
            let e = self.g.edge(id);
            self.endpoints.push(e.u);
            self.endpoints.push(e.v);
        }
        self.prop.forces_all(&self.endpoints, &mut self.scratch)
    }

    fn run_from(&mut self, next: EdgeId) -> bool {
        if self.chosen.len() == self.k {
            return self.test_candidate();
        }
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let m = self.g.edge_count();
        let need = self.k - self.chosen.len();
        let mut i = next;
        while i + need <= m {
            let e = self.g.edge(i);
            if !self.used[e.u] && !self.used[e.v] {
                self.choose(i);
                if self.viable(i) && self.run_from(i + 1) {
                    return true;
                }
                self.unchoose();
                if self.over_budget {
                    return false;
                }
            }
            i += 1;
        }
        false
    }

    /// Search with the first edge restricted to `first`.
    fn run_with_first(&mut self, first: EdgeId) -> bool {
        self.choose(first);
        let found = self.viable(first) && self.run_from(first + 1);
        if !found {
            self.unchoose();
        }
        found
    }

    fn finish(&self) -> u64 {
        self.spent.fetch_add(self.explored % 4096, Ordering::Relaxed);
        self.explored
    }
}

struct SizeSearch {
    found: Option<Vec<EdgeId>>,
    explored: u64,
}

fn search_size(
    g: &Graph,
    k: usize,
    pruning: Option<&Pruning>,
    opts: &SolverOptions,
    spent: &AtomicU64,
) -> Result<SizeSearch, SolverError> {
    let stop = AtomicBool::new(false);
    let threads = opts.threads.max(1);
    if k == 0 {
        let mut s = EdgeSearch::new(g, 0, pruning, opts.max_candidates, spent, &stop);
        let ok = s.viable(0) && s.test_candidate();
        return Ok(SizeSearch {
            found: ok.then(Vec::new),
            explored: s.finish(),
        });
    }
    let (found, explored, over) = if threads == 1 {
        let mut s = EdgeSearch::new(g, k, pruning, opts.max_candidates, spent, &stop);
        let ok = s.run_from(0);
        let found = ok.then(|| s.chosen.clone());
        (found, s.finish(), s.over_budget)
    } else {
        let results: Vec<(Option<Vec<EdgeId>>, u64, bool)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let stop = &stop;
                    scope.spawn(move || {
                        let mut s = EdgeSearch::new(g, k, pruning, opts.max_candidates, spent, stop);
                        let mut found = None;
                        let mut first = t;
                        while first < g.edge_count() && !stop.load(Ordering::Relaxed) {
                            if s.run_with_first(first) {
                                found = Some(s.chosen.clone());
                                stop.store(true, Ordering::Relaxed);
                                break;
                            }
                            first += threads;
                        }
                        let over = s.over_budget;
                        (found, s.finish(), over)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        });
        let explored = results.iter().map(|r| r.1).sum();
        let over = results.iter().any(|r| r.2);
        let found = results.into_iter().filter_map(|r| r.0).min();
        (found, explored, over)
    };
    if found.is_none() && over {
        return Err(SolverError::BudgetExceeded {
            limit: opts.max_candidates,
        });
    }
    Ok(SizeSearch { found, explored })
}

/// Edge-forcing number with witness, or a certified nonexistence verdict.
pub fn min_edge_forcing(g: &Graph, opts: &SolverOptions) -> Result<EdgeForcingVerdict, SolverError> {
    opts.guard(g)?;
    let lb = structural_lower_bound(g);
    let pruning = match opts.mode {
        SearchMode::ObstructionPruned => Some(Pruning::new(g, &lb)),
        SearchMode::Exhaustive => None,
    };
    let start = match opts.mode {
        SearchMode::ObstructionPruned => lb.value.max(1),
        SearchMode::Exhaustive => 1,
    };
    let spent = AtomicU64::new(0);
    let mut explored = 0;
    let verdict = |outcome, explored| EdgeForcingVerdict {
        outcome,
        explored,
        mode: opts.mode,
        start_size: start,
        lower_bound: lb.value,
        canonical_witness: opts.threads <= 1,
    };
    if g.vertex_count() == 0 {
        return Ok(verdict(
            EdgeForcingOutcome::Exists {
                value: 0,
                witness: Matching::empty(),
            },
            0,
        ));
    }
    let nu = maximum_matching_size(g);
    for k in start..=nu {
        let r = search_size(g, k, pruning.as_ref(), opts, &spent)?;
        explored += r.explored;
        if let Some(ids) = r.found {
            let witness = Matching::from_ids(g, &ids).expect("search yields matchings");
            return Ok(verdict(EdgeForcingOutcome::Exists { value: k, witness }, explored));
        }
    }
    Ok(verdict(
        EdgeForcingOutcome::NotExists {
            max_matching_size_searched: nu,
        },
        explored,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoSmallerReport {
    pub holds: bool,
    pub explored: u64,
    /// Sizes below the obstruction bound, skipped without enumeration.
    pub skipped_below: usize,
    pub counterexample: Option<Matching>,
}

/// Whether no matching with fewer than `k` edges is edge forcing.
pub fn no_smaller_edge_forcing(g: &Graph, k: usize, opts: &SolverOptions) -> Result<NoSmallerReport, SolverError> {
    opts.guard(g)?;
    let lb = structural_lower_bound(g);
    let (pruning, skip) = match opts.mode {
        SearchMode::ObstructionPruned => (Some(Pruning::new(g, &lb)), lb.value),
        SearchMode::Exhaustive => (None, 0),
    };
    let spent = AtomicU64::new(0);
    let mut explored = 0;
    for s in skip.min(k)..k {
        let r = search_size(g, s, pruning.as_ref(), opts, &spent)?;
        explored += r.explored;
        if let Some(ids) = r.found {
            return Ok(NoSmallerReport {
                holds: false,
                explored,
                skipped_below: skip,
                counterexample: Some(Matching::from_ids(g, &ids).expect("search yields matchings")),
            });
        }
    }
    Ok(NoSmallerReport {
        holds: true,
        explored,
        skipped_below: skip,
        counterexample: None,
    })
}

/// Result of testing every matching of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustionReport {
    /// `counts[s]` is the number of matchings with `s + 1` edges.
    pub counts: Vec<u64>,
    pub max_matching_size: usize,
    /// Fewest white vertices any matching leaves.
    pub min_white_left: usize,
    pub forcing_found: Option<Matching>,
}

/// Runs the forcing engine on every non-empty matching of `g`.
pub fn exhaust_matchings(g: &Graph, opts: &SolverOptions) -> Result<ExhaustionReport, SolverError> {
    opts.guard(g)?;
    let n = g.vertex_count();
    let mut prop = Propagator::new(g);
    let mut state = ColorState::new(n);
    let mut counts = Vec::new();
    let mut min_white = n;
    let mut forcing_found = None;
    let mut total = 0u64;
    for size in 1.. {
        let mut count = 0u64;
        for ids in MatchingIds::new(g, size) {
            count += 1;
            total += 1;
            if total > opts.max_candidates {
                return Err(SolverError::BudgetExceeded {
                    limit: opts.max_candidates,
                });
            }
            state.clear();
            for &id in &ids {
                let e = g.edge(id);
                state.insert(e.u);
                state.insert(e.v);
            }
            let black = prop.run(&mut state);
            min_white = min_white.min(n - black);
            if black == n && forcing_found.is_none() {
                forcing_found = Some(Matching::from_ids(g, &ids).expect("enumerated matching"));
            }
        }
        if count == 0 {
            break;
        }
        counts.push(count);
    }
    Ok(ExhaustionReport {
        max_matching_size: counts.len(),
        counts,
        min_white_left: min_white,
        forcing_found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn zero_forcing_numbers() {
        let o = SolverOptions::default();
        let p = min_zero_forcing(&path(5), &o).unwrap();
        assert_eq!((p.value, p.witness), (1, vec![0]));
        let c = min_zero_forcing(&cycle(6), &o).unwrap();
        assert_eq!((c.value, c.witness), (2, vec![0, 1]));
        let k = min_zero_forcing(&k4(), &o).unwrap();
        assert_eq!((k.value, k.witness), (3, vec![0, 1, 2]));
    }

    #[test]
    fn edge_forcing_numbers() {
        for o in [SolverOptions::default(), SolverOptions::exhaustive()] {
            let c = min_edge_forcing(&cycle(6), &o).unwrap();
            assert_eq!(c.value(), Some(1));
            assert_eq!(c.witness().unwrap().edges(), &[Edge::new(0, 1)]);
            assert_eq!(min_edge_forcing(&k4(), &o).unwrap().value(), Some(2));
            let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
            assert_eq!(
                min_edge_forcing(&star, &o).unwrap().outcome,
                EdgeForcingOutcome::NotExists {
                    max_matching_size_searched: 1
                }
            );
        }
    }

    #[test]
    fn edgeless_graph_has_no_edge_forcing_set() {
        let g = Graph::from_edges(2, Vec::<(usize, usize)>::new()).unwrap();
        assert_eq!(
            min_edge_forcing(&g, &SolverOptions::default()).unwrap().outcome,
            EdgeForcingOutcome::NotExists {
                max_matching_size_searched: 0
            }
        );
    }

    #[test]
    fn no_smaller_examples() {
        let o = SolverOptions::exhaustive();
        assert!(no_smaller_edge_forcing(&cycle(4), 1, &o).unwrap().holds);
        assert!(no_smaller_edge_forcing(&k4(), 2, &o).unwrap().holds);
        let r = no_smaller_edge_forcing(&k4(), 3, &o).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample.unwrap().len(), 2);
    }

    #[test]
    fn guards_refuse() {
        let o = SolverOptions {
            max_vertices: 3,
            ..Default::default()
        };
        assert_eq!(
            min_zero_forcing(&cycle(4), &o),
            Err(SolverError::TooLarge { vertices: 4, limit: 3 })
        );
        let tight = SolverOptions {
            max_candidates: 2,
            ..Default::default()
        };
        assert!(matches!(
            min_zero_forcing(&Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap(), &tight),
            Err(SolverError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn parallel_agrees_on_value() {
        let g = Graph::from_edges(
            8,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (2, 6),
            ],
        )
        .unwrap();
        let seq = min_edge_forcing(&g, &SolverOptions::default()).unwrap();
        let par = min_edge_forcing(
            &g,
            &SolverOptions {
                threads: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq.value(), par.value());
        assert!(seq.canonical_witness);
        assert!(!par.canonical_witness);
        assert!(crate::forcing::is_edge_forcing_set(&g, par.witness().unwrap().edges()));
    }

    #[test]
    fn exhaustion_counts() {
        let r = exhaust_matchings(&cycle(4), &SolverOptions::default()).unwrap();
        assert_eq!(r.counts, vec![4, 2]);
        assert!(r.forcing_found.is_some());
    }
}
