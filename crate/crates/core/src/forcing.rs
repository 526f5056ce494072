//! The color change rule and the closure it generates.
//!
//! A black vertex with exactly one white neighbor forces that neighbor
//! black. The closure of an initial black set is what remains when no rule
//! applies; it does not depend on the order in which forces are applied.
//! [`closure`] uses a round-synchronous schedule so that traces are
//! reproducible, while [`Propagator`] applies forces in queue order and is
//! what the search code uses.

use serde::{Deserialize, Serialize};

use crate::graph::{check_matching, Edge, Graph, MatchingViolation, Vertex};

/// Black/white coloring of the vertices of a graph, stored as a bit vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorState {
    words: Vec<u64>,
    len: usize,
}

impl ColorState {
    /// All vertices white.
    pub fn new(len: usize) -> Self {
        ColorState {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_black(len: usize, black: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = ColorState::new(len);
        for v in black {
            s.insert(v);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_black(&self, v: Vertex) -> bool {
        self.words[v >> 6] >> (v & 63) & 1 == 1
    }

    /// Colors `v` black; returns whether it was white before.
    #[inline]
    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(v < self.len, "vertex {v} out of range for {} vertices", self.len);
        let w = &mut self.words[v >> 6];
        let bit = 1u64 << (v & 63);
        let was_white = *w & bit == 0;
        *w |= bit;
        was_white
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn black_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_black(&self) -> bool {
        self.black_count() == self.len
    }

    pub fn is_subset(&self, other: &ColorState) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn black(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len).filter(move |&v| self.is_black(v))
    }

    pub fn white(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len).filter(move |&v| !self.is_black(v))
    }
}

/// One application of the color change rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForceEvent {
    pub round: usize,
    pub forcer: Vertex,
    pub forced: Vertex,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingTrace {
    pub initial: Vec<Vertex>,
    pub events: Vec<ForceEvent>,
}

impl ForcingTrace {
    pub fn rounds(&self) -> usize {
        self.events.last().map_or(0, |e| e.round)
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub state: ColorState,
    pub trace: ForcingTrace,
}

impl Closure {
    pub fn is_complete(&self) -> bool {
        self.state.is_all_black()
    }
}

fn white_counts(g: &Graph, state: &ColorState) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().filter(|&&w| !state.is_black(w)).count() as u32)
        .collect()
}

fn unique_white_neighbor(g: &Graph, state: &ColorState, v: Vertex) -> Vertex {
    *g.neighbors(v)
        .iter()
        .find(|&&w| !state.is_black(w))
        .expect("vertex with a white neighbor count of one")
}

/// Round-synchronous closure with a full trace.
///
/// Every round looks at the coloring as it stood at the start of the round,
/// scans black vertices in ascending order and records each applicable force;
/// when two vertices could force the same neighbor, the smaller one is
/// recorded. All forces of the round are then applied together.
pub fn closure(g: &Graph, initial: &ColorState) -> Closure {
    assert_eq!(initial.len(), g.vertex_count(), "coloring does not match graph");
    let mut state = initial.clone();
    let mut white = white_counts(g, &state);
    let mut trace = ForcingTrace {
        initial: initial.black().collect(),
        events: Vec::new(),
    };
    let mut claimed = vec![false; g.vertex_count()];
    let mut candidates: Vec<Vertex> = state.black().filter(|&v| white[v] == 1).collect();
    let mut round = 0;
    while !candidates.is_empty() {
        round += 1;
        let mut forced_now = Vec::new();
        for &v in &candidates {
            let u = unique_white_neighbor(g, &state, v);
            if !claimed[u] {
                claimed[u] = true;
                forced_now.push(u);
                trace.events.push(ForceEvent {
                    round,
                    forcer: v,
                    forced: u,
                });
            }
        }
        let mut next = Vec::new();
        for &u in &forced_now {
            state.insert(u);
        }
        for &u in &forced_now {
            next.push(u);
            for &w in g.neighbors(u) {
                white[w] -= 1;
                next.push(w);
            }
        }
        next.sort_unstable();
        next.dedup();
        next.retain(|&v| state.is_black(v) && white[v] == 1);
        candidates = next;
    }
    Closure { state, trace }
}

/// Reusable worklist closure for hot loops. Holds scratch buffers sized for
/// one graph.
pub struct Propagator<'g> {
    graph: &'g Graph,
    white: Vec<u32>,
    queue: Vec<Vertex>,
}

impl<'g> Propagator<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Propagator {
            graph,
            white: vec![0; graph.vertex_count()],
            queue: Vec::new(),
        }
    }

    /// Closes `state` in place and returns the number of black vertices.
    pub fn run(&mut self, state: &mut ColorState) -> usize {
        let g = self.graph;
        self.queue.clear();
        let mut black = 0;
        for v in 0..g.vertex_count() {
            let mut c = 0;
            for &w in g.neighbors(v) {
                if !state.is_black(w) {
                    c += 1;
                }
            }
            self.white[v] = c;
            if state.is_black(v) {
                black += 1;
                if c == 1 {
                    self.queue.push(v);
                }
            }
        }
        while let Some(v) = self.queue.pop() {
            if self.white[v] != 1 {
                continue;
            }
            let u = unique_white_neighbor(g, state, v);
            state.insert(u);
            black += 1;
            for &w in g.neighbors(u) {
                self.white[w] -= 1;
                if self.white[w] == 1 && state.is_black(w) {
                    self.queue.push(w);
                }
            }
            if self.white[u] == 1 {
                self.queue.push(u);
            }
        }
        black
    }

    /// Whether the closure of `black` is the whole vertex set.
    pub fn forces_all(&mut self, black: &[Vertex], scratch: &mut ColorState) -> bool {
        scratch.clear();
        for &v in black {
            scratch.insert(v);
        }
        self.run(scratch) == self.graph.vertex_count()
    }
}

pub fn is_zero_forcing_set(g: &Graph, t: &[Vertex]) -> bool {
    let mut state = ColorState::from_black(g.vertex_count(), t.iter().copied());
    Propagator::new(g).run(&mut state) == g.vertex_count()
}

/// Outcome of testing a set of edges for the edge-forcing property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeForcingCheck {
    Forcing,
    /// A valid matching whose closure leaves these vertices white.
    NotForcing {
        white: Vec<Vertex>,
    },
    NotMatching(MatchingViolation),
}

impl EdgeForcingCheck {
    pub fn is_forcing(&self) -> bool {
        matches!(self, EdgeForcingCheck::Forcing)
    }
}

pub fn check_edge_forcing_set(g: &Graph, k: &[Edge]) -> EdgeForcingCheck {
    if let Err(v) = check_matching(g, k) {
        return EdgeForcingCheck::NotMatching(v);
    }
    let mut state = ColorState::from_black(g.vertex_count(), k.iter().flat_map(|e| [e.u, e.v]));
    Propagator::new(g).run(&mut state);
    if state.is_all_black() {
        EdgeForcingCheck::Forcing
    } else {
        EdgeForcingCheck::NotForcing {
            white: state.white().collect(),
        }
    }
}

pub fn is_edge_forcing_set(g: &Graph, k: &[Edge]) -> bool {
    check_edge_forcing_set(g, k).is_forcing()
}

/// Replays `trace` event by event from its initial set, checking that each
/// forcer is black with the forced vertex as its only white neighbor.
/// Returns the final coloring, or the index of the first invalid event.
pub fn replay_trace(g: &Graph, trace: &ForcingTrace) -> Result<ColorState, usize> {
    let mut state = ColorState::from_black(g.vertex_count(), trace.initial.iter().copied());
    for (i, ev) in trace.events.iter().enumerate() {
        if ev.forcer >= g.vertex_count() || ev.forced >= g.vertex_count() {
            return Err(i);
        }
        if !state.is_black(ev.forcer) || state.is_black(ev.forced) || !g.has_edge(ev.forcer, ev.forced) {
            return Err(i);
        }
        let others_black = g
            .neighbors(ev.forcer)
            .iter()
            .all(|&w| w == ev.forced || state.is_black(w));
        if !others_black {
            return Err(i);
        }
        state.insert(ev.forced);
    }
    Ok(state)
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

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn path_propagates_one_per_round() {
        let g = path(4);
        let c = closure(&g, &ColorState::from_black(4, [0]));
        assert!(c.is_complete());
        let ev: Vec<_> = c.trace.events.iter().map(|e| (e.round, e.forcer, e.forced)).collect();
        assert_eq!(ev, vec![(1, 0, 1), (2, 1, 2), (3, 2, 3)]);
    }

    #[test]
    fn cycle_blocks_single_seed() {
        let c = closure(&cycle(4), &ColorState::from_black(4, [0]));
        assert_eq!(c.state.black().collect::<Vec<_>>(), vec![0]);
        assert!(c.trace.events.is_empty());
    }

    #[test]
    fn tie_goes_to_smaller_forcer() {
        // 0 - 2 - 1 with 0 and 1 black: both could force 2
        let g = Graph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let c = closure(&g, &ColorState::from_black(3, [0, 1]));
        assert_eq!(
            c.trace.events,
            vec![ForceEvent {
                round: 1,
                forcer: 0,
                forced: 2
            }]
        );
    }

    #[test]
    fn zero_forcing_membership() {
        assert!(is_zero_forcing_set(&path(5), &[0]));
        assert!(!is_zero_forcing_set(&cycle(4), &[0]));
        assert!(is_zero_forcing_set(&cycle(4), &[0, 1]));
    }

    #[test]
    fn isolated_white_vertex_stays_white() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let c = closure(&g, &ColorState::from_black(3, [0]));
        assert_eq!(c.state.black().collect::<Vec<_>>(), vec![0, 1]);
        let empty = closure(&g, &ColorState::new(3));
        assert_eq!(empty.state.black_count(), 0);
    }

    #[test]
    fn edge_forcing_membership() {
        assert!(is_edge_forcing_set(&cycle(4), &[Edge::new(0, 1)]));
        assert_eq!(
            check_edge_forcing_set(&k4(), &[Edge::new(0, 1)]),
            EdgeForcingCheck::NotForcing { white: vec![2, 3] }
        );
        assert!(matches!(
            check_edge_forcing_set(&path(3), &[Edge::new(0, 1), Edge::new(1, 2)]),
            EdgeForcingCheck::NotMatching(MatchingViolation::SharedEndpoint { .. })
        ));
        assert!(matches!(
            check_edge_forcing_set(&path(3), &[Edge::new(0, 2)]),
            EdgeForcingCheck::NotMatching(MatchingViolation::NotAnEdge(_))
        ));
    }

    #[test]
    fn replay_rejects_bad_event() {
        let g = path(3);
        let trace = ForcingTrace {
            initial: vec![1],
            events: vec![ForceEvent {
                round: 1,
                forcer: 1,
                forced: 0,
            }],
        };
        assert_eq!(replay_trace(&g, &trace), Err(0));
    }
}
