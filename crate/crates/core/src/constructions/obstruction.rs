//! 4-cycle obstructions to edge forcing.
//!
//! Two degree-2 vertices `x`, `y` with the same neighbors `u`, `v` span the
//! 4-cycle `x u y v`. If a matching uses none of its edges then `x` and `y`
//! start white, and `u` and `v` each keep two white neighbors until one of
//! `x`, `y` is forced, which never happens. So every edge-forcing set meets
//! every such cycle, and pairwise edge-disjoint cycles each need their own
//! edge.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph, Vertex};

/// Exact maximum disjoint family up to this many obstructions.
pub const EXACT_FAMILY_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    /// `[x, u, y, v]` in cycle order.
    pub cycle: [Vertex; 4],
    /// The degree-2 pair `x`, `y`.
    pub blocked_pair: [Vertex; 2],
}

impl Obstruction {
    pub fn hubs(&self) -> [Vertex; 2] {
        [self.cycle[1], self.cycle[3]]
    }

    pub fn edges(&self) -> [Edge; 4] {
        let [x, u, y, v] = self.cycle;
        let mut e = [Edge::new(x, u), Edge::new(u, y), Edge::new(y, v), Edge::new(v, x)];
        e.sort();
        e
    }

    pub fn shares_edge(&self, other: &Obstruction) -> bool {
        let a = self.edges();
        other.edges().iter().any(|e| a.contains(e))
    }

    /// Checks the defining property against `g`.
    pub fn holds_in(&self, g: &Graph) -> bool {
        let [x, y] = self.blocked_pair;
        let [u, v] = self.hubs();
        let mut hubs = [u, v];
        hubs.sort_unstable();
        x != y
            && u != v
            && [x, y, u, v].iter().all(|&w| w < g.vertex_count())
            && g.neighbors(x) == hubs
            && g.neighbors(y) == hubs
    }
}

/// All obstructions of `g`, ordered by hub pair then blocked pair.
pub fn find_obstructions(g: &Graph) -> Vec<Obstruction> {
    let mut groups: BTreeMap<(Vertex, Vertex), Vec<Vertex>> = BTreeMap::new();
    for x in 0..g.vertex_count() {
        if let [u, v] = *g.neighbors(x) {
            groups.entry((u, v)).or_default().push(x);
        }
    }
    let mut out = Vec::new();
    for ((u, v), xs) in groups {
        for (i, &x) in xs.iter().enumerate() {
            for &y in &xs[i + 1..] {
                out.push(Obstruction {
                    cycle: [x, u, y, v],
                    blocked_pair: [x, y],
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralLowerBound {
    pub value: usize,
    /// The pairwise edge-disjoint family realizing `value`.
    pub obstructions: Vec<Obstruction>,
    /// Every obstruction found, including those outside the family.
    pub all: Vec<Obstruction>,
    /// Whether the family is a proven maximum (false when greedy was used).
    pub exact: bool,
}

/// Lower bound on the edge-forcing number from a largest edge-disjoint
/// family of obstructions.
pub fn structural_lower_bound(g: &Graph) -> StructuralLowerBound {
    let all = find_obstructions(g);
    let (chosen, exact) = if all.len() <= EXACT_FAMILY_LIMIT {
        (max_disjoint_family(&all), true)
    } else {
        (greedy_family(&all), false)
    };
    StructuralLowerBound {
        value: chosen.len(),
        obstructions: chosen.iter().map(|&i| all[i].clone()).collect(),
        all,
        exact,
    }
}

fn greedy_family(all: &[Obstruction]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, o) in all.iter().enumerate() {
        if chosen.iter().all(|&j| !all[j].shares_edge(o)) {
            chosen.push(i);
        }
    }
    chosen
}

fn max_disjoint_family(all: &[Obstruction]) -> Vec<usize> {
    let n = all.len();
    let mut conflict = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if all[i].shares_edge(&all[j]) {
                conflict[i] |= 1 << j;
                conflict[j] |= 1 << i;
            }
        }
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0u64;
    independent_set(&conflict, full, 0, &mut best);
    (0..n).filter(|&i| best >> i & 1 == 1).collect()
}

fn independent_set(conflict: &[u64], candidates: u64, taken: u64, best: &mut u64) {
    if candidates == 0 {
        if taken.count_ones() > best.count_ones() {
            *best = taken;
        }
        return;
    }
    if taken.count_ones() + candidates.count_ones() <= best.count_ones() {
        return;
    }
    let i = candidates.trailing_zeros() as usize;
    let bit = 1u64 << i;
    independent_set(conflict, candidates & !bit & !conflict[i], taken | bit, best);
    if conflict[i] & candidates != 0 {
        independent_set(conflict, candidates & !bit, taken, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_has_two_overlapping_obstructions() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let lb = structural_lower_bound(&g);
        assert_eq!(lb.all.len(), 2);
        assert_eq!(lb.value, 1);
        assert!(lb.exact);
        assert!(lb.all.iter().all(|o| o.holds_in(&g)));
    }

    #[test]
    fn k23_yields_three_pairs() {
        // K(2,3): hubs 0,1; degree-2 side 2,3,4
        let g = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let lb = structural_lower_bound(&g);
        assert_eq!(lb.all.len(), 3);
        // every pair of these cycles shares an edge
        assert_eq!(lb.value, 1);
    }

    #[test]
    fn no_obstruction_in_a_path() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(structural_lower_bound(&g).value, 0);
    }

    #[test]
    fn disjoint_squares_add_up() {
        let mut e = Vec::new();
        for s in 0..3 {
            let b = 4 * s;
            e.extend([(b, b + 1), (b + 1, b + 2), (b + 2, b + 3), (b + 3, b)]);
        }
        let g = Graph::from_edges(12, e).unwrap();
        assert_eq!(structural_lower_bound(&g).value, 3);
    }
}
