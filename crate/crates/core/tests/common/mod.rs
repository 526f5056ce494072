//! Helpers shared by the integration tests: seeded random graphs and
//! brute-force oracles written independently of the library internals.

#![allow(dead_code)]

use efc::{Edge, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on `n` vertices.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
}

/// Closure by repeated full sweeps over plain vectors.
pub fn naive_closure(g: &Graph, black: &[usize]) -> Vec<bool> {
    let mut b = vec![false; g.vertex_count()];
    for &v in black {
        b[v] = true;
    }
    loop {
        let mut changed = false;
        for v in 0..g.vertex_count() {
            if !b[v] {
                continue;
            }
            let white: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| !b[u]).collect();
            if white.len() == 1 {
                b[white[0]] = true;
                changed = true;
            }
        }
        if !changed {
            return b;
        }
    }
}

pub fn naive_forces(g: &Graph, black: &[usize]) -> bool {
    naive_closure(g, black).into_iter().all(|x| x)
}

/// Minimum edge-forcing number over all edge subsets, `None` when no
/// matching forces. Only for graphs with few edges.
pub fn naive_edge_forcing_number(g: &Graph) -> Option<usize> {
    let edges: Vec<Edge> = g.edges().to_vec();
    assert!(edges.len() <= 20);
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << edges.len()) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let chosen: Vec<Edge> = (0..edges.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        let mut ends: Vec<usize> = chosen.iter().flat_map(|e| [e.u, e.v]).collect();
        let total = ends.len();
        ends.sort_unstable();
        ends.dedup();
        if ends.len() != total {
            continue;
        }
        if naive_forces(g, &ends) {
            best = Some(size);
        }
    }
    best
}

/// Minimum zero forcing number over all vertex subsets.
pub fn naive_zero_forcing_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0u32..(1 << n))
        .filter(|mask| naive_forces(g, &(0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

/// Number of matchings of each size, by subset enumeration.
pub fn naive_matching_counts(g: &Graph) -> Vec<u64> {
    let edges = g.edges();
    let mut counts = vec![0u64; g.vertex_count() / 2 + 1];
    for mask in 0u32..(1 << edges.len()) {
        let mut used = 0u64;
        let mut ok = true;
        for (i, e) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let bits = 1u64 << e.u | 1u64 << e.v;
                if used & bits != 0 {
                    ok = false;
                    break;
                }
                used |= bits;
            }
        }
        if ok {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}
