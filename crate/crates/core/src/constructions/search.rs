//! Seeded local search for edge-forcing matchings of a given size.
//!
//! The candidate always holds exactly one edge from every binding diamond
//! (starting from the straight edges on the odd rows of the vertical
//! diamonds and the lower rows of the horizontal ones) plus free edges
//! between the middle levels. Moves re-pick the edge of one slot; they are
//! accepted by a Metropolis rule on the size of the closure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Construction, ConstructionError, ConstructionMethod};
use crate::butterfly::{Butterfly, DiamondKind};
use crate::forcing::{ColorState, Propagator};
use crate::graph::{Edge, Matching};

pub const DEFAULT_SEED: u64 = 0x00ef_c0de;

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub seed: u64,
    pub restarts: usize,
    pub iterations_per_restart: u64,
    pub start_temperature: f64,
    pub cooling: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            seed: DEFAULT_SEED,
            restarts: 64,
            iterations_per_restart: 40_000,
            start_temperature: 2.0,
            cooling: 0.9995,
        }
    }
}

struct Slot {
    domain: Vec<Edge>,
}

pub(super) fn search(bf: &Butterfly, target: usize, params: &SearchParams) -> Result<Construction, ConstructionError> {
    let g = bf.graph();
    let r = bf.dimension();
    let n = g.vertex_count();
    let diamonds = bf.binding_diamonds()?;

    let mut slots: Vec<Slot> = Vec::new();
    let mut skeleton: Vec<Edge> = Vec::new();
    for d in &diamonds {
        let (w_low, w_high) = d.rows;
        let start = match d.kind {
            DiamondKind::Vertical => Edge::new(bf.vertex(w_high, 0), bf.vertex(w_high, 1)),
            DiamondKind::Horizontal => Edge::new(bf.vertex(w_low, r - 1), bf.vertex(w_low, r)),
        };
        skeleton.push(start);
        slots.push(Slot {
            domain: d.edges().to_vec(),
        });
    }
    let middle: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| {
            let (a, b) = (bf.coordinate(e.u).level, bf.coordinate(e.v).level);
            a.min(b) >= 1 && a.max(b) < r
        })
        .collect();
    if target < slots.len() {
        return Err(ConstructionError::SearchExhausted {
            r,
            target,
            white_left: n,
        });
    }
    let free = target - slots.len();

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut prop = Propagator::new(g);
    let mut state = ColorState::new(n);
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut best_white = n;
    let mut iterations = 0u64;

    for restart in 0..params.restarts {
        // initial candidate
        let mut chosen: Vec<Edge> = skeleton.clone();
        owner.iter_mut().for_each(|o| *o = None);
        for (i, e) in chosen.iter().enumerate() {
            owner[e.u] = Some(i);
            owner[e.v] = Some(i);
        }
        let mut order = middle.clone();
        order.shuffle(&mut rng);
        for e in order {
            if chosen.len() == target {
                break;
            }
            if owner[e.u].is_none() && owner[e.v].is_none() {
                owner[e.u] = Some(chosen.len());
                owner[e.v] = Some(chosen.len());
                chosen.push(e);
            }
        }
        if chosen.len() < target {
            continue;
        }
        let mut score = closure_size(&mut prop, &mut state, &chosen);
        let mut temperature = params.start_temperature;
        for _ in 0..params.iterations_per_restart {
            if score == n {
                break;
            }
            iterations += 1;
            let slot = rng.gen_range(0..target);
            let domain = if slot < slots.len() {
                &slots[slot].domain
            } else if free > 0 {
                &middle
            } else {
                continue;
            };
            let proposal = domain[rng.gen_range(0..domain.len())];
            let compatible = [proposal.u, proposal.v]
                .iter()
                .all(|&x| owner[x].is_none() || owner[x] == Some(slot));
            let old = chosen[slot];
            if !compatible || proposal == old {
                continue;
            }
            chosen[slot] = proposal;
            let s = closure_size(&mut prop, &mut state, &chosen);
            let accept = s >= score || rng.gen::<f64>() < ((s as f64 - score as f64) / temperature).exp();
            if accept {
                owner[old.u] = None;
                owner[old.v] = None;
                owner[proposal.u] = Some(slot);
                owner[proposal.v] = Some(slot);
                score = s;
            } else {
                chosen[slot] = old;
            }
            temperature = (temperature * params.cooling).max(0.05);
        }
        best_white = best_white.min(n - score);
        if score == n {
            let matching = Matching::new(g, chosen).expect("search keeps a matching");
            return Ok(Construction {
                r,
                matching,
                method: ConstructionMethod::Search {
                    seed: params.seed,
                    restarts: restart + 1,
                    iterations,
                },
            });
        }
    }
    Err(ConstructionError::SearchExhausted {
        r,
        target,
        white_left: best_white,
    })
}

fn closure_size(prop: &mut Propagator<'_>, state: &mut ColorState, edges: &[Edge]) -> usize {
    state.clear();
    for e in edges {
        state.insert(e.u);
        state.insert(e.v);
    }
    prop.run(state)
}
