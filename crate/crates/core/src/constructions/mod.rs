//! Edge-forcing sets of butterfly networks: explicit, searched and recursive
//! constructions, the `BF(2)` nonexistence check, and the known bounds.

pub mod bounds;
pub mod obstruction;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::butterfly::{Butterfly, ButterflyCoordinate, ButterflyError};
use crate::forcing::{check_edge_forcing_set, ColorState, EdgeForcingCheck, Propagator};
use crate::graph::{Edge, Matching, Vertex};
use crate::solver::{exhaust_matchings, ExhaustionReport, SolverError, SolverOptions};

pub use bounds::{known_bounds, BoundsReport};
pub use obstruction::{find_obstructions, structural_lower_bound, Obstruction, StructuralLowerBound};
pub use search::{SearchParams, DEFAULT_SEED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("BF(2) has no edge-forcing set")]
    Nonexistent,
    #[error("dimension {r} is below the minimum of {min}")]
    DimensionTooSmall { r: usize, min: usize },
    #[error("dimension {r} is above the maximum of {max}")]
    DimensionTooLarge { r: usize, max: usize },
    #[error(transparent)]
    Butterfly(#[from] ButterflyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("no edge-forcing set of size {target} found for BF({r}); best left {white_left} vertices white")]
    SearchExhausted { r: usize, target: usize, white_left: usize },
    #[error("construction for BF({r}) leaves {} vertices white after repair", unforced.len())]
    VerificationFailed { r: usize, unforced: Vec<Vertex> },
    #[error("construction for BF({r}) has {size} edges, above the bound {bound}")]
    AboveBound { r: usize, size: usize, bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum ConstructionMethod {
    /// Fixed edge list.
    Explicit,
    /// Seeded local search from the binding-edge skeleton.
    Search {
        seed: u64,
        restarts: usize,
        iterations: u64,
    },
    /// Four translated copies of the `BF(r-2)` set plus one edge per
    /// horizontal binding diamond.
    Recursive { base: usize, repairs: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub r: usize,
    pub matching: Matching,
    pub method: ConstructionMethod,
}

/// Verified edge-forcing matching of `BF(r)`, `r >= 3`, with the default
/// search seed.
pub fn construct_edge_forcing(r: usize) -> Result<Construction, ConstructionError> {
    construct_edge_forcing_with(r, &SearchParams::default())
}

pub fn construct_edge_forcing_with(r: usize, params: &SearchParams) -> Result<Construction, ConstructionError> {
    match r {
        2 => return Err(ConstructionError::Nonexistent),
        0 | 1 => return Err(ConstructionError::DimensionTooSmall { r, min: 3 }),
        _ => {}
    }
    let bf = Butterfly::new(r)?;
    let construction = match r {
        3 => Construction {
            r,
            matching: bf3_explicit(&bf)?,
            method: ConstructionMethod::Explicit,
        },
        4 => search::search(&bf, 25, params)?,
        5 => search::search(&bf, 47, params)?,
        _ => recursive(&bf, params)?,
    };
    if let EdgeForcingCheck::NotForcing { white } = check_edge_forcing_set(bf.graph(), construction.matching.edges()) {
        return Err(ConstructionError::VerificationFailed { r, unforced: white });
    }
    let bound = bounds::upper_formula(r);
    if construction.matching.len() as u64 > bound {
        return Err(ConstructionError::AboveBound {
            r,
            size: construction.matching.len(),
            bound,
        });
    }
    Ok(construction)
}

fn bf3_explicit(bf: &Butterfly) -> Result<Matching, ConstructionError> {
    let c = ButterflyCoordinate::new;
    let mut edges = Vec::new();
    // straight edges on the odd rows between levels 0 and 1
    for i in 1..=4 {
        edges.push(bf.edge(c(2 * i - 1, 0), c(2 * i - 1, 1))?);
    }
    // cross edges between levels 2 and 3
    for (a, b) in [
        (c(2, 2), c(6, 3)),
        (c(3, 2), c(7, 3)),
        (c(0, 3), c(4, 2)),
        (c(1, 3), c(5, 2)),
    ] {
        edges.push(bf.edge(a, b)?);
    }
    Ok(Matching::new(bf.graph(), edges).expect("disjoint by construction"))
}

fn recursive(bf: &Butterfly, params: &SearchParams) -> Result<Construction, ConstructionError> {
    let r = bf.dimension();
    let base = construct_edge_forcing_with(r - 2, params)?;
    let split = bf.decompose_subcopies()?;
    let mut edges: Vec<Edge> = Vec::new();
    for q in 0..4 {
        edges.extend(
            base.matching
                .edges()
                .iter()
                .map(|e| Edge::new(split.embed(q, e.u), split.embed(q, e.v))),
        );
    }
    let high = 1usize << (r - 1);
    for w in (0..bf.rows()).filter(|w| w & high == 0) {
        edges.push(Edge::new(bf.vertex(w, r - 1), bf.vertex(w, r)));
    }
    let mut repairs = Vec::new();
    let matching = repair(bf, edges, &mut repairs);
    Ok(Construction {
        r,
        matching,
        method: ConstructionMethod::Recursive { base: r - 2, repairs },
    })
}

/// Bounded local repair of a candidate: first re-pick the edge inside each
/// horizontal diamond, then add free edges between levels `r-1, r` and then
/// `r-2, r-1`, keeping any change that enlarges the closure.
fn repair(bf: &Butterfly, mut edges: Vec<Edge>, log: &mut Vec<String>) -> Matching {
    let g = bf.graph();
    let r = bf.dimension();
    let n = g.vertex_count();
    let mut prop = Propagator::new(g);
    let mut state = ColorState::new(n);
    let mut score = |edges: &[Edge], state: &mut ColorState| {
        state.clear();
        for e in edges {
            state.insert(e.u);
            state.insert(e.v);
        }
        prop.run(state)
    };
    let mut best = score(&edges, &mut state);
    if best == n {
        return Matching::new(g, edges).expect("construction is a matching");
    }
    let diamonds = bf.binding_diamonds().expect("r >= 3");
    for d in diamonds.iter().filter(|d| d.level == r - 1) {
        let Some(pos) = edges.iter().position(|e| d.edges().contains(e)) else {
            continue;
        };
        let current = edges[pos];
        for alt in d.edges() {
            if alt == current || edges.iter().any(|e| e != &current && e.shares_endpoint(&alt)) {
                continue;
            }
            edges[pos] = alt;
            let s = score(&edges, &mut state);
            if s > best {
                log.push(format!("swap {} -> {}", current, alt));
                best = s;
                break;
            }
            edges[pos] = current;
        }
        if best == n {
            break;
        }
    }
    for lower in [r - 1, r - 2] {
        if best == n {
            break;
        }
        for w in 0..bf.rows() {
            for row2 in [w, w ^ (1 << lower)] {
                let e = Edge::new(bf.vertex(w, lower), bf.vertex(row2, lower + 1));
                if edges.iter().any(|x| x.shares_endpoint(&e)) {
                    continue;
                }
                edges.push(e);
                let s = score(&edges, &mut state);
                if s > best {
                    log.push(format!("add {}", e));
                    best = s;
                } else {
                    edges.pop();
                }
            }
        }
    }
    Matching::new(g, edges).expect("repair keeps a matching")
}

/// Exhaustive check that `BF(2)` has no edge-forcing set.
pub fn bf2_nonexistence() -> Result<ExhaustionReport, ConstructionError> {
    let bf = Butterfly::new(2)?;
    Ok(exhaust_matchings(bf.graph(), &SolverOptions::default())?)
}
