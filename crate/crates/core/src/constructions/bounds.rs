//! Known values and bounds for the edge-forcing number of `BF(r)`.

use serde::{Deserialize, Serialize};

use super::ConstructionError;

/// Exact values for `BF(3)`, `BF(4)`, `BF(5)`.
pub const EXACT_VALUES: [(usize, u64); 3] = [(3, 8), (4, 25), (5, 47)];

/// Largest dimension whose bounds fit comfortably in `u64`.
pub const MAX_BOUNDS_DIMENSION: usize = 56;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundSource {
    /// One edge per binding diamond, `2^r`.
    BindingDiamonds,
    /// Published counting argument for `r = 4, 5`; not re-derived by search.
    Cited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub r: usize,
    pub edge_forcing_exists: bool,
    pub lower: Option<u64>,
    pub lower_source: Option<LowerBoundSource>,
    pub exact: Option<u64>,
    pub upper_formula: Option<u64>,
    pub upper_recursive: Option<u64>,
    pub conjectured_exact: Option<u64>,
    /// Reference upper bound on the zero forcing number of `BF(r)`.
    pub zero_forcing_upper_reference: u64,
}

impl BoundsReport {
    /// `lower <= exact <= min(upper_formula, upper_recursive)`, where present.
    pub fn is_consistent(&self) -> bool {
        if !self.edge_forcing_exists {
            return self.lower.is_none() && self.exact.is_none();
        }
        let (Some(lo), Some(uf), Some(ur)) = (self.lower, self.upper_formula, self.upper_recursive) else {
            return false;
        };
        let up = uf.min(ur);
        match self.exact {
            Some(x) => lo <= x && x <= up,
            None => lo <= up,
        }
    }
}

pub fn exact_value(r: usize) -> Option<u64> {
    EXACT_VALUES.iter().find(|(d, _)| *d == r).map(|&(_, v)| v)
}

/// `ceil(r/2) * 2^(r-1)` for odd `r`, `(r/2 + 2) * 2^(r-1)` for even `r`.
pub fn upper_formula(r: usize) -> u64 {
    let half = 1u64 << (r - 1);
    if r % 2 == 1 {
        r.div_ceil(2) as u64 * half
    } else {
        (r as u64 / 2 + 2) * half
    }
}

/// `u(r) = 4 u(r-2) + 2^(r-1)` over the same parity, starting from the
/// largest seed `(d, u(d))` with `d <= r` and `d ≡ r (mod 2)`.
pub fn recursive_upper(r: usize, seeds: &[(usize, u64)]) -> Option<u64> {
    let (d, mut u) = seeds
        .iter()
        .filter(|(d, _)| *d <= r && (r - d).is_multiple_of(2))
        .max_by_key(|(d, _)| *d)
        .copied()?;
    let mut level = d;
    while level < r {
        level += 2;
        u = 4 * u + (1u64 << (level - 1));
    }
    Some(u)
}

/// `ceil(((3r + 7) 2^r + 2 (-1)^r) / 9)`.
pub fn zero_forcing_upper_reference(r: usize) -> u64 {
    let base = (3 * r as i128 + 7) * (1i128 << r);
    let sign = if r.is_multiple_of(2) { 2 } else { -2 };
    ((base + sign) as u128).div_ceil(9) as u64
}

pub fn known_bounds(r: usize) -> Result<BoundsReport, ConstructionError> {
    if r < 2 {
        return Err(ConstructionError::DimensionTooSmall { r, min: 2 });
    }
    if r > MAX_BOUNDS_DIMENSION {
        return Err(ConstructionError::DimensionTooLarge {
            r,
            max: MAX_BOUNDS_DIMENSION,
        });
    }
    let zf = zero_forcing_upper_reference(r);
    if r == 2 {
        return Ok(BoundsReport {
            r,
            edge_forcing_exists: false,
            lower: None,
            lower_source: None,
            exact: None,
            upper_formula: None,
            upper_recursive: None,
            conjectured_exact: None,
            zero_forcing_upper_reference: zf,
        });
    }
    let exact = exact_value(r);
    let (lower, source) = match r {
        4 | 5 => (exact.unwrap(), LowerBoundSource::Cited),
        _ => (1u64 << r, LowerBoundSource::BindingDiamonds),
    };
    let upper_recursive = recursive_upper(r, &EXACT_VALUES).expect("seeded for both parities");
    let upper_formula = upper_formula(r);
    Ok(BoundsReport {
        r,
        edge_forcing_exists: true,
        lower: Some(lower),
        lower_source: Some(source),
        exact,
        upper_formula: Some(upper_formula),
        upper_recursive: Some(upper_recursive),
        conjectured_exact: (r >= 6).then_some(upper_recursive.min(upper_formula)),
        zero_forcing_upper_reference: zf,
    })
}
