//! Closed-form genus bounds for complete graphs and dual-separable
//! embeddings. Everything is exact: sums are formed as rationals and only
//! then rounded.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {0} is too small; need n >= 3")]
    NTooSmall(u32),
    #[error("c = {c} is too small; need c >= {min}")]
    CTooSmall { c: u32, min: u32 },
}

/// Genus lower-bound query: connectivity `c`, vertex excess and face excess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundQuery {
    pub c: u32,
    pub v_plus: u32,
    pub f_plus: u32,
}

impl BoundQuery {
    pub fn new(c: u32, v_plus: u32, f_plus: u32) -> Self {
        BoundQuery { c, v_plus, f_plus }
    }
}

type Q = Ratio<i128>;

fn require_c(c: u32, min: u32) -> Result<(), BoundsError> {
    if c < min {
        Err(BoundsError::CTooSmall { c, min })
    } else {
        Ok(())
    }
}

fn to_u64(x: Q) -> u64 {
    debug_assert!(x.is_integer() && *x.numer() >= 0);
    u64::try_from(x.to_integer()).expect("bounds fit in u64 for u32 inputs")
}

/// Minimum genus of `K_n`: `ceil((n-3)(n-4)/12)`.
pub fn genus_complete(n: u32) -> Result<u64, BoundsError> {
    if n < 3 {
        return Err(BoundsError::NTooSmall(n));
    }
    let n = i128::from(n);
    Ok(to_u64(Q::new((n - 3) * (n - 4), 12).ceil()))
}

fn lemma2_excess_term(q: &BoundQuery) -> Q {
    let c = i128::from(q.c);
    Q::new((c - 6) * i128::from(q.v_plus), 12) + Q::new(i128::from(q.f_plus), 6)
}

/// Genus lower bound for an embedding of a graph of minimum degree `c >= 6`
/// with the given vertex and face excess:
/// `ceil((c-2)(c-3)/12 + (c-6)v/12 + f/6)`.
pub fn lemma2_bound(q: &BoundQuery) -> Result<u64, BoundsError> {
    require_c(q.c, 6)?;
    let c = i128::from(q.c);
    let total = Q::new((c - 2) * (c - 3), 12) + lemma2_excess_term(q);
    Ok(to_u64(total.ceil()))
}

/// The weaker split form `gamma(K_{c+1}) + floor((c-6)v/12 + f/6)`.
pub fn lemma2_floor_bound(q: &BoundQuery) -> Result<u64, BoundsError> {
    require_c(q.c, 6)?;
    Ok(genus_complete(q.c + 1)? + to_u64(lemma2_excess_term(q).floor()))
}

/// Lower bound on the genus of a dual-separable embedding of a c-connected
/// graph, `c >= 8`.
pub fn delta1_lower(c: u32) -> Result<u64, BoundsError> {
    require_c(c, 8)?;
    Ok(genus_complete(c + 1)? + 2)
}

/// Lower bound for simple duals with a 2-vertex-cut. Informational.
pub fn delta2_lower(c: u32) -> Result<u64, BoundsError> {
    require_c(c, 6)?;
    Ok(genus_complete(c + 1)? + 1)
}

/// A cutface of a dual-separable embedding of connectivity `c >= 8` has
/// length at least 15.
pub fn min_cutface_length(c: u32) -> Result<u32, BoundsError> {
    require_c(c, 8)?;
    Ok(15)
}

/// Residues of `c` modulo 12 for which an embedding with an 18-gon cutface
/// and otherwise triangles and two quadrilaterals can meet `delta1_lower`.
pub const FEASIBLE_18GON_RESIDUES: [u32; 6] = [0, 1, 4, 5, 8, 9];

pub fn feasible_18gon_residues(c: u32) -> bool {
    FEASIBLE_18GON_RESIDUES.contains(&(c % 12))
}

/// One row of the `bounds` table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub c: u32,
    pub genus_complete: u64,
    pub delta1_lower: u64,
    pub delta2_lower: u64,
    pub feasible_18gon: bool,
}

pub fn bounds_row(c: u32) -> Result<BoundsRow, BoundsError> {
    Ok(BoundsRow {
        c,
        genus_complete: genus_complete(c + 1)?,
        delta1_lower: delta1_lower(c)?,
        delta2_lower: delta2_lower(c)?,
        feasible_18gon: feasible_18gon_residues(c),
    })
}
