//! Gauss norms on (finitely supported) Tate-algebra elements and the rank-2
//! valuation on univariate ones that refines the Gauss norm by the largest
//! index attaining it.
//!
//! Magnitudes are kept as p-adic valuations: |a| = p^(-val a).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::padic::PAdicElement;
use crate::poly::MPoly;

/// A polynomial standing in for a convergent power series.
pub type TatePoly = MPoly<PAdicElement>;

/// Minimum coefficient valuation; `None` is +infinity (the zero polynomial).
pub fn gauss_norm(f: &TatePoly) -> Option<u32> {
    f.terms().map(|(_, c)| c.val()).min()
}

/// Divide by p^(gauss_norm f) so the result has Gauss norm 1.
pub fn normalize_generator(f: &TatePoly) -> Result<TatePoly> {
    let v = gauss_norm(f).ok_or(Error::ZeroPolynomial)?;
    f.try_map_coeffs(|c| c.shift_down(v))
}

/// A value in the lexicographically ordered group R_{>0} x gamma^Z, plus
/// the bottom element 0. `valuation` records the real magnitude p^(-valuation);
/// `gamma` is the exponent of the infinitesimal gamma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaValue {
    Zero,
    Finite { valuation: u32, gamma: i64 },
}

impl GammaValue {
    pub fn finite(valuation: u32, gamma: i64) -> Self {
        Self::Finite { valuation, gamma }
    }
}

/// Group multiplication: magnitudes multiply (valuations add), gamma
/// exponents add. Zero absorbs.
impl std::ops::Mul for GammaValue {
    type Output = GammaValue;

    fn mul(self, other: Self) -> Self {
        match (self, other) {
            (Self::Finite { valuation: a, gamma: g }, Self::Finite { valuation: b, gamma: h }) => {
                Self::Finite { valuation: a + b, gamma: g + h }
            }
            _ => Self::Zero,
        }
    }
}

impl Ord for GammaValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Zero, Self::Zero) => Ordering::Equal,
            (Self::Zero, _) => Ordering::Less,
            (_, Self::Zero) => Ordering::Greater,
            (Self::Finite { valuation: a, gamma: g }, Self::Finite { valuation: b, gamma: h }) => {
                // larger valuation = smaller magnitude
                b.cmp(a).then(g.cmp(h))
            }
        }
    }
}

impl PartialOrd for GammaValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("0"),
            Self::Finite { valuation, gamma } => write!(f, "(p^-{valuation}, gamma^{gamma})"),
        }
    }
}

pub fn gamma_compare(a: &GammaValue, b: &GammaValue) -> Ordering {
    a.cmp(b)
}

/// The rank-2 value (|f|, gamma^i0) of a univariate f, where i0 is the
/// largest index whose coefficient attains the Gauss norm.
pub fn rank2_val(f: &TatePoly) -> Result<GammaValue> {
    if f.nvars() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, actual: f.nvars() });
    }
    let Some(norm) = gauss_norm(f) else {
        return Ok(GammaValue::Zero);
    };
    let top =
        f.terms().filter(|(_, c)| c.val() == norm).map(|(e, _)| e[0]).max().expect("some coefficient attains the norm");
    Ok(GammaValue::finite(norm, top as i64))
}
