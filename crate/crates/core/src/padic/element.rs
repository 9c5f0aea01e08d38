use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::{mul_reduce, PAdicContext, ResidueElement};
use crate::error::{Error, Result};

/// An element of Z_q known modulo p^N, stored as k coefficients on
/// 1, w, ..., w^(k-1), each in [0, p^N).
///
/// The operator impls on references panic when the operands come from
/// different contexts; the `try_*` methods report it instead.
#[derive(Clone)]
pub struct PAdicElement {
    ctx: PAdicContext,
    coeffs: Vec<u64>,
}

impl PAdicElement {
    pub(crate) fn from_raw(ctx: PAdicContext, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), ctx.degree());
        Self { ctx, coeffs }
    }

    pub fn context(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// p-adic valuation, capped at the precision N (which stands for zero).
    pub fn val(&self) -> u32 {
        let p = self.ctx.p();
        let n = self.ctx.precision();
        self.coeffs
            .iter()
            .map(|&c| {
                if c == 0 {
                    return n;
                }
                let mut v = 0;
                let mut c = c;
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(n)
    }

    /// Zero at working precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.val() == 0
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let m = self.ctx.modulus_power();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + b) % m).collect();
        Ok(Self::from_raw(self.ctx.clone(), coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let m = self.ctx.modulus_power();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + m - b) % m).collect();
        Ok(Self::from_raw(self.ctx.clone(), coeffs))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let coeffs = mul_reduce(&self.coeffs, &other.coeffs, self.ctx.modulus(), self.ctx.modulus_power());
        Ok(Self::from_raw(self.ctx.clone(), coeffs))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit: invert the residue, then Newton b <- b(2 - ab).
    pub fn invert(&self) -> Result<Self> {
        let v = self.val();
        if v > 0 {
            return Err(Error::NotAUnit(v));
        }
        let mut b = self.reduce().inverse().expect("unit has nonzero residue").lift();
        let two = self.ctx.from_int(2);
        let mut correct = 1u32;
        while correct < self.ctx.precision() {
            b = &b * &(&two - &(self * &b));
            correct = correct.saturating_mul(2);
        }
        Ok(b)
    }

    pub fn reduce(&self) -> ResidueElement {
        let p = self.ctx.p();
        ResidueElement::from_raw(self.ctx.clone(), self.coeffs.iter().map(|c| c % p).collect())
    }

    /// Multiply by p^v.
    pub fn shift_up(&self, v: u32) -> Self {
        let m = self.ctx.modulus_power();
        let factor = match self.ctx.p().checked_pow(v) {
            Some(f) if f < m => f,
            _ => return self.ctx.zero(),
        };
        let coeffs = self.coeffs.iter().map(|&c| ((c as u128 * factor as u128) % m as u128) as u64).collect();
        Self::from_raw(self.ctx.clone(), coeffs)
    }

    /// Exact division by p^v, which requires `val() >= v`. The top v digits
    /// of the quotient are unknown at this precision and come back as zero.
    pub fn shift_down(&self, v: u32) -> Result<Self> {
        let own = self.val();
        if own < v {
            return Err(Error::Invalid(format!("element of valuation {own} is not divisible by p^{v}")));
        }
        if v >= self.ctx.precision() {
            return Ok(self.ctx.zero());
        }
        let factor = self.ctx.p().pow(v);
        let coeffs = self.coeffs.iter().map(|&c| c / factor).collect();
        Ok(Self::from_raw(self.ctx.clone(), coeffs))
    }

    /// Coefficients as symmetric representatives in (-p^N/2, p^N/2].
    pub fn signed_coeffs(&self) -> Vec<i128> {
        let m = self.ctx.modulus_power() as i128;
        self.coeffs
            .iter()
            .map(|&c| {
                let c = c as i128;
                if c > m / 2 {
                    c - m
                } else {
                    c
                }
            })
            .collect()
    }
}

impl PartialEq for PAdicElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx.same(&other.ctx)
    }
}

impl Eq for PAdicElement {}

impl Hash for PAdicElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for PAdicElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PAdicElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Debug for PAdicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self, self.ctx.p(), self.ctx.precision())
    }
}

/// Decimal coefficient vector; a bare integer in degree 1.
impl fmt::Display for PAdicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coeffs(f, &self.coeffs)
    }
}

/// k = 1: the integer itself. Otherwise a polynomial in the generator w,
/// highest power first, in the polynomial text grammar.
pub(super) fn write_coeffs(f: &mut fmt::Formatter<'_>, coeffs: &[u64]) -> fmt::Result {
    let mut first = true;
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match (e, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => f.write_str("w")?,
            (1, c) => write!(f, "{c}*w")?,
            (e, 1) => write!(f, "w^{e}")?,
            (e, c) => write!(f, "{c}*w^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Add for &PAdicElement {
    type Output = PAdicElement;
    fn add(self, rhs: Self) -> PAdicElement {
        self.try_add(rhs).expect("p-adic context mismatch")
    }
}

impl Sub for &PAdicElement {
    type Output = PAdicElement;
    fn sub(self, rhs: Self) -> PAdicElement {
        self.try_sub(rhs).expect("p-adic context mismatch")
    }
}

impl Mul for &PAdicElement {
    type Output = PAdicElement;
    fn mul(self, rhs: Self) -> PAdicElement {
        self.try_mul(rhs).expect("p-adic context mismatch")
    }
}

impl Neg for &PAdicElement {
    type Output = PAdicElement;
    fn neg(self) -> PAdicElement {
        &self.ctx.zero() - self
    }
}
