use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::element::write_coeffs;
use super::{mul_reduce, PAdicContext, PAdicElement};
use crate::error::Result;

/// An element of the residue field F_q = F_p[x]/(m(x)).
#[derive(Clone)]
pub struct ResidueElement {
    ctx: PAdicContext,
    coeffs: Vec<u64>,
}

impl ResidueElement {
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

    /// Position in `PAdicContext::residue_elements`.
    pub fn index(&self) -> u64 {
        let p = self.ctx.p();
        self.coeffs.iter().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficient-wise lift with digits in [0, p).
    pub fn lift(&self) -> PAdicElement {
        PAdicElement::from_raw(self.ctx.clone(), self.coeffs.clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let p = self.ctx.p();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + b) % p).collect();
        Ok(Self::from_raw(self.ctx.clone(), coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let p = self.ctx.p();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + p - b) % p).collect();
        Ok(Self::from_raw(self.ctx.clone(), coeffs))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let coeffs = mul_reduce(&self.coeffs, &other.coeffs, self.ctx.modulus(), self.ctx.p());
        Ok(Self::from_raw(self.ctx.clone(), coeffs))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ctx.residue_one();
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

    /// x^(q-2); `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.ctx.residue_field_size() - 2))
    }

    /// x -> x^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p())
    }

    /// The unique s with s^p = self, i.e. self^(p^(k-1)).
    pub fn pth_root(&self) -> Self {
        (1..self.ctx.degree()).fold(self.clone(), |acc, _| acc.frobenius())
    }

    /// x -> x^(p^e).
    pub fn frobenius_power(&self, e: usize) -> Self {
        (0..e).fold(self.clone(), |acc, _| acc.frobenius())
    }
}

impl PartialEq for ResidueElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx.same(&other.ctx)
    }
}

impl Eq for ResidueElement {}

impl Hash for ResidueElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for ResidueElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ResidueElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Debug for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (in F_{}^{})", self, self.ctx.p(), self.ctx.degree())
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coeffs(f, &self.coeffs)
    }
}

impl Add for &ResidueElement {
    type Output = ResidueElement;
    fn add(self, rhs: Self) -> ResidueElement {
        self.try_add(rhs).expect("residue field mismatch")
    }
}

impl Sub for &ResidueElement {
    type Output = ResidueElement;
    fn sub(self, rhs: Self) -> ResidueElement {
        self.try_sub(rhs).expect("residue field mismatch")
    }
}

impl Mul for &ResidueElement {
    type Output = ResidueElement;
    fn mul(self, rhs: Self) -> ResidueElement {
        self.try_mul(rhs).expect("residue field mismatch")
    }
}

impl Neg for &ResidueElement {
    type Output = ResidueElement;
    fn neg(self) -> ResidueElement {
        &self.ctx.residue_zero() - self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> PAdicContext {
        PAdicContext::new(2, 2, 1).unwrap()
    }

    #[test]
    fn frobenius_examples() {
        let ctx = f4();
        let w = ctx.generator().reduce();
        let w1 = &w + &ctx.residue_one();
        assert_eq!(w.frobenius(), w1);
        assert_eq!(ctx.residue_one().frobenius(), ctx.residue_one());
        assert_eq!(ctx.residue_zero().frobenius(), ctx.residue_zero());
    }

    #[test]
    fn pth_root_examples() {
        let ctx = f4();
        let w = ctx.generator().reduce();
        let w1 = &w + &ctx.residue_one();
        assert_eq!(w.pth_root(), w1);
        assert_eq!(&w1 * &w1, w);
        assert_eq!(ctx.residue_one().pth_root(), ctx.residue_one());
        assert_eq!(ctx.residue_zero().pth_root(), ctx.residue_zero());
    }

    #[test]
    fn frobenius_and_root_are_inverse_bijections_on_small_fields() {
        for (p, k) in
            [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2)]
        {
            let ctx = PAdicContext::new(p, k, 1).unwrap();
            assert!(ctx.residue_field_size() <= 81);
            for r in ctx.residue_elements() {
                assert_eq!(r.frobenius().pth_root(), r);
                assert_eq!(r.pth_root().frobenius(), r);
                assert_eq!(r.frobenius_power(k), r, "Frobenius^k is the identity");
            }
        }
    }

    #[test]
    fn inverses() {
        let ctx = PAdicContext::new(3, 2, 1).unwrap();
        for r in ctx.residue_elements().skip(1) {
            assert_eq!(&r * &r.inverse().unwrap(), ctx.residue_one());
        }
        assert!(ctx.residue_zero().inverse().is_none());
    }
}
