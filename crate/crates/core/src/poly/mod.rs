//! Sparse multivariate polynomials over p-adic or residue coefficients.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::padic::{PAdicContext, PAdicElement, ResidueElement};

pub use parse::{parse_poly, ParsedPoly, ParsedTerm};

/// Coefficient ring operations a polynomial needs. Implementors carry their
/// own context, so there is no free-standing zero.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_of(&self) -> Self;
    fn one_of(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    fn negated(&self) -> Self {
        self.zero_of().minus(self)
    }

    fn power(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_of();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Signed integer parts `(c, j)` meaning `c * w^j`, for printing.
    fn display_parts(&self) -> Vec<(i128, usize)>;
}

impl Scalar for PAdicElement {
    fn zero_of(&self) -> Self {
        self.context().zero()
    }
    fn one_of(&self) -> Self {
        self.context().one()
    }
    fn is_zero(&self) -> bool {
        PAdicElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn power(&self, exp: u64) -> Self {
        self.pow(exp)
    }
    fn display_parts(&self) -> Vec<(i128, usize)> {
        self.signed_coeffs().into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(j, c)| (c, j)).collect()
    }
}

impl Scalar for ResidueElement {
    fn zero_of(&self) -> Self {
        self.context().residue_zero()
    }
    fn one_of(&self) -> Self {
        self.context().residue_one()
    }
    fn is_zero(&self) -> bool {
        ResidueElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn power(&self, exp: u64) -> Self {
        self.pow(exp)
    }
    fn display_parts(&self) -> Vec<(i128, usize)> {
        let p = self.context().p() as i128;
        self.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| {
                let c = c as i128;
                (if p > 2 && c > p / 2 { c - p } else { c }, j)
            })
            .collect()
    }
}

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `nvars` variables. Terms are kept sorted by exponent
/// vector with zero coefficients removed, so equal polynomials compare equal.
#[derive(Clone, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    /// Sums like terms; panics if an exponent vector has the wrong length.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut poly = Self::zero(nvars);
        for (exp, c) in terms {
            poly.add_term(exp, c);
        }
        poly
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    /// The variable X_i with coefficient `one`.
    pub fn variable(nvars: usize, i: usize, one: C) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Self::from_terms(nvars, [(exp, one)])
    }

    fn add_term(&mut self, exp: Monomial, c: C) {
        assert_eq!(exp.len(), self.nvars, "exponent vector length");
        match self.terms.remove(&exp) {
            Some(old) => {
                let sum = old.plus(&c);
                if !sum.is_zero() {
                    self.terms.insert(exp, sum);
                }
            }
            None if !c.is_zero() => {
                self.terms.insert(exp, c);
            }
            None => {}
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Option<&C> {
        self.terms.get(exp)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negated())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1.times(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, x)| (e.clone(), x.times(c))))
    }

    /// `one` supplies the coefficient ring for the empty product.
    pub fn pow(&self, exp: u32, one: &C) -> Self {
        let mut acc = Self::constant(self.nvars, one.clone());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate at `point` (length `nvars`); `zero` fixes the ring when the
    /// polynomial has no terms.
    pub fn eval(&self, point: &[C], zero: &C) -> C {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let max_exp: Vec<u32> = (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
        // powers[i][e] = point[i]^e
        let powers: Vec<Vec<C>> = point
            .iter()
            .zip(&max_exp)
            .map(|(x, &m)| {
                let mut row = vec![zero.one_of()];
                for e in 1..=m as usize {
                    let next = row[e - 1].times(x);
                    row.push(next);
                }
                row
            })
            .collect();
        self.terms.iter().fold(zero.clone(), |acc, (exp, c)| {
            let term = exp.iter().enumerate().fold(
                c.clone(),
                |t, (i, &e)| {
                    if e == 0 {
                        t
                    } else {
                        t.times(&powers[i][e as usize])
                    }
                },
            );
            acc.plus(&term)
        })
    }

    pub fn map_coeffs<D: Scalar>(&self, mut f: impl FnMut(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Scalar, E>(&self, mut f: impl FnMut(&C) -> Result<D, E>) -> Result<MPoly<D>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            terms.push((e.clone(), f(c)?));
        }
        Ok(MPoly::from_terms(self.nvars, terms))
    }

    pub fn map_exponents(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }
}

impl MPoly<PAdicElement> {
    pub fn reduce(&self) -> MPoly<ResidueElement> {
        self.map_coeffs(|c| c.reduce())
    }

    /// Parse the polynomial grammar over the given context.
    pub fn parse(text: &str, nvars: usize, ctx: &PAdicContext) -> crate::Result<Self> {
        parse_poly(text, nvars)?.to_padic(ctx)
    }
}

impl MPoly<ResidueElement> {
    pub fn parse_residue(text: &str, nvars: usize, ctx: &PAdicContext) -> crate::Result<Self> {
        Ok(MPoly::parse(text, nvars, ctx)?.reduce())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exp: &[u32], mut need_star: bool) -> fmt::Result {
    for (i, &e) in exp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if need_star {
            f.write_str("*")?;
        }
        write!(f, "X{i}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
        need_star = true;
    }
    Ok(())
}

/// Renders in the input grammar. Extension coefficients `a + b*w` expand to
/// one term per power of w, which reparses to the same polynomial.
impl<C: Scalar> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        // highest degree first reads more naturally
        for (exp, c) in self.terms.iter().rev() {
            let constant = exp.iter().all(|&e| e == 0);
            for (coeff, wpow) in c.display_parts() {
                let (neg, mag) = (coeff < 0, coeff.unsigned_abs());
                match (first, neg) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                let mut wrote = false;
                if mag != 1 || (constant && wpow == 0) {
                    write!(f, "{mag}")?;
                    wrote = true;
                }
                if wpow > 0 {
                    if wrote {
                        f.write_str("*")?;
                    }
                    f.write_str("w")?;
                    if wpow > 1 {
                        write!(f, "^{wpow}")?;
                    }
                    wrote = true;
                }
                write_monomial(f, exp, wrote)?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: u32) -> PAdicContext {
        PAdicContext::new(p, 1, n).unwrap()
    }

    #[test]
    fn like_terms_combine_and_cancel() {
        let ctx = z(2, 8);
        let p = MPoly::parse("X0^2 + 3*X0 - X0^2 - 3*X0", 1, &ctx).unwrap();
        assert!(p.is_zero());
        let q = MPoly::parse("X0*X1 + X1*X0", 2, &ctx).unwrap();
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q.coefficient(&[1, 1]), Some(&ctx.from_int(2)));
    }

    #[test]
    fn evaluation() {
        let ctx = z(3, 6);
        let f = MPoly::parse("X0^3 + X1^3 + 3*X0*X1", 2, &ctx).unwrap();
        let one = ctx.one();
        assert_eq!(f.eval(&[one.clone(), one.clone()], &ctx.zero()), ctx.from_int(5));
        assert_eq!(MPoly::zero(1).eval(&[one], &ctx.zero()), ctx.zero());
    }

    #[test]
    fn arithmetic_agrees_with_evaluation() {
        let ctx = z(5, 6);
        let f = MPoly::parse("2*X0^2 - X1 + 7", 2, &ctx).unwrap();
        let g = MPoly::parse("X0*X1 + 4*X1^3", 2, &ctx).unwrap();
        let pt = [ctx.from_int(3), ctx.from_int(-11)];
        let zero = ctx.zero();
        let (fv, gv) = (f.eval(&pt, &zero), g.eval(&pt, &zero));
        assert_eq!(f.mul(&g).eval(&pt, &zero), &fv * &gv);
        assert_eq!(f.sub(&g).eval(&pt, &zero), &fv - &gv);
        assert_eq!(f.pow(3, &ctx.one()).eval(&pt, &zero), fv.pow(3));
    }

    #[test]
    fn display_round_trips() {
        let ctx = PAdicContext::new(3, 2, 5).unwrap();
        for text in ["X0^3 + X1^3 + 3*X0*X1", "X0^3 - X1^3 + 3*X0*X1", "w*X0^2 - 2 + w^2*X1", "0", "-X1 + 5*w"] {
            let f = MPoly::parse(text, 2, &ctx).unwrap();
            let back = MPoly::parse(&f.to_string(), 2, &ctx).unwrap();
            assert_eq!(f, back, "{text} -> {f}");
        }
        let r = MPoly::parse_residue("X0 + w*X0 + 2", 1, &ctx).unwrap();
        assert_eq!(MPoly::parse_residue(&r.to_string(), 1, &ctx).unwrap(), r);
    }

    #[test]
    fn display_examples() {
        let ctx = z(2, 8);
        assert_eq!(MPoly::parse("2*X0 + X0^2", 1, &ctx).unwrap().to_string(), "X0^2 + 2*X0");
        assert_eq!(MPoly::parse("X0 - 1", 1, &ctx).unwrap().to_string(), "X0 - 1");
    }
}
