//! Fixed-precision arithmetic in the unramified extension Z_q = Z_p[x]/(m(x))
//! of degree k, known modulo p^N, and in its residue field F_q.

mod element;
pub(crate) mod fp;
mod residue;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use element::PAdicElement;
pub use residue::ResidueElement;

#[derive(Debug, PartialEq, Eq, Hash)]
struct ContextInner {
    p: u64,
    degree: usize,
    /// monic, length degree + 1, coefficients in [0, p)
    modulus: Vec<u64>,
    precision: u32,
    /// p^precision
    modulus_power: u64,
}

/// Parameters shared by every element of one unramified extension: the
/// prime, the degree, the defining polynomial and the absolute precision.
///
/// Cloning is cheap. Two contexts are interchangeable iff all four
/// parameters agree.
#[derive(Clone)]
pub struct PAdicContext {
    inner: Arc<ContextInner>,
}

impl PAdicContext {
    /// Context for the degree-`degree` extension defined by the smallest
    /// monic irreducible polynomial over F_p (coefficients compared
    /// constant term first).
    pub fn new(p: u64, degree: usize, precision: u32) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Self::with_modulus(p, fp::smallest_irreducible(p, degree), precision)
    }

    /// Context with an explicit modulus, given low degree first and monic.
    pub fn with_modulus(p: u64, modulus: Vec<u64>, precision: u32) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let modulus_power =
            p.checked_pow(precision).filter(|&q| q < 1 << 63).ok_or(Error::PrecisionTooLarge { p, precision })?;
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(modulus));
        }
        if !fp::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus));
        }
        Ok(Self { inner: Arc::new(ContextInner { p, degree: modulus.len() - 1, modulus, precision, modulus_power }) })
    }

    /// Same field, different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Self::with_modulus(self.p(), self.inner.modulus.clone(), precision)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn precision(&self) -> u32 {
        self.inner.precision
    }

    /// p^N, the modulus of every coefficient.
    pub fn modulus_power(&self) -> u64 {
        self.inner.modulus_power
    }

    /// q = p^k, the size of the residue field.
    pub fn residue_field_size(&self) -> u64 {
        self.p().pow(self.degree() as u32)
    }

    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn zero(&self) -> PAdicElement {
        PAdicElement::from_raw(self.clone(), vec![0; self.degree()])
    }

    pub fn one(&self) -> PAdicElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> PAdicElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = reduce_signed(n as i128, self.modulus_power());
        PAdicElement::from_raw(self.clone(), coeffs)
    }

    /// Element with the given coefficients on 1, w, w^2, ...; missing
    /// coefficients are zero. Values are reduced modulo p^N.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<PAdicElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::DimensionMismatch { expected: self.degree(), actual: coeffs.len() });
        }
        let mut out = vec![0; self.degree()];
        for (slot, &c) in out.iter_mut().zip(coeffs) {
            *slot = reduce_signed(c as i128, self.modulus_power());
        }
        Ok(PAdicElement::from_raw(self.clone(), out))
    }

    /// The class w of x in Z_p[x]/(m(x)). Equals m's negated constant term
    /// when the degree is 1.
    pub fn generator(&self) -> PAdicElement {
        let mut coeffs = vec![0; self.degree()];
        if self.degree() == 1 {
            coeffs[0] = reduce_signed(-(self.modulus()[0] as i128), self.modulus_power());
        } else {
            coeffs[1] = 1;
        }
        PAdicElement::from_raw(self.clone(), coeffs)
    }

    pub fn residue_zero(&self) -> ResidueElement {
        ResidueElement::from_raw(self.clone(), vec![0; self.degree()])
    }

    pub fn residue_one(&self) -> ResidueElement {
        let mut coeffs = vec![0; self.degree()];
        coeffs[0] = 1;
        ResidueElement::from_raw(self.clone(), coeffs)
    }

    pub fn residue_from_coeffs(&self, coeffs: &[i64]) -> Result<ResidueElement> {
        Ok(self.from_coeffs(coeffs)?.reduce())
    }

    /// The residue element with the given index in `0..q`. Indices order
    /// elements lexicographically by coefficient vector, constant term first.
    pub fn residue_from_index(&self, index: u64) -> ResidueElement {
        let p = self.p();
        let mut coeffs = vec![0; self.degree()];
        let mut rest = index;
        for slot in coeffs.iter_mut().rev() {
            *slot = rest % p;
            rest /= p;
        }
        ResidueElement::from_raw(self.clone(), coeffs)
    }

    /// All q residue elements in index order.
    pub fn residue_elements(&self) -> impl Iterator<Item = ResidueElement> + '_ {
        (0..self.residue_field_size()).map(move |i| self.residue_from_index(i))
    }

    /// Ring embedding of `self` into `target` (same p, degree dividing the
    /// target degree, target precision not above ours). The generator is sent
    /// to the Hensel lift of the smallest root of our modulus in the target
    /// residue field.
    pub fn embedding_into(&self, target: &PAdicContext) -> Result<Embedding> {
        let no_embedding = Error::NoEmbedding { from: self.degree(), to: target.degree() };
        if self.p() != target.p()
            || !target.degree().is_multiple_of(self.degree())
            || target.precision() > self.precision()
        {
            return Err(no_embedding);
        }
        if self.degree() == 1 {
            let image = target.from_int(-(self.modulus()[0] as i64));
            return Ok(Embedding { source: self.clone(), target: target.clone(), generator_image: image });
        }
        let modulus: Vec<PAdicElement> = self.modulus().iter().map(|&c| target.from_int(c as i64)).collect();
        let eval = |x: &PAdicElement| horner(&modulus, x, target);
        let derivative: Vec<PAdicElement> =
            modulus.iter().enumerate().skip(1).map(|(i, c)| c * &target.from_int(i as i64)).collect();
        let eval_derivative = |x: &PAdicElement| horner(&derivative, x, target);
        let residue_root = target.residue_elements().find(|r| eval(&r.lift()).val() >= 1).ok_or(no_embedding)?;
        let mut root = residue_root.lift();
        // Newton: each step doubles the number of correct digits.
        let steps = 64 - (target.precision() as u64).leading_zeros() + 1;
        for _ in 0..steps {
            let correction = &eval(&root) * &eval_derivative(&root).invert()?;
            root = &root - &correction;
        }
        debug_assert!(eval(&root).is_zero());
        Ok(Embedding { source: self.clone(), target: target.clone(), generator_image: root })
    }

    /// Human-readable descriptor used in reports.
    pub fn descriptor(&self) -> String {
        format!("p={} k={} modulus={:?} N={}", self.p(), self.degree(), self.modulus(), self.precision())
    }
}

impl fmt::Debug for PAdicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PAdicContext({})", self.descriptor())
    }
}

impl fmt::Display for PAdicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl PartialEq for PAdicContext {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for PAdicContext {}

fn horner(coeffs: &[PAdicElement], x: &PAdicElement, ctx: &PAdicContext) -> PAdicElement {
    coeffs.iter().rev().fold(ctx.zero(), |acc, c| &(&acc * x) + c)
}

/// A ring map Z_q -> Z_q' fixed by the image of the generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: PAdicContext,
    target: PAdicContext,
    generator_image: PAdicElement,
}

impl Embedding {
    pub fn target(&self) -> &PAdicContext {
        &self.target
    }

    pub fn apply(&self, a: &PAdicElement) -> Result<PAdicElement> {
        self.source.check_same(a.context())?;
        let m = self.target.modulus_power();
        let coeffs: Vec<PAdicElement> = a
            .coeffs()
            .iter()
            .map(|&c| {
                let mut v = vec![0; self.target.degree()];
                v[0] = c % m;
                PAdicElement::from_raw(self.target.clone(), v)
            })
            .collect();
        if self.source.degree() == 1 {
            return Ok(coeffs.into_iter().next().unwrap());
        }
        Ok(horner(&coeffs, &self.generator_image, &self.target))
    }

    pub fn apply_residue(&self, r: &ResidueElement) -> Result<ResidueElement> {
        Ok(self.apply(&r.lift())?.reduce())
    }
}

pub(crate) fn reduce_signed(n: i128, m: u64) -> u64 {
    n.rem_euclid(m as i128) as u64
}

/// Product of two coefficient vectors in (Z/m)[x]/(modulus), modulus monic of
/// degree k = a.len() = b.len().
pub(crate) fn mul_reduce(a: &[u64], b: &[u64], modulus: &[u64], m: u64) -> Vec<u64> {
    let k = a.len();
    let m128 = m as u128;
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = (x as u128 * y as u128 + prod[i + j] as u128) % m128;
            prod[i + j] = t as u64;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (j, &mj) in modulus[..k].iter().enumerate() {
            let sub = (c as u128 * (mj % m) as u128 % m128) as u64;
            let slot = &mut prod[top - k + j];
            *slot = ((*slot as u128 + m128 - sub as u128) % m128) as u64;
        }
    }
    prod.truncate(k);
    prod
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(PAdicContext::new(4, 1, 8).unwrap_err(), Error::NotPrime(4));
        assert_eq!(PAdicContext::new(2, 0, 8).unwrap_err(), Error::ZeroDegree);
        assert_eq!(PAdicContext::new(2, 1, 0).unwrap_err(), Error::ZeroPrecision);
        assert!(matches!(PAdicContext::new(2, 1, 63), Err(Error::PrecisionTooLarge { .. })));
        assert!(matches!(PAdicContext::with_modulus(2, vec![1, 0, 1], 4), Err(Error::ReducibleModulus(_))));
        assert!(matches!(PAdicContext::with_modulus(2, vec![1, 1, 2], 4), Err(Error::BadModulus(_))));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(PAdicContext::new(2, 2, 4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(PAdicContext::new(5, 1, 4).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn residue_index_order_is_lexicographic() {
        let ctx = PAdicContext::new(3, 2, 2).unwrap();
        let all: Vec<_> = ctx.residue_elements().collect();
        assert_eq!(all.len(), 9);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, r) in all.iter().enumerate() {
            assert_eq!(r.index(), i as u64);
        }
    }

    #[test]
    fn embedding_respects_the_modulus() {
        let small = PAdicContext::new(2, 2, 10).unwrap();
        let big = PAdicContext::new(2, 4, 10).unwrap();
        let emb = small.embedding_into(&big).unwrap();
        let w = emb.apply(&small.generator()).unwrap();
        // w^2 + w + 1 = 0 must survive the embedding
        assert!((&(&(&w * &w) + &w) + &big.one()).is_zero());
        // and the embedding is a ring map on a sample
        let a = small.from_coeffs(&[3, 7]).unwrap();
        let b = small.from_coeffs(&[-5, 2]).unwrap();
        assert_eq!(emb.apply(&(&a * &b)).unwrap(), &emb.apply(&a).unwrap() * &emb.apply(&b).unwrap());
        assert!(small.embedding_into(&PAdicContext::new(2, 3, 10).unwrap()).is_err());
    }

    #[test]
    fn mul_reduce_small_case() {
        // (x)(x) mod x^2+x+1 over Z/16 = -x - 1
        assert_eq!(mul_reduce(&[0, 1], &[0, 1], &[1, 1, 1], 16), vec![15, 15]);
    }
}
