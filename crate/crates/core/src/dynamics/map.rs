use std::fmt;

use crate::error::{Error, Result};
use crate::padic::{PAdicContext, PAdicElement, ResidueElement};
use crate::poly::{MPoly, Scalar};

/// A point of affine N-space over Z_q.
pub type Point = Vec<PAdicElement>;
/// A point of affine N-space over F_q.
pub type ResiduePoint = Vec<ResidueElement>;

pub fn reduce_point(x: &[PAdicElement]) -> ResiduePoint {
    x.iter().map(PAdicElement::reduce).collect()
}

pub fn lift_point(x: &[ResidueElement]) -> Point {
    x.iter().map(ResidueElement::lift).collect()
}

fn check_point<C: Scalar>(
    ctx: &PAdicContext,
    dim: usize,
    x: &[C],
    context_of: impl Fn(&C) -> &PAdicContext,
) -> Result<()> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, actual: x.len() });
    }
    x.iter().try_for_each(|c| ctx.check_same(context_of(c)))
}

/// A polynomial endomorphism F = (F_1, ..., F_N) of affine N-space with
/// integral coefficients in one context.
#[derive(Clone, PartialEq)]
pub struct PolyMap {
    ctx: PAdicContext,
    components: Vec<MPoly<PAdicElement>>,
}

impl PolyMap {
    pub fn new(ctx: PAdicContext, components: Vec<MPoly<PAdicElement>>) -> Result<Self> {
        let dim = components.len();
        if dim == 0 {
            return Err(Error::Invalid("a map needs at least one component".into()));
        }
        for c in &components {
            if c.nvars() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: c.nvars() });
            }
            c.terms().try_for_each(|(_, a)| ctx.check_same(a.context()))?;
        }
        Ok(Self { ctx, components })
    }

    /// One text per component, in the polynomial grammar.
    pub fn parse(ctx: &PAdicContext, texts: &[&str]) -> Result<Self> {
        let dim = texts.len();
        let components = texts.iter().map(|t| MPoly::parse(t, dim, ctx)).collect::<Result<_>>()?;
        Self::new(ctx.clone(), components)
    }

    pub fn identity(ctx: &PAdicContext, dim: usize) -> Self {
        let components = (0..dim).map(|i| MPoly::variable(dim, i, ctx.one())).collect();
        Self { ctx: ctx.clone(), components }
    }

    pub fn context(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MPoly<PAdicElement>] {
        &self.components
    }

    pub fn eval(&self, x: &[PAdicElement]) -> Result<Point> {
        check_point(&self.ctx, self.dimension(), x, PAdicElement::context)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[PAdicElement]) -> Point {
        let zero = self.ctx.zero();
        self.components.iter().map(|f| f.eval(x, &zero)).collect()
    }

    /// F^n(x).
    pub fn iterate(&self, x: &[PAdicElement], n: usize) -> Result<Point> {
        check_point(&self.ctx, self.dimension(), x, PAdicElement::context)?;
        Ok(self.iterate_unchecked(x, n))
    }

    pub(crate) fn iterate_unchecked(&self, x: &[PAdicElement], n: usize) -> Point {
        (0..n).fold(x.to_vec(), |acc, _| self.eval_unchecked(&acc))
    }

    /// F mod p; terms whose coefficient has positive valuation vanish.
    pub fn reduce(&self) -> ResidueMap {
        ResidueMap { ctx: self.ctx.clone(), components: self.components.iter().map(MPoly::reduce).collect() }
    }

    /// The same map with coefficients pushed into a larger unramified
    /// extension.
    pub fn base_change(&self, target: &PAdicContext) -> Result<Self> {
        if self.ctx.same(target) {
            return Ok(self.clone());
        }
        let emb = self.ctx.embedding_into(target)?;
        let components = self.components.iter().map(|f| f.try_map_coeffs(|c| emb.apply(c))).collect::<Result<_>>()?;
        Ok(Self { ctx: target.clone(), components })
    }

    /// Valuation behaviour away from the integral polydisc. The point is
    /// x_i = p^(-poles[i]) * units[i]; returns (min_i val x_i, min_i val F_i(x)).
    /// F(x) is computed exactly by clearing denominators first. When a
    /// component vanishes at working precision its valuation is reported as
    /// the largest value the precision can certify, which is a lower bound.
    pub fn laurent_valuations(&self, units: &[PAdicElement], poles: &[u32]) -> Result<(i64, i64)> {
        check_point(&self.ctx, self.dimension(), units, PAdicElement::context)?;
        if poles.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), actual: poles.len() });
        }
        let weight = |e: &[u32]| e.iter().zip(poles).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>();
        let shift = self.components.iter().flat_map(|f| f.terms().map(|(e, _)| weight(e))).max().unwrap_or(0);
        let precision = self.ctx.precision() as u64;
        if shift >= precision {
            return Err(Error::PrecisionExhausted { valuation: shift as u32, precision: precision as u32 });
        }
        let zero = self.ctx.zero();
        let input = units.iter().zip(poles).map(|(u, &v)| u.val() as i64 - v as i64).min().unwrap();
        let output = self
            .components
            .iter()
            .map(|f| {
                // p^shift * f(x) = sum c_e p^(shift - weight(e)) u^e
                let scaled =
                    f.terms().map(|(e, c)| (e.clone(), c.shift_up((shift - weight(e)) as u32))).collect::<Vec<_>>();
                let scaled = MPoly::from_terms(self.dimension(), scaled);
                scaled.eval(units, &zero).val() as i64 - shift as i64
            })
            .min()
            .unwrap();
        Ok((input, output))
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_components(f, &self.components)
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap[{}]{}", self.ctx, self)
    }
}

fn write_components<C: Scalar>(f: &mut fmt::Formatter<'_>, comps: &[MPoly<C>]) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in comps.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

/// A polynomial endomorphism of affine N-space over the residue field.
#[derive(Clone, PartialEq)]
pub struct ResidueMap {
    ctx: PAdicContext,
    components: Vec<MPoly<ResidueElement>>,
}

impl ResidueMap {
    pub fn new(ctx: PAdicContext, components: Vec<MPoly<ResidueElement>>) -> Result<Self> {
        let dim = components.len();
        if dim == 0 {
            return Err(Error::Invalid("a map needs at least one component".into()));
        }
        for c in &components {
            if c.nvars() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: c.nvars() });
            }
            c.terms().try_for_each(|(_, a)| ctx.check_same(a.context()))?;
        }
        Ok(Self { ctx, components })
    }

    pub fn parse(ctx: &PAdicContext, texts: &[&str]) -> Result<Self> {
        Ok(PolyMap::parse(ctx, texts)?.reduce())
    }

    pub fn context(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MPoly<ResidueElement>] {
        &self.components
    }

    pub fn eval(&self, x: &[ResidueElement]) -> Result<ResiduePoint> {
        check_point(&self.ctx, self.dimension(), x, ResidueElement::context)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[ResidueElement]) -> ResiduePoint {
        let zero = self.ctx.residue_zero();
        self.components.iter().map(|f| f.eval(x, &zero)).collect()
    }

    pub fn base_change(&self, target: &PAdicContext) -> Result<Self> {
        if self.ctx.same(target) {
            return Ok(self.clone());
        }
        let emb = self.ctx.embedding_into(target)?;
        let components =
            self.components.iter().map(|f| f.try_map_coeffs(|c| emb.apply_residue(c))).collect::<Result<_>>()?;
        Ok(Self { ctx: target.clone(), components })
    }

    /// Total degree of each component, as used in Bezout-style counts.
    pub fn degrees(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.total_degree().unwrap_or(0)).collect()
    }
}

impl fmt::Display for ResidueMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_components(f, &self.components)
    }
}

impl fmt::Debug for ResidueMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueMap[{}]{}", self.ctx, self)
    }
}

/// If F mod p is a p-th power G^p, return G mod p.
///
/// Over a perfect field of characteristic p, a polynomial is a p-th power
/// exactly when every exponent is divisible by p; the root divides the
/// exponents by p and takes p-th roots of the coefficients.
pub fn recognize_lift_of_pth_power(map: &PolyMap) -> Result<ResidueMap> {
    let p = map.context().p() as u32;
    let reduced = map.reduce();
    let mut roots = Vec::with_capacity(map.dimension());
    for (i, comp) in reduced.components().iter().enumerate() {
        if let Some((exp, c)) = comp.terms().find(|(e, _)| e.iter().any(|&a| a % p != 0)) {
            let monomial = MPoly::from_terms(comp.nvars(), [(exp.clone(), c.clone())]);
            return Err(Error::NotALift { component: i, monomial: monomial.to_string() });
        }
        let root = MPoly::from_terms(
            comp.nvars(),
            comp.terms().map(|(e, c)| (e.iter().map(|&a| a / p).collect(), c.pth_root())),
        );
        roots.push(root);
    }
    ResidueMap::new(reduced.context().clone(), roots)
}

/// One component F_i = (sum_j c_j X_i^(q_j))^p + p f_i.
///
/// Only the residues of the c_j are determined by F. The top coefficient
/// is pinned down exactly by c_top^p = `leading_coefficient`, a p-th root
/// that always exists over C_p but not necessarily in Z_q, so the
/// decomposition is recorded with canonical lifts for the lower c_j and the
/// top monomial matched exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedComponent {
    /// (q_j, c_j mod p), q_j strictly increasing powers of p, c_j nonzero
    pub terms: Vec<(u64, ResidueElement)>,
    /// coefficient of X_i^(p * q_max) in F_i
    pub leading_coefficient: PAdicElement,
    /// f_i, of total degree < p * q_max
    pub remainder: MPoly<PAdicElement>,
}

impl RestrictedComponent {
    /// deg(G_i^p) = p * max q_j.
    pub fn leading_degree(&self, p: u64) -> u64 {
        p * self.terms.last().map_or(0, |t| t.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedWitness {
    pub components: Vec<RestrictedComponent>,
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The syntactic sufficient condition for F to be a restricted lift of p-th
/// power: each F_i = (sum_j c_ij X_i^q_ij)^p + p f_i with unit c_ij, q_ij
/// distinct powers of p, and deg f_i < deg G_i^p. Returns the decomposition
/// on success.
pub fn restricted_witness(map: &PolyMap) -> Option<RestrictedWitness> {
    let roots = recognize_lift_of_pth_power(map).ok()?;
    let ctx = map.context();
    let p = ctx.p();
    let dim = map.dimension();
    let mut components = Vec::with_capacity(dim);
    for (i, (comp, root)) in map.components().iter().zip(roots.components()).enumerate() {
        if root.is_zero() {
            return None;
        }
        let mut terms = Vec::new();
        for (exp, c) in root.terms() {
            let single = exp.iter().enumerate().all(|(j, &e)| j == i || e == 0);
            if !single || !is_power_of(exp[i] as u64, p) {
                return None;
            }
            terms.push((exp[i] as u64, c.clone()));
        }
        // exponent vectors supported on X_i sort by increasing q
        let q_max = terms.last().unwrap().0;
        let mut top = vec![0u32; dim];
        top[i] = (p * q_max) as u32;
        let leading_coefficient = comp.coefficient(&top).cloned()?;
        let lifted_root = MPoly::from_terms(
            dim,
            terms.iter().map(|(q, c)| {
                let mut e = vec![0; dim];
                e[i] = *q as u32;
                (e, c.lift())
            }),
        );
        let difference = comp.sub(&lifted_root.pow(p as u32, &ctx.one()));
        let difference =
            MPoly::from_terms(dim, difference.terms().filter(|(e, _)| **e != top).map(|(e, c)| (e.clone(), c.clone())));
        let remainder = difference.try_map_coeffs(|c| c.shift_down(1)).ok()?;
        if remainder.total_degree().is_some_and(|d| d as u64 >= p * q_max) {
            return None;
        }
        components.push(RestrictedComponent { terms, leading_coefficient, remainder });
    }
    Some(RestrictedWitness { components })
}

pub fn is_restricted_syntactic(map: &PolyMap) -> bool {
    restricted_witness(map).is_some()
}
