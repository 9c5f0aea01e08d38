//! Experiments over a range of residue-field degrees: the distance gap
//! between periodic points and a subvariety, and counts of periodic points
//! on an invariant subvariety.

use super::enumerate::{Budget, PointIndexer};
use super::map::{Point, PolyMap, ResiduePoint};
use super::periodic::{context_of_degree, lift_cycle, periodic_points_residue, Restrictedness};
use crate::error::{Error, Result};
use crate::padic::{PAdicContext, PAdicElement, ResidueElement};
use crate::poly::MPoly;
use crate::valuations::normalize_generator;

/// A subvariety V = {H_j = 0} with every H_j scaled to Gauss norm 1.
#[derive(Debug, Clone, PartialEq)]
pub struct VarietySpec {
    ctx: PAdicContext,
    nvars: usize,
    generators: Vec<MPoly<PAdicElement>>,
}

impl VarietySpec {
    /// Normalizes each generator; a generator that is zero at working
    /// precision is rejected.
    pub fn new(ctx: &PAdicContext, nvars: usize, generators: Vec<MPoly<PAdicElement>>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, actual: g.nvars() });
            }
            g.terms().try_for_each(|(_, c)| ctx.check_same(c.context()))?;
            normalized.push(normalize_generator(g)?);
        }
        Ok(Self { ctx: ctx.clone(), nvars, generators: normalized })
    }

    pub fn parse(ctx: &PAdicContext, nvars: usize, texts: &[&str]) -> Result<Self> {
        let gens = texts.iter().map(|t| MPoly::parse(t, nvars, ctx)).collect::<Result<_>>()?;
        Self::new(ctx, nvars, gens)
    }

    pub fn context(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MPoly<PAdicElement>] {
        &self.generators
    }

    pub fn base_change(&self, target: &PAdicContext) -> Result<Self> {
        if self.ctx.same(target) {
            return Ok(self.clone());
        }
        let emb = self.ctx.embedding_into(target)?;
        let generators = self.generators.iter().map(|g| g.try_map_coeffs(|c| emb.apply(c))).collect::<Result<_>>()?;
        Ok(Self { ctx: target.clone(), nvars: self.nvars, generators })
    }

    pub fn reduce(&self) -> ResidueVariety {
        ResidueVariety {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            generators: self.generators.iter().map(MPoly::reduce).collect(),
        }
    }
}

/// A subvariety of affine space over the residue field.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueVariety {
    ctx: PAdicContext,
    nvars: usize,
    generators: Vec<MPoly<ResidueElement>>,
}

impl ResidueVariety {
    pub fn new(ctx: &PAdicContext, nvars: usize, generators: Vec<MPoly<ResidueElement>>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, actual: g.nvars() });
            }
            g.terms().try_for_each(|(_, c)| ctx.check_same(c.context()))?;
        }
        Ok(Self { ctx: ctx.clone(), nvars, generators })
    }

    pub fn parse(ctx: &PAdicContext, nvars: usize, texts: &[&str]) -> Result<Self> {
        let gens = texts.iter().map(|t| MPoly::parse_residue(t, nvars, ctx)).collect::<Result<_>>()?;
        Self::new(ctx, nvars, gens)
    }

    pub fn context(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[MPoly<ResidueElement>] {
        &self.generators
    }

    /// All generators vanish at `x`. With no generators this is all of space.
    pub fn contains(&self, x: &[ResidueElement]) -> bool {
        let zero = self.ctx.residue_zero();
        self.generators.iter().all(|g| g.eval(x, &zero).is_zero())
    }

    pub fn base_change(&self, target: &PAdicContext) -> Result<Self> {
        if self.ctx.same(target) {
            return Ok(self.clone());
        }
        let emb = self.ctx.embedding_into(target)?;
        let generators =
            self.generators.iter().map(|g| g.try_map_coeffs(|c| emb.apply_residue(c))).collect::<Result<_>>()?;
        Ok(Self { ctx: target.clone(), nvars: self.nvars, generators })
    }
}

/// Valuation of d(x, V) = max_j |H_j(x)|, i.e. min_j val H_j(x); the
/// precision N means "on V at working precision".
pub fn gauss_distance(x: &[PAdicElement], variety: &VarietySpec) -> Result<u32> {
    if x.len() != variety.nvars {
        return Err(Error::DimensionMismatch { expected: variety.nvars, actual: x.len() });
    }
    x.iter().try_for_each(|c| variety.ctx.check_same(c.context()))?;
    let zero = variety.ctx.zero();
    Ok(variety.generators.iter().map(|g| g.eval(x, &zero).val()).min().unwrap_or(variety.ctx.precision()))
}

/// Shared knobs for the scans.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScanOptions {
    pub budget: Budget,
    pub restrictedness: Restrictedness,
}

/// Where a lifted periodic point sits relative to V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Proximity {
    /// distance valuation equals the precision
    OnVariety,
    /// valuation within 2 of the precision, too close to call
    PrecisionSuspect,
    Off,
}

impl Proximity {
    pub fn classify(valuation: u32, precision: u32) -> Self {
        if valuation >= precision {
            Proximity::OnVariety
        } else if valuation + 2 >= precision {
            Proximity::PrecisionSuspect
        } else {
            Proximity::Off
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Proximity::OnVariety => "on",
            Proximity::PrecisionSuspect => "suspect",
            Proximity::Off => "off",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub degree: usize,
    pub point: Point,
    pub period: usize,
    pub valuation: u32,
    pub proximity: Proximity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub precision: u32,
    pub rows: Vec<GapRow>,
}

impl GapReport {
    /// Valuations of the points classified off V, sorted.
    pub fn off_valuations(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.rows.iter().filter(|r| r.proximity == Proximity::Off).map(|r| r.valuation).collect();
        v.sort_unstable();
        v
    }

    /// M_observed: the largest off-V valuation, if any point is off V.
    pub fn max_observed(&self) -> Option<u32> {
        self.off_valuations().last().copied()
    }

    /// The empirical gap, as a valuation: epsilon = p^(-M_observed).
    pub fn epsilon_valuation(&self) -> Option<u32> {
        self.max_observed()
    }

    pub fn count(&self, proximity: Proximity) -> usize {
        self.rows.iter().filter(|r| r.proximity == proximity).count()
    }
}

/// For each degree k, lift every periodic point of F mod p over F_{p^k} of
/// period at most `max_period` and measure its distance to V.
pub fn tate_voloch_scan(
    map: &PolyMap,
    variety: &VarietySpec,
    degrees: &[usize],
    max_period: usize,
    options: ScanOptions,
) -> Result<GapReport> {
    map.context().check_same(variety.context())?;
    if variety.nvars() != map.dimension() {
        return Err(Error::DimensionMismatch { expected: map.dimension(), actual: variety.nvars() });
    }
    options.restrictedness.check(map)?;
    let precision = map.context().precision();
    let mut rows = Vec::new();
    for &k in degrees {
        let ctx = context_of_degree(map.context(), k)?;
        let f = map.base_change(&ctx)?;
        let v = variety.base_change(&ctx)?;
        for cycle in periodic_points_residue(&f.reduce(), k, max_period, options.budget)? {
            for x in lift_cycle(&f, &cycle, Restrictedness::Assumed)? {
                let valuation = gauss_distance(&x.coords, &v)?;
                rows.push(GapRow {
                    degree: k,
                    point: x.coords,
                    period: x.period,
                    valuation,
                    proximity: Proximity::classify(valuation, precision),
                });
            }
        }
    }
    rows.sort_by(|a, b| (a.degree, &a.point).cmp(&(b.degree, &b.point)));
    Ok(GapReport { precision, rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityRow {
    pub degree: usize,
    /// |V(F_{p^k})|
    pub variety_points: u64,
    /// periodic points of F mod p over F_{p^k}
    pub periodic_points: u64,
    pub periodic_on_variety: u64,
    /// lifts of the previous set lying on V at working precision
    pub lifted_on_variety: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub rows: Vec<DensityRow>,
}

impl DensityReport {
    pub fn all_lifts_on_variety(&self) -> bool {
        self.rows.iter().all(|r| r.lifted_on_variety == r.periodic_on_variety)
    }

    pub fn strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].periodic_on_variety < w[1].periodic_on_variety)
    }
}

/// Per degree: count the points of V mod p, check that F mod p maps them
/// back into V mod p, count periodic points on V mod p, and check that their
/// lifts lie on V.
pub fn manin_mumford_scan(
    map: &PolyMap,
    variety: &VarietySpec,
    degrees: &[usize],
    options: ScanOptions,
) -> Result<DensityReport> {
    map.context().check_same(variety.context())?;
    if variety.nvars() != map.dimension() {
        return Err(Error::DimensionMismatch { expected: map.dimension(), actual: variety.nvars() });
    }
    options.restrictedness.check(map)?;
    let precision = map.context().precision();
    let mut rows = Vec::new();
    for &k in degrees {
        let ctx = context_of_degree(map.context(), k)?;
        let f = map.base_change(&ctx)?;
        let v = variety.base_change(&ctx)?;
        let reduced_map = f.reduce();
        let reduced_variety = v.reduce();
        let indexer = PointIndexer::new(&ctx, map.dimension(), options.budget)?;
        let mut variety_points = 0;
        for x in indexer.points().filter(|x| reduced_variety.contains(x)) {
            variety_points += 1;
            if !reduced_variety.contains(&reduced_map.eval_unchecked(&x)) {
                return Err(Error::VarietyNotInvariant { p: ctx.p(), degree: k });
            }
        }
        let mut row =
            DensityRow { degree: k, variety_points, periodic_points: 0, periodic_on_variety: 0, lifted_on_variety: 0 };
        for cycle in periodic_points_residue(&reduced_map, k, usize::MAX, options.budget)? {
            row.periodic_points += cycle.period() as u64;
            let on: Vec<&ResiduePoint> = cycle.points().iter().filter(|x| reduced_variety.contains(x)).collect();
            if on.is_empty() {
                continue;
            }
            row.periodic_on_variety += on.len() as u64;
            for x in lift_cycle(&f, &cycle, Restrictedness::Assumed)? {
                if reduced_variety.contains(&x.residue_cycle[0]) && gauss_distance(&x.coords, &v)? >= precision {
                    row.lifted_on_variety += 1;
                }
            }
        }
        rows.push(row);
    }
    rows.sort_by_key(|r| r.degree);
    Ok(DensityReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2(n: u32) -> PAdicContext {
        PAdicContext::new(2, 1, n).unwrap()
    }

    #[test]
    fn variety_generators_are_normalized() {
        let ctx = z2(8);
        let v = VarietySpec::parse(&ctx, 1, &["4*X0 + 8"]).unwrap();
        assert_eq!(v.generators()[0], MPoly::parse("X0 + 2", 1, &ctx).unwrap());
        assert_eq!(VarietySpec::parse(&ctx, 1, &["0"]).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn gauss_distance_examples() {
        let ctx = z2(8);
        let v = VarietySpec::parse(&ctx, 1, &["X0"]).unwrap();
        assert_eq!(gauss_distance(&[ctx.from_int(-1)], &v).unwrap(), 0);
        assert_eq!(gauss_distance(&[ctx.zero()], &v).unwrap(), 8);
        let w = VarietySpec::parse(&ctx, 1, &["X0 + 1"]).unwrap();
        assert_eq!(gauss_distance(&[ctx.from_int(-1)], &w).unwrap(), 8);
        assert_eq!(gauss_distance(&[ctx.from_int(3)], &w).unwrap(), 2);
    }

    #[test]
    fn proximity_bands() {
        assert_eq!(Proximity::classify(8, 8), Proximity::OnVariety);
        assert_eq!(Proximity::classify(7, 8), Proximity::PrecisionSuspect);
        assert_eq!(Proximity::classify(6, 8), Proximity::PrecisionSuspect);
        assert_eq!(Proximity::classify(5, 8), Proximity::Off);
    }

    #[test]
    fn squaring_against_the_point_one() {
        let ctx = z2(16);
        let f = PolyMap::parse(&ctx, &["X0^2"]).unwrap();
        let v = VarietySpec::parse(&ctx, 1, &["X0 - 1"]).unwrap();
        let report = tate_voloch_scan(&f, &v, &[1, 2, 3], 6, ScanOptions::default()).unwrap();
        // 0 and 1 over F_2, plus 2 and 6 more over F_4 and F_8
        assert_eq!(report.rows.len(), 2 + 4 + 8);
        assert_eq!(report.max_observed(), Some(0));
        assert_eq!(report.count(Proximity::PrecisionSuspect), 0);
        assert_eq!(report.count(Proximity::OnVariety), 3);
    }

    #[test]
    fn variety_through_every_periodic_point() {
        let ctx = z2(16);
        let f = PolyMap::parse(&ctx, &["X0^2"]).unwrap();
        let v = VarietySpec::parse(&ctx, 1, &["X0^64 - X0"]).unwrap();
        let report = tate_voloch_scan(&f, &v, &[1, 2, 3], 6, ScanOptions::default()).unwrap();
        assert!(report.off_valuations().is_empty());
        assert_eq!(report.max_observed(), None);
    }

    #[test]
    fn fixed_points_against_the_origin() {
        let ctx = z2(16);
        let f = PolyMap::parse(&ctx, &["X0^2 + 2*X0"]).unwrap();
        let v = VarietySpec::parse(&ctx, 1, &["X0"]).unwrap();
        let report = tate_voloch_scan(&f, &v, &[1], 1, ScanOptions::default()).unwrap();
        let summary: Vec<_> = report.rows.iter().map(|r| (r.point[0].clone(), r.valuation)).collect();
        assert_eq!(summary, vec![(ctx.zero(), 16), (ctx.from_int(-1), 0)]);
    }

    #[test]
    fn diagonal_density() {
        let ctx = z2(12);
        let f = PolyMap::parse(&ctx, &["X0^2", "X1^2"]).unwrap();
        let v = VarietySpec::parse(&ctx, 2, &["X0 - X1"]).unwrap();
        let report = manin_mumford_scan(&f, &v, &[1, 2, 3], ScanOptions::default()).unwrap();
        let counts: Vec<u64> = report.rows.iter().map(|r| r.periodic_on_variety).collect();
        assert_eq!(counts, vec![2, 4, 8]);
        assert!(report.all_lifts_on_variety());

        let empty = VarietySpec::parse(&ctx, 2, &["1"]).unwrap();
        let report = manin_mumford_scan(&f, &empty, &[1, 2], ScanOptions::default()).unwrap();
        assert!(report.rows.iter().all(|r| r.variety_points == 0 && r.periodic_on_variety == 0));
    }

    #[test]
    fn non_invariant_variety_is_rejected() {
        let ctx = z2(12);
        // over F_4, (w, w+1) maps to (w+1, w+1), off the line X1 = X0 + 1
        let g = PolyMap::parse(&ctx, &["X0^2", "X1^4"]).unwrap();
        let line = VarietySpec::parse(&ctx, 2, &["X1 - X0 - 1"]).unwrap();
        assert!(manin_mumford_scan(&g, &line, &[1], ScanOptions::default()).is_ok());
        assert_eq!(
            manin_mumford_scan(&g, &line, &[2], ScanOptions::default()).unwrap_err(),
            Error::VarietyNotInvariant { p: 2, degree: 2 }
        );
    }
}
