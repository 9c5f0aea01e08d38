use std::fmt;

use super::enumerate::{functional_graph_cycles, Budget, PointIndexer};
use super::map::{lift_point, reduce_point, restricted_witness, Point, PolyMap, ResidueMap, ResiduePoint};
use crate::error::{Error, Result};
use crate::padic::PAdicContext;

/// A cycle of the reduced map, in forward order: F(points[i]) = points[i+1].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueCycle {
    points: Vec<ResiduePoint>,
}

impl ResidueCycle {
    /// Points must be non-empty and pairwise distinct. Whether they form a
    /// cycle of a particular map is checked where a map is at hand.
    pub fn new(points: Vec<ResiduePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::NotACycle);
        }
        for (i, a) in points.iter().enumerate() {
            if points[i + 1..].contains(a) {
                return Err(Error::NotACycle);
            }
        }
        Ok(Self { points })
    }

    pub fn period(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ResiduePoint] {
        &self.points
    }

    pub fn start(&self) -> &ResiduePoint {
        &self.points[0]
    }

    /// Rotated so the lexicographically smallest point comes first.
    pub fn canonical(&self) -> Self {
        let min_pos = (0..self.points.len()).min_by(|&a, &b| self.points[a].cmp(&self.points[b])).unwrap();
        let mut points = self.points.clone();
        points.rotate_left(min_pos);
        Self { points }
    }

    pub fn same_up_to_rotation(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn is_cycle_of(&self, map: &ResidueMap) -> bool {
        let n = self.period();
        (0..n).all(|i| map.eval(&self.points[i]).is_ok_and(|y| y == self.points[(i + 1) % n]))
    }

    /// The backward-compatible ordering (x, F^(n-1)(x), F^(n-2)(x), ...):
    /// F maps entry i+1 to entry i.
    pub fn chi_order(&self) -> Vec<ResiduePoint> {
        let n = self.period();
        (0..n).map(|i| self.points[(n - i) % n].clone()).collect()
    }
}

impl fmt::Display for ResidueCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, pt) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_tuple(f, pt)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ResidueCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueCycle{self}")
    }
}

pub(crate) fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, pt: &[T]) -> fmt::Result {
    if let [single] = pt {
        return write!(f, "{single}");
    }
    f.write_str("(")?;
    for (i, c) in pt.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

/// Display adapter for a point.
pub struct Tuple<'a, T>(pub &'a [T]);

impl<T: fmt::Display> fmt::Display for Tuple<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0)
    }
}

/// The residue context of degree `degree` matching `ctx`: `ctx` itself when
/// the degree agrees, otherwise the default modulus at the same precision.
pub fn context_of_degree(ctx: &PAdicContext, degree: usize) -> Result<PAdicContext> {
    if ctx.degree() == degree {
        Ok(ctx.clone())
    } else {
        PAdicContext::new(ctx.p(), degree, ctx.precision())
    }
}

/// Every cycle of length at most `max_period` of the reduced map acting on
/// F_{p^degree}^N, found by walking the orbit of every point. Cycles start
/// at their smallest point and are sorted.
pub fn periodic_points_residue(
    map: &ResidueMap,
    degree: usize,
    max_period: usize,
    budget: Budget,
) -> Result<Vec<ResidueCycle>> {
    let ctx = context_of_degree(map.context(), degree)?;
    let indexer = PointIndexer::new(&ctx, map.dimension(), budget)?;
    let map = map.base_change(&ctx)?;
    let next = indexer.successor_table(&map);
    Ok(functional_graph_cycles(&next)
        .into_iter()
        .filter(|c| c.len() <= max_period)
        .map(|c| ResidueCycle { points: c.into_iter().map(|i| indexer.point(i)).collect() })
        .collect())
}

/// A periodic point of F at working precision with its minimal period and
/// the reductions of its forward orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPoint {
    pub coords: Point,
    pub period: usize,
    /// red(x), red(F(x)), ..., red(F^(n-1)(x))
    pub residue_cycle: Vec<ResiduePoint>,
}

/// How lift_periodic establishes that F is a restricted lift of p-th power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Restrictedness {
    /// Require the syntactic sufficient condition.
    #[default]
    Syntactic,
    /// Caller vouches for it.
    Assumed,
}

impl Restrictedness {
    pub(crate) fn check(self, map: &PolyMap) -> Result<()> {
        match self {
            Restrictedness::Assumed => Ok(()),
            Restrictedness::Syntactic if restricted_witness(map).is_some() => Ok(()),
            Restrictedness::Syntactic => Err(Error::NotRestricted),
        }
    }
}

/// The unique periodic point of F reducing to `cycle.start()`.
///
/// Starting from the digit-wise lift, x <- F^n(x) is applied exactly N
/// times. On a periodic residue disc each application of F raises the
/// valuation of the error by at least one, so N rounds reach precision N;
/// the result is then checked.
pub fn lift_periodic(map: &PolyMap, cycle: &ResidueCycle, restrictedness: Restrictedness) -> Result<PeriodicPoint> {
    restrictedness.check(map)?;
    let reduced = map.reduce();
    let ctx = map.context();
    if !cycle.start().iter().all(|c| c.context().same(ctx)) {
        return Err(Error::ContextMismatch);
    }
    if !cycle.is_cycle_of(&reduced) {
        return Err(Error::NotACycle);
    }
    let n = cycle.period();
    let mut x = lift_point(cycle.start());
    for _ in 0..ctx.precision() {
        x = map.iterate_unchecked(&x, n);
    }
    let mut orbit = vec![x.clone()];
    for _ in 1..n {
        let next = map.eval_unchecked(orbit.last().unwrap());
        orbit.push(next);
    }
    let converged = map.eval_unchecked(orbit.last().unwrap()) == x
        && orbit[1..].iter().all(|y| *y != x)
        && reduce_point(&x) == *cycle.start();
    if !converged {
        return Err(Error::NonConvergence(ctx.precision()));
    }
    Ok(PeriodicPoint { coords: x, period: n, residue_cycle: orbit.iter().map(|y| reduce_point(y)).collect() })
}

/// Lifts of every point of the cycle, in cycle order.
pub fn lift_cycle(map: &PolyMap, cycle: &ResidueCycle, restrictedness: Restrictedness) -> Result<Vec<PeriodicPoint>> {
    let first = lift_periodic(map, cycle, restrictedness)?;
    let n = first.period;
    let mut out = Vec::with_capacity(n);
    let mut coords = first.coords.clone();
    for shift in 0..n {
        let mut residue_cycle = first.residue_cycle.clone();
        residue_cycle.rotate_left(shift);
        out.push(PeriodicPoint { coords: coords.clone(), period: n, residue_cycle });
        coords = map.eval_unchecked(&coords);
    }
    Ok(out)
}

fn min_val_of_difference(a: &[crate::padic::PAdicElement], b: &[crate::padic::PAdicElement]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x - y).val()).min().unwrap_or(0)
}

/// (v_in, v_out) = (min_i val(x_i - x'_i), min_i val(F(x)_i - F(x')_i)) for
/// two points of the same residue disc.
pub fn contraction_witness(
    map: &PolyMap,
    x: &[crate::padic::PAdicElement],
    y: &[crate::padic::PAdicElement],
) -> Result<(u32, u32)> {
    let fx = map.eval(x)?;
    let fy = map.eval(y)?;
    if reduce_point(x) != reduce_point(y) {
        return Err(Error::DifferentResidueDiscs);
    }
    Ok((min_val_of_difference(x, y), min_val_of_difference(&fx, &fy)))
}

/// The residue cycle attached to a periodic point: its reduction together
/// with the reductions of its orbit, reported forward from red(x). Read via
/// `ResidueCycle::chi_order` it is the backward-compatible sequence
/// (red x, red F^(n-1) x, ...).
pub fn tilt_periodic(x: &PeriodicPoint) -> ResidueCycle {
    ResidueCycle { points: x.residue_cycle.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ResidueElement;

    fn single(r: ResidueElement) -> ResiduePoint {
        vec![r]
    }

    #[test]
    fn cycles_of_squaring_over_f2_and_f4() {
        let f2 = PAdicContext::new(2, 1, 8).unwrap();
        let sq = ResidueMap::parse(&f2, &["X0^2"]).unwrap();
        let cycles = periodic_points_residue(&sq, 1, 2, Budget::default()).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].points(), &[single(f2.residue_zero())]);
        assert_eq!(cycles[1].points(), &[single(f2.residue_one())]);

        let cycles = periodic_points_residue(&sq, 2, 2, Budget::default()).unwrap();
        let f4 = cycles[0].start()[0].context().clone();
        assert_eq!(f4.degree(), 2);
        let w = f4.generator().reduce();
        let w1 = &w + &f4.residue_one();
        let expected = [
            vec![single(f4.residue_zero())],
            vec![single(w.clone()), single(w1.clone())],
            vec![single(f4.residue_one())],
        ];
        let got: Vec<_> = cycles.iter().map(|c| c.points().to_vec()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn strictly_preperiodic_points_are_skipped() {
        let f2 = PAdicContext::new(2, 1, 8).unwrap();
        let m = ResidueMap::parse(&f2, &["X0^2 + X0"]).unwrap();
        let cycles = periodic_points_residue(&m, 1, 2, Budget::default()).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].start(), &single(f2.residue_zero()));
    }

    #[test]
    fn budget_is_enforced() {
        let f2 = PAdicContext::new(2, 1, 8).unwrap();
        let m = ResidueMap::parse(&f2, &["X0^2", "X1^2"]).unwrap();
        assert!(matches!(
            periodic_points_residue(&m, 4, 8, Budget(100)),
            Err(Error::BudgetExceeded { required: 256, budget: 100 })
        ));
    }

    #[test]
    fn lift_examples() {
        let ctx = PAdicContext::new(2, 1, 8).unwrap();
        let f = PolyMap::parse(&ctx, &["X0^2 + 2*X0"]).unwrap();
        let one = ResidueCycle::new(vec![single(ctx.residue_one())]).unwrap();
        let x = lift_periodic(&f, &one, Restrictedness::Syntactic).unwrap();
        assert_eq!(x.coords, vec![ctx.from_int(255)]);
        let zero = ResidueCycle::new(vec![single(ctx.residue_zero())]).unwrap();
        assert_eq!(lift_periodic(&f, &zero, Restrictedness::Syntactic).unwrap().coords, vec![ctx.zero()]);
    }

    #[test]
    fn lift_of_a_two_cycle_is_a_cube_root_of_unity() {
        let ctx = PAdicContext::new(2, 2, 8).unwrap();
        let f = PolyMap::parse(&ctx, &["X0^2"]).unwrap();
        let w = ctx.generator().reduce();
        let w1 = &w + &ctx.residue_one();
        let cycle = ResidueCycle::new(vec![single(w.clone()), single(w1.clone())]).unwrap();
        let x = lift_periodic(&f, &cycle, Restrictedness::Syntactic).unwrap();
        let z = &x.coords[0];
        // independent oracle: the generator itself is a root of x^2 + x + 1
        assert_eq!(*z, ctx.generator());
        assert_eq!(z.pow(3), ctx.one());
        assert_eq!(x.period, 2);
        assert_eq!(tilt_periodic(&x).points(), &[single(w.clone()), single(w1.clone())]);
        let chi = tilt_periodic(&x).chi_order();
        assert_eq!(f.reduce().eval(&chi[1]).unwrap(), chi[0]);
    }

    #[test]
    fn lift_rejects_bad_input() {
        let ctx = PAdicContext::new(2, 1, 8).unwrap();
        let f = PolyMap::parse(&ctx, &["X0^2 + 2*X0"]).unwrap();
        let not_cycle = ResidueCycle::new(vec![single(ctx.residue_zero()), single(ctx.residue_one())]).unwrap();
        assert_eq!(lift_periodic(&f, &not_cycle, Restrictedness::Syntactic).unwrap_err(), Error::NotACycle);
        let g = PolyMap::parse(&ctx, &["X0^2 + X0"]).unwrap();
        let zero = ResidueCycle::new(vec![single(ctx.residue_zero())]).unwrap();
        assert_eq!(lift_periodic(&g, &zero, Restrictedness::Syntactic).unwrap_err(), Error::NotRestricted);
        assert!(ResidueCycle::new(vec![]).is_err());
        assert!(ResidueCycle::new(vec![single(ctx.residue_one()), single(ctx.residue_one())]).is_err());
    }

    #[test]
    fn contraction_examples() {
        let ctx = PAdicContext::new(2, 1, 8).unwrap();
        let f = PolyMap::parse(&ctx, &["X0^2 + 2*X0"]).unwrap();
        let e = |n| vec![ctx.from_int(n)];
        assert_eq!(contraction_witness(&f, &e(1), &e(3)).unwrap(), (1, 2));
        assert_eq!(contraction_witness(&f, &e(1), &e(1)).unwrap(), (8, 8));
        assert_eq!(contraction_witness(&f, &e(1), &e(5)).unwrap(), (2, 5));
        assert_eq!(contraction_witness(&f, &e(1), &e(2)).unwrap_err(), Error::DifferentResidueDiscs);
    }

    #[test]
    fn chi_order_is_backward_compatible() {
        let ctx = PAdicContext::new(2, 3, 4).unwrap();
        let sq = ResidueMap::parse(&ctx, &["X0^2"]).unwrap();
        for c in periodic_points_residue(&sq, 3, 3, Budget::default()).unwrap() {
            let chi = c.chi_order();
            for i in 0..chi.len() {
                assert_eq!(sq.eval(&chi[(i + 1) % chi.len()]).unwrap(), chi[i]);
            }
        }
    }
}
