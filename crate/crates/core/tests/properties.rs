use padic_dynamo::dynamics::{
    contraction_witness, lift_periodic, periodic_points_residue, recognize_lift_of_pth_power, reduce_point, Budget,
    PolyMap, ResidueCycle, ResidueMap, ResidueVariety, Restrictedness,
};
use padic_dynamo::padic::{PAdicContext, PAdicElement};
use padic_dynamo::poly::MPoly;
use padic_dynamo::stability::{coherent_backward_orbit_search, galois_orbits, preimage_set, SearchLimits};
use padic_dynamo::valuations::{gauss_norm, rank2_val};
use padic_dynamo::{Error, ExperimentConfig};
use proptest::prelude::*;

/// (p, k, N) combinations small enough for exhaustive side checks.
fn contexts() -> impl Strategy<Value = PAdicContext> {
    prop::sample::select(vec![(2u64, 1usize, 16u32), (2, 2, 8), (3, 1, 10), (3, 2, 6), (5, 1, 6), (7, 3, 4)])
        .prop_map(|(p, k, n)| PAdicContext::new(p, k, n).unwrap())
}

fn element(ctx: &PAdicContext) -> impl Strategy<Value = PAdicElement> {
    let ctx = ctx.clone();
    let m = ctx.modulus_power() as i64;
    prop::collection::vec(0..m, ctx.degree()).prop_map(move |c| ctx.from_coeffs(&c).unwrap())
}

fn ctx_and_elements(n: usize) -> impl Strategy<Value = (PAdicContext, Vec<PAdicElement>)> {
    contexts().prop_flat_map(move |ctx| {
        let elems = prop::collection::vec(element(&ctx), n);
        (Just(ctx), elems)
    })
}

/// Univariate polynomial with small random coefficients and degree < 4.
fn poly(ctx: &PAdicContext) -> impl Strategy<Value = MPoly<PAdicElement>> {
    let ctx = ctx.clone();
    prop::collection::vec(-40i64..40, 1..5).prop_map(move |cs| {
        MPoly::from_terms(1, cs.iter().enumerate().map(|(e, &c)| (vec![e as u32], ctx.from_int(c))))
    })
}

proptest! {
    #[test]
    fn ring_axioms((_ctx, v) in ctx_and_elements(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((a - a).is_zero());
    }

    #[test]
    fn valuation_is_multiplicative_and_ultrametric((ctx, v) in ctx_and_elements(2)) {
        let (a, b) = (&v[0], &v[1]);
        let n = ctx.precision();
        prop_assert_eq!((a * b).val(), (a.val() + b.val()).min(n));
        prop_assert!((a + b).val() >= a.val().min(b.val()));
        if a.val() != b.val() {
            prop_assert_eq!((a + b).val(), a.val().min(b.val()));
        }
    }

    #[test]
    fn reduction_is_a_ring_homomorphism((_ctx, v) in ctx_and_elements(2)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert_eq!((a + b).reduce(), &a.reduce() + &b.reduce());
        prop_assert_eq!((a * b).reduce(), &a.reduce() * &b.reduce());
    }

    #[test]
    fn units_invert((_ctx, v) in ctx_and_elements(1)) {
        let a = &v[0];
        match a.invert() {
            Ok(inv) => prop_assert!((a * &inv) == a.context().one()),
            Err(e) => {
                prop_assert!(!a.is_unit());
                prop_assert_eq!(e, Error::NotAUnit(a.val()));
            }
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism((_ctx, v) in ctx_and_elements(2)) {
        let (a, b) = (v[0].reduce(), v[1].reduce());
        prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
        prop_assert_eq!((&a * &b).frobenius(), &a.frobenius() * &b.frobenius());
        prop_assert_eq!(a.frobenius().pth_root(), a);
    }
}

/// F = G^p + p*H for random linear G and random H, over Z_p.
fn lift_map() -> impl Strategy<Value = (PolyMap, MPoly<PAdicElement>)> {
    (prop::sample::select(vec![2u64, 3, 5]), prop::collection::vec(-9i64..9, 4)).prop_map(|(p, c)| {
        let ctx = PAdicContext::new(p, 1, 8).unwrap();
        let one = ctx.one();
        let x = MPoly::variable(1, 0, one.clone());
        let g = x.scale(&ctx.from_int(c[0])).add(&MPoly::constant(1, ctx.from_int(c[1])));
        let h = x.pow(2, &one).scale(&ctx.from_int(c[2])).add(&MPoly::constant(1, ctx.from_int(c[3])));
        let f = g.pow(p as u32, &one).add(&h.scale(&ctx.from_int(p as i64)));
        (PolyMap::new(ctx, vec![f]).unwrap(), g)
    })
}

proptest! {
    #[test]
    fn recognition_recovers_g_and_the_square_commutes((map, g_lift) in lift_map(), x in -1000i64..1000) {
        let ctx = map.context().clone();
        let g = recognize_lift_of_pth_power(&map).unwrap();
        prop_assert_eq!(&g.components()[0], &g_lift.reduce());
        let pt = vec![ctx.from_int(x)];
        let lhs = reduce_point(&map.eval(&pt).unwrap());
        let rhs: Vec<_> = g.eval(&reduce_point(&pt)).unwrap().iter().map(|r| r.frobenius()).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lifts_contract_residue_discs((map, _c) in lift_map(), x in -1000i64..1000, t in 1i64..1000, s in 1u32..7) {
        let ctx = map.context().clone();
        let p = ctx.p() as i64;
        let a = vec![ctx.from_int(x)];
        let b = vec![ctx.from_int(x + t * p.pow(s))];
        let (v_in, v_out) = contraction_witness(&map, &a, &b).unwrap();
        prop_assert!(v_out >= (ctx.p() as u32 * v_in).min(v_in + 1).min(ctx.precision()));
    }

    #[test]
    fn periodic_lift_is_unique_and_orbit_compatible(start in 0usize..8, noise in 0i64..1 << 19) {
        let ctx = PAdicContext::new(2, 1, 20).unwrap();
        let map = PolyMap::parse(&ctx, &["X0^2 + 2*X0"]).unwrap();
        let reduced = map.reduce();
        let ctx3 = PAdicContext::new(2, 3, 20).unwrap();
        let map3 = map.base_change(&ctx3).unwrap();
        let cycles = periodic_points_residue(&reduced, 3, 8, Budget::default()).unwrap();
        let cycle = &cycles[start % cycles.len()];
        let lifted = lift_periodic(&map3, cycle, Restrictedness::Syntactic).unwrap();
        // from any other point of the same disc, iterating F^n converges to the same point
        let mut y: Vec<PAdicElement> = lifted
            .coords
            .iter()
            .map(|c| c + &ctx3.from_int(2 * noise))
            .collect();
        for _ in 0..ctx3.precision() {
            y = map3.iterate(&y, cycle.period()).unwrap();
        }
        prop_assert_eq!(&y, &lifted.coords);
        // the lift of the rotated cycle is the image of the lift
        let rotated = ResidueCycle::new(lifted.residue_cycle[1..].iter().chain(&lifted.residue_cycle[..1]).cloned().collect()).unwrap();
        let next = lift_periodic(&map3, &rotated, Restrictedness::Syntactic).unwrap();
        prop_assert_eq!(next.coords, map3.eval(&lifted.coords).unwrap());
        prop_assert_eq!(next.period, lifted.period);
    }
}

proptest! {
    #[test]
    fn gauss_norm_is_multiplicative_and_ultrametric(f in poly(&PAdicContext::new(3, 1, 12).unwrap()), g in poly(&PAdicContext::new(3, 1, 12).unwrap())) {
        let n = 12;
        match (gauss_norm(&f), gauss_norm(&g)) {
            (Some(a), Some(b)) if a + b < n => prop_assert_eq!(gauss_norm(&f.mul(&g)), Some(a + b)),
            _ => {}
        }
        let sum = gauss_norm(&f.add(&g)).unwrap_or(n);
        prop_assert!(sum >= gauss_norm(&f).unwrap_or(n).min(gauss_norm(&g).unwrap_or(n)));
    }

    #[test]
    fn rank2_value_is_multiplicative(f in poly(&PAdicContext::new(2, 1, 16).unwrap()), g in poly(&PAdicContext::new(2, 1, 16).unwrap())) {
        let (a, b) = (rank2_val(&f).unwrap(), rank2_val(&g).unwrap());
        let fg = f.mul(&g);
        // only meaningful while the product is not truncated by the precision
        if gauss_norm(&f).zip(gauss_norm(&g)).is_some_and(|(x, y)| x + y < 16) {
            prop_assert_eq!(rank2_val(&fg).unwrap(), a * b);
        }
        if a != b {
            prop_assert_eq!(rank2_val(&f.add(&g)).unwrap(), a.max(b));
        }
    }

    #[test]
    fn gauss_norm_is_locally_constant(f in poly(&PAdicContext::new(5, 1, 8).unwrap()), e in 0u32..4, c in 1i64..100) {
        let ctx = PAdicContext::new(5, 1, 8).unwrap();
        let Some(v) = gauss_norm(&f) else { return Ok(()); };
        let perturbation = MPoly::from_terms(1, [(vec![e], ctx.from_int(c).shift_up(v + 1))]);
        prop_assert_eq!(gauss_norm(&f.add(&perturbation)), Some(v));
    }
}

fn residue_field_point(p: u64) -> impl Strategy<Value = (u64, i64)> {
    (Just(p), 0..p as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn preimage_orbits_partition_a_frobenius_closed_set((p, x) in residue_field_point(3).boxed().prop_union(residue_field_point(5).boxed()), n in 0usize..3, d in 2u32..4) {
        let ctx = PAdicContext::new(p, 1, 1).unwrap();
        let map = ResidueMap::parse(&ctx, &[&format!("X0^{d} + 1")]).unwrap();
        let point = vec![ctx.residue_from_coeffs(&[x]).unwrap()];
        let set = preimage_set(&map, &point, n, 6, Budget::default()).unwrap();
        let Ok(orbits) = galois_orbits(&set, 1) else { return Ok(()); };
        prop_assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), set.points.len());
        let line = ResidueVariety::parse(&ctx, 1, &["X0 - 1"]).unwrap();
        let field = set.points[0][0].context().clone();
        let line = line.base_change(&field).unwrap();
        for orbit in &orbits {
            for q in orbit {
                let fq: Vec<_> = q.iter().map(|c| c.frobenius()).collect();
                prop_assert!(set.points.contains(&fq));
                prop_assert_eq!(line.contains(q), line.contains(&orbit[0]));
            }
        }
    }

    #[test]
    fn backward_search_is_coherent_and_lookahead_independent(x in 0i64..5, y in 0i64..5, depth in 1usize..5) {
        let ctx = PAdicContext::new(5, 1, 1).unwrap();
        let map = ResidueMap::parse(&ctx, &["X0^2 + X1", "X1^3"]).unwrap();
        let v = ResidueVariety::parse(&ctx, 2, &["X0 - X1"]).unwrap();
        let point = vec![ctx.residue_from_coeffs(&[x]).unwrap(), ctx.residue_from_coeffs(&[y]).unwrap()];
        let results: Vec<_> = (0..4)
            .map(|l| coherent_backward_orbit_search(&map, &point, &v, SearchLimits { depth, lookahead: l, degree_bound: 2, budget: Budget::default() }))
            .collect();
        for r in &results {
            prop_assert_eq!(r, &results[0]);
        }
        if let Ok(orbit) = &results[0] {
            prop_assert!(orbit.is_coherent(&map));
            prop_assert_eq!(orbit.points.len(), depth + 1);
            let field = orbit.points[0][0].context().clone();
            let emb = ctx.embedding_into(&field).unwrap();
            let embedded: Vec<_> = point.iter().map(|c| emb.apply_residue(c).unwrap()).collect();
            prop_assert_eq!(&orbit.points[0], &embedded);
        }
        // more budget never turns success into failure
        let tight = coherent_backward_orbit_search(&map, &point, &v, SearchLimits { depth, lookahead: 2, degree_bound: 2, budget: Budget(1000) });
        if tight.is_ok() {
            prop_assert_eq!(tight, results[2].clone());
        }
    }

    #[test]
    fn config_round_trip(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1u32..10, dim in 1usize..3, degrees in prop::collection::vec(1usize..6, 1..4), seed in any::<u64>(), lookahead in 0usize..4) {
        let maps: Vec<String> = (0..dim).map(|i| format!("X{i}^{p} + {p}*X{i}")).collect();
        let config = ExperimentConfig {
            p,
            k: 1,
            precision: n,
            dim,
            map: maps,
            variety: vec!["X0 - 1".into()],
            degrees,
            max_period: 3,
            depth: 4,
            lookahead,
            degree_bound: 2,
            seed,
            point: Some(vec!["1".into(); dim]),
        };
        prop_assert_eq!(ExperimentConfig::parse(&config.render()).unwrap(), config);
    }
}
