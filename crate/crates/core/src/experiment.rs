//! Dispatch from a validated config to the library operations, producing a
//! [`Report`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, ExperimentConfig};
use crate::dynamics::{
    context_of_degree, is_restricted_syntactic, lift_cycle, manin_mumford_scan, periodic_points_residue,
    recognize_lift_of_pth_power, reduce_point, tate_voloch_scan, Budget, PolyMap, Restrictedness, ScanOptions, Tuple,
};
use crate::error::Result;
use crate::padic::{PAdicContext, PAdicElement};
use crate::poly::MPoly;
use crate::report::Report;
use crate::stability::{coherent_backward_orbit_search, eventual_stability_probe, SearchLimits};
use crate::valuations::{gauss_norm, rank2_val};

/// Random points used by check-lift to test red(F(x)) = G(red x)^p.
pub const COMMUTING_SQUARE_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Subcommand {
    CheckLift,
    PerPoints,
    Lift,
    TateVoloch,
    ManinMumford,
    Stability,
    BackwardOrbit,
    GaussNorm,
}

impl Subcommand {
    pub const ALL: [Subcommand; 8] = [
        Subcommand::CheckLift,
        Subcommand::PerPoints,
        Subcommand::Lift,
        Subcommand::TateVoloch,
        Subcommand::ManinMumford,
        Subcommand::Stability,
        Subcommand::BackwardOrbit,
        Subcommand::GaussNorm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::CheckLift => "check-lift",
            Subcommand::PerPoints => "per-points",
            Subcommand::Lift => "lift",
            Subcommand::TateVoloch => "tate-voloch",
            Subcommand::ManinMumford => "manin-mumford",
            Subcommand::Stability => "stability",
            Subcommand::BackwardOrbit => "backward-orbit",
            Subcommand::GaussNorm => "gauss-norm",
        }
    }

    /// Config keys the subcommand needs beyond the always-required ones.
    pub fn requirements(self, config: &ExperimentConfig) -> std::result::Result<(), ConfigError> {
        let mut missing = Vec::new();
        let needs_variety =
            matches!(self, Subcommand::TateVoloch | Subcommand::ManinMumford | Subcommand::BackwardOrbit);
        if needs_variety && config.variety.is_empty() {
            missing.push(format!("{} needs at least one `variety` line", self.name()));
        }
        if matches!(self, Subcommand::Stability | Subcommand::BackwardOrbit) && config.point.is_none() {
            missing.push(format!("{} needs `point`", self.name()));
        }
        if missing.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(missing))
        }
    }
}

impl std::fmt::Display for Subcommand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub budget: Budget,
    /// accept maps failing the syntactic restrictedness check
    pub override_restricted: bool,
}

impl RunOptions {
    fn restrictedness(self) -> Restrictedness {
        if self.override_restricted {
            Restrictedness::Assumed
        } else {
            Restrictedness::Syntactic
        }
    }

    fn scan(self) -> ScanOptions {
        ScanOptions { budget: self.budget, restrictedness: self.restrictedness() }
    }
}

pub fn run(cmd: Subcommand, config: &ExperimentConfig, options: &RunOptions) -> Result<Report> {
    let violations = config.violations();
    if !violations.is_empty() {
        return Err(ConfigError::Invalid(violations).into());
    }
    cmd.requirements(config)?;
    let ctx = config.context()?;
    let map = config.poly_map()?;
    let new_report = |columns: &[&str]| Report::new(cmd.name(), config.render(), ctx.descriptor(), columns);
    match cmd {
        Subcommand::CheckLift => check_lift(config, &map, new_report(&["component", "F", "G"])),
        Subcommand::PerPoints => per_points(config, &map, options, new_report(&["degree", "period", "cycle"])),
        Subcommand::Lift => lift(config, &map, options, new_report(&["degree", "period", "residue", "lift", "check"])),
        Subcommand::TateVoloch => {
            let columns = ["degree", "period", "point", "valuation", "class"];
            tate_voloch(config, &map, options, new_report(&columns))
        }
        Subcommand::ManinMumford => {
            let columns = ["degree", "variety_points", "periodic_points", "periodic_on_variety", "lifted_on_variety"];
            manin_mumford(config, &map, options, new_report(&columns))
        }
        Subcommand::Stability => {
            stability(config, &map, options, new_report(&["n", "preimages", "orbits", "extension"]))
        }
        Subcommand::BackwardOrbit => backward_orbit(config, &map, options, new_report(&["i", "point", "on_variety"])),
        Subcommand::GaussNorm => {
            gauss_norms(config, &ctx, new_report(&["source", "index", "polynomial", "gauss_norm", "rank2"]))
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn random_element(ctx: &PAdicContext, rng: &mut ChaCha8Rng) -> PAdicElement {
    let m = ctx.modulus_power();
    let coeffs: Vec<i64> = (0..ctx.degree()).map(|_| rng.gen_range(0..m) as i64).collect();
    ctx.from_coeffs(&coeffs).expect("coefficient count matches degree")
}

fn check_lift(config: &ExperimentConfig, map: &PolyMap, mut report: Report) -> Result<Report> {
    let recognized = recognize_lift_of_pth_power(map);
    for (i, f) in map.components().iter().enumerate() {
        let g = match &recognized {
            Ok(g) => g.components()[i].to_string(),
            Err(_) => "-".into(),
        };
        report.push_row(vec![i.to_string(), f.to_string(), g]);
    }
    report.summary = match recognized {
        Ok(g) => {
            let shown: Vec<String> = g.components().iter().map(ToString::to_string).collect();
            let shown = if shown.len() == 1 { shown[0].clone() } else { format!("({})", shown.join(", ")) };
            let ctx = map.context();
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let reduced = map.reduce();
            let commuting = (0..COMMUTING_SQUARE_SAMPLES)
                .filter(|_| {
                    let x: Vec<PAdicElement> = (0..map.dimension()).map(|_| random_element(ctx, &mut rng)).collect();
                    let lhs = reduce_point(&map.eval_unchecked(&x));
                    let rhs: Vec<_> = g.eval_unchecked(&reduce_point(&x)).iter().map(|c| c.frobenius()).collect();
                    debug_assert_eq!(reduced.eval_unchecked(&reduce_point(&x)), lhs);
                    lhs == rhs
                })
                .count();
            format!(
                "lift = yes, G = {shown}, restricted(syntactic) = {}, commuting square = {commuting}/{COMMUTING_SQUARE_SAMPLES}",
                yes_no(is_restricted_syntactic(map))
            )
        }
        Err(e) => format!("lift = no ({e}), G = -, restricted(syntactic) = no"),
    };
    Ok(report)
}

fn per_points(config: &ExperimentConfig, map: &PolyMap, options: &RunOptions, mut report: Report) -> Result<Report> {
    let reduced = map.reduce();
    let (mut cycles, mut points) = (0, 0);
    for &degree in &config.degrees {
        for cycle in periodic_points_residue(&reduced, degree, config.max_period, options.budget)? {
            cycles += 1;
            points += cycle.period();
            report.push_row(vec![degree.to_string(), cycle.period().to_string(), cycle.to_string()]);
        }
    }
    report.summary = format!("cycles = {cycles}, periodic points = {points}");
    Ok(report)
}

fn lift(config: &ExperimentConfig, map: &PolyMap, options: &RunOptions, mut report: Report) -> Result<Report> {
    let restrictedness = options.restrictedness();
    let (mut lifted, mut verified) = (0, 0);
    for &degree in &config.degrees {
        let ctx = context_of_degree(map.context(), degree)?;
        let f = map.base_change(&ctx)?;
        for cycle in periodic_points_residue(&f.reduce(), degree, config.max_period, options.budget)? {
            for x in lift_cycle(&f, &cycle, restrictedness)? {
                let ok = f.iterate(&x.coords, x.period)? == x.coords && reduce_point(&x.coords) == x.residue_cycle[0];
                lifted += 1;
                verified += ok as usize;
                report.push_row(vec![
                    degree.to_string(),
                    x.period.to_string(),
                    Tuple(&x.residue_cycle[0]).to_string(),
                    Tuple(&x.coords).to_string(),
                    if ok { "ok".into() } else { "FAILED".into() },
                ]);
            }
        }
    }
    report.summary = format!("lifted = {lifted}, verified = {verified}");
    Ok(report)
}

fn tate_voloch(config: &ExperimentConfig, map: &PolyMap, options: &RunOptions, mut report: Report) -> Result<Report> {
    let variety = config.variety_spec()?;
    let gap = tate_voloch_scan(map, &variety, &config.degrees, config.max_period, options.scan())?;
    for row in &gap.rows {
        report.push_row(vec![
            row.degree.to_string(),
            row.period.to_string(),
            Tuple(&row.point).to_string(),
            row.valuation.to_string(),
            row.proximity.label().to_string(),
        ]);
    }
    use crate::dynamics::Proximity::*;
    let observed = match gap.max_observed() {
        Some(m) => format!("M_observed = {m}, epsilon = {}^-{m}", config.p),
        None => "M_observed = none".into(),
    };
    report.summary = format!(
        "on = {}, off = {}, suspect = {}, {observed}",
        gap.count(OnVariety),
        gap.count(Off),
        gap.count(PrecisionSuspect)
    );
    Ok(report)
}

fn manin_mumford(config: &ExperimentConfig, map: &PolyMap, options: &RunOptions, mut report: Report) -> Result<Report> {
    let variety = config.variety_spec()?;
    let density = manin_mumford_scan(map, &variety, &config.degrees, options.scan())?;
    for r in &density.rows {
        report.push_row(
            [r.degree as u64, r.variety_points, r.periodic_points, r.periodic_on_variety, r.lifted_on_variety]
                .iter()
                .map(ToString::to_string)
                .collect(),
        );
    }
    report.summary = format!(
        "strictly increasing = {}, all lifts on V = {}",
        yes_no(density.strictly_increasing()),
        yes_no(density.all_lifts_on_variety())
    );
    Ok(report)
}

fn stability(config: &ExperimentConfig, map: &PolyMap, options: &RunOptions, mut report: Report) -> Result<Report> {
    let x = reduce_point(&config.base_point()?.expect("checked by requirements"));
    let probe = eventual_stability_probe(&map.reduce(), &x, config.depth, config.degree_bound, options.budget)?;
    for r in &probe.rows {
        report.push_row(vec![
            r.depth.to_string(),
            r.preimages.to_string(),
            r.orbits.to_string(),
            r.extension.to_string(),
        ]);
    }
    report.summary = format!("verdict = {}, degree_bound = {}", probe.verdict.label(), config.degree_bound);
    Ok(report)
}

fn backward_orbit(
    config: &ExperimentConfig,
    map: &PolyMap,
    options: &RunOptions,
    mut report: Report,
) -> Result<Report> {
    let x = reduce_point(&config.base_point()?.expect("checked by requirements"));
    let variety = config.variety_spec()?.reduce();
    let limits = SearchLimits {
        depth: config.depth,
        lookahead: config.lookahead,
        degree_bound: config.degree_bound,
        budget: options.budget,
    };
    let reduced = map.reduce();
    let orbit = coherent_backward_orbit_search(&reduced, &x, &variety, limits)?;
    for (i, pt) in orbit.points.iter().enumerate() {
        report.push_row(vec![i.to_string(), Tuple(pt).to_string(), yes_no(orbit.hits.contains(&i)).into()]);
    }
    report.summary = format!(
        "hits = {}/{}, extension = {}, coherent = {}",
        orbit.hits.len(),
        orbit.points.len(),
        orbit.extension,
        yes_no(orbit.is_coherent(&reduced))
    );
    Ok(report)
}

fn gauss_norms(config: &ExperimentConfig, ctx: &PAdicContext, mut report: Report) -> Result<Report> {
    let sources = config.map.iter().map(|t| ("map", t)).chain(config.variety.iter().map(|t| ("variety", t)));
    let mut index = std::collections::BTreeMap::<&str, usize>::new();
    for (source, text) in sources {
        let f = MPoly::parse(text, config.dim, ctx)?;
        let norm = gauss_norm(&f).map_or("inf".to_string(), |v| v.to_string());
        let rank2 = if config.dim == 1 { rank2_val(&f)?.to_string() } else { "-".into() };
        let i = index.entry(source).or_default();
        report.push_row(vec![source.into(), i.to_string(), f.to_string(), norm, rank2]);
        *i += 1;
    }
    report.summary = format!("polynomials = {}", report.rows.len());
    Ok(report)
}
