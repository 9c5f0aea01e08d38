//! Frobenius-orbit counts of iterated preimages under squaring over F_3.

use padic_dynamo::dynamics::Budget;
use padic_dynamo::dynamics::{ResidueMap, Tuple};
use padic_dynamo::padic::PAdicContext;
use padic_dynamo::stability::{eventual_stability_probe, galois_orbits, preimage_set};

fn main() -> padic_dynamo::Result<()> {
    let f3 = PAdicContext::new(3, 1, 1)?;
    let sq = ResidueMap::parse(&f3, &["X0^2"])?;

    let set = preimage_set(&sq, &[f3.residue_one()], 2, 4, Budget::default())?;
    println!("F^-2(1) lives in F_3^{}: complete = {}", set.extension, set.complete);
    for orbit in galois_orbits(&set, 1)? {
        let shown: Vec<String> = orbit.iter().map(|p| Tuple(p).to_string()).collect();
        println!("  orbit {{{}}}", shown.join(", "));
    }

    for (label, x) in [("1", f3.residue_one()), ("0", f3.residue_zero())] {
        let report = eventual_stability_probe(&sq, &[x], 5, 8, Budget::default())?;
        let counts: Vec<String> = report.rows.iter().map(|r| r.orbits.to_string()).collect();
        println!("at {label}: orbit counts {} -> {}", counts.join(" "), report.verdict.label());
    }
    Ok(())
}
