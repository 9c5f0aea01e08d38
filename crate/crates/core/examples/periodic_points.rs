//! Periodic points of F mod p over F_{p^k}, their unique lifts to Z_q, and
//! the residue cycle recovered from a lift.

use padic_dynamo::dynamics::{
    context_of_degree, contraction_witness, lift_cycle, periodic_points_residue, tilt_periodic, Budget, PolyMap,
    Restrictedness, Tuple,
};
use padic_dynamo::padic::PAdicContext;

fn main() -> padic_dynamo::Result<()> {
    let base = PAdicContext::new(2, 1, 16)?;
    let map = PolyMap::parse(&base, &["X0^2 + 2*X0"])?;
    for k in 1..=3 {
        let ctx = context_of_degree(&base, k)?;
        let f = map.base_change(&ctx)?;
        let cycles = periodic_points_residue(&f.reduce(), k, 8, Budget::default())?;
        println!("F_{{2^{k}}}: {} cycles", cycles.len());
        for cycle in &cycles {
            let lifts = lift_cycle(&f, cycle, Restrictedness::Syntactic)?;
            let first = &lifts[0];
            println!(
                "  {cycle} period {} -> lift {} (tilt {})",
                cycle.period(),
                Tuple(&first.coords),
                tilt_periodic(first)
            );
        }
    }

    // two points of one residue disc move closer under F
    let x = [base.from_int(5)];
    let y = [base.from_int(5 + 8)];
    let (v_in, v_out) = contraction_witness(&map, &x, &y)?;
    println!("contraction: val(x - y) = {v_in}, val(F(x) - F(y)) = {v_out}");
    Ok(())
}
