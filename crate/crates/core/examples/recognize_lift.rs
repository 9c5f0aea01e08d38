//! Decide whether a polynomial map is a lift of a p-th power, recover the
//! reduced map G, and test the syntactic restrictedness condition.

use padic_dynamo::dynamics::{is_restricted_syntactic, recognize_lift_of_pth_power, restricted_witness, PolyMap};
use padic_dynamo::padic::PAdicContext;

fn describe(map: &PolyMap) {
    let shown: Vec<String> = map.components().iter().map(ToString::to_string).collect();
    print!("F = ({}) over Z_{}: ", shown.join(", "), map.context().p());
    match recognize_lift_of_pth_power(map) {
        Ok(g) => {
            let g: Vec<String> = g.components().iter().map(ToString::to_string).collect();
            println!("lift of p-th power with G = ({})", g.join(", "));
            println!("  restricted (syntactic): {}", is_restricted_syntactic(map));
            if let Some(w) = restricted_witness(map) {
                for (i, c) in w.components.iter().enumerate() {
                    println!("  component {i}: leading degree {}", c.leading_degree(map.context().p()));
                }
            }
        }
        Err(e) => println!("not a lift: {e}"),
    }
}

fn main() -> padic_dynamo::Result<()> {
    let z2 = PAdicContext::new(2, 1, 16)?;
    let z3 = PAdicContext::new(3, 1, 16)?;
    describe(&PolyMap::parse(&z2, &["X0^2 + 2*X0"])?);
    describe(&PolyMap::parse(&z3, &["X0^3 + X1^3 + 3*X0*X1", "X0^3 - X1^3"])?);
    describe(&PolyMap::parse(&z3, &["2*X0^9 + X0^3 + 3*X0^2"])?);
    describe(&PolyMap::parse(&z2, &["X0^2 + X0"])?);

    // points escaping the unit polydisc: a restricted lift pushes them further out
    let map = PolyMap::parse(&z2, &["X0^2 + 2*X0"])?;
    let (v_in, v_out) = map.laurent_valuations(&[z2.from_int(3)], &[2])?;
    println!("x = 3/4: val(x) = {v_in}, val(F(x)) = {v_out}");
    Ok(())
}
