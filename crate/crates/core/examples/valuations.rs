//! Gauss norms and the rank-2 valuation on Tate polynomials.

use padic_dynamo::padic::PAdicContext;
use padic_dynamo::poly::MPoly;
use padic_dynamo::valuations::{gamma_compare, gauss_norm, normalize_generator, rank2_val, GammaValue};

fn main() -> padic_dynamo::Result<()> {
    let z2 = PAdicContext::new(2, 1, 16)?;
    for text in ["1 + X0", "2*X0^2 + X0", "2", "4*X0^3 + 8", "0"] {
        let f = MPoly::parse(text, 1, &z2)?;
        let norm = gauss_norm(&f).map_or("inf".to_string(), |v| v.to_string());
        println!("{text:>12}: gauss norm {norm:>3}, rank-2 value {}", rank2_val(&f)?);
    }
    let f = MPoly::parse("4*X0^3 + 8", 1, &z2)?;
    println!("normalized 4*X0^3 + 8 = {}", normalize_generator(&f)?);

    let values = [GammaValue::finite(1, 5), GammaValue::finite(0, -1), GammaValue::finite(0, 0), GammaValue::Zero];
    for a in &values {
        for b in &values {
            print!("{:?} ", gamma_compare(a, b));
        }
        println!("  <- {a}");
    }
    Ok(())
}
