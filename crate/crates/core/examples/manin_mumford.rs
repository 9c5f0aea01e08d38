//! Periodic points of (X0^2, X1^2) on the diagonal: their number grows with
//! the residue field, and every lift stays on the diagonal.

use padic_dynamo::dynamics::{manin_mumford_scan, PolyMap, ScanOptions, VarietySpec};
use padic_dynamo::padic::PAdicContext;
use padic_dynamo::Error;

fn main() -> padic_dynamo::Result<()> {
    let ctx = PAdicContext::new(2, 1, 16)?;
    let map = PolyMap::parse(&ctx, &["X0^2", "X1^2"])?;
    let diagonal = VarietySpec::parse(&ctx, 2, &["X0 - X1"])?;
    let report = manin_mumford_scan(&map, &diagonal, &[1, 2, 3, 4], ScanOptions::default())?;
    println!("k\t|V|\t|Per|\t|Per on V|\tlifted on V");
    for r in &report.rows {
        println!(
            "{}\t{}\t{}\t{}\t{}",
            r.degree, r.variety_points, r.periodic_points, r.periodic_on_variety, r.lifted_on_variety
        );
    }
    println!(
        "strictly increasing: {}, all lifts on V: {}",
        report.strictly_increasing(),
        report.all_lifts_on_variety()
    );

    // the scan refuses a subvariety the map does not preserve
    let twisted = PolyMap::parse(&ctx, &["X0^2", "X1^4"])?;
    let line = VarietySpec::parse(&ctx, 2, &["X1 - X0 - 1"])?;
    match manin_mumford_scan(&twisted, &line, &[2], ScanOptions::default()) {
        Err(e @ Error::VarietyNotInvariant { .. }) => println!("rejected: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
