//! Distance from lifted periodic points of squaring to the point 1: every
//! periodic point is either on it or at distance exactly 1.

use padic_dynamo::dynamics::{tate_voloch_scan, PolyMap, Proximity, ScanOptions, Tuple, VarietySpec};
use padic_dynamo::padic::PAdicContext;

fn main() -> padic_dynamo::Result<()> {
    let ctx = PAdicContext::new(2, 1, 16)?;
    let map = PolyMap::parse(&ctx, &["X0^2"])?;
    let v = VarietySpec::parse(&ctx, 1, &["X0 - 1"])?;
    let report = tate_voloch_scan(&map, &v, &[1, 2, 3, 4], 8, ScanOptions::default())?;
    for row in report.rows.iter().filter(|r| r.degree <= 2) {
        println!(
            "k={} period={} x={} val={} {}",
            row.degree,
            row.period,
            Tuple(&row.point),
            row.valuation,
            row.proximity.label()
        );
    }
    println!(
        "on V: {}, off V: {}, precision-suspect: {}",
        report.count(Proximity::OnVariety),
        report.count(Proximity::Off),
        report.count(Proximity::PrecisionSuspect)
    );
    match report.epsilon_valuation() {
        Some(m) => println!("largest off-V valuation {m}: gap epsilon = 2^-{m}"),
        None => println!("no periodic point off V"),
    }
    Ok(())
}
