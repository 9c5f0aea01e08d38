//! Search for a coherent backward orbit of (X0^2, X1^3) over F_5 meeting the
//! diagonal as often as possible.

use padic_dynamo::dynamics::{Budget, ResidueMap, ResidueVariety, Tuple};
use padic_dynamo::padic::PAdicContext;
use padic_dynamo::stability::{coherent_backward_orbit_search, SearchLimits};

fn main() -> padic_dynamo::Result<()> {
    let f5 = PAdicContext::new(5, 1, 1)?;
    let map = ResidueMap::parse(&f5, &["X0^2", "X1^3"])?;
    let diagonal = ResidueVariety::parse(&f5, 2, &["X0 - X1"])?;
    for start in [[1, 1], [1, 4]] {
        let x0: Vec<_> = start.iter().map(|&c| f5.residue_from_coeffs(&[c])).collect::<Result<_, _>>()?;
        let limits = SearchLimits { depth: 4, lookahead: 2, degree_bound: 2, budget: Budget::default() };
        let orbit = coherent_backward_orbit_search(&map, &x0, &diagonal, limits)?;
        let chain: Vec<String> = orbit.points.iter().map(|p| Tuple(p).to_string()).collect();
        println!("from {}: {}", Tuple(&x0), chain.join(" <- "));
        println!("  over F_5^{}, hits at {:?}, coherent: {}", orbit.extension, orbit.hits, orbit.is_coherent(&map));
    }
    Ok(())
}
