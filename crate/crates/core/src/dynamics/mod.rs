//! Polynomial self-maps of affine space over Z_q, their reductions, and
//! periodic points.

mod enumerate;
mod map;
mod periodic;
mod scan;

pub use enumerate::Budget;
pub(crate) use enumerate::PointIndexer;
pub use map::{
    is_restricted_syntactic, lift_point, recognize_lift_of_pth_power, reduce_point, restricted_witness, Point, PolyMap,
    ResidueMap, ResiduePoint, RestrictedComponent, RestrictedWitness,
};
pub use periodic::{
    context_of_degree, contraction_witness, lift_cycle, lift_periodic, periodic_points_residue, tilt_periodic,
    PeriodicPoint, ResidueCycle, Restrictedness, Tuple,
};
pub use scan::{
    gauss_distance, manin_mumford_scan, tate_voloch_scan, DensityReport, DensityRow, GapReport, GapRow, Proximity,
    ResidueVariety, ScanOptions, VarietySpec,
};
