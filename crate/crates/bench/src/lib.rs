//! Shared inputs for the benchmarks.

use polyfourier::experiments::{disk_polygon, l_shape};
use polyfourier::geometry::{hypercube, standard_simplex};
use polyfourier::{Complex64, ComplexVector, PolytopalRegion};

pub fn regions() -> Vec<(&'static str, PolytopalRegion)> {
    vec![
        ("triangle", PolytopalRegion::single(standard_simplex(2))),
        ("l_shape", l_shape()),
        ("polygon_32", disk_polygon(32)),
        ("cube", PolytopalRegion::single(hypercube(3, 0.0, 1.0))),
        ("cube_4d", PolytopalRegion::single(hypercube(4, 0.0, 1.0))),
    ]
}

/// A generic frequency in dimension `d`, away from every generator
/// hyperplane of the regions above.
pub fn generic_z(d: usize) -> ComplexVector {
    ComplexVector::from_fn(d, |k, _| Complex64::new(0.37 + 0.29 * k as f64, -0.21 + 0.17 * k as f64))
}
