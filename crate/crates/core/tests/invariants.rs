use std::f64::consts::PI;

use nalgebra::DMatrix;
use polyfourier::experiments::l_shape;
use polyfourier::geometry::{convex_hull, hypercube, simplex};
use polyfourier::io::parse_region;
use polyfourier::transform::{pair, quadrature_transform, transform_additivity_check};
use polyfourier::{bb_transform, Complex64, ComplexVector, Point, PolytopalRegion, VertexConeDecomposition};
use proptest::prelude::*;

fn eval(region: &PolytopalRegion, z: &ComplexVector) -> Complex64 {
    bb_transform(&VertexConeDecomposition::new(region).unwrap(), z).unwrap().value
}

fn complex_vec(d: usize) -> impl Strategy<Value = ComplexVector> {
    prop::collection::vec((-1.5f64..1.5, -0.8f64..0.8), d)
        .prop_map(|v| ComplexVector::from_vec(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()))
}

fn triangle() -> impl Strategy<Value = PolytopalRegion> {
    prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 3).prop_filter_map("degenerate", |pts| {
        let pts: Vec<Point> = pts.into_iter().map(Point::from_vec).collect();
        let s = simplex(pts).ok()?;
        (s.volume() > 0.05).then(|| PolytopalRegion::single(s))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translation_multiplies_by_a_phase(r in triangle(), z in complex_vec(2), tx in -2.0f64..2.0, ty in -2.0f64..2.0) {
        let tau = Point::from_vec(vec![tx, ty]);
        let moved = eval(&r.translated(&tau), &z);
        let want = (Complex64::new(0.0, -2.0 * PI) * pair(&tau, &z)).exp() * eval(&r, &z);
        prop_assert!((moved - want).norm() <= 1e-9 * (1.0 + want.norm()));
    }

    #[test]
    fn linear_maps_pull_back(r in triangle(), z in complex_vec(2), m in prop::collection::vec(-1.0f64..1.0, 4)) {
        let a = DMatrix::from_row_slice(2, 2, &m) + DMatrix::identity(2, 2) * 1.5;
        let det = a.determinant();
        prop_assume!(det.abs() > 0.2);
        let at = a.transpose().map(|x| Complex64::new(x, 0.0));
        let pulled = &at * &z;
        let got = eval(&r.transformed(&a), &z);
        let want = eval(&r, &pulled) * det.abs();
        prop_assert!((got - want).norm() <= 1e-9 * (1.0 + want.norm()));
    }

    #[test]
    fn real_regions_are_conjugate_symmetric(r in triangle(), z in complex_vec(2)) {
        let flipped = z.map(|c| -c.conj());
        prop_assert!((eval(&r, &flipped) - eval(&r, &z).conj()).norm() <= 1e-10);
    }

    #[test]
    fn unions_add(z in complex_vec(2)) {
        prop_assert!(transform_additivity_check(&l_shape(), &z).unwrap() <= 1e-10);
    }
}

#[test]
fn cube_matches_product_of_intervals() {
    let z = ComplexVector::from_vec(vec![Complex64::new(0.31, 0.2), Complex64::new(-0.77, 0.1), Complex64::new(0.45, -0.3)]);
    let interval = |w: Complex64| {
        let a = Complex64::new(0.0, -2.0 * PI) * w;
        (a.exp() - 1.0) / a
    };
    let want: Complex64 = z.iter().map(|w| interval(*w)).product();
    let got = eval(&PolytopalRegion::single(hypercube(3, 0.0, 1.0)), &z);
    assert!((got - want).norm() < 1e-13, "{got} vs {want}");
}

#[test]
fn json_region_agrees_with_quadrature() {
    let json = r#"{"dim": 3, "parts": [{"vertices": [[0,0,0], [1,0,0], [0,"1/2",0], [0,0,"2/3"], [0.2,0.1,0.1]]}]}"#;
    let region = parse_region(json).unwrap();
    let built = PolytopalRegion::single(
        convex_hull(&[
            Point::from_vec(vec![0.0, 0.0, 0.0]),
            Point::from_vec(vec![1.0, 0.0, 0.0]),
            Point::from_vec(vec![0.0, 0.5, 0.0]),
            Point::from_vec(vec![0.0, 0.0, 2.0 / 3.0]),
        ])
        .unwrap(),
    );
    let z = ComplexVector::from_vec(vec![Complex64::new(0.9, -0.4), Complex64::new(-1.3, 0.5), Complex64::new(0.2, 1.1)]);
    let bb = eval(&region, &z);
    assert!((bb - eval(&built, &z)).norm() < 1e-13);
    let q = quadrature_transform(&region, &z, 1e-11).unwrap();
    assert!((bb - q).norm() / (1.0 + q.norm()) < 1e-9, "{bb} vs {q}");
}
