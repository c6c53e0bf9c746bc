//! Low-level convex geometry on small point sets: affine frames, brute-force
//! facet enumeration, pulling triangulations and hulls in the plane and space.
//!
//! Everything here is sized for desk-scale inputs (tens of points). Facet
//! enumeration walks all `k`-subsets, which is plenty for vertex figures and
//! the polytopes the transform code deals with.

use std::collections::BTreeSet;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

/// Orthonormal frame of the affine hull of a point set.
#[derive(Debug, Clone)]
pub(crate) struct AffineFrame {
    pub origin: DVector<f64>,
    /// Columns span the direction space of the affine hull.
    pub basis: DMatrix<f64>,
}

impl AffineFrame {
    pub fn of(points: &[DVector<f64>], rel_tol: f64) -> Self {
        let n = points[0].len();
        let origin = points[0].clone();
        if points.len() == 1 {
            return Self { origin, basis: DMatrix::zeros(n, 0) };
        }
        let diffs = DMatrix::from_fn(n, points.len() - 1, |r, c| points[c + 1][r] - origin[r]);
        let svd = diffs.svd(true, false);
        let u = svd.u.expect("left singular vectors requested");
        let smax = svd.singular_values.max();
        let keep: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&i| svd.singular_values[i] > rel_tol * smax.max(f64::MIN_POSITIVE))
            .collect();
        let basis = DMatrix::from_fn(n, keep.len(), |r, c| u[(r, keep[c])]);
        Self { origin, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn local(&self, p: &DVector<f64>) -> DVector<f64> {
        self.basis.tr_mul(&(p - &self.origin))
    }
}

/// Affine rank of a point set (dimension of its affine hull).
pub(crate) fn affine_rank(points: &[DVector<f64>], rel_tol: f64) -> usize {
    if points.is_empty() {
        return 0;
    }
    AffineFrame::of(points, rel_tol).rank()
}

/// Largest pairwise distance.
pub(crate) fn diameter(points: &[DVector<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

/// Supporting hyperplane `normal · x = offset` with every point on the
/// non-positive side, plus the indices of the points lying on it.
#[derive(Debug, Clone)]
pub(crate) struct Facet {
    pub normal: DVector<f64>,
    pub offset: f64,
    pub members: Vec<usize>,
}

/// Generalized cross product of `k - 1` vectors in `R^k`.
fn cross_normal(vectors: &[DVector<f64>]) -> DVector<f64> {
    let k = vectors.len() + 1;
    let m = DMatrix::from_fn(k, k - 1, |r, c| vectors[c][r]);
    DVector::from_fn(k, |i, _| {
        let minor = m.clone().remove_row(i);
        let det = if minor.nrows() == 0 { 1.0 } else { minor.determinant() };
        if i % 2 == 0 {
            det
        } else {
            -det
        }
    })
}

/// All facets of the convex hull of `points`, which must span `R^k` where
/// `k` is the ambient dimension of the (local) coordinates.
pub(crate) fn facets(points: &[DVector<f64>], tol: f64) -> Vec<Facet> {
    let k = points[0].len();
    if k == 1 {
        let (imin, _) = points.iter().enumerate().map(|(i, p)| (i, p[0])).fold(
            (0, f64::INFINITY),
            |a, b| if b.1 < a.1 { b } else { a },
        );
        let (imax, _) = points.iter().enumerate().map(|(i, p)| (i, p[0])).fold(
            (0, f64::NEG_INFINITY),
            |a, b| if b.1 > a.1 { b } else { a },
        );
        let on = |target: f64| -> Vec<usize> {
            (0..points.len()).filter(|&i| (points[i][0] - target).abs() <= tol).collect()
        };
        return vec![
            Facet { normal: DVector::from_element(1, -1.0), offset: -points[imin][0], members: on(points[imin][0]) },
            Facet { normal: DVector::from_element(1, 1.0), offset: points[imax][0], members: on(points[imax][0]) },
        ];
    }

    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for subset in (0..points.len()).combinations(k) {
        if seen.iter().any(|m| subset.iter().all(|i| m.binary_search(i).is_ok())) {
            continue;
        }
        let base = &points[subset[0]];
        let dirs: Vec<DVector<f64>> = subset[1..].iter().map(|&i| &points[i] - base).collect();
        let mut normal = cross_normal(&dirs);
        let len = normal.norm();
        let scale = dirs.iter().map(|d| d.norm()).fold(0.0, f64::max).max(1.0);
        if len <= 1e-12 * scale.powi(k as i32 - 1) {
            continue;
        }
        normal /= len;
        let mut offset = normal.dot(base);
        let dists: Vec<f64> = points.iter().map(|p| normal.dot(p) - offset).collect();
        let above = dists.iter().any(|&s| s > tol);
        let below = dists.iter().any(|&s| s < -tol);
        if above && below {
            continue;
        }
        if above {
            normal = -normal;
            offset = -offset;
        }
        let members: Vec<usize> = dists
            .iter()
            .enumerate()
            .filter(|(_, s)| s.abs() <= tol)
            .map(|(i, _)| i)
            .collect();
        if seen.insert(members.clone()) {
            out.push(Facet { normal, offset, members });
        }
    }
    out
}

/// Pulling triangulation of `conv(points)` from the lowest-index point: the
/// point is coned over a recursive triangulation of every facet that does
/// not contain it. Returns simplices as sorted index lists into `points`.
/// Only input points are used as simplex vertices.
pub(crate) fn pulling_triangulation(points: &[DVector<f64>], rel_tol: f64) -> Vec<Vec<usize>> {
    if points.is_empty() {
        return Vec::new();
    }
    let frame = AffineFrame::of(points, rel_tol);
    let k = frame.rank();
    if k == 0 {
        return Vec::new();
    }
    if points.len() == k + 1 {
        return vec![(0..points.len()).collect()];
    }
    let local: Vec<DVector<f64>> = points.iter().map(|p| frame.local(p)).collect();
    if k == 1 {
        let order: Vec<usize> =
            (0..local.len()).sorted_by(|&a, &b| local[a][0].total_cmp(&local[b][0])).collect();
        return order
            .windows(2)
            .map(|w| {
                let mut s = vec![w[0], w[1]];
                s.sort_unstable();
                s
            })
            .collect();
    }
    let scale = diameter(&local).max(f64::MIN_POSITIVE);
    let tol = rel_tol * scale;
    let mut out = Vec::new();
    for facet in facets(&local, tol) {
        if facet.members.contains(&0) {
            continue;
        }
        let sub: Vec<DVector<f64>> = facet.members.iter().map(|&i| points[i].clone()).collect();
        for simplex in pulling_triangulation(&sub, rel_tol) {
            let mut s: Vec<usize> = simplex.iter().map(|&j| facet.members[j]).collect();
            s.push(0);
            s.sort_unstable();
            out.push(s);
        }
    }
    out
}

/// Unsigned `k`-volume of the simplex with the given vertices (k + 1 points
/// in `R^k`).
pub(crate) fn simplex_volume(vertices: &[&DVector<f64>]) -> f64 {
    let k = vertices.len() - 1;
    let m = DMatrix::from_fn(k, k, |r, c| vertices[c + 1][r] - vertices[0][r]);
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    m.determinant().abs() / fact
}

/// Approximate nearest point of `conv(points)` to the origin (Gilbert's
/// algorithm). Stops as soon as the iterate separates every point from the
/// origin, returning `Some(direction)` with `direction · p > 0` for all `p`;
/// returns `None` if no separating direction is found, meaning the origin is
/// (numerically) in the hull.
pub(crate) fn separating_direction(points: &[DVector<f64>]) -> Option<DVector<f64>> {
    let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let mean = points.iter().fold(DVector::zeros(points[0].len()), |acc, p| acc + p) / points.len() as f64;
    let margin = |c: &DVector<f64>| points.iter().map(|p| c.dot(p)).fold(f64::INFINITY, f64::min);
    if margin(&mean) > 1e-12 * scale * mean.norm() {
        return Some(mean);
    }
    let mut x = points[0].clone();
    for _ in 0..20_000 {
        let (s, best) = points
            .iter()
            .map(|p| (p, x.dot(p)))
            .fold((&points[0], f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        if best > 1e-12 * x.norm() * scale {
            return Some(x);
        }
        let d = s - &x;
        let dd = d.norm_squared();
        if dd == 0.0 {
            break;
        }
        let lambda = (-x.dot(&d) / dd).clamp(0.0, 1.0);
        x += d * lambda;
        if x.norm() <= 1e-12 * scale {
            return None;
        }
    }
    None
}

/// Hull of a planar point set in counter-clockwise order (Andrew's monotone
/// chain), collinear boundary points discarded.
pub(crate) fn hull_2d(points: &[DVector<f64>], tol: f64) -> Vec<usize> {
    let order: Vec<usize> = (0..points.len())
        .sorted_by(|&a, &b| {
            points[a][0].total_cmp(&points[b][0]).then(points[a][1].total_cmp(&points[b][1]))
        })
        .collect();
    let cross = |o: usize, a: usize, b: usize| {
        (points[a][0] - points[o][0]) * (points[b][1] - points[o][1])
            - (points[a][1] - points[o][1]) * (points[b][0] - points[o][0])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= tol {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= tol {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
