//! Convex polytopes, polytopal regions and their vertex-cone decompositions.
//!
//! A [`Polytope`] carries its vertices and edge graph. The transform code only
//! ever needs, for each vertex, the directions of the edges leaving it, split
//! into simplicial cones; [`VertexConeDecomposition`] collects those cones for
//! a whole [`PolytopalRegion`], merging vertices shared by several parts.

mod hull;
mod rotation;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

pub(crate) use hull::{diameter, pulling_triangulation, separating_direction, simplex_volume, AffineFrame};
pub use rotation::{apply_rotation, random_rotation};

/// Real point or direction in `R^d`.
pub type Point = DVector<f64>;

/// Relative tolerance used for rank decisions on vertex sets.
const RANK_TOL: f64 = 1e-10;

/// Vertices closer than this fraction of the region diameter are identified.
pub const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("points do not span {dim} dimensions (affine rank {rank})")]
    DegenerateInput { dim: usize, rank: usize },
    #[error("hull construction is only available for d = 2 or 3, got d = {0}")]
    UnsupportedDimension(usize),
    #[error("cone at apex {apex:?} contains a line")]
    NotPointed { apex: Vec<f64> },
    #[error("vertex {0} is not extreme")]
    NotExtreme(usize),
    #[error("vertex {vertex} has {found} incident edges, need at least {needed}")]
    TooFewEdges { vertex: usize, found: usize, needed: usize },
    #[error("edge ({0}, {1}) references a missing vertex or is a loop")]
    BadEdge(usize, usize),
    #[error("vertex index {0} out of range")]
    NoSuchVertex(usize),
    #[error("point has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a region needs at least one part")]
    EmptyRegion,
    #[error("parts {0} and {1} overlap (intersection volume {2:e})")]
    OverlappingParts(usize, usize, f64),
}

/// Full-dimensional convex polytope given by its vertices and edge graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Polytope {
    /// Builds a polytope from explicit combinatorics, checking that it is
    /// full-dimensional, that every vertex is extreme and has at least `d`
    /// incident edges.
    pub fn new(vertices: Vec<Point>, edges: Vec<(usize, usize)>) -> Result<Self, GeometryError> {
        let dim = vertices.first().map(|v| v.len()).ok_or(GeometryError::DegenerateInput { dim: 0, rank: 0 })?;
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(GeometryError::DimensionMismatch { expected: dim, found: v.len() });
        }
        let rank = hull::affine_rank(&vertices, RANK_TOL);
        if rank < dim {
            return Err(GeometryError::DegenerateInput { dim, rank });
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut clean = Vec::with_capacity(edges.len());
        for &(i, j) in &edges {
            if i == j || i >= vertices.len() || j >= vertices.len() {
                return Err(GeometryError::BadEdge(i, j));
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            if !adjacency[a].contains(&b) {
                adjacency[a].push(b);
                adjacency[b].push(a);
                clean.push((a, b));
            }
        }
        for (v, adj) in adjacency.iter().enumerate() {
            if adj.len() < dim {
                return Err(GeometryError::TooFewEdges { vertex: v, found: adj.len(), needed: dim });
            }
        }
        for (v, p) in vertices.iter().enumerate() {
            let others: Vec<Point> = vertices
                .iter()
                .enumerate()
                .filter(|&(u, _)| u != v)
                .map(|(_, q)| {
                    let d = q - p;
                    let n = d.norm();
                    d / n
                })
                .collect();
            if others.iter().any(|d| !d.iter().all(|x| x.is_finite())) || separating_direction(&others).is_none() {
                return Err(GeometryError::NotExtreme(v));
            }
        }
        Ok(Self { dim, vertices, edges: clean, adjacency })
    }

    /// Convex hull of a point cloud; see [`convex_hull`].
    pub fn from_points(points: &[Point]) -> Result<Self, GeometryError> {
        convex_hull(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Indices of the vertices adjacent to `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn volume(&self) -> f64 {
        pulling_triangulation(&self.vertices, RANK_TOL)
            .iter()
            .map(|s| simplex_volume(&s.iter().map(|&i| &self.vertices[i]).collect::<Vec<_>>()))
            .sum()
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len() as f64;
        self.vertices.iter().fold(Point::zeros(self.dim), |a, v| a + v) / n
    }

    pub fn translated(&self, tau: &Point) -> Self {
        Self { vertices: self.vertices.iter().map(|v| v + tau).collect(), ..self.clone() }
    }

    /// Image under a linear map; combinatorics are preserved.
    pub fn transformed(&self, m: &DMatrix<f64>) -> Self {
        Self { vertices: self.vertices.iter().map(|v| m * v).collect(), ..self.clone() }
    }

    /// Supporting halfspaces `normal · x <= offset` of the facets.
    pub(crate) fn halfspaces(&self) -> Vec<(Point, f64)> {
        let tol = 1e-10 * diameter(&self.vertices);
        hull::facets(&self.vertices, tol).into_iter().map(|f| (f.normal, f.offset)).collect()
    }

    fn contains(&self, p: &Point, tol: f64) -> bool {
        self.halfspaces().iter().all(|(n, b)| n.dot(p) <= b + tol)
    }
}

/// Returns the extreme points of `points` and the edge graph of their hull.
/// Only `d = 2` and `d = 3` are supported; higher-dimensional polytopes must
/// be given with explicit edges.
pub fn convex_hull(points: &[Point]) -> Result<Polytope, GeometryError> {
    let dim = points.first().map(|p| p.len()).ok_or(GeometryError::DegenerateInput { dim: 0, rank: 0 })?;
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(GeometryError::DimensionMismatch { expected: dim, found: p.len() });
    }
    if !(2..=3).contains(&dim) {
        return Err(GeometryError::UnsupportedDimension(dim));
    }
    let rank = hull::affine_rank(points, RANK_TOL);
    if rank < dim {
        return Err(GeometryError::DegenerateInput { dim, rank });
    }
    let tol = 1e-10 * diameter(points);
    let (vertex_ids, edges) = if dim == 2 {
        let ring = hull::hull_2d(points, tol * tol.max(1.0));
        let edges: Vec<(usize, usize)> = (0..ring.len()).map(|i| (ring[i], ring[(i + 1) % ring.len()])).collect();
        (ring, edges)
    } else {
        hull_3d(points, tol)
    };
    let mut ids = vertex_ids;
    ids.sort_unstable();
    ids.dedup();
    let remap = |g: usize| ids.binary_search(&g).expect("edge endpoint is a hull vertex");
    let vertices = ids.iter().map(|&i| points[i].clone()).collect();
    let edges = edges.into_iter().map(|(a, b)| (remap(a), remap(b))).collect();
    Polytope::new(vertices, edges)
}

fn hull_3d(points: &[Point], tol: f64) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut vertices = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for facet in hull::facets(points, tol) {
        let members: Vec<Point> = facet.members.iter().map(|&i| points[i].clone()).collect();
        let frame = AffineFrame::of(&members, RANK_TOL);
        let local: Vec<Point> = members.iter().map(|p| frame.local(p)).collect();
        let ring = hull::hull_2d(&local, tol * tol.max(1.0));
        for i in 0..ring.len() {
            let a = facet.members[ring[i]];
            let b = facet.members[ring[(i + 1) % ring.len()]];
            vertices.push(a);
            let e = if a < b { (a, b) } else { (b, a) };
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    (vertices, edges)
}

/// Unit directions of the edges emanating from vertex `v`.
pub fn tangent_cone(p: &Polytope, v: usize) -> Result<Vec<Point>, GeometryError> {
    if v >= p.vertices.len() {
        return Err(GeometryError::NoSuchVertex(v));
    }
    Ok(p.adjacency[v]
        .iter()
        .map(|&u| {
            let d = &p.vertices[u] - &p.vertices[v];
            d.normalize()
        })
        .collect())
}

/// Pointed simplicial cone `apex + cone(generators)` with exactly `d`
/// linearly independent unit generators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplicialCone {
    #[serde(serialize_with = "crate::flat::vector")]
    pub apex: Point,
    #[serde(serialize_with = "crate::flat::points")]
    pub generators: Vec<Point>,
    /// Absolute determinant of the generator matrix.
    pub abs_det: f64,
}

impl SimplicialCone {
    pub fn new(apex: Point, generators: Vec<Point>) -> Self {
        let abs_det = generator_matrix(&generators).determinant().abs();
        Self { apex, generators, abs_det }
    }

    /// Whether `direction` lies strictly inside the cone (all barycentric
    /// weights above `tol`).
    pub fn contains_direction(&self, direction: &Point, tol: f64) -> bool {
        match generator_matrix(&self.generators).lu().solve(direction) {
            Some(lambda) => lambda.iter().all(|&l| l > tol),
            None => false,
        }
    }
}

fn generator_matrix(generators: &[Point]) -> DMatrix<f64> {
    let d = generators[0].len();
    DMatrix::from_fn(d, generators.len(), |r, c| generators[c][r])
}

/// Splits a pointed cone into interior-disjoint simplicial cones without new
/// generators. The generators are normalized first. In `d >= 3` the vertex
/// figure (the slice of the cone at height one along an interior direction)
/// is triangulated by pulling from the lowest-index generator.
pub fn triangulate_cone(apex: &Point, generators: &[Point]) -> Result<Vec<SimplicialCone>, GeometryError> {
    let d = apex.len();
    let gens: Vec<Point> = generators.iter().map(|g| g.normalize()).collect();
    if gens.len() < d || hull::affine_rank(&with_origin(&gens), RANK_TOL) < d {
        return Err(GeometryError::DegenerateInput { dim: d, rank: gens.len().min(d) });
    }
    let axis = separating_direction(&gens).ok_or_else(|| GeometryError::NotPointed { apex: apex.iter().copied().collect() })?;
    if gens.len() == d {
        return Ok(vec![SimplicialCone::new(apex.clone(), gens)]);
    }
    let slice: Vec<Point> = gens.iter().map(|g| g / g.dot(&axis)).collect();
    Ok(pulling_triangulation(&slice, RANK_TOL)
        .into_iter()
        .map(|s| SimplicialCone::new(apex.clone(), s.iter().map(|&i| gens[i].clone()).collect()))
        .collect())
}

fn with_origin(points: &[Point]) -> Vec<Point> {
    let mut v = vec![Point::zeros(points[0].len())];
    v.extend(points.iter().cloned());
    v
}

/// Finite union of interior-disjoint convex polytopes of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopalRegion {
    parts: Vec<Polytope>,
}

impl PolytopalRegion {
    /// Builds a region. In `d <= 3` pairwise interior-disjointness is
    /// verified (intersection volume below 1e-12); in higher dimensions it
    /// is the caller's responsibility.
    pub fn new(parts: Vec<Polytope>) -> Result<Self, GeometryError> {
        let dim = parts.first().ok_or(GeometryError::EmptyRegion)?.dim();
        if let Some(p) = parts.iter().find(|p| p.dim() != dim) {
            return Err(GeometryError::DimensionMismatch { expected: dim, found: p.dim() });
        }
        if dim <= 3 {
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    let vol = intersection_volume(&parts[i], &parts[j]);
                    if vol >= 1e-12 {
                        return Err(GeometryError::OverlappingParts(i, j, vol));
                    }
                }
            }
        }
        Ok(Self { parts })
    }

    pub fn single(p: Polytope) -> Self {
        Self { parts: vec![p] }
    }

    pub fn parts(&self) -> &[Polytope] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.parts[0].dim()
    }

    pub fn all_vertices(&self) -> Vec<Point> {
        self.parts.iter().flat_map(|p| p.vertices().iter().cloned()).collect()
    }

    pub fn diameter(&self) -> f64 {
        diameter(&self.all_vertices())
    }

    /// Distinct vertices of all parts, shared vertices listed once, in order
    /// of first appearance.
    pub fn merged_vertices(&self) -> Vec<Point> {
        let tol = MERGE_TOL * self.diameter();
        let mut out: Vec<Point> = Vec::new();
        for v in self.all_vertices() {
            if !out.iter().any(|u| (u - &v).norm() <= tol) {
                out.push(v);
            }
        }
        out
    }

    pub fn volume(&self) -> f64 {
        self.parts.iter().map(Polytope::volume).sum()
    }

    pub fn translated(&self, tau: &Point) -> Self {
        Self { parts: self.parts.iter().map(|p| p.translated(tau)).collect() }
    }

    pub fn transformed(&self, m: &DMatrix<f64>) -> Self {
        Self { parts: self.parts.iter().map(|p| p.transformed(m)).collect() }
    }
}

/// Volume of the intersection of two convex polytopes in `d <= 3`.
fn intersection_volume(a: &Polytope, b: &Polytope) -> f64 {
    let scale = diameter(&a.vertices).max(diameter(&b.vertices));
    let tol = 1e-10 * scale;
    let mut candidates: Vec<Point> = Vec::new();
    let mut push = |p: Point| {
        if !candidates.iter().any(|q| (q - &p).norm() <= tol) {
            candidates.push(p);
        }
    };
    for (x, y) in [(a, b), (b, a)] {
        for v in &x.vertices {
            if y.contains(v, tol) {
                push(v.clone());
            }
        }
        let planes = y.halfspaces();
        for &(i, j) in &x.edges {
            let (p, q) = (&x.vertices[i], &x.vertices[j]);
            for (n, off) in &planes {
                let (sp, sq) = (n.dot(p) - off, n.dot(q) - off);
                if (sp > tol && sq < -tol) || (sp < -tol && sq > tol) {
                    let s = sp / (sp - sq);
                    let hit = p + (q - p) * s;
                    if x.contains(&hit, tol) && y.contains(&hit, tol) {
                        push(hit);
                    }
                }
            }
        }
    }
    if candidates.len() <= a.dim || hull::affine_rank(&candidates, 1e-9) < a.dim {
        return 0.0;
    }
    pulling_triangulation(&candidates, RANK_TOL)
        .iter()
        .map(|s| simplex_volume(&s.iter().map(|&i| &candidates[i]).collect::<Vec<_>>()))
        .sum()
}

/// Simplicial cones accumulated at one merged vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexCones {
    #[serde(serialize_with = "crate::flat::vector")]
    pub vertex: Point,
    pub cones: Vec<SimplicialCone>,
}

/// Per-vertex simplicial tangent cones of a region; vertices shared by
/// several parts collect the cones of every part they belong to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexConeDecomposition {
    dim: usize,
    entries: Vec<VertexCones>,
}

impl VertexConeDecomposition {
    pub fn new(region: &PolytopalRegion) -> Result<Self, GeometryError> {
        let tol = MERGE_TOL * region.diameter();
        let mut entries: Vec<VertexCones> = Vec::new();
        for part in region.parts() {
            for (v, apex) in part.vertices().iter().enumerate() {
                let cones = triangulate_cone(apex, &tangent_cone(part, v)?)?;
                match entries.iter_mut().find(|e| (&e.vertex - apex).norm() <= tol) {
                    Some(e) => e.cones.extend(cones),
                    None => entries.push(VertexCones { vertex: apex.clone(), cones }),
                }
            }
        }
        Ok(Self { dim: region.dim(), entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[VertexCones] {
        &self.entries
    }

    /// Number of simplicial cones at each merged vertex.
    pub fn cone_counts(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.cones.len()).collect()
    }
}

/// Outcome of [`generic_projection_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectionCheck {
    pub distinct: bool,
    pub min_separation: f64,
    pub tolerance: f64,
}

/// Pairs `(i, j)`, `i < j`, whose projections onto the first two coordinates
/// are closer than `tol`.
pub fn projection_collisions(points: &[Point], tol: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if planar_distance(&points[i], &points[j]) < tol {
                out.push((i, j));
            }
        }
    }
    out
}

fn planar_distance(p: &Point, q: &Point) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

/// Checks that the merged vertices have pairwise distinct projections onto
/// the `(x_1, x_2)` plane, with separation at least `1e-9 * diameter`.
pub fn generic_projection_check(region: &PolytopalRegion) -> ProjectionCheck {
    generic_projection_check_with(region, MERGE_TOL)
}

pub fn generic_projection_check_with(region: &PolytopalRegion, rel_tol: f64) -> ProjectionCheck {
    let vertices = region.merged_vertices();
    let tolerance = rel_tol * region.diameter();
    let mut min_separation = f64::INFINITY;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            min_separation = min_separation.min(planar_distance(&vertices[i], &vertices[j]));
        }
    }
    ProjectionCheck { distinct: min_separation >= tolerance, min_separation, tolerance }
}

/// Axis-aligned box `[lo, hi]^d` as a polytope (vertices indexed by bit masks).
pub fn hypercube(d: usize, lo: f64, hi: f64) -> Polytope {
    let vertices: Vec<Point> = (0..1usize << d)
        .map(|m| Point::from_fn(d, |k, _| if m >> k & 1 == 1 { hi } else { lo }))
        .collect();
    let mut edges = Vec::new();
    for m in 0..1usize << d {
        for k in 0..d {
            if m >> k & 1 == 0 {
                edges.push((m, m | 1 << k));
            }
        }
    }
    Polytope::new(vertices, edges).expect("box is a valid polytope")
}

/// `conv(0, e_1, ..., e_d)`.
pub fn standard_simplex(d: usize) -> Polytope {
    let mut vertices = vec![Point::zeros(d)];
    vertices.extend((0..d).map(|k| Point::from_fn(d, |i, _| if i == k { 1.0 } else { 0.0 })));
    let edges = (0..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect();
    Polytope::new(vertices, edges).expect("simplex is a valid polytope")
}

/// Simplex with the given `d + 1` vertices.
pub fn simplex(vertices: Vec<Point>) -> Result<Polytope, GeometryError> {
    let n = vertices.len();
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Polytope::new(vertices, edges)
}

/// Convex polygon from vertices listed in boundary order.
pub fn polygon(vertices: Vec<Point>) -> Result<Polytope, GeometryError> {
    let n = vertices.len();
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Polytope::new(vertices, edges)
}

/// Regular `n`-gon inscribed in the circle of radius `r` about the origin.
pub fn regular_polygon(n: usize, r: f64) -> Polytope {
    let vertices = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            Point::from_vec(vec![r * a.cos(), r * a.sin()])
        })
        .collect();
    polygon(vertices).expect("regular polygon is convex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(c: &[f64]) -> Point {
        Point::from_column_slice(c)
    }

    fn unit_square() -> Polytope {
        hypercube(2, 0.0, 1.0)
    }

    #[test]
    fn hull_of_square_with_center() {
        let pts = vec![p(&[0.0, 0.0]), p(&[1.0, 0.0]), p(&[0.5, 0.5]), p(&[1.0, 1.0]), p(&[0.0, 1.0])];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert_eq!(h.edges().len(), 4);
        assert!(!h.vertices().contains(&p(&[0.5, 0.5])));
    }

    #[test]
    fn hull_of_cube_corners() {
        let pts: Vec<Point> = hypercube(3, 0.0, 1.0).vertices().to_vec();
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 8);
        assert_eq!(h.edges().len(), 12);
    }

    #[test]
    fn hull_of_collinear_points_is_degenerate() {
        let pts = vec![p(&[0.0, 0.0]), p(&[1.0, 1.0]), p(&[2.0, 2.0])];
        assert!(matches!(convex_hull(&pts), Err(GeometryError::DegenerateInput { .. })));
    }

    #[test]
    fn hull_rejects_high_dimension() {
        let pts: Vec<Point> = hypercube(4, 0.0, 1.0).vertices().to_vec();
        assert_eq!(convex_hull(&pts), Err(GeometryError::UnsupportedDimension(4)));
    }

    #[test]
    fn hull_of_octahedron_with_interior_points() {
        let mut pts = Vec::new();
        for k in 0..3 {
            for s in [-1.0, 1.0] {
                pts.push(Point::from_fn(3, |i, _| if i == k { s } else { 0.0 }));
            }
        }
        pts.push(p(&[0.1, 0.1, 0.1]));
        pts.push(p(&[0.5, 0.5, 0.0])); // on an edge
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 6);
        assert_eq!(h.edges().len(), 12);
        assert!(h.vertices().iter().all(|v| h.neighbors(h.vertices().iter().position(|u| u == v).unwrap()).len() == 4));
    }

    #[test]
    fn polytope_validation() {
        let sq = unit_square();
        let mut edges = sq.edges().to_vec();
        edges.pop();
        assert!(matches!(Polytope::new(sq.vertices().to_vec(), edges), Err(GeometryError::TooFewEdges { .. })));
        let mut verts = sq.vertices().to_vec();
        verts.push(p(&[0.5, 0.5]));
        let mut edges = sq.edges().to_vec();
        edges.push((4, 0));
        edges.push((4, 1));
        assert_eq!(Polytope::new(verts, edges), Err(GeometryError::NotExtreme(4)));
    }

    #[test]
    fn tangent_cone_examples() {
        let sq = unit_square();
        let g = tangent_cone(&sq, 0).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.contains(&p(&[1.0, 0.0])) && g.contains(&p(&[0.0, 1.0])));

        let cube = hypercube(3, 0.0, 1.0);
        let g = tangent_cone(&cube, 0).unwrap();
        for k in 0..3 {
            assert!(g.iter().any(|w| (w - Point::from_fn(3, |i, _| if i == k { 1.0 } else { 0.0 })).norm() < 1e-15));
        }

        let tri = simplex(vec![p(&[0.0, 0.0]), p(&[1.0, 0.0]), p(&[0.0, 1.0])]).unwrap();
        let g = tangent_cone(&tri, 1).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(g.iter().any(|w| (w - p(&[-1.0, 0.0])).norm() < 1e-15));
        assert!(g.iter().any(|w| (w - p(&[-s, s])).norm() < 1e-15));
        assert_eq!(tangent_cone(&tri, 7), Err(GeometryError::NoSuchVertex(7)));
    }

    #[test]
    fn simplicial_corners() {
        let c = triangulate_cone(&p(&[0.0, 0.0]), &[p(&[1.0, 0.0]), p(&[0.0, 1.0])]).unwrap();
        assert_eq!(c.len(), 1);
        assert_relative_eq!(c[0].abs_det, 1.0);
        let e = |k: usize| Point::from_fn(3, |i, _| if i == k { 1.0 } else { 0.0 });
        let c = triangulate_cone(&Point::zeros(3), &[e(0), e(1), e(2)]).unwrap();
        assert_eq!(c.len(), 1);
        assert_relative_eq!(c[0].abs_det, 1.0);
    }

    #[test]
    fn octahedron_apex_splits_in_two() {
        let apex = p(&[0.0, 0.0, 1.0]);
        let gens: Vec<Point> = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
            .iter()
            .map(|xy| p(&[xy[0], xy[1], -1.0]))
            .collect();
        let cones = triangulate_cone(&apex, &gens).unwrap();
        assert_eq!(cones.len(), 2);
        // the fan starts from generator 0, so both cones use it
        let g0 = gens[0].normalize();
        assert!(cones.iter().all(|c| c.generators.contains(&g0)));
    }

    #[test]
    fn line_cone_is_not_pointed() {
        let gens = [p(&[1.0, 0.0]), p(&[-1.0, 0.0]), p(&[0.0, 1.0])];
        assert!(matches!(triangulate_cone(&p(&[0.0, 0.0]), &gens), Err(GeometryError::NotPointed { .. })));
    }

    #[test]
    fn volumes() {
        assert_relative_eq!(PolytopalRegion::single(hypercube(3, 0.0, 1.0)).volume(), 1.0, epsilon = 1e-14);
        for d in 2..=4 {
            let fact: f64 = (1..=d).map(|i| i as f64).product();
            assert_relative_eq!(standard_simplex(d).volume(), 1.0 / fact, epsilon = 1e-14);
        }
        let two = PolytopalRegion::new(vec![unit_square(), hypercube(2, 0.0, 1.0).translated(&p(&[1.0, 0.0]))]).unwrap();
        assert_relative_eq!(two.volume(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn overlapping_parts_rejected() {
        let a = unit_square();
        let b = a.translated(&p(&[0.5, 0.5]));
        match PolytopalRegion::new(vec![a.clone(), b]) {
            Err(GeometryError::OverlappingParts(0, 1, v)) => assert_relative_eq!(v, 0.25, epsilon = 1e-12),
            other => panic!("expected overlap, got {other:?}"),
        }
        let cube = hypercube(3, 0.0, 1.0);
        assert!(PolytopalRegion::new(vec![cube.clone(), cube.translated(&p(&[0.0, 0.0, 1.0]))]).is_ok());
        assert!(PolytopalRegion::new(vec![cube.clone(), cube.translated(&p(&[0.2, 0.3, 0.9]))]).is_err());
    }

    #[test]
    fn shared_vertex_merges() {
        let a = unit_square();
        let b = a.translated(&p(&[1.0, 1.0]));
        let region = PolytopalRegion::new(vec![a, b]).unwrap();
        assert_eq!(region.merged_vertices().len(), 7);
        let dec = VertexConeDecomposition::new(&region).unwrap();
        assert_eq!(dec.entries().len(), 7);
        let shared = dec.entries().iter().find(|e| e.vertex == p(&[1.0, 1.0])).unwrap();
        assert_eq!(shared.cones.len(), 2);
    }

    #[test]
    fn projection_check_examples() {
        assert!(generic_projection_check(&PolytopalRegion::single(unit_square())).distinct);
        let cube = PolytopalRegion::single(hypercube(3, 0.0, 1.0));
        let chk = generic_projection_check(&cube);
        assert!(!chk.distinct);
        assert_eq!(chk.min_separation, 0.0);
    }
}
