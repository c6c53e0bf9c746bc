use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::PolytopalRegion;

/// Haar-distributed orthogonal `d x d` matrix, deterministic in `seed`.
///
/// QR of a Gaussian matrix, with the signs of `R`'s diagonal folded back into
/// `Q` so the distribution is uniform.
pub fn random_rotation(seed: u64, d: usize) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(d, d, |_, _| StandardNormal.sample(&mut rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for k in 0..d {
        if r[(k, k)] < 0.0 {
            q.column_mut(k).neg_mut();
        }
    }
    q
}

/// Applies the orthogonal map `q` to every vertex of the region.
pub fn apply_rotation(region: &PolytopalRegion, q: &DMatrix<f64>) -> PolytopalRegion {
    region.transformed(q)
}
