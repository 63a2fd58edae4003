//! Random states and unitaries for property checks and benchmarking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c, OperatorMatrix};
use num_complex::Complex64;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector.
pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
    let norm = crate::linalg::vector_norm(&v);
    v.into_iter().map(|z| z / norm).collect()
}

/// Density matrix G G†/Tr(G G†) with a dim×rank Ginibre matrix G.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> OperatorMatrix {
    let g: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..rank).map(|_| gaussian(rng)).collect())
        .collect();
    let m = OperatorMatrix::from_fn(dim, |i, j| {
        (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum()
    });
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> OperatorMatrix {
    let g = OperatorMatrix::from_fn(dim, |_, _| gaussian(rng));
    g.hermitian_part()
}

/// Unitary exp(iH) for a random Hermitian H.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> OperatorMatrix {
    hermitian(rng, dim).expm_i_hermitian(1.0)
}
