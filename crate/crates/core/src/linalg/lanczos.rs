use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{dot, eigenvector, largest_eigenvalue, norm, LinScalar};

/// Starting vector for a Lanczos run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LanczosStart {
    Constant,
    /// Uniform entries in `[-1, 1)` from a ChaCha8 stream with this seed.
    Seeded(u64),
}

pub fn start_vector<S: LinScalar>(dim: usize, start: LanczosStart) -> Vec<S> {
    match start {
        LanczosStart::Constant => alloc::vec![S::from_f64(1.0); dim],
        LanczosStart::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut unit = || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
            (0..dim)
                .map(|_| {
                    let re = unit();
                    let im = unit();
                    S::from_parts(re, im)
                })
                .collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanczosResult {
    /// Largest Ritz value.
    pub theta: f64,
    /// Residual norm `‖M y − θ y‖` of the matching Ritz vector.
    pub residual: f64,
    pub iterations: usize,
    /// The Krylov space became invariant, so `theta` is an eigenvalue up to rounding.
    pub invariant: bool,
}

/// Largest eigenvalue of a Hermitian operator `apply` on `S^dim`, by Lanczos
/// with full reorthogonalization.
///
/// `stop(theta, residual)` is consulted after every step. A zero start
/// vector returns `theta = 0` with `invariant` set.
pub fn lanczos_largest<S: LinScalar>(
    dim: usize,
    mut apply: impl FnMut(&[S], &mut [S]),
    start: Vec<S>,
    max_iter: usize,
    mut stop: impl FnMut(f64, f64) -> bool,
) -> LanczosResult {
    assert_eq!(start.len(), dim);
    let mut v = start;
    let n0 = norm(&v);
    if n0 == 0.0 || dim == 0 {
        return LanczosResult {
            theta: 0.0,
            residual: 0.0,
            iterations: 0,
            invariant: true,
        };
    }
    v.iter_mut().for_each(|x| *x = x.scale(1.0 / n0));
    let mut basis: Vec<Vec<S>> = alloc::vec![v];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = alloc::vec![S::zero(); dim];
    let mut scale = 0.0f64;
    let max_iter = max_iter.max(1).min(dim);
    let mut last = LanczosResult {
        theta: 0.0,
        residual: f64::INFINITY,
        iterations: 0,
        invariant: false,
    };
    for j in 0..max_iter {
        apply(&basis[j], &mut w);
        let a = dot(&basis[j], &w).re();
        alpha.push(a);
        for _ in 0..2 {
            for u in &basis {
                let c = dot(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= c * *ui;
                }
            }
        }
        let b = norm(&w);
        scale = scale.max(libm::fabs(a)).max(b);
        let theta = largest_eigenvalue(&alpha, &beta);
        let s = eigenvector(&alpha, &beta, theta);
        let residual = b * libm::fabs(s[j]);
        let invariant = b <= 1e-13 * scale.max(f64::MIN_POSITIVE) || j + 1 == dim;
        last = LanczosResult {
            theta,
            residual: if j + 1 == dim { 0.0 } else { residual },
            iterations: j + 1,
            invariant,
        };
        if invariant || stop(theta, residual) || j + 1 == max_iter {
            break;
        }
        beta.push(b);
        let next: Vec<S> = w.iter().map(|x| x.scale(1.0 / b)).collect();
        basis.push(next);
    }
    last
}
