//! Symmetric tridiagonal helpers: the largest eigenvalue by Sturm bisection
//! and its eigenvector by inverse iteration. Both are `O(k)` per call, so a
//! Lanczos run can test convergence at every step.

use alloc::vec::Vec;

/// Number of eigenvalues strictly less than `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..diag.len() {
        let b2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { b2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (libm::fabs(x) + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn largest_eigenvalue(diag: &[f64], off: &[f64]) -> f64 {
    let k = diag.len();
    assert!(k > 0 && off.len() + 1 == k);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..k {
        let r = if i > 0 { libm::fabs(off[i - 1]) } else { 0.0 }
            + if i + 1 < k { libm::fabs(off[i]) } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) < k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Unit eigenvector for an (approximate) eigenvalue `lambda`.
pub fn eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let k = diag.len();
    if k == 1 {
        return alloc::vec![1.0];
    }
    let scale = diag
        .iter()
        .chain(off)
        .fold(0.0f64, |m, v| m.max(libm::fabs(*v)))
        .max(f64::MIN_POSITIVE);
    let shift = lambda + 4.0 * f64::EPSILON * scale;
    let lu = TridiagLu::factor(diag, off, shift, scale);
    let mut y: Vec<f64> = (0..k).map(|i| 1.0 + (i % 7) as f64 * 1e-3).collect();
    for _ in 0..3 {
        y = lu.solve(&y);
        let n = libm::sqrt(y.iter().map(|v| v * v).sum::<f64>());
        if !(n.is_finite() && n > 0.0) {
            break;
        }
        y.iter_mut().for_each(|v| *v /= n);
    }
    y
}

/// LU factorization of `T - shift·I` with partial pivoting (LAPACK `gttrf` layout).
struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(diag: &[f64], off: &[f64], shift: f64, scale: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|v| v - shift).collect();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut du2 = alloc::vec![0.0; n.saturating_sub(2)];
        let mut swapped = alloc::vec![false; n.saturating_sub(1)];
        for i in 0..n - 1 {
            if libm::fabs(d[i]) >= libm::fabs(dl[i]) {
                if d[i] == 0.0 {
                    d[i] = f64::EPSILON * scale;
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let t = du[i];
                du[i] = d[i + 1];
                d[i + 1] = t - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -f;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = f64::EPSILON * scale;
        }
        TridiagLu {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut x = b.to_vec();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let t = x[i];
                x[i] = x[i + 1];
                x[i + 1] = t - self.dl[i] * x[i];
            } else {
                x[i + 1] -= self.dl[i] * x[i];
            }
        }
        x[n - 1] /= self.d[n - 1];
        if n > 1 {
            x[n - 2] = (x[n - 2] - self.du[n - 2] * x[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.du[i] * x[i + 1] - self.du2[i] * x[i + 2]) / self.d[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_spectrum() {
        // Adjacency of the path on k nodes: top eigenvalue 2cos(π/(k+1)).
        for k in [1usize, 2, 3, 10, 57] {
            let diag = alloc::vec![0.0; k];
            let off = alloc::vec![1.0; k - 1];
            let top = largest_eigenvalue(&diag, &off);
            let expect = 2.0 * libm::cos(core::f64::consts::PI / (k as f64 + 1.0));
            assert!((top - expect).abs() < 1e-13, "k={k}: {top} vs {expect}");
            let v = eigenvector(&diag, &off, top);
            // Residual of T v = top v.
            for i in 0..k {
                let tv = if i > 0 { v[i - 1] } else { 0.0 } + if i + 1 < k { v[i + 1] } else { 0.0 };
                assert!((tv - top * v[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn radial_tree_ball() {
        let top = largest_eigenvalue(&[0.0, 0.0, 0.0], &[2.0, libm::sqrt(3.0)]);
        assert!((top - libm::sqrt(7.0)).abs() < 1e-14);
    }
}
