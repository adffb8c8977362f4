use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::fibered::FiberedFunction;
use super::{FiberLevel, HlsGroupoid, NormBracket, Provenance};
use crate::error::{Error, Result};
use crate::freegroup::{ball_iter, checked_ball_size, GroupAlgebraElement, Letter, ShortlexRanker, DEFAULT_BALL_CAP};
use crate::linalg::{lanczos_largest, start_vector, CsrMatrix, LanczosResult, LanczosStart, LinScalar};
use crate::quotients::FiniteQuotient;
use crate::scalar::{self, Coefficient};

/// Seed of the random Lanczos start ("HLS").
pub const LANCZOS_SEED: u64 = 0x48_4C_53;

/// Fraction of the tolerance that Lanczos runs aim for before stopping.
const REFINE: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormOptions {
    /// Truncation radius for the fiber over `∞`.
    pub radius: usize,
    /// Relative bracket width: converged when `upper - lower <= tolerance·(1 + lower)`.
    pub tolerance: f64,
    pub max_iter: usize,
    /// Krylov storage limit, in scalars.
    pub krylov_budget: usize,
    pub ball_cap: u64,
    /// Largest `|supp y|²` for which `y·y` is formed in the power bound.
    pub power_budget: u64,
    /// Minimum number of sample angles for the character formula.
    pub character_samples: usize,
    pub seed: u64,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            radius: 6,
            tolerance: 1e-8,
            max_iter: 1000,
            krylov_budget: 1 << 24,
            ball_cap: DEFAULT_BALL_CAP,
            power_budget: 4_000_000,
            character_samples: 4096,
            seed: LANCZOS_SEED,
        }
    }
}

/// The operator `ξ ↦ Σ_k f(k) ξ(k⁻¹ ·)` on `ℓ²(Γₙ)`: row `g`, column `h`,
/// entry `f(gh⁻¹)`.
pub fn fiber_operator<T: Coefficient>(values: &[(usize, T)], q: &FiniteQuotient) -> CsrMatrix<T> {
    let inverses: Vec<(Vec<Letter>, &T)> = values
        .iter()
        .map(|(k, c)| (q.element_word(*k).inverse().letters().to_vec(), c))
        .collect();
    let mut b = CsrMatrix::builder(q.order());
    for g in 0..q.order() {
        b.push_row(
            inverses
                .iter()
                .map(|(kinv, c)| (q.left_multiply_word(kinv, g), (*c).clone())),
        );
    }
    b.finish()
}

/// Norm of `ρₙ` applied to the function with the given nonzero values on `q`.
pub fn fiber_norm<T: Coefficient>(values: &[(usize, T)], q: &FiniteQuotient, opts: &NormOptions) -> Result<NormBracket> {
    if q.order() == 1 {
        let v = values.first().map_or(0.0, |(_, c)| scalar::abs(c));
        return Ok(NormBracket::exact(v, Provenance::TrivialRepresentation));
    }
    if values.is_empty() {
        return Ok(NormBracket::exact(0.0, Provenance::FiberRepresentation));
    }
    let l1: f64 = values.iter().map(|(_, c)| scalar::abs(c)).sum();
    let op = fiber_operator(values, q);
    if values.iter().all(|(_, c)| c.is_real()) {
        certified_norm(&op.map(|c| c.to_c64().re), l1, opts)
    } else {
        certified_norm(&op.map(Coefficient::to_c64), l1, opts)
    }
}

/// Largest singular value of `a`, bracketed by Lanczos on `a*a` and capped by `l1`.
fn certified_norm<S: LinScalar>(a: &CsrMatrix<S>, l1: f64, opts: &NormOptions) -> Result<NormBracket> {
    let tol = opts.tolerance;
    let converged = |lower: f64, upper: f64| upper - lower <= tol * (1.0 + lower);
    // Iterate well past the acceptance width: it costs a few steps and
    // leaves both ends close to the true norm.
    let target = |lower: f64, upper: f64| upper - lower <= REFINE * tol * (1.0 + lower);
    let bracket = |r: &LanczosResult| {
        let theta = r.theta.max(0.0);
        let (up, up_from) = upper_from_residual(theta, r.residual, l1);
        NormBracket::new(libm::sqrt(theta), Provenance::FiberRepresentation, up, up_from)
    };
    let run = |start| {
        gram_top(a, start, opts, |theta, res| {
            let lower = libm::sqrt(theta.max(0.0));
            let (up, _) = upper_from_residual(theta.max(0.0), res, l1);
            target(lower, up)
        })
    };

    let first = run(LanczosStart::Constant);
    let mut best = first;
    let b = bracket(&first);
    // Meeting the ℓ¹ bound settles it; otherwise the constant vector may be
    // orthogonal to the top singular space, so try a random start too.
    if !(b.upper_from == Provenance::L1 && target(b.lower, b.upper)) {
        let second = run(LanczosStart::Seeded(opts.seed));
        if second.theta > best.theta || (second.theta == best.theta && second.residual < best.residual) {
            best = second;
        }
    }
    let b = bracket(&best);
    if converged(b.lower, b.upper) {
        Ok(b)
    } else {
        Err(Error::NotConverged {
            iterations: best.iterations,
            bracket: b,
        })
    }
}

fn upper_from_residual(theta: f64, residual: f64, l1: f64) -> (f64, Provenance) {
    let up = libm::sqrt(theta + residual);
    if l1 <= up {
        (l1, Provenance::L1)
    } else {
        (up, Provenance::FiberRepresentation)
    }
}

/// Lanczos for the top eigenvalue of `a*a`.
fn gram_top<S: LinScalar>(
    a: &CsrMatrix<S>,
    start: LanczosStart,
    opts: &NormOptions,
    stop: impl FnMut(f64, f64) -> bool,
) -> LanczosResult {
    let dim = a.cols();
    let mut tmp = alloc::vec![S::zero(); a.rows()];
    let max_iter = opts
        .max_iter
        .min(dim)
        .min((opts.krylov_budget / dim.max(1)).max(2));
    lanczos_largest(
        dim,
        |x, y| {
            a.matvec(x, &mut tmp);
            a.adjoint_matvec(&tmp, y);
        },
        start_vector(dim, start),
        max_iter,
        stop,
    )
}

/// Norm of the compression of `λ(x)` to `ℓ²` of the ball of the given
/// radius; a lower bound for `‖λ(x)‖` in the regular representation.
pub fn truncation_lower_bound<T: Coefficient>(x: &GroupAlgebraElement<T>, radius: usize, opts: &NormOptions) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    let rank = x.rank();
    let size = checked_ball_size(radius, rank, opts.ball_cap)? as usize;
    let ranker = ShortlexRanker::new(rank, radius);
    let terms: Vec<(Vec<Letter>, &T)> = x
        .iter()
        .map(|(k, c)| (k.inverse().letters().to_vec(), c))
        .collect();
    let mut b = CsrMatrix::builder(size);
    for g in ball_iter(radius, rank, opts.ball_cap)? {
        let g = g.letters();
        b.push_row(terms.iter().filter_map(|(kinv, c)| {
            // Free reduction of k⁻¹g without materializing the word.
            let mut cancel = 0;
            while cancel < kinv.len().min(g.len()) && kinv[kinv.len() - 1 - cancel] == g[cancel].inverse() {
                cancel += 1;
            }
            let len = kinv.len() + g.len() - 2 * cancel;
            if len > radius {
                return None;
            }
            let letters = kinv[..kinv.len() - cancel].iter().chain(&g[cancel..]).copied();
            Some((ranker.index(letters, len) as usize, (*c).clone()))
        }));
    }
    let op = b.finish();
    let rel = opts.tolerance;
    let stop = |theta: f64, res: f64| res <= rel * theta.max(f64::MIN_POSITIVE);
    let theta = if x.iter().all(|(_, c)| c.is_real()) {
        let op = op.map(|c| c.to_c64().re);
        gram_top(&op, LanczosStart::Constant, opts, stop)
            .theta
            .max(gram_top(&op, LanczosStart::Seeded(opts.seed), opts, stop).theta)
    } else {
        let op = op.map(Coefficient::to_c64);
        gram_top(&op, LanczosStart::Constant, opts, stop)
            .theta
            .max(gram_top(&op, LanczosStart::Seeded(opts.seed), opts, stop).theta)
    };
    Ok(libm::sqrt(theta.max(0.0)))
}

/// `Σ_k (k+1)·‖x_k‖₂` over the sphere components of `x`.
pub fn haagerup_bound<T: Coefficient>(x: &GroupAlgebraElement<T>) -> f64 {
    x.sphere_decomposition()
        .iter()
        .map(|s| (s.length as f64 + 1.0) * s.l2_norm)
        .sum()
}

/// `min_m H((x*x)^m)^(1/2m)` over `m = 1, 2, 4, ...` while the next square
/// fits in `budget`. Valid for free groups of rank at least 2 since
/// `‖(x*x)^m‖ = ‖x‖^(2m)`.
pub fn power_haagerup_bound<T: Coefficient>(x: &GroupAlgebraElement<T>, budget: u64) -> Result<f64> {
    let mut y = x.adjoint().convolve(x)?;
    let mut m = 1u32;
    let mut best = libm::sqrt(haagerup_bound(&y));
    while (y.support_len() as u64).saturating_mul(y.support_len() as u64) <= budget && m < 1 << 20 {
        y = y.convolve(&y)?;
        m *= 2;
        best = best.min(libm::pow(haagerup_bound(&y), 1.0 / (2.0 * m as f64)));
    }
    // Rounding in the norms and the root.
    Ok(best * (1.0 + 1e-12))
}

/// `(exponent, coefficient)` pairs of a rank-one element.
fn cyclic_terms<T: Coefficient>(x: &GroupAlgebraElement<T>) -> Result<Vec<(i64, Complex64)>> {
    if x.rank() != 1 {
        return Err(Error::input("character formula needs a rank-1 element"));
    }
    Ok(x
        .iter()
        .map(|(w, c)| {
            let m = w.len() as i64;
            let sign = if w.letters().first().is_some_and(|l| l.is_inverse()) { -1 } else { 1 };
            (sign * m, c.to_c64())
        })
        .collect())
}

fn fourier_max(terms: &[(i64, Complex64)], samples: u64) -> f64 {
    let mut best = 0.0f64;
    for j in 0..samples {
        let mut s = Complex64::new(0.0, 0.0);
        for &(m, c) in terms {
            // Reduce the angle exactly in integers before scaling.
            let r = (m.rem_euclid(samples as i64) as u128 * j as u128) % samples as u128;
            let theta = 2.0 * PI * r as f64 / samples as f64;
            s += c * Complex64::new(libm::cos(theta), libm::sin(theta));
        }
        best = best.max(s.norm());
    }
    best
}

/// `‖λ(x)‖` on `ℓ²(ℤ/modulus)` for a rank-one `x`:
/// `max_j |Σ_m x(aᵐ) e^(2πi jm/modulus)|`.
pub fn cyclic_character_norm<T: Coefficient>(x: &GroupAlgebraElement<T>, modulus: u64) -> Result<f64> {
    if modulus == 0 {
        return Err(Error::input("modulus must be positive"));
    }
    Ok(fourier_max(&cyclic_terms(x)?, modulus))
}

/// Bracket for `‖λ(x)‖` on `ℓ²(ℤ)`: the sup of `|x̂|` on the circle, sampled,
/// with a Lipschitz correction for the upper end.
fn character_bracket<T: Coefficient>(x: &GroupAlgebraElement<T>, opts: &NormOptions) -> Result<NormBracket> {
    let terms = cyclic_terms(x)?;
    let samples = (opts.character_samples as u64).max(64 * (x.support_radius() as u64 + 1));
    let lower = fourier_max(&terms, samples);
    let lipschitz: f64 = terms.iter().map(|(m, c)| m.unsigned_abs() as f64 * c.norm()).sum();
    let upper = (lower + lipschitz * PI / samples as f64) * (1.0 + 1e-12);
    Ok(NormBracket::new(lower, Provenance::CharacterFormula, upper, Provenance::CharacterFormula)
        .tighten_upper(x.l1_norm(), Provenance::L1))
}

/// Bracket for the norm of `x` in the regular representation of the free group.
///
/// Lower end: compression to the ball of radius `opts.radius` (rank 1 also
/// uses the character formula). Upper end: `ℓ¹`, and for rank `>= 2` the
/// Haagerup bound of `x` and of powers of `x*x`; rank 1 uses the character
/// formula.
pub fn infinity_norm<T: Coefficient>(x: &GroupAlgebraElement<T>, opts: &NormOptions) -> Result<NormBracket> {
    if x.is_zero() {
        return Ok(NormBracket::exact(0.0, Provenance::L1));
    }
    let truncated = truncation_lower_bound(x, opts.radius, opts)?;
    let l1 = x.l1_norm();
    if x.rank() == 1 {
        return Ok(character_bracket(x, opts)?.raise_lower(truncated, Provenance::Truncation));
    }
    let haagerup = haagerup_bound(x) * (1.0 + 1e-12);
    let powered = power_haagerup_bound(x, opts.power_budget)?;
    Ok(NormBracket::new(truncated, Provenance::Truncation, l1, Provenance::L1)
        .tighten_upper(haagerup, Provenance::Haagerup)
        .tighten_upper(powered, Provenance::Haagerup))
}

/// `‖ρₙ(f)‖` on one fiber.
pub fn rho_norm<T: Coefficient>(f: &FiberedFunction<T>, level: FiberLevel, g: &HlsGroupoid, opts: &NormOptions) -> Result<NormBracket> {
    match level {
        FiberLevel::Finite(n) => fiber_norm(&f.fiber_values(n, g)?, g.fiber(n)?, opts),
        FiberLevel::Infinity => infinity_norm(f.tail(), opts),
    }
}

/// `‖λₙ(x)‖`: the norm of `x` acting on `ℓ²(Γₙ)` by left multiplication.
pub fn quasi_regular_norm<T: Coefficient>(
    x: &GroupAlgebraElement<T>,
    level: FiberLevel,
    g: &HlsGroupoid,
    opts: &NormOptions,
) -> Result<NormBracket> {
    match level {
        FiberLevel::Finite(n) => {
            let q = g.fiber(n)?;
            fiber_norm(&q.pushforward(x)?, q, opts)
        }
        FiberLevel::Infinity => infinity_norm(x, opts),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedNormEstimate {
    pub bracket: NormBracket,
    pub fibers: Vec<(FiberLevel, NormBracket)>,
}

/// Bracket for `sup_n ‖ρₙ(f)‖` over `ℕ ∪ {∞}`.
///
/// Fibers `1..=n_max`, every override level and `∞` are computed. When the
/// tail is nonzero its `ℓ¹` norm bounds every fiber that was not computed.
pub fn reduced_norm_estimate<T: Coefficient>(
    f: &FiberedFunction<T>,
    n_max: usize,
    g: &HlsGroupoid,
    opts: &NormOptions,
) -> Result<ReducedNormEstimate> {
    let mut levels: Vec<usize> = (1..=n_max).chain(f.override_levels()).collect();
    levels.sort_unstable();
    levels.dedup();
    let mut fibers = Vec::with_capacity(levels.len() + 1);
    for n in levels {
        fibers.push((FiberLevel::Finite(n), rho_norm(f, FiberLevel::Finite(n), g, opts)?));
    }
    fibers.push((FiberLevel::Infinity, infinity_norm(f.tail(), opts)?));
    Ok(ReducedNormEstimate {
        bracket: combine_fibers(&fibers, f.tail().l1_norm()),
        fibers,
    })
}

/// Sup of per-fiber brackets; `tail_l1 > 0` widens the upper end to cover
/// fibers that were not computed.
pub fn combine_fibers(fibers: &[(FiberLevel, NormBracket)], tail_l1: f64) -> NormBracket {
    let mut out = NormBracket::exact(0.0, Provenance::FiberRepresentation);
    for (_, b) in fibers {
        out = out.join(b);
    }
    if tail_l1 > out.upper {
        out = NormBracket::new(out.lower, out.lower_from, tail_l1, Provenance::L1);
    }
    out
}
