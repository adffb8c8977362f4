use super::norms::{fiber_operator, NormOptions};
use crate::error::{Error, Result};
use crate::freegroup::{GroupAlgebraElement, Word};
use crate::linalg::{lanczos_largest, start_vector, LanczosStart};
use crate::quotients::ApproximatedGroup;

/// Largest eigenvalue of the Markov operator on the orthogonal complement of
/// the constants in `ℓ²(Γₙ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauReport {
    pub level: usize,
    pub order: usize,
    /// `None` for the trivial fiber, whose complement is zero.
    pub second: Option<(f64, f64)>,
    pub iterations: usize,
}

impl TauReport {
    pub fn midpoint(&self) -> Option<f64> {
        self.second.map(|(lo, hi)| 0.5 * (lo + hi))
    }
}

/// Second eigenvalue of `λₙ((δ_a + δ_a⁻¹ + δ_b + δ_b⁻¹)/4)`, by Lanczos
/// deflated against the constant vector.
pub fn tau_spectral_gap(group: &ApproximatedGroup, n: usize, opts: &NormOptions) -> Result<TauReport> {
    if group.rank() != 2 {
        return Err(Error::input("spectral gaps are computed for rank-2 families"));
    }
    let q = group.quotient(n)?;
    let order = q.order();
    if order == 1 {
        return Ok(TauReport {
            level: n,
            order,
            second: None,
            iterations: 0,
        });
    }
    let markov = GroupAlgebraElement::from_terms(
        2,
        (0..2).flat_map(|i| {
            let w = Word::generator(2, i).expect("rank 2");
            [(w.inverse(), 0.25), (w, 0.25)]
        }),
    )?;
    let op = fiber_operator(&q.pushforward(&markov)?, q);
    let deflate = |v: &mut [f64]| {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        v.iter_mut().for_each(|x| *x -= mean);
    };
    let mut start = start_vector::<f64>(order, LanczosStart::Seeded(opts.seed));
    deflate(&mut start);
    let tol = opts.tolerance;
    let max_iter = opts
        .max_iter
        .min(order)
        .min((opts.krylov_budget / order).max(2));
    let r = lanczos_largest(
        order,
        |x, y| {
            op.matvec(x, y);
            deflate(y);
        },
        start,
        max_iter,
        |theta, res| res <= 0.5 * tol * (1.0 + theta.abs()),
    );
    // The constant direction is excluded, so an exhausted Krylov space has
    // dimension order - 1.
    let residual = if r.iterations + 1 >= order { 0.0 } else { r.residual };
    let bracket = (r.theta, r.theta + residual);
    if residual > tol * (1.0 + r.theta.abs()) && !r.invariant {
        return Err(Error::NotConverged {
            iterations: r.iterations,
            bracket: super::NormBracket {
                lower: bracket.0,
                upper: bracket.1,
                lower_from: super::Provenance::FiberRepresentation,
                upper_from: super::Provenance::FiberRepresentation,
            },
        });
    }
    Ok(TauReport {
        level: n,
        order,
        second: Some(bracket),
        iterations: r.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::{Caps, Family};

    #[test]
    fn fd_levels_two_and_three() {
        let g = ApproximatedGroup::build(Family::Fd, 3, &Caps::default()).unwrap();
        let opts = NormOptions::default();
        assert_eq!(tau_spectral_gap(&g, 1, &opts).unwrap().second, None);
        let two = tau_spectral_gap(&g, 2, &opts).unwrap().midpoint().unwrap();
        assert!(two.abs() < 1e-9, "{two}");
        let three = tau_spectral_gap(&g, 3, &opts).unwrap().midpoint().unwrap();
        assert!((three - 0.75).abs() < 1e-9, "{three}");
    }

    #[test]
    fn rank_one_is_rejected() {
        let g = ApproximatedGroup::build(Family::Cyclic, 2, &Caps::default()).unwrap();
        assert!(matches!(tau_spectral_gap(&g, 2, &NormOptions::default()), Err(Error::Input(_))));
    }
}
