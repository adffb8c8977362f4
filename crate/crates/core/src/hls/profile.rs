use alloc::vec::Vec;

use super::norms::{infinity_norm, quasi_regular_norm, NormOptions};
use super::{FiberLevel, HlsGroupoid, NormBracket};
use crate::error::{Error, Result};
use crate::freegroup::GroupAlgebraElement;
use crate::scalar::{self, Coefficient};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileOptions {
    pub norm: NormOptions,
    /// GAP is flagged when the finite-level sup exceeds the `∞` upper end by this much.
    pub margin: f64,
    /// Slack in the monotonicity check.
    pub monotone_tolerance: f64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            norm: NormOptions::default(),
            margin: 0.25,
            monotone_tolerance: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelNorm {
    pub level: usize,
    pub order: usize,
    pub bracket: NormBracket,
}

/// `‖λₙ(x)‖` across levels compared with the regular representation.
#[derive(Clone, Debug, PartialEq)]
pub struct NormProfile {
    pub levels: Vec<LevelNorm>,
    /// Pairs `(n, m)` with `n > m` where `‖λₙ(x)‖ < ‖λₘ(x)‖` beyond tolerance.
    pub monotonicity_violations: Vec<(usize, usize)>,
    pub finite_sup: NormBracket,
    pub infinity: NormBracket,
    /// `|Σ x(g)|`, the norm in the trivial representation.
    pub trivial: f64,
    pub l1: f64,
    pub margin: f64,
    pub gap: bool,
}

impl NormProfile {
    /// Builds the report from per-level brackets computed elsewhere.
    pub fn assemble<T: Coefficient>(
        x: &GroupAlgebraElement<T>,
        levels: Vec<LevelNorm>,
        infinity: NormBracket,
        opts: &ProfileOptions,
    ) -> Self {
        let mut monotonicity_violations = Vec::new();
        for (i, hi) in levels.iter().enumerate() {
            for lo in &levels[..i] {
                if hi.level > lo.level && hi.bracket.upper + opts.monotone_tolerance < lo.bracket.lower {
                    monotonicity_violations.push((hi.level, lo.level));
                }
            }
        }
        let mut finite_sup = NormBracket::exact(0.0, super::Provenance::FiberRepresentation);
        for l in &levels {
            finite_sup = finite_sup.join(&l.bracket);
        }
        let gap = !levels.is_empty() && finite_sup.lower >= infinity.upper + opts.margin;
        NormProfile {
            levels,
            monotonicity_violations,
            finite_sup,
            infinity,
            trivial: scalar::abs(&x.coefficient_sum()),
            l1: x.l1_norm(),
            margin: opts.margin,
            gap,
        }
    }

    pub fn monotone(&self) -> bool {
        self.monotonicity_violations.is_empty()
    }
}

/// Per-level norms `‖λₙ(x)‖` for `n = 1..=n_max`, the `∞` bracket and the
/// GAP flag, for a self-adjoint `x`.
pub fn fd_norm_profile<T: Coefficient>(
    x: &GroupAlgebraElement<T>,
    n_max: usize,
    g: &HlsGroupoid,
    opts: &ProfileOptions,
) -> Result<NormProfile> {
    if !x.is_self_adjoint() {
        return Err(Error::input("the element must be self-adjoint"));
    }
    let mut levels = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        levels.push(LevelNorm {
            level: n,
            order: g.fiber(n)?.order(),
            bracket: quasi_regular_norm(x, FiberLevel::Finite(n), g, &opts.norm)?,
        });
    }
    let infinity = infinity_norm(x, &opts.norm)?;
    Ok(NormProfile::assemble(x, levels, infinity, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Word;
    use crate::quotients::{ApproximatedGroup, Caps, Family};
    use crate::scalar::Rational;

    fn groupoid(f: Family, depth: usize) -> HlsGroupoid {
        HlsGroupoid::new(ApproximatedGroup::build(f, depth, &Caps::default()).unwrap())
    }

    #[test]
    fn unit_has_no_gap() {
        let g = groupoid(Family::Fd, 3);
        let e = GroupAlgebraElement::<Rational>::delta(Word::identity(2));
        let p = fd_norm_profile(&e, 3, &g, &ProfileOptions::default()).unwrap();
        assert!(p.levels.iter().all(|l| l.bracket.lower == 1.0 && l.bracket.upper == 1.0));
        assert!(p.monotone() && !p.gap);
        assert_eq!(p.trivial, 1.0);
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let g = groupoid(Family::Cyclic, 2);
        let a = GroupAlgebraElement::<Rational>::delta(Word::parse(1, "a").unwrap());
        assert!(matches!(fd_norm_profile(&a, 2, &g, &ProfileOptions::default()), Err(Error::Input(_))));
    }
}
