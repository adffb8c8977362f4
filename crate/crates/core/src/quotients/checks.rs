use alloc::vec::Vec;

use super::family::ApproximatedGroup;
use super::kernels::kernel_refines;
use crate::error::{Error, Result};
use crate::freegroup::{ball, Word, DEFAULT_BALL_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingStep {
    /// Checks `K_{level+1} ⊆ K_level`.
    pub level: usize,
    pub order: usize,
    pub next_order: usize,
    pub divides: bool,
    pub refines: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingReport {
    pub steps: Vec<NestingStep>,
    /// First level whose successor fails to refine it.
    pub first_failure: Option<usize>,
}

impl NestingReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Verifies `K_{n+1} ⊆ K_n` (and `|Γₙ|` divides `|Γₙ₊₁|`) for `n < depth`.
pub fn check_nesting(group: &ApproximatedGroup, depth: usize) -> Result<NestingReport> {
    let mut steps = Vec::new();
    let mut first_failure = None;
    for n in 1..depth {
        let (p, q) = (group.quotient(n + 1)?, group.quotient(n)?);
        let refines = kernel_refines(p, q)?;
        let divides = p.order() % q.order() == 0;
        if (!refines || !divides) && first_failure.is_none() {
            first_failure = Some(n);
        }
        steps.push(NestingStep {
            level: n,
            order: q.order(),
            next_order: p.order(),
            divides,
            refines,
        });
    }
    Ok(NestingReport {
        steps,
        first_failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub radius: usize,
    pub depth: usize,
    /// Non-identity words checked.
    pub words_checked: usize,
    /// Per word, the least level with nontrivial image.
    pub separated: Vec<(Word, usize)>,
    pub unseparated: Vec<Word>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.unseparated.is_empty()
    }
}

/// Least level `n <= depth` at which `w` has nontrivial image.
pub fn separating_level(group: &ApproximatedGroup, w: &Word, depth: usize) -> Result<Option<usize>> {
    for n in 1..=depth {
        if group.quotient(n)?.evaluate(w) != 0 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Checks every non-identity word of length `<= radius` against levels `1..=depth`.
pub fn check_separation(group: &ApproximatedGroup, radius: usize, depth: usize) -> Result<SeparationReport> {
    let words = ball(radius, group.rank(), DEFAULT_BALL_CAP)?;
    check_separation_of(group, words.into_iter().skip(1), radius, depth)
}

/// As [`check_separation`] for an explicit list of words.
pub fn check_separation_of(
    group: &ApproximatedGroup,
    words: impl IntoIterator<Item = Word>,
    radius: usize,
    depth: usize,
) -> Result<SeparationReport> {
    let mut report = SeparationReport {
        radius,
        depth,
        words_checked: 0,
        separated: Vec::new(),
        unseparated: Vec::new(),
    };
    for w in words {
        if w.rank() != group.rank() {
            return Err(Error::input("word rank does not match the group"));
        }
        if w.is_identity() {
            continue;
        }
        report.words_checked += 1;
        match separating_level(group, &w, depth)? {
            Some(n) => report.separated.push((w, n)),
            None => report.unseparated.push(w),
        }
    }
    Ok(report)
}

/// Largest `r <= max_radius` such that every non-identity word of length
/// `<= r` is separated within `depth` levels.
pub fn separation_radius(group: &ApproximatedGroup, max_radius: usize, depth: usize) -> Result<usize> {
    let mut reached = 0;
    let mut current_len = 0;
    for w in ball(max_radius, group.rank(), DEFAULT_BALL_CAP)?.into_iter().skip(1) {
        if w.len() > current_len {
            reached = current_len;
            current_len = w.len();
        }
        if separating_level(group, &w, depth)?.is_none() {
            return Ok(reached);
        }
    }
    Ok(max_radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::{Caps, Family};

    #[test]
    fn cyclic_nesting_and_separation() {
        let g = ApproximatedGroup::build(Family::Cyclic, 10, &Caps::default()).unwrap();
        assert!(check_nesting(&g, 10).unwrap().passed());
        let sep = check_separation(&g, 5, 3).unwrap();
        assert_eq!(sep.words_checked, 10);
        assert!(sep.passed());
        assert_eq!(separation_radius(&g, 7, 3).unwrap(), 7);
        assert_eq!(separation_radius(&g, 9, 3).unwrap(), 7);
    }
}
