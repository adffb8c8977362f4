//! The HLS groupoid of an approximated group: fibered functions, fiber
//! representations and their norms, amenability certificates and spectral
//! gaps.

mod certificate;
mod fibered;
mod norms;
mod profile;
mod tau;

use core::fmt;

use crate::error::Result;
use crate::freegroup::Word;
use crate::quotients::{ApproximatedGroup, FiniteQuotient};

pub use certificate::{
    certificate_from_folner, check_certificate, folner_from_certificate, group_translation_defect,
    AmenabilityCertificate, CertificateReport, ElementDefects,
};
pub use fibered::{standard_lift, FiberedFunction};
pub use norms::{
    combine_fibers, cyclic_character_norm, fiber_norm, fiber_operator, haagerup_bound, infinity_norm,
    power_haagerup_bound, quasi_regular_norm, reduced_norm_estimate, rho_norm,
    truncation_lower_bound, NormOptions, ReducedNormEstimate,
};
pub use profile::{fd_norm_profile, LevelNorm, NormProfile, ProfileOptions};
pub use tau::{tau_spectral_gap, TauReport};

/// Where a bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Lanczos on a finite fiber operator.
    FiberRepresentation,
    /// Compression of the regular representation to a ball.
    Truncation,
    /// Order-one fiber, or the trivial representation.
    TrivialRepresentation,
    L1,
    Haagerup,
    CharacterFormula,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::FiberRepresentation => "fiber-representation",
            Provenance::Truncation => "truncation",
            Provenance::TrivialRepresentation => "trivial-representation",
            Provenance::L1 => "l1",
            Provenance::Haagerup => "haagerup",
            Provenance::CharacterFormula => "character-formula",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A certified interval `[lower, upper]` for an operator norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormBracket {
    pub lower: f64,
    pub upper: f64,
    pub lower_from: Provenance,
    pub upper_from: Provenance,
}

impl NormBracket {
    /// Clamps `lower` to `upper` if rounding put it above.
    pub fn new(lower: f64, lower_from: Provenance, upper: f64, upper_from: Provenance) -> Self {
        NormBracket {
            lower: lower.max(0.0).min(upper),
            upper,
            lower_from,
            upper_from,
        }
    }

    pub fn exact(value: f64, from: Provenance) -> Self {
        Self::new(value, from, value, from)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        self.lower - tol <= v && v <= self.upper + tol
    }

    /// The bracket for a supremum of norms, given brackets for each term.
    pub fn join(&self, other: &NormBracket) -> NormBracket {
        let (lower, lower_from) = if other.lower > self.lower {
            (other.lower, other.lower_from)
        } else {
            (self.lower, self.lower_from)
        };
        let (upper, upper_from) = if other.upper > self.upper {
            (other.upper, other.upper_from)
        } else {
            (self.upper, self.upper_from)
        };
        NormBracket::new(lower, lower_from, upper, upper_from)
    }

    /// Replaces `upper` by `u` if that is smaller.
    pub fn tighten_upper(&self, u: f64, from: Provenance) -> NormBracket {
        if u < self.upper {
            NormBracket::new(self.lower, self.lower_from, u, from)
        } else {
            *self
        }
    }

    /// Replaces `lower` by `l` if that is larger.
    pub fn raise_lower(&self, l: f64, from: Provenance) -> NormBracket {
        if l > self.lower {
            NormBracket::new(l, from, self.upper, self.upper_from)
        } else {
            *self
        }
    }
}

/// A point of the unit space `ℕ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberLevel {
    Finite(usize),
    Infinity,
}

impl fmt::Display for FiberLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberLevel::Finite(n) => write!(f, "{n}"),
            FiberLevel::Infinity => f.write_str("inf"),
        }
    }
}

/// An arrow of the groupoid: an element of the fiber over `n`, or a word
/// in the fiber over `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupoidElement {
    Finite { level: usize, element: usize },
    Infinity(Word),
}

impl GroupoidElement {
    pub fn level(&self) -> FiberLevel {
        match self {
            GroupoidElement::Finite { level, .. } => FiberLevel::Finite(*level),
            GroupoidElement::Infinity(_) => FiberLevel::Infinity,
        }
    }
}

/// The group bundle with fibers `Γₙ` over `n ∈ ℕ` and `Γ` over `∞`.
#[derive(Clone, Debug)]
pub struct HlsGroupoid {
    base: ApproximatedGroup,
}

impl HlsGroupoid {
    pub fn new(base: ApproximatedGroup) -> Self {
        HlsGroupoid { base }
    }

    pub fn base(&self) -> &ApproximatedGroup {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// Number of finite fibers available.
    pub fn depth(&self) -> usize {
        self.base.depth()
    }

    pub fn fiber(&self, n: usize) -> Result<&FiniteQuotient> {
        self.base.quotient(n)
    }
}
