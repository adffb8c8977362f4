use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::finite::FiniteQuotient;
use super::kernels::{enumerate_kernel_reps, DEFAULT_HOM_LEVEL_CAP};
use crate::error::{Error, Result};
use crate::freegroup::DEFAULT_BALL_CAP;
use crate::groups::Perm;

/// Default cap on the order of a single fiber `Γₙ`.
pub const DEFAULT_FIBER_ORDER_CAP: u64 = 2_000_000;

/// Size limits shared by all constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub fiber_order: u64,
    pub ball_size: u64,
    pub hom_level: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            fiber_order: DEFAULT_FIBER_ORDER_CAP,
            ball_size: DEFAULT_BALL_CAP,
            hom_level: DEFAULT_HOM_LEVEL_CAP,
        }
    }
}

/// The approximating sequences that can be built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// F₂ with `Kₙ` the intersection of all kernels of homomorphisms onto
    /// groups of order at most `n`.
    Fd,
    /// The Sanov subgroup `⟨[[1,2],[0,1]], [[1,0],[2,1]]⟩ ≅ F₂` of SL(2,ℤ),
    /// reduced modulo `2ⁿ`.
    Congruence,
    /// ℤ = F₁ with `Kₙ = 2ⁿℤ`.
    Cyclic,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Fd, Family::Congruence, Family::Cyclic];

    pub fn rank(self) -> usize {
        match self {
            Family::Fd | Family::Congruence => 2,
            Family::Cyclic => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Fd => "fd",
            Family::Congruence => "congruence",
            Family::Cyclic => "cyclic",
        }
    }

    /// Builds `Γₙ` with its quotient map.
    pub fn quotient(self, n: usize, caps: &Caps) -> Result<FiniteQuotient> {
        if n == 0 {
            return Err(Error::input("levels start at 1"));
        }
        match self {
            Family::Fd => fd_quotient(n, caps),
            Family::Congruence => congruence_quotient(n, caps),
            Family::Cyclic => cyclic_quotient(n, caps),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fd" => Ok(Family::Fd),
            "congruence" => Ok(Family::Congruence),
            "cyclic" => Ok(Family::Cyclic),
            other => Err(Error::input(alloc::format!(
                "unknown family {other:?} (expected fd, congruence or cyclic)"
            ))),
        }
    }
}

/// Image of (a, b) in the product of all kernel representatives, acting on
/// the disjoint union of their point sets.
fn fd_quotient(n: usize, caps: &Caps) -> Result<FiniteQuotient> {
    let reps = enumerate_kernel_reps(n, caps.hom_level)?;
    let mut a: Option<Perm> = None;
    let mut b: Option<Perm> = None;
    for q in reps.iter().filter(|q| q.order() > 1) {
        let [qa, qb] = [&q.generators()[0], &q.generators()[1]];
        a = Some(a.map_or_else(|| qa.clone(), |p| p.disjoint_union(qa)));
        b = Some(b.map_or_else(|| qb.clone(), |p| p.disjoint_union(qb)));
    }
    match (a, b) {
        (Some(a), Some(b)) => FiniteQuotient::from_generators(alloc::vec![a, b], caps.fiber_order),
        _ => Ok(FiniteQuotient::trivial(2)),
    }
}

fn congruence_quotient(n: usize, caps: &Caps) -> Result<FiniteQuotient> {
    // Index 2 in Γ(2)/Γ(2ⁿ), which has order 2^(3n-3); bail out before
    // building 4ⁿ-point permutations that could never fit under the cap.
    let expected = if n == 1 { 1 } else { 1u128 << (3 * n as u32 - 4).min(127) };
    if expected > caps.fiber_order as u128 {
        return Err(Error::resource(
            "finite quotient order",
            u64::try_from(expected).unwrap_or(u64::MAX),
            caps.fiber_order,
        ));
    }
    let m: u64 = 1 << n;
    let act = |mat: [[u64; 2]; 2]| {
        let images = (0..m * m)
            .map(|p| {
                let (u, v) = (p / m, p % m);
                let x = (mat[0][0] * u + mat[0][1] * v) % m;
                let y = (mat[1][0] * u + mat[1][1] * v) % m;
                (x * m + y) as u32
            })
            .collect();
        Perm::from_images_unchecked(images)
    };
    let a = act([[1, 2 % m], [0, 1]]);
    let b = act([[1, 0], [2 % m, 1]]);
    FiniteQuotient::from_generators(alloc::vec![a, b], caps.fiber_order)
}

fn cyclic_quotient(n: usize, caps: &Caps) -> Result<FiniteQuotient> {
    let m = 1u64.checked_shl(n as u32).filter(|&m| m <= caps.fiber_order);
    let Some(m) = m else {
        return Err(Error::resource(
            "finite quotient order",
            1u64.checked_shl(n as u32).unwrap_or(u64::MAX),
            caps.fiber_order,
        ));
    };
    let images = (0..m).map(|i| ((i + 1) % m) as u32).collect();
    FiniteQuotient::from_generators(alloc::vec![Perm::from_images_unchecked(images)], caps.fiber_order)
}

/// A free group with the first `depth` levels of an approximating sequence
/// materialized.
#[derive(Clone, Debug)]
pub struct ApproximatedGroup {
    family: Family,
    levels: Vec<FiniteQuotient>,
}

impl ApproximatedGroup {
    /// Computes levels `1..=depth`.
    pub fn build(family: Family, depth: usize, caps: &Caps) -> Result<Self> {
        let levels = (1..=depth)
            .map(|n| family.quotient(n, caps))
            .collect::<Result<Vec<_>>>()?;
        Ok(ApproximatedGroup { family, levels })
    }

    /// Wraps levels computed elsewhere (e.g. loaded from a cache);
    /// `levels[i]` is level `i + 1`.
    pub fn from_levels(family: Family, levels: Vec<FiniteQuotient>) -> Result<Self> {
        if let Some(q) = levels.iter().find(|q| q.rank() != family.rank()) {
            return Err(Error::input(alloc::format!(
                "level of rank {} in a rank-{} family",
                q.rank(),
                family.rank()
            )));
        }
        Ok(ApproximatedGroup { family, levels })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.family.rank()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[FiniteQuotient] {
        &self.levels
    }

    pub fn quotient(&self, n: usize) -> Result<&FiniteQuotient> {
        n.checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .ok_or(Error::LevelUnavailable {
                level: n,
                depth: self.levels.len(),
            })
    }
}
