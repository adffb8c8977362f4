use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::HlsGroupoid;
use crate::error::{Error, Result};
use crate::freegroup::GroupAlgebraElement;
use crate::quotients::FiniteQuotient;
use crate::scalar::Coefficient;

/// A compactly supported function on the HLS groupoid.
///
/// The value on the fiber over `∞` is `tail`; on fibers `n >= threshold` it
/// is the pushforward of `tail`; on fibers `n < threshold` it is the dense
/// array `overrides[n]` (indexed like the fiber's elements) or zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberedFunction<T> {
    tail: GroupAlgebraElement<T>,
    threshold: usize,
    overrides: BTreeMap<usize, Vec<T>>,
}

impl<T: Coefficient> FiberedFunction<T> {
    /// Validates `threshold >= 1` and that every override level is below it.
    /// All-zero overrides are dropped.
    pub fn new(
        tail: GroupAlgebraElement<T>,
        threshold: usize,
        overrides: BTreeMap<usize, Vec<T>>,
    ) -> Result<Self> {
        if threshold == 0 {
            return Err(Error::input("threshold must be at least 1"));
        }
        if let Some((&n, _)) = overrides.iter().find(|(&n, _)| n == 0 || n >= threshold) {
            return Err(Error::input(alloc::format!(
                "override at level {n} outside 1..{threshold}"
            )));
        }
        let overrides = overrides
            .into_iter()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .collect();
        Ok(FiberedFunction {
            tail,
            threshold,
            overrides,
        })
    }

    pub fn zero(rank: usize) -> Self {
        FiberedFunction {
            tail: GroupAlgebraElement::zero(rank),
            threshold: 1,
            overrides: BTreeMap::new(),
        }
    }

    /// Pushforward of `tail` on every fiber.
    pub fn constant(tail: GroupAlgebraElement<T>) -> Self {
        FiberedFunction {
            tail,
            threshold: 1,
            overrides: BTreeMap::new(),
        }
    }

    /// Supported on the single finite fiber `level`.
    pub fn on_fiber(rank: usize, level: usize, values: Vec<T>) -> Result<Self> {
        let mut overrides = BTreeMap::new();
        overrides.insert(level, values);
        Self::new(GroupAlgebraElement::zero(rank), level + 1, overrides)
    }

    pub fn rank(&self) -> usize {
        self.tail.rank()
    }

    pub fn tail(&self) -> &GroupAlgebraElement<T> {
        &self.tail
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn overrides(&self) -> &BTreeMap<usize, Vec<T>> {
        &self.overrides
    }

    /// The value on the fiber over `∞`; the quotient map onto `ℂ[Γ]`.
    pub fn restrict_to_infinity(&self) -> &GroupAlgebraElement<T> {
        &self.tail
    }

    /// Finite fibers on which the function may be nonzero, below the threshold.
    pub fn override_levels(&self) -> impl Iterator<Item = usize> + '_ {
        self.overrides.keys().copied()
    }

    /// Nonzero values on fiber `n` as sorted `(element, value)` pairs.
    pub fn fiber_values(&self, n: usize, g: &HlsGroupoid) -> Result<Vec<(usize, T)>> {
        if n == 0 {
            return Err(Error::input("levels start at 1"));
        }
        if n >= self.threshold {
            if self.tail.is_zero() {
                return Ok(Vec::new());
            }
            return g.fiber(n)?.pushforward(&self.tail);
        }
        let Some(values) = self.overrides.get(&n) else {
            return Ok(Vec::new());
        };
        let q = g.fiber(n)?;
        check_len(values, q, n)?;
        Ok(values
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect())
    }

    /// Dense values on fiber `n`.
    pub fn fiber_dense(&self, n: usize, g: &HlsGroupoid) -> Result<Vec<T>> {
        let order = g.fiber(n)?.order();
        let mut out = alloc::vec![T::zero(); order];
        for (i, c) in self.fiber_values(n, g)? {
            out[i] = c;
        }
        Ok(out)
    }

    /// Fiberwise convolution `(f₁f₂)(n, g) = Σ_h f₁(n, gh⁻¹) f₂(n, h)`.
    ///
    /// Above the larger threshold pushforward commutes with convolution, so
    /// only the levels below it are computed explicitly.
    pub fn convolve(&self, other: &Self, g: &HlsGroupoid) -> Result<Self> {
        self.check_rank(other)?;
        let threshold = self.threshold.max(other.threshold);
        let mut overrides = BTreeMap::new();
        for n in 1..threshold {
            let a = self.fiber_values(n, g)?;
            if a.is_empty() {
                continue;
            }
            let b = other.fiber_values(n, g)?;
            if b.is_empty() {
                continue;
            }
            overrides.insert(n, fiber_convolve(g.fiber(n)?, &a, &b));
        }
        Self::new(self.tail.convolve(&other.tail)?, threshold, overrides)
    }

    /// Fiberwise involution `f*(n, g) = conj f(n, g⁻¹)`.
    pub fn adjoint(&self, g: &HlsGroupoid) -> Result<Self> {
        let mut overrides = BTreeMap::new();
        for (&n, values) in &self.overrides {
            let q = g.fiber(n)?;
            check_len(values, q, n)?;
            let mut out = alloc::vec![T::zero(); values.len()];
            for (i, c) in values.iter().enumerate() {
                if !c.is_zero() {
                    out[q.inverse(i)] = c.conj();
                }
            }
            overrides.insert(n, out);
        }
        Self::new(self.tail.adjoint(), self.threshold, overrides)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self, g: &HlsGroupoid) -> Result<Self> {
        self.check_rank(other)?;
        let threshold = self.threshold.max(other.threshold);
        let mut overrides = BTreeMap::new();
        for n in 1..threshold {
            let a = self.fiber_values(n, g)?;
            let b = other.fiber_values(n, g)?;
            if a.is_empty() && b.is_empty() {
                continue;
            }
            let mut out = alloc::vec![T::zero(); g.fiber(n)?.order()];
            for (i, c) in a.into_iter().chain(b) {
                out[i] = out[i].clone() + c;
            }
            overrides.insert(n, out);
        }
        Self::new(self.tail.add(&other.tail)?, threshold, overrides)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::input(alloc::format!(
                "rank mismatch: {} vs {}",
                self.rank(),
                other.rank()
            )));
        }
        Ok(())
    }
}

fn check_len<T>(values: &[T], q: &FiniteQuotient, n: usize) -> Result<()> {
    if values.len() != q.order() {
        return Err(Error::input(alloc::format!(
            "override at level {n} has {} values but the fiber has {} elements",
            values.len(),
            q.order()
        )));
    }
    Ok(())
}

/// Convolution of two sparse functions on a finite group, as a dense array.
pub(crate) fn fiber_convolve<T: Coefficient>(q: &FiniteQuotient, a: &[(usize, T)], b: &[(usize, T)]) -> Vec<T> {
    let mut out = alloc::vec![T::zero(); q.order()];
    for (k, x) in a {
        let w = q.element_word(*k);
        for (h, y) in b {
            let g = q.left_multiply_word(w.letters(), *h);
            out[g] = out[g].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// The lift of `x` that vanishes below the first level at which the quotient
/// map is injective on `supp x`, and pushes `x` forward from there on.
pub fn standard_lift<T: Coefficient>(x: &GroupAlgebraElement<T>, g: &HlsGroupoid) -> Result<FiberedFunction<T>> {
    if x.rank() != g.rank() {
        return Err(Error::input(alloc::format!(
            "element rank {} does not match groupoid rank {}",
            x.rank(),
            g.rank()
        )));
    }
    if x.support_len() <= 1 {
        return Ok(FiberedFunction::constant(x.clone()));
    }
    for n in 1..=g.depth() {
        if g.fiber(n)?.separates(x.support()) {
            return Ok(FiberedFunction {
                tail: x.clone(),
                threshold: n,
                overrides: BTreeMap::new(),
            });
        }
    }
    Err(Error::resource(
        "separation level for the support",
        g.depth() as u64 + 1,
        g.depth() as u64,
    ))
}
