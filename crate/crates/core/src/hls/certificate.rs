use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::fibered::FiberedFunction;
use super::{GroupoidElement, HlsGroupoid};
use crate::error::{Error, Result};
use crate::freegroup::{GroupAlgebraElement, Word};
use crate::scalar::RealCoefficient;

/// A candidate `η: G → [0, 1]` with the compact set `K` and tolerance it is
/// checked against.
#[derive(Clone, Debug, PartialEq)]
pub struct AmenabilityCertificate<T> {
    eta: FiberedFunction<T>,
    k: Vec<GroupoidElement>,
    epsilon: f64,
}

impl<T: RealCoefficient> AmenabilityCertificate<T> {
    /// Checks `ε > 0` and that the stored values of `η` lie in `[0, 1]`.
    /// Pushed-forward values are range-checked when the certificate is checked.
    pub fn new(eta: FiberedFunction<T>, k: Vec<GroupoidElement>, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::input("epsilon must be positive"));
        }
        let stored = eta
            .tail()
            .iter()
            .map(|(_, c)| c)
            .chain(eta.overrides().values().flatten());
        for c in stored {
            if !in_unit_interval(c) {
                return Err(Error::input(alloc::format!("value {c:?} outside [0, 1]")));
            }
        }
        for g in &k {
            if let GroupoidElement::Infinity(w) = g {
                if w.rank() != eta.rank() {
                    return Err(Error::input("element of K has the wrong rank"));
                }
            }
        }
        Ok(AmenabilityCertificate { eta, k, epsilon })
    }

    pub fn eta(&self) -> &FiberedFunction<T> {
        &self.eta
    }

    pub fn compact_set(&self) -> &[GroupoidElement] {
        &self.k
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

fn in_unit_interval<T: RealCoefficient>(c: &T) -> bool {
    *c >= T::zero() && *c <= T::one()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElementDefects<T> {
    pub element: GroupoidElement,
    /// `|Σ_{s(h) = r(g)} η(h) − 1|`.
    pub normalization: T,
    /// `Σ_{s(h) = r(g)} |η(h) − η(hg)|`.
    pub translation: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateReport<T> {
    pub elements: Vec<ElementDefects<T>>,
    pub worst_normalization: T,
    pub worst_translation: T,
    pub epsilon: f64,
    /// Whether every value of `η` met on the visited fibers lies in `[0, 1]`.
    pub range_ok: bool,
    pub passed: bool,
}

/// `Σ_h |ξ(h) − ξ(hg)|` over the free group.
pub fn group_translation_defect<T: RealCoefficient>(xi: &GroupAlgebraElement<T>, g: &Word) -> Result<T> {
    if xi.rank() != g.rank() {
        return Err(Error::input("rank mismatch"));
    }
    let ginv = g.inverse();
    let points: BTreeSet<Word> = xi
        .support()
        .flat_map(|h| [h.clone(), h.mul_unchecked(&ginv)])
        .collect();
    Ok(points.iter().fold(T::zero(), |acc, h| {
        acc + (xi.coefficient(h) - xi.coefficient(&h.mul_unchecked(g))).abs()
    }))
}

/// Evaluates both defects exactly on the fiber of every element of `K`.
pub fn check_certificate<T: RealCoefficient>(
    c: &AmenabilityCertificate<T>,
    groupoid: &HlsGroupoid,
) -> Result<CertificateReport<T>> {
    let mut elements = Vec::with_capacity(c.k.len());
    let mut range_ok = true;
    for g in &c.k {
        let (normalization, translation) = match g {
            GroupoidElement::Infinity(w) => {
                let tail = c.eta.tail();
                let total = tail.coefficient_sum() - T::one();
                (total.abs(), group_translation_defect(tail, w)?)
            }
            GroupoidElement::Finite { level, element } => {
                let q = groupoid.fiber(*level)?;
                if *element >= q.order() {
                    return Err(Error::input(alloc::format!(
                        "element {element} outside the fiber of order {}",
                        q.order()
                    )));
                }
                let eta = c.eta.fiber_dense(*level, groupoid)?;
                range_ok &= eta.iter().all(in_unit_interval);
                let total = eta.iter().fold(T::zero(), |acc, v| acc + v.clone()) - T::one();
                let gw = q.element_word(*element);
                let mut translation = T::zero();
                for (h, v) in eta.iter().enumerate() {
                    let hg = q.left_multiply_word(q.element_word(h).letters(), q.evaluate(&gw));
                    translation = translation + (v.clone() - eta[hg].clone()).abs();
                }
                (total.abs(), translation)
            }
        };
        elements.push(ElementDefects {
            element: g.clone(),
            normalization,
            translation,
        });
    }
    let worst = |f: fn(&ElementDefects<T>) -> &T| {
        elements
            .iter()
            .map(f)
            .fold(T::zero(), |m, v| if *v > m { v.clone() } else { m })
    };
    let worst_normalization = worst(|e| &e.normalization);
    let worst_translation = worst(|e| &e.translation);
    let passed = range_ok
        && worst_normalization.as_f64() < c.epsilon
        && worst_translation.as_f64() < c.epsilon;
    Ok(CertificateReport {
        elements,
        worst_normalization,
        worst_translation,
        epsilon: c.epsilon,
        range_ok,
        passed,
    })
}

/// `η(n, g) = Σ_{h ∈ πₙ⁻¹(g)} ξ(h)` on every fiber, and `η(∞, ·) = ξ`.
pub fn certificate_from_folner<T: RealCoefficient>(
    xi: &GroupAlgebraElement<T>,
    k: Vec<GroupoidElement>,
    epsilon: f64,
) -> Result<AmenabilityCertificate<T>> {
    AmenabilityCertificate::new(FiberedFunction::constant(xi.clone()), k, epsilon)
}

/// `ξ = η(∞, ·) / M` with `M = Σ_g η(∞, g)`.
pub fn folner_from_certificate<T: RealCoefficient>(c: &AmenabilityCertificate<T>) -> Result<GroupAlgebraElement<T>> {
    let m = c.eta.tail().coefficient_sum();
    if m.is_zero() {
        return Err(Error::DegenerateCertificate(
            "the fiber over infinity has total mass zero".into(),
        ));
    }
    Ok(c.eta.tail().scale(&T::one().div(&m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::{ApproximatedGroup, Caps, Family};
    use crate::scalar::Rational;
    use num_traits::Zero;

    fn groupoid(f: Family, depth: usize) -> HlsGroupoid {
        HlsGroupoid::new(ApproximatedGroup::build(f, depth, &Caps::default()).unwrap())
    }

    fn uniform(n: usize) -> GroupAlgebraElement<Rational> {
        let a = Word::parse(1, "a").unwrap();
        let mut w = Word::identity(1);
        let mut terms = Vec::new();
        for _ in 0..n {
            terms.push((w.clone(), Rational::ratio(1, n as i64)));
            w = w.multiply(&a).unwrap();
        }
        GroupAlgebraElement::from_terms(1, terms).unwrap()
    }

    #[test]
    fn units_indicator() {
        let g = groupoid(Family::Fd, 3);
        let xi = GroupAlgebraElement::<Rational>::delta(Word::identity(2));
        let k = (1..=3)
            .map(|level| GroupoidElement::Finite { level, element: 0 })
            .chain([GroupoidElement::Infinity(Word::identity(2))])
            .collect();
        let c = certificate_from_folner(&xi, k, 0.1).unwrap();
        let r = check_certificate(&c, &g).unwrap();
        assert!(r.passed && r.worst_normalization.is_zero() && r.worst_translation.is_zero());
        assert_eq!(folner_from_certificate(&c).unwrap(), xi);
    }

    #[test]
    fn cyclic_uniform_defect() {
        let g = groupoid(Family::Cyclic, 3);
        for n in [8usize, 32] {
            let k = alloc::vec![GroupoidElement::Infinity(Word::parse(1, "a").unwrap())];
            let c = certificate_from_folner(&uniform(n), k, 0.05).unwrap();
            let r = check_certificate(&c, &g).unwrap();
            assert_eq!(r.worst_translation, Rational::ratio(2, n as i64));
            assert_eq!(r.passed, 2.0 / (n as f64) < 0.05);
        }
    }

    #[test]
    fn finite_fiber_defects() {
        // ξ = ½(δ_e + δ_a) pushes forward to ½ on [0] and [1] of every ℤ/2ⁿ.
        let g = groupoid(Family::Cyclic, 3);
        let xi = GroupAlgebraElement::from_terms(
            1,
            [
                (Word::identity(1), Rational::ratio(1, 2)),
                (Word::parse(1, "a").unwrap(), Rational::ratio(1, 2)),
            ],
        )
        .unwrap();
        let q = g.fiber(3).unwrap();
        let a = q.evaluate(&Word::parse(1, "a").unwrap());
        let c = certificate_from_folner(&xi, alloc::vec![GroupoidElement::Finite { level: 3, element: a }], 2.0).unwrap();
        let r = check_certificate(&c, &g).unwrap();
        assert!(r.worst_normalization.is_zero());
        assert_eq!(r.worst_translation, Rational::from_integer(1.into()));
        assert!(r.range_ok && r.passed);
    }

    #[test]
    fn degenerate_and_invalid() {
        let zero = FiberedFunction::<Rational>::zero(1);
        let c = AmenabilityCertificate::new(zero, Vec::new(), 0.1).unwrap();
        assert!(matches!(folner_from_certificate(&c), Err(Error::DegenerateCertificate(_))));
        let big = GroupAlgebraElement::<Rational>::from_terms(1, [(Word::identity(1), Rational::ratio(3, 2))]).unwrap();
        assert!(certificate_from_folner(&big, Vec::new(), 0.1).is_err());
        let ok = GroupAlgebraElement::<Rational>::delta(Word::identity(1));
        assert!(certificate_from_folner(&ok, Vec::new(), 0.0).is_err());
        let two = GroupAlgebraElement::from_terms(
            1,
            [(Word::identity(1), Rational::ratio(1, 1)), (Word::parse(1, "a").unwrap(), Rational::ratio(1, 1))],
        )
        .unwrap();
        let c = certificate_from_folner(&two, Vec::new(), 0.1).unwrap();
        assert_eq!(
            folner_from_certificate(&c).unwrap(),
            two.scale(&Rational::ratio(1, 2))
        );
    }
}
