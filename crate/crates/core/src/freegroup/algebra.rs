use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::word::Word;
use crate::error::{Error, Result};
use crate::scalar::{self, Coefficient};

/// A finitely supported function on a free group, i.e. an element of the
/// complex group algebra. Zero coefficients are never stored, and the
/// support iterates in shortlex order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement<T> {
    rank: usize,
    coefficients: BTreeMap<Word, T>,
}

/// The part of an element supported on words of one length.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereComponent<T> {
    pub length: usize,
    pub component: GroupAlgebraElement<T>,
    pub l2_norm: f64,
}

impl<T: Coefficient> GroupAlgebraElement<T> {
    pub fn zero(rank: usize) -> Self {
        GroupAlgebraElement {
            rank,
            coefficients: BTreeMap::new(),
        }
    }

    /// The point mass at a word.
    pub fn delta(word: Word) -> Self {
        let mut x = Self::zero(word.rank());
        x.coefficients.insert(word, T::one());
        x
    }

    /// Sums the given terms; repeated words accumulate.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Word, T)>) -> Result<Self> {
        let mut x = Self::zero(rank);
        for (w, c) in terms {
            if w.rank() != rank {
                return Err(rank_mismatch(rank, w.rank()));
            }
            x.add_term(w, c);
        }
        Ok(x)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coefficient(&self, word: &Word) -> T {
        self.coefficients.get(word).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &T)> {
        self.coefficients.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.coefficients.keys()
    }

    pub fn support_len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Length of the longest word in the support (0 for the zero element).
    pub fn support_radius(&self) -> usize {
        self.coefficients.keys().map(Word::len).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coefficients.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, c) in self.iter() {
            out.add_term(w.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Convolution product: `(x y)(g) = sum_h x(g h^-1) y(h)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (u, cu) in self.iter() {
            for (v, cv) in other.iter() {
                out.add_term(u.mul_unchecked(v), cu.clone() * cv.clone());
            }
        }
        Ok(out)
    }

    /// Involution: `x*(g) = conj(x(g^-1))`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, c) in self.iter() {
            out.coefficients.insert(w.inverse(), c.conj());
        }
        out
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    pub fn coefficient_sum(&self) -> T {
        self.coefficients
            .values()
            .cloned()
            .fold(T::zero(), |acc, c| acc + c)
    }

    pub fn l1_norm(&self) -> f64 {
        self.coefficients.values().map(scalar::abs).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        libm::sqrt(self.coefficients.values().map(scalar::abs_sq).sum())
    }

    /// Splits the element by word length; only nonempty spheres are listed.
    pub fn sphere_decomposition(&self) -> Vec<SphereComponent<T>> {
        let mut spheres: BTreeMap<usize, GroupAlgebraElement<T>> = BTreeMap::new();
        for (w, c) in self.iter() {
            spheres
                .entry(w.len())
                .or_insert_with(|| Self::zero(self.rank))
                .coefficients
                .insert(w.clone(), c.clone());
        }
        spheres
            .into_iter()
            .map(|(length, component)| SphereComponent {
                length,
                l2_norm: component.l2_norm(),
                component,
            })
            .collect()
    }

    /// Converts coefficients to another numeric mode.
    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> GroupAlgebraElement<U> {
        let mut out = GroupAlgebraElement::zero(self.rank);
        for (w, c) in self.iter() {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(rank_mismatch(self.rank, other.rank));
        }
        Ok(())
    }
}

fn rank_mismatch(a: usize, b: usize) -> Error {
    Error::input(alloc::format!("rank mismatch: {a} vs {b}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::word::Letter;
    use crate::scalar::Rational;

    type X = GroupAlgebraElement<Rational>;

    fn word(s: &str) -> Word {
        Word::parse(2, s).unwrap()
    }

    fn delta(s: &str) -> X {
        X::delta(word(s))
    }

    fn generator_sum() -> X {
        X::from_terms(2, ["a", "A", "b", "B"].map(|s| (word(s), Rational::from_i64(1)))).unwrap()
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(delta("a").convolve(&delta("A")).unwrap(), delta("e"));
        let x = generator_sum();
        let sq = x.convolve(&x).unwrap();
        assert_eq!(sq.coefficient(&word("e")), Rational::from_i64(4));
        assert_eq!(sq.support_len(), 13);
    }

    #[test]
    fn adjoint_example() {
        let x = delta("a").add(&delta("b")).unwrap();
        assert_eq!(x.adjoint(), delta("A").add(&delta("B")).unwrap());
        assert!(generator_sum().is_self_adjoint());
    }

    #[test]
    fn sphere_examples() {
        let s = delta("e").sphere_decomposition();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].length, s[0].l2_norm), (0, 1.0));

        let s = delta("a").add(&delta("b")).unwrap().sphere_decomposition();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].length, 1);
        assert!((s[0].l2_norm - libm::sqrt(2.0)).abs() < 1e-15);

        let x = delta("e").add(&delta("ab").scale(&Rational::from_i64(2))).unwrap();
        let s = x.sphere_decomposition();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].length, 2);
        assert_eq!(s[1].component, delta("ab").scale(&Rational::from_i64(2)));
        assert_eq!(s[1].l2_norm, 2.0);
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = delta("a").sub(&delta("a")).unwrap();
        assert!(x.is_zero());
        let y = X::from_terms(2, [(word("a"), Rational::from_i64(0))]).unwrap();
        assert!(y.is_zero());
    }

    #[test]
    fn rank_mismatch_is_input_error() {
        let z = X::delta(Word::reduce(1, [Letter::new(0, false)]).unwrap());
        assert!(matches!(delta("a").convolve(&z), Err(Error::Input(_))));
    }
}
