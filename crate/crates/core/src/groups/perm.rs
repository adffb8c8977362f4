use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, acting on the left: `p.apply(x) = p(x)`,
/// and `p.compose(q)` is `p ∘ q` (apply `q` first).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::input("image list is not a permutation"));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = alloc::vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.0
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Places `self` on points `0..d` and `other` on `d..d+e`.
    pub fn disjoint_union(&self, other: &Perm) -> Perm {
        let d = self.degree() as u32;
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&x| x + d));
        Perm(v)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_action() {
        let p = Perm::from_images(alloc::vec![1, 2, 0]).unwrap();
        let q = Perm::from_images(alloc::vec![1, 0, 2]).unwrap();
        let pq = p.compose(&q);
        for x in 0..3 {
            assert_eq!(pq.apply(x), p.apply(q.apply(x)));
        }
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(alloc::vec![0, 0]).is_err());
        assert!(Perm::from_images(alloc::vec![0, 2]).is_err());
    }

    #[test]
    fn disjoint_union_shifts() {
        let p = Perm::from_images(alloc::vec![1, 0]).unwrap();
        let u = p.disjoint_union(&Perm::identity(3));
        assert_eq!(u.images(), &[1, 0, 2, 3, 4]);
    }
}
