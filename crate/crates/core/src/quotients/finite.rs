use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::freegroup::{GroupAlgebraElement, Letter, Word};
use crate::groups::{Perm, StabilizerChain};
use crate::scalar::Coefficient;

const UNSEEN: u32 = u32::MAX;

/// A finite quotient `Γ/K` of a free group, realized by one permutation per
/// free generator.
///
/// Elements are numbered by breadth-first search over the left Cayley graph,
/// starting from the identity (index 0) and trying letters in code order
/// (`a, A, b, B, ...`). The numbering depends only on the generator images,
/// so it is reproducible across runs and across cache round-trips.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    rank: usize,
    degree: usize,
    generators: Vec<Perm>,
    order: usize,
    /// `left_mul[code][i]` is the index of `letter · g_i`.
    left_mul: Vec<Vec<u32>>,
    /// BFS tree: `g_i = parent_letter[i] · g_{parent[i]}`.
    parent: Vec<u32>,
    parent_letter: Vec<Letter>,
}

impl PartialEq for FiniteQuotient {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.generators == other.generators
            && self.order == other.order
            && self.left_mul == other.left_mul
    }
}

impl FiniteQuotient {
    /// Builds the quotient generated by `generators` (one per free generator),
    /// failing if the group order exceeds `order_cap`.
    pub fn from_generators(generators: Vec<Perm>, order_cap: u64) -> Result<Self> {
        let rank = generators.len();
        if rank == 0 || rank > 127 {
            return Err(Error::input("a quotient needs between 1 and 127 generator images"));
        }
        let degree = generators[0].degree();
        if degree == 0 || generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::input("generator images must act on the same nonempty point set"));
        }

        let chain = StabilizerChain::new(degree, &generators)?;
        let order = chain.order();
        if order > order_cap as u128 {
            return Err(Error::resource(
                "finite quotient order",
                u64::try_from(order).unwrap_or(u64::MAX),
                order_cap,
            ));
        }
        let order = order as usize;

        let letter_perms: Vec<Perm> = generators
            .iter()
            .flat_map(|g| [g.clone(), g.inverse()])
            .collect();
        let base = chain.base().to_vec();
        let blen = base.len();

        let mut images: Vec<u32> = Vec::with_capacity(order * blen);
        let mut index_of_rank = alloc::vec![UNSEEN; order];
        let mut left_mul = alloc::vec![alloc::vec![0u32; order]; 2 * rank];
        let mut parent = Vec::with_capacity(order);
        let mut parent_letter = Vec::with_capacity(order);

        images.extend_from_slice(&base);
        let mut scratch = base.clone();
        index_of_rank[chain.rank_of_base_images(&mut scratch) as usize] = 0;
        parent.push(0);
        parent_letter.push(Letter::new(0, false));

        let mut count = 1usize;
        let mut head = 0usize;
        let mut next_images = alloc::vec![0u32; blen];
        while head < count {
            for (code, p) in letter_perms.iter().enumerate() {
                for k in 0..blen {
                    next_images[k] = p.apply(images[head * blen + k]);
                }
                scratch.copy_from_slice(&next_images);
                let r = chain.rank_of_base_images(&mut scratch) as usize;
                let idx = if index_of_rank[r] == UNSEEN {
                    index_of_rank[r] = count as u32;
                    images.extend_from_slice(&next_images);
                    parent.push(head as u32);
                    parent_letter.push(Letter::from_code(code as u8));
                    count += 1;
                    count - 1
                } else {
                    index_of_rank[r] as usize
                };
                left_mul[code][head] = idx as u32;
            }
            head += 1;
        }
        assert_eq!(count, order, "BFS element count disagrees with the Schreier-Sims order");

        Ok(FiniteQuotient {
            rank,
            degree,
            generators,
            order,
            left_mul,
            parent,
            parent_letter,
        })
    }

    /// The trivial quotient of the rank-`rank` free group.
    pub fn trivial(rank: usize) -> Self {
        Self::from_generators(alloc::vec![Perm::identity(1); rank], 1).expect("trivial quotient")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    #[inline]
    pub fn left_multiply(&self, letter: Letter, element: usize) -> usize {
        self.left_mul[letter.code() as usize][element] as usize
    }

    /// Index of `w · g_element`.
    pub fn left_multiply_word(&self, w: &[Letter], element: usize) -> usize {
        w.iter()
            .rev()
            .fold(element, |g, &l| self.left_mul[l.code() as usize][g] as usize)
    }

    /// The quotient map on a word; the identity evaluates to 0.
    ///
    /// # Panics
    /// If the word's rank differs from the quotient's.
    pub fn evaluate(&self, w: &Word) -> usize {
        assert_eq!(w.rank(), self.rank, "word rank does not match quotient rank");
        self.left_multiply_word(w.letters(), 0)
    }

    /// A geodesic word for an element, read off the BFS tree.
    pub fn element_word(&self, element: usize) -> Word {
        let mut letters = Vec::new();
        let mut g = element;
        while g != 0 {
            letters.push(self.parent_letter[g]);
            g = self.parent[g] as usize;
        }
        Word::from_reduced(self.rank, letters)
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.left_multiply_word(self.element_word(a).letters(), b)
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.evaluate(&self.element_word(a).inverse())
    }

    /// Map `g ↦ k · g` for a fixed `k`, over all elements.
    pub fn left_translation(&self, k: usize) -> Vec<u32> {
        let w = self.element_word(k);
        (0..self.order)
            .map(|g| self.left_multiply_word(w.letters(), g) as u32)
            .collect()
    }

    /// Pushes a group-algebra element forward along the quotient map.
    /// Returns `(element, coefficient)` pairs sorted by element, zeros dropped.
    pub fn pushforward<T: Coefficient>(&self, x: &GroupAlgebraElement<T>) -> Result<Vec<(usize, T)>> {
        if x.rank() != self.rank {
            return Err(Error::input(alloc::format!(
                "element rank {} does not match quotient rank {}",
                x.rank(),
                self.rank
            )));
        }
        let mut acc: alloc::collections::BTreeMap<usize, T> = alloc::collections::BTreeMap::new();
        for (w, c) in x.iter() {
            let g = self.evaluate(w);
            let entry = acc.entry(g).or_insert_with(T::zero);
            *entry = entry.clone() + c.clone();
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Whether the quotient map is injective on the given words.
    pub fn separates<'a>(&self, words: impl IntoIterator<Item = &'a Word>) -> bool {
        let mut seen = alloc::collections::BTreeSet::new();
        words.into_iter().all(|w| seen.insert(self.evaluate(w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(m: u32) -> FiniteQuotient {
        let images = (0..m).map(|i| (i + 1) % m).collect();
        FiniteQuotient::from_generators(alloc::vec![Perm::from_images(images).unwrap()], 1 << 20).unwrap()
    }

    #[test]
    fn cyclic_indexing() {
        let q = cyclic(8);
        assert_eq!(q.order(), 8);
        assert_eq!(q.evaluate(&Word::identity(1)), 0);
        // BFS order: e, a, A, a^2, A^2, a^3, A^3, a^4.
        let a5 = Word::from_signed(1, &[1; 5]).unwrap();
        assert_eq!(q.evaluate(&a5), q.evaluate(&Word::from_signed(1, &[-1; 3]).unwrap()));
        assert_eq!(q.evaluate(&a5), 6);
    }

    #[test]
    fn multiplication_and_words_agree() {
        let q = cyclic(6);
        for a in 0..6 {
            assert_eq!(q.evaluate(&q.element_word(a)), a);
            assert_eq!(q.multiply(a, q.inverse(a)), 0);
            for b in 0..6 {
                let ab = q.element_word(a).multiply(&q.element_word(b)).unwrap();
                assert_eq!(q.multiply(a, b), q.evaluate(&ab));
            }
        }
    }

    #[test]
    fn order_cap_is_resource_error() {
        let images = (0..10u32).map(|i| (i + 1) % 10).collect();
        let err = FiniteQuotient::from_generators(alloc::vec![Perm::from_images(images).unwrap()], 9).unwrap_err();
        assert!(matches!(err, Error::Resource { needed: 10, cap: 9, .. }));
    }

    #[test]
    fn trivial_quotient() {
        let q = FiniteQuotient::trivial(2);
        assert_eq!(q.order(), 1);
        assert_eq!(q.evaluate(&Word::parse(2, "abAB").unwrap()), 0);
    }
}
