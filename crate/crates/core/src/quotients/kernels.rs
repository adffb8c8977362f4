//! Kernels of homomorphisms from F₂ onto small finite groups.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::finite::FiniteQuotient;
use crate::error::{Error, Result};
use crate::groups::{Perm, StabilizerChain};

/// Default cap on the level `n` for which homomorphisms into `S_n` are
/// enumerated; `(n!)²` pairs are visited.
pub const DEFAULT_HOM_LEVEL_CAP: usize = 6;

/// Whether `ker p ⊆ ker q`.
///
/// The paired generator images generate a subgroup of `im p × im q` that
/// projects onto `im p`; it has the same order as `im p` exactly when the
/// projection is injective, i.e. when every word killed by `p` is killed by `q`.
pub fn kernel_refines(p: &FiniteQuotient, q: &FiniteQuotient) -> Result<bool> {
    if p.rank() != q.rank() {
        return Err(Error::input(alloc::format!(
            "rank mismatch: {} vs {}",
            p.rank(),
            q.rank()
        )));
    }
    let paired: Vec<Perm> = p
        .generators()
        .iter()
        .zip(q.generators())
        .map(|(a, b)| a.disjoint_union(b))
        .collect();
    let chain = StabilizerChain::new(p.degree() + q.degree(), &paired)?;
    Ok(chain.order() == p.order() as u128)
}

/// One representative quotient per distinct kernel among all homomorphisms
/// `F₂ → G` with `|G| <= n`.
///
/// Every group of order `m <= n` embeds in `S_n`, and a homomorphism has the
/// same kernel as its corestriction onto its image, so it suffices to run
/// over pairs `(σ, τ)` in `S_n` generating a subgroup of order at most `n`.
/// Pairs are visited in lexicographic order and the first pair seen for a
/// kernel is kept.
pub fn enumerate_kernel_reps(n: usize, level_cap: usize) -> Result<Vec<FiniteQuotient>> {
    if n == 0 {
        return Err(Error::input("level must be at least 1"));
    }
    if n > level_cap {
        return Err(Error::resource(
            "homomorphism enumeration level",
            n as u64,
            level_cap as u64,
        ));
    }
    let perms = all_permutations(n);
    let mut seen: BTreeMap<Vec<u8>, ()> = BTreeMap::new();
    let mut reps = Vec::new();
    for s in &perms {
        for t in &perms {
            let Some(key) = marked_group_key(s, t, n) else {
                continue;
            };
            if seen.insert(key, ()).is_none() {
                let gens = alloc::vec![
                    Perm::from_images_unchecked(s.iter().map(|&x| x as u32).collect()),
                    Perm::from_images_unchecked(t.iter().map(|&x| x as u32).collect()),
                ];
                reps.push(FiniteQuotient::from_generators(gens, n as u64)?);
            }
        }
    }
    Ok(reps)
}

/// Canonical form of the marked group `(⟨s, t⟩, s, t)`, or `None` if the
/// group has more than `max_order` elements.
///
/// Elements are numbered by BFS from the identity under left multiplication
/// by `s, s⁻¹, t, t⁻¹`; the key is the order followed by the four
/// multiplication tables. Two generator pairs give the same key exactly when
/// `s ↦ s', t ↦ t'` extends to an isomorphism, i.e. when the two
/// homomorphisms from F₂ have the same kernel.
pub(crate) fn marked_group_key(s: &[u8], t: &[u8], max_order: usize) -> Option<Vec<u8>> {
    let letters = [s.to_vec(), invert(s), t.to_vec(), invert(t)];
    let degree = s.len();
    let mut elements: Vec<Vec<u8>> = alloc::vec![(0..degree as u8).collect()];
    let mut tables: [Vec<u8>; 4] = Default::default();
    let mut head = 0;
    while head < elements.len() {
        for (code, l) in letters.iter().enumerate() {
            let prod: Vec<u8> = elements[head].iter().map(|&x| l[x as usize]).collect();
            let idx = match elements.iter().position(|e| *e == prod) {
                Some(i) => i,
                None => {
                    if elements.len() == max_order {
                        return None;
                    }
                    elements.push(prod);
                    elements.len() - 1
                }
            };
            tables[code].push(idx as u8);
        }
        head += 1;
    }
    let mut key = alloc::vec![elements.len() as u8];
    for t in &tables {
        key.extend_from_slice(t);
    }
    Some(key)
}

fn invert(p: &[u8]) -> Vec<u8> {
    let mut inv = alloc::vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// All permutations of `0..n` in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = alloc::vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_lexicographic() {
        let p = all_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], [0, 1, 2]);
        assert_eq!(p[5], [2, 1, 0]);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn level_one_is_trivial() {
        let reps = enumerate_kernel_reps(1, DEFAULT_HOM_LEVEL_CAP).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].order(), 1);
    }

    #[test]
    fn level_cap() {
        assert!(matches!(
            enumerate_kernel_reps(7, DEFAULT_HOM_LEVEL_CAP),
            Err(Error::Resource { needed: 7, cap: 6, .. })
        ));
    }

    #[test]
    fn refinement_is_reflexive_and_trivial_refines_nothing() {
        let reps = enumerate_kernel_reps(3, DEFAULT_HOM_LEVEL_CAP).unwrap();
        let trivial = FiniteQuotient::trivial(2);
        for q in &reps {
            assert!(kernel_refines(q, q).unwrap());
            assert_eq!(kernel_refines(&trivial, q).unwrap(), q.order() == 1);
            assert!(kernel_refines(q, &trivial).unwrap());
        }
    }
}
