//! Deterministic Schreier–Sims.
//!
//! Builds a base and strong generating set with explicit transversals. The
//! chain gives the group order as the product of basic orbit lengths and a
//! perfect ranking of group elements from their base images, which the
//! quotient BFS uses instead of hashing whole permutations.

use alloc::vec::Vec;

use super::perm::Perm;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Default cap on stored transversal entries (points times orbit lengths).
pub const DEFAULT_TRANSVERSAL_CAP: u64 = 1 << 26;

#[derive(Clone, Debug)]
struct Level {
    /// Indices into the strong generating set.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    position: Vec<u32>,
    /// `reps_inv[i]` maps `orbit[i]` back to the base point.
    reps_inv: Vec<Perm>,
}

#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    base: Vec<u32>,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<Level>,
    stored: u64,
    cap: u64,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_TRANSVERSAL_CAP)
    }

    /// As [`StabilizerChain::new`], failing with a resource error when the
    /// transversals would store more than `cap` points.
    pub fn with_cap(degree: usize, generators: &[Perm], cap: u64) -> Result<Self> {
        let mut chain = StabilizerChain {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
            stored: 0,
            cap,
        };
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if g.is_identity() || chain.strong.contains(g) {
                continue;
            }
            if chain.base.iter().all(|&b| g.apply(b) == b) {
                chain.base.push(g.first_moved_point().unwrap());
            }
            chain.strong.push(g.clone());
            chain.strong_inv.push(g.inverse());
        }
        for l in 0..chain.base.len() {
            let gens = (0..chain.strong.len())
                .filter(|&i| chain.base[..l].iter().all(|&b| chain.strong[i].apply(b) == b))
                .collect();
            chain.levels.push(chain.empty_level(gens));
            chain.recompute_orbit(l)?;
        }
        chain.complete()?;
        Ok(chain)
    }

    fn empty_level(&self, gens: Vec<usize>) -> Level {
        Level {
            gens,
            orbit: Vec::new(),
            position: alloc::vec![NONE; self.degree],
            reps_inv: Vec::new(),
        }
    }

    fn recompute_orbit(&mut self, l: usize) -> Result<()> {
        let beta = self.base[l];
        let degree = self.degree as u64;
        let level = &mut self.levels[l];
        self.stored -= level.orbit.len() as u64 * degree;
        level.orbit.clear();
        level.reps_inv.clear();
        level.position.iter_mut().for_each(|p| *p = NONE);

        level.position[beta as usize] = 0;
        level.orbit.push(beta);
        level.reps_inv.push(Perm::identity(self.degree));
        self.stored += degree;
        let mut head = 0;
        while head < level.orbit.len() {
            let gamma = level.orbit[head];
            for &gi in &level.gens {
                let delta = self.strong[gi].apply(gamma);
                if level.position[delta as usize] == NONE {
                    self.stored += degree;
                    if self.stored > self.cap {
                        return Err(Error::resource("stabilizer chain transversals", self.stored, self.cap));
                    }
                    level.position[delta as usize] = level.orbit.len() as u32;
                    level.orbit.push(delta);
                    let rep_inv = level.reps_inv[head].compose(&self.strong_inv[gi]);
                    level.reps_inv.push(rep_inv);
                }
            }
            head += 1;
        }
        Ok(())
    }

    /// Sifts `h` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it went all the way).
    fn strip(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let delta = h.apply(self.base[l]);
            let pos = self.levels[l].position[delta as usize];
            if pos == NONE {
                return (h, l);
            }
            h = self.levels[l].reps_inv[pos as usize].compose(&h);
        }
        let len = self.levels.len();
        (h, len)
    }

    fn complete(&mut self) -> Result<()> {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let l = i as usize;
            let mut restart = None;
            'scan: for o in 0..self.levels[l].orbit.len() {
                for k in 0..self.levels[l].gens.len() {
                    let s = &self.strong[self.levels[l].gens[k]];
                    let gamma = self.levels[l].orbit[o];
                    let delta = s.apply(gamma);
                    let pd = self.levels[l].position[delta as usize] as usize;
                    let rep = self.levels[l].reps_inv[o].inverse();
                    let h = self.levels[l].reps_inv[pd].compose(&s.compose(&rep));
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.strip(h, l + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if j == self.levels.len() {
                        self.base.push(residue.first_moved_point().unwrap());
                        let level = self.empty_level(Vec::new());
                        self.levels.push(level);
                    }
                    let idx = self.strong.len();
                    self.strong_inv.push(residue.inverse());
                    self.strong.push(residue);
                    for m in (l + 1)..=j {
                        self.levels[m].gens.push(idx);
                        self.recompute_orbit(m)?;
                    }
                    restart = Some(j);
                    break 'scan;
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn basic_orbit_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels.iter().map(|l| l.orbit.len())
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    /// Rank in `0..order` of the group element with the given base images.
    /// `images[l]` is the image of `base[l]`; the slice is overwritten.
    pub fn rank_of_base_images(&self, images: &mut [u32]) -> u64 {
        let mut r = 0u64;
        for l in 0..self.levels.len() {
            let level = &self.levels[l];
            let pos = level.position[images[l] as usize];
            debug_assert_ne!(pos, NONE, "base images do not belong to the group");
            r = r * level.orbit.len() as u64 + pos as u64;
            let inv = &level.reps_inv[pos as usize];
            for img in images.iter_mut().skip(l + 1) {
                *img = inv.apply(*img);
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn perm(v: &[u32]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    /// Brute-force closure, for cross-checking orders.
    fn closure(degree: usize, gens: &[Perm]) -> BTreeSet<Perm> {
        let mut seen = BTreeSet::new();
        let id = Perm::identity(degree);
        let mut frontier = vec![id.clone()];
        seen.insert(id);
        while let Some(g) = frontier.pop() {
            for s in gens {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        seen
    }

    #[test]
    fn symmetric_groups() {
        let mut fact = 1u128;
        for n in 2..=7usize {
            fact *= n as u128;
            let mut cycle: Vec<u32> = (1..n as u32).collect();
            cycle.push(0);
            let mut swap: Vec<u32> = (0..n as u32).collect();
            swap.swap(0, 1);
            let chain = StabilizerChain::new(n, &[perm(&cycle), perm(&swap)]).unwrap();
            assert_eq!(chain.order(), fact);
        }
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::new(4, &[Perm::identity(4)]).unwrap();
        assert_eq!(chain.order(), 1);
        assert!(chain.base().is_empty());
    }

    #[test]
    fn matches_brute_force_and_ranks_perfectly() {
        // A 5-cycle and a product of transpositions in S_6.
        let a = perm(&[1, 2, 3, 4, 0, 5]);
        let b = perm(&[5, 4, 2, 3, 1, 0]);
        let gens = [a, b];
        let chain = StabilizerChain::new(6, &gens).unwrap();
        let all = closure(6, &gens);
        assert_eq!(chain.order(), all.len() as u128);
        let mut ranks = BTreeSet::new();
        for g in &all {
            assert!(chain.contains(g));
            let mut imgs: Vec<u32> = chain.base().iter().map(|&b| g.apply(b)).collect();
            let r = chain.rank_of_base_images(&mut imgs);
            assert!((r as u128) < chain.order());
            ranks.insert(r);
        }
        assert_eq!(ranks.len(), all.len());
    }

    #[test]
    fn transversal_cap_is_enforced() {
        let mut cycle: Vec<u32> = (1..40).collect();
        cycle.push(0);
        let err = StabilizerChain::with_cap(40, &[perm(&cycle)], 100).unwrap_err();
        assert!(matches!(err, Error::Resource { cap: 100, .. }));
    }

    #[test]
    fn non_member_is_rejected() {
        let chain = StabilizerChain::new(4, &[perm(&[1, 0, 2, 3])]).unwrap();
        assert!(!chain.contains(&perm(&[0, 1, 3, 2])));
    }
}
