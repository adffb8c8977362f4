#![allow(dead_code)]

use hlslab_core::{GroupAlgebraElement, Rational, Word};
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn below(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    rng.next_u64() % n
}

pub fn word(rank: usize, s: &str) -> Word {
    Word::parse(rank, s).unwrap()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn generator_sum(rank: usize) -> GroupAlgebraElement<Rational> {
    let terms = (0..rank).flat_map(|i| {
        let w = Word::generator(rank, i).unwrap();
        [(w.inverse(), int(1)), (w, int(1))]
    });
    GroupAlgebraElement::from_terms(rank, terms).unwrap()
}

/// Random reduced word of length at most `max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Word {
    let len = below(rng, max_len as u64 + 1) as usize;
    let signed: Vec<i32> = (0..len)
        .map(|_| {
            let g = below(rng, rank as u64) as i32 + 1;
            if below(rng, 2) == 0 { g } else { -g }
        })
        .collect();
    Word::from_signed(rank, &signed).unwrap()
}

/// Random element with small integer coefficients on `terms` words of length `<= radius`.
pub fn random_element(rng: &mut ChaCha8Rng, rank: usize, radius: usize, terms: usize) -> GroupAlgebraElement<Rational> {
    let t: Vec<(Word, Rational)> = (0..terms)
        .map(|_| (random_word(rng, rank, radius), int(below(rng, 7) as i64 - 3)))
        .collect();
    GroupAlgebraElement::from_terms(rank, t).unwrap()
}

/// `x + x*`, with integer coefficients.
pub fn random_self_adjoint(rng: &mut ChaCha8Rng, rank: usize, radius: usize, terms: usize) -> GroupAlgebraElement<Rational> {
    let x = random_element(rng, rank, radius, terms);
    x.add(&x.adjoint()).unwrap()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap()
}
