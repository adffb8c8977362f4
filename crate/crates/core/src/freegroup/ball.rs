//! Balls in the Cayley graph of a free group, in shortlex order.
//!
//! Reduced words of length `L` in rank `k` are counted by `2k (2k-1)^(L-1)`,
//! which makes shortlex ranking and unranking closed-form; no lookup tables
//! over the ball are needed.

use alloc::vec::Vec;

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Default cap on the number of words in an enumerated ball.
pub const DEFAULT_BALL_CAP: u64 = 5_000_000;

/// Number of reduced words of length exactly `length`.
pub fn sphere_size(length: usize, rank: usize) -> Option<u64> {
    if length == 0 {
        return Some(1);
    }
    let branch = 2 * rank as u64 - 1;
    branch
        .checked_pow(u32::try_from(length - 1).ok()?)?
        .checked_mul(2 * rank as u64)
}

/// Number of reduced words of length at most `radius`; `None` on overflow.
pub fn ball_size(radius: usize, rank: usize) -> Option<u64> {
    (0..=radius).try_fold(0u64, |acc, l| acc.checked_add(sphere_size(l, rank)?))
}

/// All reduced words of length `<= radius`, in shortlex order.
pub fn ball(radius: usize, rank: usize, cap: u64) -> Result<Vec<Word>> {
    let size = checked_ball_size(radius, rank, cap)?;
    Ok(BallIter::new(radius, rank, size).collect())
}

pub(crate) fn checked_ball_size(radius: usize, rank: usize, cap: u64) -> Result<u64> {
    if !(1..=127).contains(&rank) {
        return Err(Error::input(alloc::format!("free group rank {rank} out of range")));
    }
    match ball_size(radius, rank) {
        Some(n) if n <= cap => Ok(n),
        Some(n) => Err(Error::resource(alloc::format!("ball of radius {radius}"), n, cap)),
        None => Err(Error::resource(alloc::format!("ball of radius {radius}"), u64::MAX, cap)),
    }
}

/// Position of a reduced word in the shortlex enumeration of its free group.
pub fn shortlex_index(word: &Word) -> u64 {
    ShortlexRanker::new(word.rank(), word.len()).index(word.letters().iter().copied(), word.len())
}

/// The word at a shortlex position.
pub fn word_at(index: u64, rank: usize) -> Word {
    let mut len = 0;
    let mut before = 0u64;
    loop {
        let s = sphere_size(len, rank).expect("shortlex index out of range");
        if index < before + s {
            break;
        }
        before += s;
        len += 1;
    }
    let ranker = ShortlexRanker::new(rank, len);
    Word::from_reduced(rank, ranker.unrank_in_sphere(index - before, len))
}

/// Ranking helper with precomputed powers of the branching factor.
pub(crate) struct ShortlexRanker {
    rank: usize,
    pow: Vec<u64>,
    offset: Vec<u64>,
}

impl ShortlexRanker {
    pub(crate) fn new(rank: usize, max_len: usize) -> Self {
        let branch = 2 * rank as u64 - 1;
        let mut pow = Vec::with_capacity(max_len + 1);
        let mut p = 1u64;
        for _ in 0..=max_len {
            pow.push(p);
            p = p.saturating_mul(branch);
        }
        let mut offset = Vec::with_capacity(max_len + 2);
        let mut acc = 0u64;
        offset.push(0);
        for l in 0..=max_len {
            acc = acc.saturating_add(sphere_size(l, rank).unwrap_or(u64::MAX));
            offset.push(acc);
        }
        ShortlexRanker { rank, pow, offset }
    }

    /// Index of a reduced word given as a letter iterator of length `len`.
    pub(crate) fn index(&self, letters: impl Iterator<Item = Letter>, len: usize) -> u64 {
        let mut r = self.offset[len];
        let mut prev: Option<Letter> = None;
        for (i, l) in letters.enumerate() {
            let code = l.code() as u64;
            let smaller = match prev {
                None => code,
                Some(p) => code - u64::from((p.inverse().code() as u64) < code),
            };
            r += smaller * self.pow[len - 1 - i];
            prev = Some(l);
        }
        r
    }

    fn unrank_in_sphere(&self, mut r: u64, len: usize) -> Vec<Letter> {
        let mut out = Vec::with_capacity(len);
        let mut prev: Option<Letter> = None;
        for i in 0..len {
            let block = self.pow[len - 1 - i];
            let mut digit = r / block;
            r %= block;
            let forbidden = prev.map(|p| p.inverse().code() as u64);
            if let Some(f) = forbidden {
                if digit >= f {
                    digit += 1;
                }
            }
            debug_assert!(digit < 2 * self.rank as u64);
            let l = Letter::from_code(digit as u8);
            out.push(l);
            prev = Some(l);
        }
        out
    }
}

/// Iterator over the ball in shortlex order.
pub struct BallIter {
    rank: usize,
    ranker: ShortlexRanker,
    next: u64,
    len: usize,
    end: u64,
}

/// Lazy shortlex iterator over the ball; fails like [`ball`] above the cap.
pub fn ball_iter(radius: usize, rank: usize, cap: u64) -> Result<BallIter> {
    let size = checked_ball_size(radius, rank, cap)?;
    Ok(BallIter::new(radius, rank, size))
}

impl BallIter {
    fn new(radius: usize, rank: usize, size: u64) -> Self {
        BallIter {
            rank,
            ranker: ShortlexRanker::new(rank, radius),
            next: 0,
            len: 0,
            end: size,
        }
    }
}

impl Iterator for BallIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.next >= self.end {
            return None;
        }
        while self.next >= self.ranker.offset[self.len + 1] {
            self.len += 1;
        }
        let within = self.next - self.ranker.offset[self.len];
        self.next += 1;
        Some(Word::from_reduced(
            self.rank,
            self.ranker.unrank_in_sphere(within, self.len),
        ))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_balls() {
        assert_eq!(ball(0, 2, DEFAULT_BALL_CAP).unwrap(), alloc::vec![Word::identity(2)]);
        assert_eq!(ball(1, 2, DEFAULT_BALL_CAP).unwrap().len(), 5);
        assert_eq!(ball(2, 2, DEFAULT_BALL_CAP).unwrap().len(), 17);
    }

    #[test]
    fn ball_sizes_rank_two() {
        for r in 0..=10 {
            assert_eq!(ball_size(r, 2), Some(2 * 3u64.pow(r as u32) - 1));
        }
        assert_eq!(ball_size(5, 1), Some(11));
    }

    #[test]
    fn ball_is_sorted_and_ranked() {
        let words = ball(4, 2, DEFAULT_BALL_CAP).unwrap();
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        for (i, w) in words.iter().enumerate() {
            assert_eq!(shortlex_index(w), i as u64);
            assert_eq!(&word_at(i as u64, 2), w);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(checked_ball_size(13, 2, DEFAULT_BALL_CAP).unwrap(), 3_188_645);
        let err = ball(14, 2, DEFAULT_BALL_CAP).unwrap_err();
        assert!(matches!(err, Error::Resource { cap: DEFAULT_BALL_CAP, .. }));
    }
}
