use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest rank with a textual alphabet (`a`..`d`, capitals for inverses;
/// `e` is reserved for the identity).
pub const MAX_TEXT_RANK: usize = 4;

/// A generator or its inverse.
///
/// Letters are ordered by `2 * generator + inverse`, so for rank 2 the order
/// is `a < A < b < B`. Shortlex order on words is built on this.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const fn new(generator: u8, inverse: bool) -> Self {
        Letter(2 * generator + inverse as u8)
    }

    pub const fn from_code(code: u8) -> Self {
        Letter(code)
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    pub const fn generator(self) -> u8 {
        self.0 >> 1
    }

    pub const fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Signed index convention: `+(i+1)` for generator `i`, `-(i+1)` for its inverse.
    pub fn from_signed(index: i32) -> Result<Self> {
        if index == 0 || index.unsigned_abs() > 127 {
            return Err(Error::input(alloc::format!("invalid signed generator index {index}")));
        }
        Ok(Letter::new(index.unsigned_abs() as u8 - 1, index < 0))
    }

    pub fn to_signed(self) -> i32 {
        let g = self.generator() as i32 + 1;
        if self.is_inverse() {
            -g
        } else {
            g
        }
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator()) as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if (self.generator() as usize) < MAX_TEXT_RANK {
            write!(f, "{}", self.to_char())
        } else {
            write!(f, "{}", self.to_signed())
        }
    }
}

/// A freely reduced word in the free group of a given rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u8,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        assert!((1..=127).contains(&rank), "free group rank must be in 1..=127");
        Word {
            rank: rank as u8,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, generator: usize) -> Result<Self> {
        Self::reduce(rank, [Letter::new(generator as u8, false)])
    }

    /// Freely reduces a raw letter sequence.
    pub fn reduce(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        if !(1..=127).contains(&rank) {
            return Err(Error::input(alloc::format!("free group rank {rank} out of range")));
        }
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.generator() as usize >= rank {
                return Err(Error::input(alloc::format!(
                    "generator index {} invalid for rank {rank}",
                    l.generator()
                )));
            }
            push_reduced(&mut out, l);
        }
        Ok(Word {
            rank: rank as u8,
            letters: out,
        })
    }

    pub fn from_signed(rank: usize, indices: &[i32]) -> Result<Self> {
        let letters = indices
            .iter()
            .map(|&i| Letter::from_signed(i))
            .collect::<Result<Vec<_>>>()?;
        Self::reduce(rank, letters)
    }

    /// Parses the textual form: `e` for the identity, otherwise letters
    /// `a`..`d` with capitals for inverses. The input is freely reduced.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" {
            return Ok(Self::identity(rank));
        }
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let lower = ch.to_ascii_lowercase();
            if !lower.is_ascii_lowercase() || lower >= 'e' {
                return Err(Error::input(alloc::format!("invalid letter {ch:?} in word {s:?}")));
            }
            letters.push(Letter::new(lower as u8 - b'a', ch.is_ascii_uppercase()));
        }
        if letters.is_empty() {
            return Err(Error::input("empty word string; use \"e\" for the identity"));
        }
        Self::reduce(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same as [`Word::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::input(alloc::format!(
                "rank mismatch: {} vs {}",
                self.rank, other.rank
            )));
        }
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(Word {
            rank: self.rank,
            letters: out,
        })
    }

    /// `self * other` for words already known to share a rank.
    pub(crate) fn mul_unchecked(&self, other: &Word) -> Self {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.letters);
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word {
            rank: self.rank,
            letters: out,
        }
    }

    pub(crate) fn from_reduced(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0].inverse() != w[1]));
        Word {
            rank: rank as u8,
            letters,
        }
    }

    pub fn to_text(&self) -> Result<String> {
        if self.rank() > MAX_TEXT_RANK {
            return Err(Error::input(alloc::format!(
                "textual words support rank <= {MAX_TEXT_RANK}, got {}",
                self.rank
            )));
        }
        if self.is_identity() {
            return Ok(String::from("e"));
        }
        Ok(self.letters.iter().map(|l| l.to_char()).collect())
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Shortlex: shorter words first, then lexicographic by letter code.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.rank.cmp(&other.rank))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        for l in &self.letters {
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
