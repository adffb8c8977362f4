//! Free groups: reduced words, Cayley-graph balls, and group-algebra arithmetic.

mod algebra;
mod ball;
mod word;

pub use algebra::{GroupAlgebraElement, SphereComponent};
pub use ball::{ball, ball_iter, ball_size, shortlex_index, sphere_size, word_at, BallIter, DEFAULT_BALL_CAP};
pub(crate) use ball::{checked_ball_size, ShortlexRanker};
pub use word::{Letter, Word, MAX_TEXT_RANK};
