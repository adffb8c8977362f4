//! Resolving `--element` and `--eta` arguments.
//!
//! An argument starting with `[` (element) or `{` (fibered function) is
//! inline JSON. A few builtin elements are recognized by name:
//!
//! | name            | element                                       |
//! |-----------------|-----------------------------------------------|
//! | `generator-sum` | `Σ δ_s` over generators and their inverses    |
//! | `markov`        | the generator sum divided by `2k`             |
//! | `identity`      | `δ_e`                                         |
//! | `ball:R`        | uniform probability on the ball of radius `R` |
//! | `interval:N`    | uniform probability on `e, a, ..., a^(N-1)`   |
//!
//! Anything else is read as a path to a JSON file.

use std::fs;
use std::path::Path;

use hlslab_core::{ball, ExactComplex, FiberedFunction, GroupAlgebraElement, Rational, Word};
use num_traits::One;
use serde_json::Value;

use crate::error::{AppError, Result};
use crate::format::{element_from_json, fibered_from_json, generator_sum};

fn read_json(src: &str) -> Result<Value> {
    let text = if src.trim_start().starts_with(['[', '{']) {
        src.to_string()
    } else {
        let p = Path::new(src);
        fs::read_to_string(p).map_err(|e| AppError::unreadable(p, e))?
    };
    serde_json::from_str(&text).map_err(|e| AppError::format(src_label(src), e))
}

fn src_label(src: &str) -> String {
    if src.len() > 40 {
        format!("{}...", &src[..40])
    } else {
        src.to_string()
    }
}

fn uniform(rank: usize, words: Vec<Word>) -> Result<GroupAlgebraElement<Rational>> {
    let w = Rational::new(1.into(), (words.len() as i64).into());
    Ok(GroupAlgebraElement::from_terms(rank, words.into_iter().map(|x| (x, w.clone())))?)
}

fn parse_count(name: &str, arg: &str) -> Result<usize> {
    arg.parse()
        .map_err(|_| AppError::Input(format!("{name}: expected a non-negative integer, got {arg:?}")))
}

fn builtin(src: &str, rank: usize, ball_cap: u64) -> Result<Option<GroupAlgebraElement<Rational>>> {
    let (name, arg) = src.split_once(':').map_or((src, None), |(n, a)| (n, Some(a)));
    let x = match (name, arg) {
        ("generator-sum", None) => generator_sum(rank),
        ("markov", None) => generator_sum(rank).scale(&Rational::new(1.into(), (2 * rank as i64).into())),
        ("identity", None) => GroupAlgebraElement::delta(Word::identity(rank)),
        ("ball", Some(r)) => uniform(rank, ball(parse_count("ball", r)?, rank, ball_cap)?)?,
        ("interval", Some(n)) => {
            let n = parse_count("interval", n)?;
            if n == 0 {
                return Err(AppError::Input("interval: N must be at least 1".into()));
            }
            let words = (0..n)
                .map(|i| Word::from_signed(rank, &vec![1; i]))
                .collect::<Result<Vec<_>, _>>()?;
            uniform(rank, words)?
        }
        _ => return Ok(None),
    };
    Ok(Some(x))
}

/// Loads an element; `None` gives the generator sum.
pub fn load_element(src: Option<&str>, rank: usize, ball_cap: u64) -> Result<GroupAlgebraElement<ExactComplex>> {
    let src = src.unwrap_or("generator-sum");
    if let Some(x) = builtin(src, rank, ball_cap)? {
        return Ok(x.map(|c| ExactComplex::new(c.clone(), Rational::from_integer(0.into()))));
    }
    element_from_json(&read_json(src)?, rank)
}

pub fn load_fibered(src: &str, rank: usize) -> Result<FiberedFunction<ExactComplex>> {
    fibered_from_json(&read_json(src)?, rank)
}

/// Real part of every coefficient, or an input error naming `what`.
pub fn require_real(x: &GroupAlgebraElement<ExactComplex>, what: &str) -> Result<GroupAlgebraElement<Rational>> {
    crate::format::real_part(x).ok_or_else(|| AppError::Input(format!("{what} must have real coefficients")))
}

pub fn is_probability(x: &GroupAlgebraElement<Rational>) -> bool {
    x.coefficient_sum().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let x = load_element(Some("interval:4"), 1, 1 << 20).unwrap();
        assert_eq!(x.support_len(), 4);
        let b = require_real(&load_element(Some("ball:1"), 2, 1 << 20).unwrap(), "xi").unwrap();
        assert_eq!(b.support_len(), 5);
        assert!(is_probability(&b));
        let g = load_element(None, 2, 1 << 20).unwrap();
        assert_eq!(g.l1_norm(), 4.0);
        assert!(load_element(Some("ball:x"), 2, 1 << 20).is_err());
        assert!(load_element(Some("/no/such/file.json"), 2, 1 << 20).is_err());
    }

    #[test]
    fn inline_json() {
        let x = load_element(Some(r#"[["a", "1/2", "0"], ["A", "1/2", "0"]]"#), 2, 1 << 20).unwrap();
        assert!(x.is_self_adjoint());
    }
}
