//! JSON forms of group-algebra elements and fibered functions.
//!
//! An element is an array of `[word, re, im]` triples with words over
//! `a, A, b, B, ...` (`"e"` is the identity). Coefficients are JSON numbers
//! in floating mode and `"p/q"` strings in rational mode; the parser accepts
//! both and converts numbers exactly.

use std::collections::BTreeMap;

use hlslab_core::{ExactComplex, FiberedFunction, GroupAlgebraElement, Rational, Word};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{AppError, Result};

fn rational_from_value(v: &Value, context: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|e| AppError::format(context, format!("{s:?}: {e}"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                let f = n.as_f64().ok_or_else(|| AppError::format(context, "number out of range"))?;
                Rational::from_float(f).ok_or_else(|| AppError::format(context, format!("{f} is not finite")))
            }
        }
        other => Err(AppError::format(context, format!("expected a number or \"p/q\", got {other}"))),
    }
}

fn rational_to_value(r: &Rational) -> Value {
    Value::String(if r.denom().is_one() {
        r.numer().to_string()
    } else {
        r.to_string()
    })
}

fn f64_to_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn complex_from_pair(re: &Value, im: &Value, context: &str) -> Result<ExactComplex> {
    Ok(ExactComplex::new(
        rational_from_value(re, context)?,
        rational_from_value(im, context)?,
    ))
}

/// Parses an element in either mode; coefficients become exact.
pub fn element_from_json(v: &Value, rank: usize) -> Result<GroupAlgebraElement<ExactComplex>> {
    let arr = v
        .as_array()
        .ok_or_else(|| AppError::format("element", "expected an array of [word, re, im] triples"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for (i, t) in arr.iter().enumerate() {
        let ctx = format!("element term {i}");
        let t = t
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| AppError::format(&ctx, "expected [word, re, im]"))?;
        let w = t[0]
            .as_str()
            .ok_or_else(|| AppError::format(&ctx, "word must be a string"))?;
        let word = Word::parse(rank, w)?;
        terms.push((word, complex_from_pair(&t[1], &t[2], &ctx)?));
    }
    Ok(GroupAlgebraElement::from_terms(rank, terms)?)
}

/// Rational mode: coefficients as exact strings.
pub fn element_to_json(x: &GroupAlgebraElement<ExactComplex>) -> Result<Value> {
    let terms = x
        .iter()
        .map(|(w, c)| Ok(json!([w.to_text()?, rational_to_value(&c.re), rational_to_value(&c.im)])))
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(terms))
}

/// Floating mode: coefficients as JSON numbers.
pub fn element_to_json_f64(x: &GroupAlgebraElement<Complex64>) -> Result<Value> {
    let terms = x
        .iter()
        .map(|(w, c)| Ok(json!([w.to_text()?, f64_to_value(c.re), f64_to_value(c.im)])))
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(terms))
}

/// The real part, if every imaginary part vanishes.
pub fn real_part(x: &GroupAlgebraElement<ExactComplex>) -> Option<GroupAlgebraElement<Rational>> {
    x.iter()
        .all(|(_, c)| c.im.is_zero())
        .then(|| x.map(|c| c.re.clone()))
}

/// `{tail, threshold, overrides: {n: [[re, im], ...]}}`, rational mode.
pub fn fibered_to_json(f: &FiberedFunction<ExactComplex>) -> Result<Value> {
    let mut overrides = Map::new();
    for (n, values) in f.overrides() {
        let dense = values
            .iter()
            .map(|c| json!([rational_to_value(&c.re), rational_to_value(&c.im)]))
            .collect();
        overrides.insert(n.to_string(), Value::Array(dense));
    }
    Ok(json!({
        "tail": element_to_json(f.tail())?,
        "threshold": f.threshold(),
        "overrides": overrides,
    }))
}

pub fn fibered_from_json(v: &Value, rank: usize) -> Result<FiberedFunction<ExactComplex>> {
    let obj = v
        .as_object()
        .ok_or_else(|| AppError::format("fibered function", "expected an object"))?;
    let tail = element_from_json(obj.get("tail").unwrap_or(&Value::Array(Vec::new())), rank)?;
    let threshold = obj
        .get("threshold")
        .and_then(Value::as_u64)
        .ok_or_else(|| AppError::format("fibered function", "threshold must be a non-negative integer"))?;
    let mut overrides = BTreeMap::new();
    if let Some(o) = obj.get("overrides") {
        let o = o
            .as_object()
            .ok_or_else(|| AppError::format("overrides", "expected an object keyed by level"))?;
        for (k, dense) in o {
            let ctx = format!("override {k}");
            let n: usize = k.parse().map_err(|e| AppError::format(&ctx, e))?;
            let dense = dense
                .as_array()
                .ok_or_else(|| AppError::format(&ctx, "expected an array of [re, im] pairs"))?;
            let values = dense
                .iter()
                .map(|p| match p.as_array().map(Vec::as_slice) {
                    Some([re, im]) => complex_from_pair(re, im, &ctx),
                    _ => Err(AppError::format(&ctx, "expected [re, im]")),
                })
                .collect::<Result<Vec<_>>>()?;
            overrides.insert(n, values);
        }
    }
    Ok(FiberedFunction::new(tail, threshold as usize, overrides)?)
}

/// `δ_a + δ_a⁻¹ + δ_b + δ_b⁻¹ + ...`.
pub fn generator_sum(rank: usize) -> GroupAlgebraElement<Rational> {
    let terms = (0..rank).flat_map(|i| {
        let w = Word::generator(rank, i).expect("generator index below rank");
        [(w.inverse(), Rational::one()), (w, Rational::one())]
    });
    GroupAlgebraElement::from_terms(rank, terms).expect("same rank")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip_is_exact() {
        let v: Value = serde_json::from_str(r#"[["ab", "1/3", "-2/7"], ["e", 2, 0], ["B", 0.5, "0"]]"#).unwrap();
        let x = element_from_json(&v, 2).unwrap();
        let back = element_to_json(&x).unwrap();
        assert_eq!(element_from_json(&back, 2).unwrap(), x);
        assert_eq!(back[0], json!(["e", "2", "0"]));
        assert_eq!(back[1][1], json!("1/2"));
    }

    #[test]
    fn rejects_malformed_terms() {
        for bad in [r#"{"a": 1}"#, r#"[["a", 1]]"#, r#"[["x", 1, 0]]"#, r#"[["a", "1/0", 0]]"#, r#"[["a", true, 0]]"#] {
            let v: Value = serde_json::from_str(bad).unwrap();
            assert!(element_from_json(&v, 2).is_err(), "{bad}");
        }
    }

    #[test]
    fn fibered_round_trip() {
        let v: Value = serde_json::from_str(
            r#"{"tail": [["a", "1", "0"]], "threshold": 3, "overrides": {"2": [["1/2", "0"], ["0", "0"], ["0", "1"], ["0", "0"]]}}"#,
        )
        .unwrap();
        let f = fibered_from_json(&v, 2).unwrap();
        assert_eq!(f.threshold(), 3);
        let back = fibered_to_json(&f).unwrap();
        assert_eq!(fibered_from_json(&back, 2).unwrap(), f);
    }
}
