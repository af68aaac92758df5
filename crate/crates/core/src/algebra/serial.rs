//! Canonical JSON form of a [`FactoredRational`]:
//!
//! ```json
//! {"numerator": [[coeff_num, coeff_den, e_q, e_t], ...], "denominator": [[a, b], ...]}
//! ```
//!
//! Numerator terms are sorted by `(e_t, e_q)`; denominator pairs are sorted by
//! `(b, a)` and repeated according to multiplicity. Integers outside the
//! 53-bit safe range are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::factored::FactoredRational;
use super::laurent::{LaurentPoly, Monomial};
use crate::error::{Error, Result};

const SAFE_INT: i64 = (1 << 53) - 1;

pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) if v.abs() <= SAFE_INT => json!(v),
        _ => Value::String(n.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parameter(format!("expected an integer, found {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::Parameter(format!("expected an integer string, found {s:?}"))),
        other => Err(Error::Parameter(format!(
            "expected an integer, found {other}"
        ))),
    }
}

fn small_from_json(v: &Value) -> Result<i64> {
    int_from_json(v)?
        .to_i64()
        .ok_or_else(|| Error::Parameter(format!("exponent {v} out of range")))
}

pub fn to_json(x: &FactoredRational) -> Value {
    let numerator: Vec<Value> = x
        .numerator()
        .terms()
        .map(|(m, c)| json!([int_to_json(c.numer()), int_to_json(c.denom()), m.q, m.t]))
        .collect();
    let denominator: Vec<Value> = x.factors().map(|f| json!([f.a(), f.b()])).collect();
    json!({ "numerator": numerator, "denominator": denominator })
}

/// For `#[serde(serialize_with = ...)]` on struct fields.
pub fn serialize<S: serde::Serializer>(
    x: &FactoredRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&to_json(x), s)
}

pub fn from_json(v: &Value) -> Result<FactoredRational> {
    let bad = |what: &str| Error::Parameter(format!("malformed rational function: {what}"));
    let num = v
        .get("numerator")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing numerator"))?;
    let den = v
        .get("denominator")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing denominator"))?;
    let mut poly = LaurentPoly::zero();
    for term in num {
        let t = term
            .as_array()
            .filter(|t| t.len() == 4)
            .ok_or_else(|| bad("numerator term"))?;
        let d = int_from_json(&t[1])?;
        if d.is_zero() || d.is_negative() {
            return Err(bad("coefficient denominator must be positive"));
        }
        let c = BigRational::new(int_from_json(&t[0])?, d);
        poly.add_term(
            Monomial::new(small_from_json(&t[2])?, small_from_json(&t[3])?),
            c,
        );
    }
    let mut factors = Vec::with_capacity(den.len());
    for pair in den {
        let p = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| bad("denominator pair"))?;
        factors.push((small_from_json(&p[0])?, small_from_json(&p[1])?));
    }
    FactoredRational::new(poly, factors)
}
