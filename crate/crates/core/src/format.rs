//! The `wjf-1` text format: one form per file, exact rationals as strings,
//! exponents scaled by 4.

use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::Value;
use thiserror::Error;

use crate::fj::{Expansion, FJSeries, FjError, Lattice};
use crate::laurent::{Exponent, LaurentPoly};
use crate::rational::{self, Rational};

pub const FORMAT_TAG: &str = "wjf-1";
const EXP_DENOMINATOR: i64 = crate::laurent::EXP_DENOMINATOR as i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("field `{field}`: {detail}")]
    Field { field: String, detail: String },
    #[error(transparent)]
    Series(#[from] FjError),
}

fn field_err(field: &str, detail: impl Into<String>) -> FormatError {
    FormatError::Field { field: field.into(), detail: detail.into() }
}

fn offset_text(offset24: i64) -> String {
    rational::format(&Rational::new(offset24.into(), 24.into()))
}

/// Canonical serialization: fixed key order, one term per line, empty orders
/// omitted, LF line endings.
pub fn to_string(phi: &FJSeries) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format\": \"{FORMAT_TAG}\",");
    let _ = writeln!(out, "  \"lattice\": \"{}\",", phi.lattice().as_str());
    let _ = writeln!(out, "  \"weight\": {},", phi.weight());
    let _ = writeln!(out, "  \"index\": {},", phi.index());
    let _ = writeln!(out, "  \"rank\": {},", phi.rank());
    let _ = writeln!(out, "  \"exp_denominator\": {EXP_DENOMINATOR},");
    let _ = writeln!(out, "  \"q_offset\": \"{}\",", offset_text(phi.offset24()));
    let _ = writeln!(out, "  \"truncation\": {},", phi.truncation());
    let orders: Vec<(usize, &LaurentPoly)> = phi.coeffs().iter().enumerate().filter(|(_, p)| !p.is_zero()).collect();
    if orders.is_empty() {
        out.push_str("  \"coefficients\": []\n");
    } else {
        out.push_str("  \"coefficients\": [\n");
        for (i, (n, p)) in orders.iter().enumerate() {
            let _ = writeln!(out, "    [{n}, [");
            for (j, (e, c)) in p.terms().iter().enumerate() {
                let s = e.scaled();
                let sep = if j + 1 == p.len() { "" } else { "," };
                let _ = writeln!(out, "      [[{},{},{},{}], \"{}\"]{sep}", s[0], s[1], s[2], s[3], rational::format(c));
            }
            let sep = if i + 1 == orders.len() { "" } else { "," };
            let _ = writeln!(out, "    ]]{sep}");
        }
        out.push_str("  ]\n");
    }
    out.push_str("}\n");
    out
}

fn get<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| field_err(key, "missing"))
}

fn get_i64(obj: &serde_json::Map<String, Value>, key: &str) -> Result<i64, FormatError> {
    get(obj, key)?.as_i64().ok_or_else(|| field_err(key, "expected an integer"))
}

fn get_str<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a str, FormatError> {
    get(obj, key)?.as_str().ok_or_else(|| field_err(key, "expected a string"))
}

fn canonical_rational(field: &str, text: &str) -> Result<Rational, FormatError> {
    rational::parse_canonical(text)
        .filter(|v| rational::format(v) == text)
        .ok_or_else(|| field_err(field, format!("`{text}` is not a canonical rational")))
}

/// Parses and validates a `wjf-1` document.
pub fn parse(text: &str) -> Result<FJSeries, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| FormatError::Json("top level is not an object".into()))?;
    const KEYS: [&str; 9] = ["format", "lattice", "weight", "index", "rank", "exp_denominator", "q_offset", "truncation", "coefficients"];
    if let Some(extra) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(field_err(extra, "unknown field"));
    }
    let tag = get_str(obj, "format")?;
    if tag != FORMAT_TAG {
        return Err(field_err("format", format!("expected `{FORMAT_TAG}`, found `{tag}`")));
    }
    let lattice: Lattice = get_str(obj, "lattice")?.parse().map_err(|e: String| field_err("lattice", e))?;
    let weight = i32::try_from(get_i64(obj, "weight")?).map_err(|_| field_err("weight", "out of range"))?;
    let index = u32::try_from(get_i64(obj, "index")?).map_err(|_| field_err("index", "must be a nonnegative integer"))?;
    let rank = get_i64(obj, "rank")?;
    if rank != lattice.rank() as i64 {
        return Err(field_err("rank", format!("{rank} does not match lattice {lattice}")));
    }
    if get_i64(obj, "exp_denominator")? != EXP_DENOMINATOR {
        return Err(field_err("exp_denominator", "must be 4"));
    }
    let offset = canonical_rational("q_offset", get_str(obj, "q_offset")?)?;
    let scaled = &offset * Rational::from_integer(24.into());
    if !scaled.is_integer() {
        return Err(field_err("q_offset", "denominator must divide 24"));
    }
    let offset24 = i64::try_from(scaled.to_integer()).map_err(|_| field_err("q_offset", "out of range"))?;
    let truncation = usize::try_from(get_i64(obj, "truncation")?).map_err(|_| field_err("truncation", "must be nonnegative"))?;

    let mut coeffs = vec![LaurentPoly::zero(); truncation + 1];
    let list = get(obj, "coefficients")?.as_array().ok_or_else(|| field_err("coefficients", "expected a list"))?;
    let mut last_n: Option<usize> = None;
    for entry in list {
        let pair = entry.as_array().filter(|a| a.len() == 2).ok_or_else(|| field_err("coefficients", "entries are [n, terms]"))?;
        let n = pair[0].as_u64().ok_or_else(|| field_err("coefficients", "order must be a nonnegative integer"))? as usize;
        if n > truncation {
            return Err(field_err("coefficients", format!("order {n} exceeds truncation {truncation}")));
        }
        if last_n.is_some_and(|m| m >= n) {
            return Err(field_err("coefficients", format!("order {n} out of ascending order")));
        }
        last_n = Some(n);
        let terms = pair[1].as_array().ok_or_else(|| field_err("coefficients", "terms must be a list"))?;
        if terms.is_empty() {
            return Err(field_err("coefficients", format!("order {n} has no terms")));
        }
        let mut parsed: Vec<(Exponent, Rational)> = Vec::with_capacity(terms.len());
        for t in terms {
            let t = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| field_err("coefficients", "terms are [exponent, value]"))?;
            let ev = t[0].as_array().filter(|a| a.len() == 4).ok_or_else(|| field_err("coefficients", "exponent must have 4 entries"))?;
            let mut s = [0i32; 4];
            for (slot, v) in s.iter_mut().zip(ev) {
                *slot = v
                    .as_i64()
                    .and_then(|x| i32::try_from(x).ok())
                    .ok_or_else(|| field_err("coefficients", "exponent entries must be integers"))?;
            }
            let e = Exponent(s);
            let c = canonical_rational("coefficients", t[1].as_str().ok_or_else(|| field_err("coefficients", "value must be a string"))?)?;
            if c.is_zero() {
                return Err(field_err("coefficients", format!("zero coefficient at q^{n}, exponent {e}")));
            }
            if parsed.last().is_some_and(|(prev, _)| *prev >= e) {
                return Err(field_err("coefficients", format!("exponents at q^{n} not strictly increasing at {e}")));
            }
            parsed.push((e, c));
        }
        coeffs[n] = LaurentPoly::from_terms(parsed);
    }
    Ok(FJSeries::new(weight, index, lattice, Expansion::new(offset24, coeffs))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::build_omega;

    #[test]
    fn round_trip_is_byte_identical() {
        let omega = build_omega(2).unwrap();
        let text = to_string(&omega);
        let back = parse(&text).unwrap();
        assert_eq!(back, omega);
        assert_eq!(to_string(&back), text);
    }

    #[test]
    fn zero_series_has_empty_list() {
        let z = FJSeries::zero(-4, 1, Lattice::D3, 3);
        let text = to_string(&z);
        assert!(text.contains("\"coefficients\": []"));
        assert_eq!(parse(&text).unwrap(), z);
    }

    #[test]
    fn rejects_noncanonical_input() {
        let omega = build_omega(1).unwrap();
        let text = to_string(&omega);
        assert!(parse(&text.replace("\"wjf-1\"", "\"wjf-2\"")).is_err());
        assert!(parse(&text.replace("\"exp_denominator\": 4", "\"exp_denominator\": 2")).is_err());
        assert!(parse(&text.replace("\"rank\": 4", "\"rank\": 3")).is_err());
        assert!(parse(&text.replacen("\"1\"", "\"2/2\"", 1)).is_err());
        assert!(parse("{").is_err());
    }
}
