//! Browser bindings for a few mapstrata computations. Every entry point
//! returns a JSON string, or throws a JS error carrying the message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use mapstrata::exact::{hp_gcd, Field};
use mapstrata::format::{self, InputPoint};
use mapstrata::hodge::{betti, e_m_closed, e_m_recursive, picard_check};
use mapstrata::{rank_profile, strata, MapPoint};

/// Enumeration cap for the in-browser census.
pub const WEB_CENSUS_LIMIT: u64 = 2_000_000;

/// Largest `d` and `n` accepted by [`hodge_table`].
pub const WEB_HODGE_MAX: usize = 12;

pub fn hodge_json(d: usize, n: usize) -> Result<String, String> {
    if d > WEB_HODGE_MAX || n > WEB_HODGE_MAX {
        return Err(format!("d and n are capped at {WEB_HODGE_MAX} here"));
    }
    let e = e_m_recursive(d, n).map_err(|e| e.to_string())?;
    let closed = e_m_closed(d, n).map_err(|e| e.to_string())?;
    let b = betti(d, n).map_err(|e| e.to_string())?;
    let picard = if d >= 1 {
        serde_json::to_value(picard_check(d, n).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
    } else {
        Value::Null
    };
    Ok(format::canonical_json(&json!({
        "d": d,
        "n": n,
        "coefficients": e.coeffs(),
        "closed_form_agrees": e == closed,
        "euler": b.euler,
        "picard": picard,
    })))
}

fn classify_point<F: Field>(f: &MapPoint<F>) -> Result<Value, String> {
    let d = f.d();
    let report = rank_profile(f, d + 1).map_err(|e| e.to_string())?;
    let gcd = hp_gcd(f.polys()).map_err(|e| e.to_string())?;
    Ok(json!({
        "point": f.to_string(),
        "torsion_degree": report.torsion_degree,
        "stratum": report.stratum.describe(d),
        "ranks": report.ranks,
        "gcd": gcd.to_string(),
        "oracle_agrees": gcd.degree() == report.torsion_degree,
    }))
}

pub fn classify_json(toml_text: &str) -> Result<String, String> {
    let value = match format::parse_point(toml_text).map_err(|e| e.to_string())? {
        InputPoint::Rational(f) => classify_point(&f)?,
        InputPoint::Prime(f) => classify_point(&f)?,
        InputPoint::Family(_) => return Err("expected a point, not a family".into()),
    };
    Ok(format::canonical_json(&value))
}

pub fn census_json(d: usize, n: usize, p: u32) -> Result<String, String> {
    let table = strata::census(d, n, p, WEB_CENSUS_LIMIT).map_err(|e| e.to_string())?;
    Ok(format::canonical_json(&format::census_json(&table)))
}

#[wasm_bindgen]
pub fn hodge_table(d: usize, n: usize) -> Result<String, JsError> {
    hodge_json(d, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(toml_text: &str) -> Result<String, JsError> {
    classify_json(toml_text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn census(d: usize, n: usize, p: u32) -> Result<String, JsError> {
    census_json(d, n, p).map_err(|e| JsError::new(&e))
}
