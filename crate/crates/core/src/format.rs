//! Input files for points and families, and text / JSON renderings of results.
//!
//! A point file is TOML:
//!
//! ```toml
//! n = 1
//! d = 2
//! field = "Q"          # or "Fp:7"
//! rows = [["1", "0", "0"], ["0", "1", "0"]]
//! ```
//!
//! A family file adds `kind = "family"` and writes each coefficient as a
//! polynomial in `t`, e.g. `"1 + 2*t - 1/3*t^2"`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use toml::Spanned;

use crate::error::{Error, Result};
use crate::exact::{Field, FieldKind, Fp, Ring, TPoly, Q};
use crate::ideals::IdealPresentation;
use crate::resultant::MapPoint;
use crate::strata::CensusTable;
use crate::wedge::{FamilyLimit, FamilyPoint, WedgeTuple};

/// A parsed point or family file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputPoint {
    Rational(MapPoint<Q>),
    Prime(MapPoint<Fp>),
    Family(FamilyPoint),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Str(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    kind: Option<Spanned<String>>,
    n: Spanned<i64>,
    d: Spanned<i64>,
    field: Option<Spanned<String>>,
    rows: Spanned<Vec<Spanned<Vec<Spanned<RawScalar>>>>>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.len(), |i| before.len() - i - 1)
        + 1;
    (line, column)
}

fn parse_error(text: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = line_col(text, offset);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parse a point or family document.
pub fn parse_point(text: &str) -> Result<InputPoint> {
    parse_point_as(text, None)
}

/// Parse a point document, reading the coefficients in `field` instead of
/// the field the document declares.
pub fn parse_point_as(text: &str, field: Option<FieldKind>) -> Result<InputPoint> {
    let raw: RawPoint = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        parse_error(text, offset, e.message().to_string())
    })?;
    let at = |span: std::ops::Range<usize>, msg: String| parse_error(text, span.start, msg);

    let n = *raw.n.get_ref();
    let d = *raw.d.get_ref();
    if n < 1 {
        return Err(at(raw.n.span(), format!("n must be at least 1, got {n}")));
    }
    if d < 0 {
        return Err(at(raw.d.span(), format!("d must be nonnegative, got {d}")));
    }
    let (n, d) = (n as usize, d as usize);
    let rows = raw.rows.get_ref();
    if rows.len() != n + 1 {
        return Err(at(
            raw.rows.span(),
            format!("expected n+1 = {} rows, found {}", n + 1, rows.len()),
        ));
    }
    for row in rows {
        if row.get_ref().len() != d + 1 {
            return Err(at(
                row.span(),
                format!(
                    "expected d+1 = {} coefficients, found {}",
                    d + 1,
                    row.get_ref().len()
                ),
            ));
        }
    }
    let family = match &raw.kind {
        None => false,
        Some(k) if k.get_ref() == "point" => false,
        Some(k) if k.get_ref() == "family" => true,
        Some(k) => {
            return Err(at(
                k.span(),
                format!(
                    "unknown kind {:?}, expected \"point\" or \"family\"",
                    k.get_ref()
                ),
            ))
        }
    };
    let kind = match &raw.field {
        _ if field.is_some() => field.unwrap_or(FieldKind::Rational),
        None => FieldKind::Rational,
        Some(f) => f
            .get_ref()
            .parse::<FieldKind>()
            .map_err(|e| at(f.span(), e))?,
    };
    let scalar_text = |s: &RawScalar| match s {
        RawScalar::Int(v) => v.to_string(),
        RawScalar::Str(s) => s.clone(),
    };
    let point_err = |e: Error| at(raw.rows.span(), e.to_string());

    if family {
        if kind != FieldKind::Rational {
            return Err(at(
                raw.field.as_ref().map_or(0..0, |f| f.span()),
                "families are only supported over Q".into(),
            ));
        }
        let mut parsed = Vec::new();
        for row in rows {
            let mut out = Vec::new();
            for c in row.get_ref() {
                out.push(
                    scalar_text(c.get_ref())
                        .parse::<TPoly>()
                        .map_err(|e| at(c.span(), e))?,
                );
            }
            parsed.push(out);
        }
        let point = MapPoint::from_rows(parsed).map_err(point_err)?;
        return Ok(InputPoint::Family(FamilyPoint::new(point)));
    }

    fn scalars<F: Field>(
        rows: &[Spanned<Vec<Spanned<RawScalar>>>],
        kind: FieldKind,
        text_of: impl Fn(&RawScalar) -> String,
        at: impl Fn(std::ops::Range<usize>, String) -> Error,
    ) -> Result<Vec<Vec<F>>> {
        rows.iter()
            .map(|row| {
                row.get_ref()
                    .iter()
                    .map(|c| F::parse_in(kind, &text_of(c.get_ref())).map_err(|e| at(c.span(), e)))
                    .collect()
            })
            .collect()
    }
    match kind {
        FieldKind::Rational => {
            let rows = scalars::<Q>(rows, kind, scalar_text, at)?;
            Ok(InputPoint::Rational(
                MapPoint::from_rows(rows).map_err(point_err)?,
            ))
        }
        FieldKind::Prime(_) => {
            let rows = scalars::<Fp>(rows, kind, scalar_text, at)?;
            Ok(InputPoint::Prime(
                MapPoint::from_rows(rows).map_err(point_err)?,
            ))
        }
    }
}

pub fn read_point(path: &Path, field: Option<FieldKind>) -> Result<InputPoint> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    parse_point_as(&text, field)
}

fn quoted_rows<R: Ring>(f: &MapPoint<R>) -> String {
    let rows: Vec<String> = f
        .polys()
        .iter()
        .map(|p| {
            let cs: Vec<String> = p.coeffs().iter().map(|c| format!("\"{c}\"")).collect();
            format!("[{}]", cs.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Render a point as a point file.
pub fn point_to_toml<F: Field>(f: &MapPoint<F>) -> String {
    format!(
        "n = {}\nd = {}\nfield = \"{}\"\nrows = {}\n",
        f.n(),
        f.d(),
        f.coeff(0, 0).kind(),
        quoted_rows(f)
    )
}

pub fn family_to_toml(f: &FamilyPoint) -> String {
    let fam = f.family();
    format!(
        "kind = \"family\"\nn = {}\nd = {}\nfield = \"Q\"\nrows = {}\n",
        fam.n(),
        fam.d(),
        quoted_rows(fam)
    )
}

/// Pretty JSON with keys in sorted order and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn point_json<R: Ring>(f: &MapPoint<R>) -> Value {
    let rows: Vec<Vec<String>> = f
        .polys()
        .iter()
        .map(|p| p.coeffs().iter().map(ToString::to_string).collect())
        .collect();
    json!({ "n": f.n(), "d": f.d(), "rows": rows, "display": f.to_string() })
}

pub fn wedge_json<R: Ring>(tuple: &WedgeTuple<R>) -> Value {
    let levels: Vec<Value> = tuple
        .levels
        .iter()
        .map(|v| {
            let coords: Vec<Value> = v
                .index_pairs()
                .zip(&v.coords)
                .map(|((rows, cols), c)| json!({ "rows": rows, "cols": cols, "value": c.to_string() }))
                .collect();
            json!({
                "level": v.level,
                "r": v.order,
                "shape": [v.shape.0, v.shape.1],
                "valuation": v.valuation,
                "nonzero": v.coords.iter().filter(|c| !c.is_zero()).count(),
                "coords": coords,
            })
        })
        .collect();
    json!({ "m": tuple.m, "levels": levels })
}

fn set_str(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// One header line per level, then `rows {..} cols {..}: value` per
/// coordinate. With `nonzero_only`, vanishing coordinates are skipped.
pub fn wedge_text<R: Ring>(tuple: &WedgeTuple<R>, nonzero_only: bool) -> String {
    let mut out = format!("m = {}\n", tuple.m);
    for v in &tuple.levels {
        let nz = v.coords.iter().filter(|c| !c.is_zero()).count();
        let _ = write!(
            out,
            "level {} (r = {}, {} coordinates, {} nonzero",
            v.level,
            v.order,
            v.coords.len(),
            nz
        );
        if let Some(val) = v.valuation {
            let _ = write!(out, ", valuation {val}");
        }
        out.push_str(")\n");
        for ((rows, cols), c) in v.index_pairs().zip(&v.coords) {
            if nonzero_only && c.is_zero() {
                continue;
            }
            let _ = writeln!(
                out,
                "  rows {} cols {}: {}",
                set_str(&rows),
                set_str(&cols),
                c
            );
        }
    }
    out
}

pub fn limit_json(limit: &FamilyLimit) -> Value {
    json!({
        "valuations": limit.valuations,
        "projection": point_json(&limit.projection),
        "tuple": wedge_json(&limit.tuple),
    })
}

/// Aligned table with a closing checksum row.
pub fn census_text(table: &CensusTable) -> String {
    let header = ["stratum", "torsion", "count", "prediction"];
    let mut lines: Vec<[String; 4]> = vec![header.map(String::from)];
    for r in &table.rows {
        lines.push([
            r.label.clone(),
            r.torsion_degree.to_string(),
            r.count.to_string(),
            r.prediction.map_or("-".into(), |p| p.to_string()),
        ]);
    }
    lines.push([
        "total".into(),
        String::new(),
        table.total.to_string(),
        format!("{} = |P^N|", table.projective_count),
    ]);
    let widths: Vec<usize> = (0..4)
        .map(|c| {
            lines
                .iter()
                .map(|l| l[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = format!(
        "census of N_{} for n = {} over F_{}\n",
        table.d, table.n, table.p
    );
    for (i, l) in lines.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<w0$}  {:>w1$}  {:>w2$}  {:>w3$}",
            l[0],
            l[1],
            l[2],
            l[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3]
        );
        if i == 0 || i + 2 == lines.len() {
            let total: usize = widths.iter().sum::<usize>() + 6;
            let _ = writeln!(out, "{}", "-".repeat(total));
        }
    }
    let _ = writeln!(
        out,
        "{}",
        if table.consistent() {
            "consistent: yes"
        } else {
            "consistent: NO"
        }
    );
    out
}

pub fn census_json(table: &CensusTable) -> Value {
    let mut v = serde_json::to_value(table).expect("serializable");
    v["checksum"] = json!({
        "total": table.total,
        "projective_count": table.projective_count,
        "matches": table.total == table.projective_count,
    });
    v["consistent"] = json!(table.consistent());
    v
}

pub fn ideal_json(ideal: &IdealPresentation) -> Value {
    json!({
        "ring": ideal.ring.names(),
        "provenance": ideal.provenance,
        "generators": ideal.generator_strings(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn point_round_trip() {
        let text = "n = 1\nd = 2\nfield = \"Q\"\nrows = [[\"1\", \"0\", \"0\"], [\"0\", \"1/2\", \"0\"]]\n";
        let InputPoint::Rational(f) = parse_point(text).unwrap() else {
            panic!("expected a rational point")
        };
        assert_eq!(f.coeff(1, 1), &crate::exact::q(1, 2));
        assert_eq!(point_to_toml(&f), text);
    }

    #[test]
    fn integers_and_prime_fields() {
        let text = "n = 1\nd = 1\nfield = \"Fp:5\"\nrows = [[1, 7], [\"2\", \"1/2\"]]\n";
        let InputPoint::Prime(f) = parse_point(text).unwrap() else {
            panic!("expected a point over F_5")
        };
        assert_eq!(f.coeff(0, 1).value(), 2);
        assert_eq!(f.coeff(1, 1).value(), 3);
        let InputPoint::Prime(g) = parse_point_as(
            "n = 1\nd = 0\nrows = [[3], [4]]\n",
            Some(FieldKind::Prime(3)),
        )
        .unwrap() else {
            panic!("expected an override to F_3")
        };
        assert_eq!(g.coeff(1, 0).value(), 1);
    }

    #[test]
    fn family_file() {
        let text = "kind = \"family\"\nn = 1\nd = 2\nrows = [[\"1\", 0, 0], [0, 1, \"t\"]]\n";
        let InputPoint::Family(f) = parse_point(text).unwrap() else {
            panic!("expected a family")
        };
        assert_eq!(f.family().coeff(1, 2), &TPoly::monomial(qi(1), 1));
        assert_eq!(
            parse_point(&family_to_toml(&f)).unwrap(),
            InputPoint::Family(f)
        );
    }

    fn error_position(text: &str) -> (usize, usize, String) {
        match parse_point(text) {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let (line, col, msg) =
            error_position("n = 1\nd = 1\nrows = [[\"0\", \"0\"], [\"0\", \"0\"]]\n");
        assert_eq!((line, col), (3, 8));
        assert!(msg.contains("zero"), "{msg}");
        let (line, col, _) =
            error_position("n = 1\nd = 1\nrows = [[\"1\", \"x\"], [\"0\", \"1\"]]\n");
        assert_eq!((line, col), (3, 15));
        let (line, _, _) =
            error_position("n = 1\nd = 2\nrows = [[\"1\", \"0\"], [\"0\", \"1\"]]\n");
        assert_eq!(line, 3);
        let (line, _, _) = error_position("n = 1\nd = 1\nrows = [[1, 0], [0, 1]\n");
        assert!(line >= 3);
        let (line, _, _) =
            error_position("n = 1\nd = 1\nfield = \"Fp:4\"\nrows = [[1, 0], [0, 1]]\n");
        assert_eq!(line, 3);
    }

    #[test]
    fn json_keys_are_sorted() {
        let s = canonical_json(&json!({"b": 1, "a": {"d": 2, "c": 3}}));
        assert_eq!(
            s,
            "{\n  \"a\": {\n    \"c\": 3,\n    \"d\": 2\n  },\n  \"b\": 1\n}\n"
        );
    }

    #[test]
    fn census_rendering() {
        let t = crate::strata::census(1, 1, 2, crate::strata::CENSUS_LIMIT).unwrap();
        let text = census_text(&t);
        assert!(text.contains("15 = |P^N|"), "{text}");
        assert!(text.ends_with("consistent: yes\n"));
        let v = census_json(&t);
        assert_eq!(v["checksum"]["matches"], json!(true));
    }

    #[test]
    fn wedge_rendering() {
        let f = MapPoint::from_rows(vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]]).unwrap();
        let t = crate::wedge::graph_point(&f, 0).unwrap();
        let text = wedge_text(&t, false);
        assert_eq!(
            text,
            "m = 0\nlevel 0 (r = 2, 1 coordinates, 1 nonzero)\n  rows {0,1} cols {0,1}: 1\n"
        );
        let v = wedge_json(&t);
        assert_eq!(v["levels"][0]["coords"][0]["rows"], json!([0, 1]));
    }
}
