use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use mapstrata::exact::{hp_gcd, Field, FieldKind};
use mapstrata::format::{self, InputPoint};
use mapstrata::hodge::{
    betti, e_m_closed, e_m_recursive, e_n, picard_check, point_count_prediction,
};
use mapstrata::ideals::{
    chart_reduce, check_chart_reduction, check_minor_extraction, check_row_relation,
    groebner_basis, ideal_equal, minor_ideal, GroebnerGuard, IdealPresentation,
};
use mapstrata::strata::{self, CENSUS_LIMIT};
use mapstrata::wedge::{family_limit, graph_point};
use mapstrata::{rank_profile, Error, MapPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Status {
    Pass = 0,
    CheckFailed = 1,
    InputError = 2,
    Internal = 3,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::CheckFailed => "check_failed",
            Status::InputError => "input_error",
            Status::Internal => "internal_inconsistency",
        }
    }

    fn worst(self, other: Status) -> Status {
        if other as u8 > self as u8 {
            other
        } else {
            self
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: Value,
    /// Lines for stderr.
    pub errors: Vec<String>,
}

impl Outcome {
    fn new(status: Status, text: String, mut json: Value, failures: Vec<String>) -> Self {
        json["status"] = json!(status.name());
        json["failures"] = json!(failures);
        let errors = failures.iter().map(|f| format!("FAIL {f}")).collect();
        Outcome {
            status,
            text,
            json,
            errors,
        }
    }

    fn error(command: &str, e: &Error) -> Self {
        let status = match e {
            Error::InternalInconsistency(_) => Status::Internal,
            _ => Status::InputError,
        };
        let mut json = json!({ "command": command, "error": e.to_string() });
        json["status"] = json!(status.name());
        json["failures"] = json!([e.to_string()]);
        Outcome {
            status,
            text: String::new(),
            json,
            errors: vec![format!("error: {e}")],
        }
    }
}

fn parse_field(field: Option<&str>) -> Result<Option<FieldKind>, Error> {
    field
        .map(|s| s.parse::<FieldKind>().map_err(Error::InvalidParameter))
        .transpose()
}

fn load(file: &Path, field: Option<&str>) -> Result<InputPoint, Error> {
    format::read_point(file, parse_field(field)?)
}

pub fn classify(file: &Path, field: Option<&str>, k: Option<usize>) -> Outcome {
    let run = || -> Result<Outcome, Error> {
        match load(file, field)? {
            InputPoint::Rational(f) => classify_point(&f, k),
            InputPoint::Prime(f) => classify_point(&f, k),
            InputPoint::Family(_) => Err(Error::InvalidParameter(
                "classify takes a point file; use `limit` for families".into(),
            )),
        }
    };
    run().unwrap_or_else(|e| Outcome::error("classify", &e))
}

fn classify_point<F: Field>(f: &MapPoint<F>, k: Option<usize>) -> Result<Outcome, Error> {
    let d = f.d();
    let report = rank_profile(f, k.unwrap_or(d + 1))?;
    let gcd = hp_gcd(f.polys())?;
    let agrees = gcd.degree() == report.torsion_degree;
    let ranks: Vec<String> = report.ranks.iter().map(ToString::to_string).collect();
    let field = f.coeff(0, 0).kind().to_string();
    let mut text = String::new();
    let _ = writeln!(text, "point    {f}");
    let _ = writeln!(text, "field    {field}");
    let _ = writeln!(text, "torsion  {}", report.torsion_degree);
    let _ = writeln!(text, "stratum  {}", report.stratum.describe(d));
    let _ = writeln!(text, "gcd      {gcd}");
    let _ = writeln!(
        text,
        "ranks    {} (k = 0..{})",
        ranks.join(", "),
        report.ranks.len() - 1
    );
    let _ = writeln!(
        text,
        "oracle   {}",
        if agrees { "agrees" } else { "DISAGREES" }
    );
    let json = json!({
        "command": "classify",
        "field": field,
        "point": format::point_json(f),
        "torsion_degree": report.torsion_degree,
        "stratum": report.stratum.describe(d),
        "stratum_k": match report.stratum {
            mapstrata::Stratum::Interior => Value::Null,
            mapstrata::Stratum::Boundary { k } => json!(k),
        },
        "gcd": gcd.to_string(),
        "gcd_degree": gcd.degree(),
        "ranks": report.ranks,
        "oracle_agrees": agrees,
    });
    let (status, failures) = if agrees {
        (Status::Pass, vec![])
    } else {
        (
            Status::Internal,
            vec![format!(
                "gcd degree {} differs from torsion degree {}",
                gcd.degree(),
                report.torsion_degree
            )],
        )
    };
    Ok(Outcome::new(status, text, json, failures))
}

fn default_m(d: usize, m: Option<usize>) -> Result<usize, Error> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "wedge coordinates need d >= 1".into(),
        ));
    }
    Ok(m.unwrap_or(d - 1))
}

pub fn wedge(
    file: &Path,
    field: Option<&str>,
    m: Option<usize>,
    nonzero_only: bool,
    limit_only: bool,
) -> Outcome {
    let command = if limit_only { "limit" } else { "wedge" };
    let run = || -> Result<Outcome, Error> {
        let input = load(file, field)?;
        match input {
            InputPoint::Family(fam) => {
                let m = default_m(fam.d(), m)?;
                let lim = family_limit(&fam, m)?;
                let vals: Vec<String> = lim.valuations.iter().map(ToString::to_string).collect();
                let mut text = String::new();
                let _ = writeln!(text, "family      {}", fam.family());
                let _ = writeln!(text, "valuations  {}", vals.join(", "));
                let _ = writeln!(text, "projection  {}", lim.projection);
                text.push_str(&format::wedge_text(&lim.tuple, nonzero_only));
                let mut json = format::limit_json(&lim);
                json["command"] = json!(command);
                json["family"] = json!(fam.family().to_string());
                Ok(Outcome::new(Status::Pass, text, json, vec![]))
            }
            _ if limit_only => Err(Error::InvalidParameter(
                "limit needs a family file (kind = \"family\")".into(),
            )),
            InputPoint::Rational(f) => wedge_point(&f, m, nonzero_only),
            InputPoint::Prime(f) => wedge_point(&f, m, nonzero_only),
        }
    };
    run().unwrap_or_else(|e| Outcome::error(command, &e))
}

fn wedge_point<F: Field>(
    f: &MapPoint<F>,
    m: Option<usize>,
    nonzero_only: bool,
) -> Result<Outcome, Error> {
    let m = default_m(f.d(), m)?;
    let tuple = graph_point(f, m)?;
    let mut text = format!("point  {f}\n");
    text.push_str(&format::wedge_text(&tuple, nonzero_only));
    let mut json = format::wedge_json(&tuple);
    json["command"] = json!("wedge");
    json["point"] = format::point_json(f);
    Ok(Outcome::new(Status::Pass, text, json, vec![]))
}

pub fn census(d: usize, n: usize, p: u32, limit: Option<u64>) -> Outcome {
    match strata::census(d, n, p, limit.unwrap_or(CENSUS_LIMIT)) {
        Ok(table) => {
            let mut json = format::census_json(&table);
            json["command"] = json!("census");
            let mut failures = Vec::new();
            if table.total != table.projective_count {
                failures.push(format!(
                    "strata add up to {} but |P^N| = {}",
                    table.total, table.projective_count
                ));
            }
            for r in &table.rows {
                if let Some(pred) = r.prediction.filter(|&x| x != r.count) {
                    failures.push(format!(
                        "{}: count {} but product prediction {pred}",
                        r.label, r.count
                    ));
                }
            }
            let status = if failures.is_empty() {
                Status::Pass
            } else {
                Status::CheckFailed
            };
            Outcome::new(status, format::census_text(&table), json, failures)
        }
        Err(e) => Outcome::error("census", &e),
    }
}

struct Check {
    name: String,
    /// "pass", "fail", "finding", "skipped" or "experimental".
    verdict: &'static str,
    detail: String,
    extra: Value,
}

impl Check {
    fn new(name: String, verdict: &'static str, detail: String) -> Self {
        Check {
            name,
            verdict,
            detail,
            extra: Value::Null,
        }
    }
}

fn compare(
    name: String,
    a: Result<IdealPresentation, Error>,
    b: Result<IdealPresentation, Error>,
    guard: &GroebnerGuard,
    experimental: bool,
) -> Check {
    let result = a.and_then(|a| b.map(|b| (a, b))).and_then(|(a, b)| {
        let equal = ideal_equal(&a, &b, guard)?;
        let basis = groebner_basis(&a, guard)?;
        let other = groebner_basis(&b, guard)?;
        Ok((equal, basis, other))
    });
    match result {
        Ok((equal, basis, other)) => {
            let verdict = match (experimental, equal) {
                (true, _) => "experimental",
                (false, true) => "pass",
                (false, false) => "fail",
            };
            let detail = if experimental {
                format!(
                    "{} (experimental, not a theorem)",
                    if equal { "equal" } else { "different" }
                )
            } else if equal {
                format!("reduced basis {{{}}}", basis.generator_strings().join(", "))
            } else {
                format!(
                    "reduced bases differ: {{{}}} vs {{{}}}",
                    basis.generator_strings().join(", "),
                    other.generator_strings().join(", ")
                )
            };
            let mut c = Check::new(name, verdict, detail);
            c.extra = json!({
                "equal": equal,
                "basis_left": basis.generator_strings(),
                "basis_right": other.generator_strings(),
            });
            c
        }
        Err(Error::GuardExceeded(why)) => {
            Check::new(name, "skipped", format!("Groebner guard: {why}"))
        }
        Err(e) => Check::new(name, "fail", e.to_string()),
    }
}

pub fn ideals(
    d: usize,
    n: usize,
    m: usize,
    k: usize,
    experimental: bool,
    max_vars: Option<usize>,
    max_degree: Option<u32>,
) -> Outcome {
    if d == 0 || n == 0 || k >= d {
        return Outcome::error(
            "ideals",
            &Error::InvalidParameter(format!(
                "need d >= 1, n >= 1 and 0 <= k < d; got d = {d}, n = {n}, k = {k}"
            )),
        );
    }
    let defaults = GroebnerGuard::default();
    let guard = GroebnerGuard {
        max_vars: max_vars.unwrap_or(defaults.max_vars),
        max_degree: max_degree.unwrap_or(defaults.max_degree),
        ..defaults
    };
    let ideal =
        |size: usize, level: usize| chart_reduce(d, n, level).and_then(|c| minor_ideal(&c, size));
    let mut checks = Vec::new();

    checks.push(match check_chart_reduction(d, n, m) {
        Ok(true) => Check::new(format!("B_{m} reduces to C_{m}"), "pass", String::new()),
        Ok(false) => Check::new(
            format!("B_{m} reduces to C_{m}"),
            "fail",
            "substitution mismatch".into(),
        ),
        Err(e) => Check::new(format!("B_{m} reduces to C_{m}"), "fail", e.to_string()),
    });

    if k == 0 {
        checks.push(compare(
            format!("I_2(C_0) = I_{}(C_{m})", 2 + m),
            ideal(2, 0),
            ideal(2 + m, m),
            &guard,
            false,
        ));
    } else if m + 1 >= d {
        let base = d - 1;
        checks.push(compare(
            format!("I_{}(C_{base}) = I_{}(C_{m})", k + 2 + base, k + 2 + m),
            ideal(k + 2 + base, base),
            ideal(k + 2 + m, m),
            &guard,
            false,
        ));
    } else {
        checks.push(Check::new(
            format!("I_{}(C_{m})", k + 2 + m),
            "skipped",
            format!("stability for k > 0 is stated for m >= d-1 = {}", d - 1),
        ));
    }
    if m >= 2 && (k == 0 || m >= d) {
        checks.push(compare(
            format!("I_{}(C_{}) = I_{}(C_{m})", k + 1 + m, m - 1, k + 2 + m),
            ideal(k + 1 + m, m - 1),
            ideal(k + 2 + m, m),
            &guard,
            false,
        ));
    }

    if m >= d {
        let name = "row relation".to_string();
        checks.push(match check_row_relation(d, n, m) {
            Ok(r) if r.printed_holds => Check::new(name, "pass", "holds as printed".into()),
            Ok(r) if r.resolved() => {
                let conv: Vec<String> = r
                    .validating()
                    .iter()
                    .map(|v| v.description.clone())
                    .collect();
                let printed = r
                    .results
                    .iter()
                    .find(|c| c.convention == mapstrata::ideals::RowConvention::PRINTED)
                    .and_then(|c| c.offending.clone())
                    .unwrap_or_default();
                let mut c = Check::new(
                    name,
                    "finding",
                    format!(
                        "fails as printed ({printed}); holds as {}",
                        conv.join(" and as ")
                    ),
                );
                c.extra = serde_json::to_value(&r).unwrap_or(Value::Null);
                c
            }
            Ok(r) => {
                let mut c = Check::new(
                    name,
                    "fail",
                    "no nearby indexing convention validates".into(),
                );
                c.extra = serde_json::to_value(&r).unwrap_or(Value::Null);
                c
            }
            Err(e) => Check::new(name, "fail", e.to_string()),
        });
    }
    if m >= 1 {
        let name = format!("c_ij appear as {}x{} minors of C_{m}", m + 2, m + 2);
        checks.push(match check_minor_extraction(d, n, m) {
            Ok(r) if r.passed() => {
                let mut c = Check::new(
                    name,
                    "pass",
                    format!(
                        "{} of {} found",
                        r.witnesses.len(),
                        r.witnesses.len() + r.missing.len()
                    ),
                );
                c.extra = serde_json::to_value(&r).unwrap_or(Value::Null);
                c
            }
            Ok(r) => Check::new(name, "fail", format!("no minor found for {:?}", r.missing)),
            Err(e) => Check::new(name, "fail", e.to_string()),
        });
    }
    if experimental && k > 0 && m >= k {
        checks.push(compare(
            format!("I_{}(C_{k}) = I_{}(C_{m})", 2 * k + 2, k + 2 + m),
            ideal(2 * k + 2, k),
            ideal(k + 2 + m, m),
            &guard,
            true,
        ));
    }

    let mut text = format!(
        "determinantal ideals on the chart a_00 != 0, d = {d}, n = {n}, k = {k}, m = {m}\n"
    );
    let mut failures = Vec::new();
    let mut status = Status::Pass;
    for c in &checks {
        let tag = match c.verdict {
            "pass" => "PASS",
            "fail" => "FAIL",
            "finding" => "FINDING",
            "skipped" => "SKIPPED",
            _ => "EXPERIMENTAL",
        };
        let _ = write!(text, "{}: {tag}", c.name);
        if !c.detail.is_empty() {
            let _ = write!(text, " ({})", c.detail);
        }
        text.push('\n');
        match c.verdict {
            "fail" => {
                status = status.worst(Status::CheckFailed);
                failures.push(format!("{}: {}", c.name, c.detail));
            }
            "skipped" if c.detail.starts_with("Groebner guard") => {
                status = status.worst(Status::InputError);
                failures.push(format!("{}: {}", c.name, c.detail));
            }
            _ => {}
        }
    }
    let json = json!({
        "command": "ideals",
        "d": d, "n": n, "m": m, "k": k,
        "ring": mapstrata::ideals::chart_ring(d, n).names(),
        "checks": checks.iter().map(|c| json!({
            "name": c.name,
            "verdict": c.verdict,
            "detail": c.detail,
            "data": c.extra,
        })).collect::<Vec<_>>(),
    });
    Outcome::new(status, text, json, failures)
}

pub fn hodge(d: usize, n: usize, primes: &[i64]) -> Outcome {
    let run = || -> Result<Outcome, Error> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let rec = e_m_recursive(d, n)?;
        let closed = e_m_closed(d, n)?;
        let table = betti(d, n)?;
        let picard = if d >= 1 {
            Some(picard_check(d, n)?)
        } else {
            None
        };
        let mut failures = Vec::new();
        let mut status = Status::Pass;
        if rec != closed {
            status = Status::Internal;
            failures.push(format!("recursive {rec} differs from closed {closed}"));
        }
        if let Some(p) = picard.as_ref().filter(|p| !p.matches && n >= 2) {
            status = Status::Internal;
            failures.push(format!(
                "coefficient of L is {} but d+1 = {}",
                p.coefficient, p.expected
            ));
        }
        let coeffs: Vec<String> = rec.coeffs().iter().map(ToString::to_string).collect();
        let mut text = String::new();
        let _ = writeln!(text, "e(M_{d}) for n = {n}");
        let _ = writeln!(text, "  coefficients  ({})", coeffs.join(", "));
        let _ = writeln!(text, "  polynomial    {rec}");
        let _ = writeln!(text, "  e(N_{d})        {}", e_n(d, n));
        let _ = writeln!(
            text,
            "  closed form   {}",
            if rec == closed { "agrees" } else { "DISAGREES" }
        );
        let _ = writeln!(
            text,
            "  Betti b_2i    {} (odd Betti numbers vanish)",
            coeffs.join(" ")
        );
        let _ = writeln!(text, "  Euler char.   {}", table.euler);
        if let Some(p) = &picard {
            let note = match (p.matches, n) {
                (true, _) => "matches".to_string(),
                (false, 1) => {
                    "mismatch flagged: for n = 1 the centers with d-k = 1 are divisors".to_string()
                }
                (false, _) => "MISMATCH".to_string(),
            };
            let _ = writeln!(
                text,
                "  Picard        coefficient of L is {}, d+1 = {} ({note})",
                p.coefficient, p.expected
            );
        }
        let mut predictions = Vec::new();
        for &q in primes {
            let value = point_count_prediction(d, n, q)?;
            let _ = writeln!(text, "  prediction    |M_{d}(F_{q})| = {value}");
            predictions.push(json!({ "q": q, "prediction": value.to_string() }));
        }
        let json = json!({
            "command": "hodge",
            "d": d,
            "n": n,
            "coefficients": rec.coeffs(),
            "polynomial": rec.to_string(),
            "e_n": e_n(d, n).coeffs(),
            "closed_agrees": rec == closed,
            "betti_even": table.even,
            "euler": table.euler,
            "picard": picard,
            "predictions": predictions,
        });
        Ok(Outcome::new(status, text, json, failures))
    };
    run().unwrap_or_else(|e| Outcome::error("hodge", &e))
}

pub fn selftest(seed: u64) -> Outcome {
    let results = mapstrata::selftest::run(seed);
    let mut text = String::new();
    let mut failures = Vec::new();
    for r in &results {
        let _ = writeln!(
            text,
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        if !r.passed {
            failures.push(format!("{}: {}", r.name, r.detail));
        }
    }
    let status = if failures.is_empty() {
        Status::Pass
    } else {
        Status::CheckFailed
    };
    Outcome::new(
        status,
        text,
        json!({ "command": "selftest", "seed": seed, "checks": results }),
        failures,
    )
}
