//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Run with `cargo test -p mapstrata --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mapstrata::exact::{qi, Fp, Matrix, Ring, Q};
use mapstrata::hodge::{e_m_closed, e_m_recursive, picard_check};
use mapstrata::ideals::{
    chart_reduce, check_minor_extraction, check_row_relation, ideal_equal, minor_ideal,
    GroebnerGuard,
};
use mapstrata::sample;
use mapstrata::strata::{census, mul_matrix, phi, projective_points, psi, CENSUS_LIMIT};
use mapstrata::wedge::{family_limit, graph_point, wedge_coords};
use mapstrata::{build_resultant_matrix, rank_profile, torsion_degree, MapPoint};
use rand::Rng;

/// Every criterion is exact: no failing instance is tolerated.
const MAX_FAILURES: usize = 0;
const SEED: u64 = 20_241_016;

struct Outcome {
    failures: usize,
    detail: String,
}

fn criterion(id: u32, title: &str, budget: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let passed = out.failures == MAX_FAILURES && in_time;
    println!(
        "{} criterion {id}: {title} [{} failures, {:.2}s of {}s budget] {}",
        if passed { "PASS" } else { "FAIL" },
        out.failures,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        out.detail
    );
    passed
}

// ---------------------------------------------------------------------------
// independent oracles over F_p: plain coefficient vectors, no library code

fn poly_divides(h: &[u32], f: &[u32], p: u32) -> bool {
    // homogeneous division of f by h (same variable ordering), exact or not
    let lead = h.iter().position(|&c| c != 0).unwrap();
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let hinv = (1..p as u64)
        .find(|x| x * h[lead] as u64 % p as u64 == 1)
        .unwrap();
    let steps = f.len() - h.len() + 1;
    for s in 0..steps {
        let c = rem[s + lead] * hinv % p as u64;
        if c == 0 {
            continue;
        }
        for (j, &hj) in h.iter().enumerate() {
            rem[s + j] = (rem[s + j] + (p as u64 - c) * hj as u64 % p as u64) % p as u64;
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Largest degree of a form dividing every row, by exhausting candidate divisors.
fn brute_torsion(rows: &[Vec<u32>], p: u32) -> usize {
    let d = rows[0].len() - 1;
    for e in (1..=d).rev() {
        let total = (p as u64).pow(e as u32 + 1);
        for idx in 1..total {
            let mut h = Vec::with_capacity(e + 1);
            let mut x = idx;
            for _ in 0..=e {
                h.push((x % p as u64) as u32);
                x /= p as u64;
            }
            if rows
                .iter()
                .all(|r| r.iter().all(|&c| c == 0) || poly_divides(&h, r, p))
            {
                return e;
            }
        }
    }
    0
}

fn all_fp_points(d: usize, n: usize, p: u32) -> Vec<Vec<Vec<u32>>> {
    let len = (d + 1) * (n + 1);
    let mut out = Vec::new();
    for idx in 0..(p as u64).pow(len as u32) {
        let mut v = Vec::with_capacity(len);
        let mut x = idx;
        for _ in 0..len {
            v.push((x % p as u64) as u32);
            x /= p as u64;
        }
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            out.push(v.chunks(d + 1).map(<[u32]>::to_vec).collect());
        }
    }
    out
}

fn to_fp(rows: &[Vec<u32>], p: u32) -> MapPoint<Fp> {
    MapPoint::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&c| Fp::new(c as i64, p)).collect())
            .collect(),
    )
    .unwrap()
}

/// `A_{f,m}` rebuilt entry by entry from the product coefficients.
fn oracle_resultant(coeffs: &[Vec<Q>], m: usize) -> Matrix<Q> {
    let n1 = coeffs.len();
    let d = coeffs[0].len() - 1;
    let mut rows = Vec::new();
    for s in 0..=m {
        for c in coeffs {
            let mut row = vec![qi(0); d + m + 1];
            for (j, a) in c.iter().enumerate() {
                row[s + j] = a.clone();
            }
            rows.push(row);
        }
    }
    assert_eq!(rows.len(), (m + 1) * n1);
    Matrix::from_rows(d + m + 1, rows)
}

fn convolve(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![qi(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// ---------------------------------------------------------------------------

fn c1_rank_gcd() -> Outcome {
    let mut rng = sample::rng(SEED);
    let mut failures = 0;
    let mut total = 0;
    for d in 1..=3 {
        for n in 1..=3 {
            for _ in 0..1000 {
                let t = rng.gen_range(0..=d);
                let (_, _, f) = sample::planted(&mut rng, d, n, t, 6);
                total += 1;
                match rank_profile(&f, d + 2) {
                    Ok(r) if r.torsion_degree == t => {}
                    Ok(r) => {
                        failures += 1;
                        eprintln!("  {f}: torsion {} but planted {t}", r.torsion_degree);
                    }
                    Err(e) => {
                        failures += 1;
                        eprintln!("  {f}: {e}");
                    }
                }
            }
        }
    }
    Outcome {
        failures,
        detail: format!("{total} planted points, (d,n) in {{1,2,3}}^2"),
    }
}

fn c2_census() -> Outcome {
    let mut failures = 0;
    let mut notes = Vec::new();
    // (d, n, p) -> counts by torsion degree 0..=d
    let stated: [(usize, usize, u32, &[u64]); 3] = [
        (2, 1, 2, &[24, 18, 21]),
        (1, 1, 2, &[6, 9]),
        (1, 2, 2, &[42, 21]),
    ];
    for (d, n, p, expected) in stated {
        let table = match census(d, n, p, CENSUS_LIMIT) {
            Ok(t) => t,
            Err(e) => {
                failures += 1;
                notes.push(format!("({d},{n},{p}): {e}"));
                continue;
            }
        };
        let counts: Vec<u64> = table.rows.iter().map(|r| r.count).collect();
        // independent enumeration with brute-force divisor search
        let mut oracle = vec![0u64; d + 1];
        for pt in all_fp_points(d, n, p) {
            oracle[brute_torsion(&pt, p)] += 1;
        }
        if counts != expected || counts != oracle {
            failures += 1;
            notes.push(format!(
                "({d},{n},{p}): got {counts:?}, oracle {oracle:?}, stated {expected:?}"
            ));
        }
        if !table.consistent() || table.total != projective_points(p, (d + 1) * (n + 1) - 1) {
            failures += 1;
            notes.push(format!(
                "({d},{n},{p}): product predictions or checksum fail"
            ));
        }
    }
    // the stated factorizations 18 = 3*6 and 21 = 7*3
    let n1 = census(1, 1, 2, CENSUS_LIMIT).unwrap().interior();
    if projective_points(2, 1) * n1 != 18 || projective_points(2, 2) * projective_points(2, 1) != 21
    {
        failures += 1;
        notes.push("product factorization 18 = 3*6, 21 = 7*3 fails".into());
    }
    Outcome {
        failures,
        detail: if notes.is_empty() {
            "63 = 24+18+21 (18 = 3*6, 21 = 7*3), 15 = 6+9, 63 = 42+21".into()
        } else {
            notes.join("; ")
        },
    }
}

fn c3_hodge() -> Outcome {
    let mut failures = 0;
    let mut notes = Vec::new();
    for d in 0..=8 {
        for n in 1..=5 {
            let (a, b) = match (e_m_recursive(d, n), e_m_closed(d, n)) {
                (Ok(a), Ok(b)) => (a, b),
                (ra, rb) => {
                    failures += 1;
                    notes.push(format!("({d},{n}): {:?} / {:?}", ra.err(), rb.err()));
                    continue;
                }
            };
            let ok = a == b
                && a.is_palindromic()
                && a.coeff(0) == 1
                && a.degree() == Some((d + 1) * (n + 1) - 1);
            if !ok {
                failures += 1;
                notes.push(format!("({d},{n}): recursive {a}, closed {b}"));
            }
        }
    }
    Outcome {
        failures,
        detail: if notes.is_empty() {
            "d <= 8, 1 <= n <= 5".into()
        } else {
            notes.join("; ")
        },
    }
}

fn c4_picard() -> Outcome {
    let mut failures = 0;
    for n in 2..=5 {
        for d in 1..=8 {
            match picard_check(d, n) {
                Ok(r) if r.matches => {}
                other => {
                    failures += 1;
                    eprintln!("  picard ({d},{n}): {other:?}");
                }
            }
        }
    }
    let flagged: Vec<String> = (1..=8)
        .filter_map(|d| picard_check(d, 1).ok())
        .filter(|r| !r.matches)
        .map(|r| format!("d={}: {} vs {}", r.d, r.coefficient, r.expected))
        .collect();
    Outcome {
        failures,
        detail: format!(
            "2 <= n <= 5, 1 <= d <= 8; n = 1 finding (not a failure): {}",
            flagged.join(", ")
        ),
    }
}

fn c5_wedge_vanishing() -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    let mut check =
        |d: usize, torsion: usize, zero: bool, level: usize, what: &dyn Fn() -> String| {
            checked += 1;
            if zero != (torsion >= d - level) {
                failures += 1;
                eprintln!(
                    "  {}: level {level} zero = {zero}, torsion {torsion}",
                    what()
                );
            }
        };
    for (d, n) in [(1, 1), (2, 1), (1, 2)] {
        for pt in all_fp_points(d, n, 2) {
            let f = to_fp(&pt, 2);
            let t = brute_torsion(&pt, 2);
            for m in [d - 1, d] {
                for l in 0..d {
                    let zero = wedge_coords(&f, m, l).unwrap().is_zero();
                    check(d, t, zero, l, &|| format!("{f} over F_2, m = {m}"));
                }
            }
        }
    }
    let mut rng = sample::rng(SEED ^ 5);
    for d in 1..=3 {
        for n in 1..=2 {
            for _ in 0..200 {
                let t = rng.gen_range(0..=d);
                let (_, _, f) = sample::planted(&mut rng, d, n, t, 5);
                for m in [d - 1, d] {
                    for l in 0..d {
                        let zero = wedge_coords(&f, m, l).unwrap().is_zero();
                        check(d, t, zero, l, &|| format!("{f}, m = {m}"));
                    }
                }
            }
        }
    }
    Outcome {
        failures,
        detail: format!("{checked} (point, m, level) checks: exhaustive F_2 and 200 planted Q points per (d,n) <= (3,2)"),
    }
}

fn c6_functoriality() -> Outcome {
    let mut rng = sample::rng(SEED ^ 6);
    let mut failures = 0;
    let mut total = 0;
    for d in 1..=4 {
        for k in 0..d {
            for n in 1..=3 {
                for _ in 0..500 {
                    let h = sample::random_form(&mut rng, d - k, 5);
                    let g = sample::random_coprime(&mut rng, k, n, 5);
                    let m = rng.gen_range(0..=d);
                    let coeffs: Vec<Vec<Q>> = g
                        .polys()
                        .iter()
                        .map(|gi| convolve(gi.coeffs(), h.coeffs()))
                        .collect();
                    let oracle = oracle_resultant(&coeffs, m);
                    let f = phi(&h, &g).unwrap();
                    let direct = build_resultant_matrix(&f, m).matrix;
                    let factored = build_resultant_matrix(&g, m)
                        .matrix
                        .mul(&mul_matrix(&h, k + m).unwrap());
                    total += 1;
                    if direct != oracle || factored != oracle {
                        failures += 1;
                        eprintln!("  h = {h}, g = {g}, m = {m}");
                    }
                }
            }
        }
    }
    Outcome {
        failures,
        detail: format!("{total} pairs (h, g), d <= 4, n <= 3"),
    }
}

fn c7_ideals() -> Outcome {
    let guard = GroebnerGuard::default();
    let mut failures = 0;
    let mut findings = Vec::new();
    for (d, n) in [(1, 1), (2, 1), (1, 2)] {
        let base = minor_ideal(&chart_reduce(d, n, 0).unwrap(), 2).unwrap();
        for m in [1, 2] {
            let higher = minor_ideal(&chart_reduce(d, n, m).unwrap(), 2 + m).unwrap();
            match ideal_equal(&base, &higher, &guard) {
                Ok(true) => {}
                other => {
                    failures += 1;
                    eprintln!("  I_2(C_0) vs I_{}(C_{m}) for ({d},{n}): {other:?}", 2 + m);
                }
            }
        }
    }
    let mut printed_failed = Vec::new();
    let mut validating = std::collections::BTreeSet::new();
    for d in 1..=2 {
        for n in 1..=2 {
            for m in 1..=d + 1 {
                let ext = check_minor_extraction(d, n, m).unwrap();
                if !ext.passed() {
                    failures += 1;
                    eprintln!("  minor extraction ({d},{n},{m}) missing {:?}", ext.missing);
                }
                if m < d {
                    continue;
                }
                let rel = check_row_relation(d, n, m).unwrap();
                if !rel.resolved() {
                    failures += 1;
                    eprintln!("  row relation ({d},{n},{m}): no convention validates");
                }
                if !rel.printed_holds {
                    printed_failed.push(format!("({d},{n},{m})"));
                    let all: Vec<String> = rel
                        .validating()
                        .iter()
                        .map(|v| v.description.clone())
                        .collect();
                    validating.insert(all.join(" | "));
                }
            }
        }
    }
    if !printed_failed.is_empty() {
        findings.push(format!(
            "finding: row relation as printed fails at {}; validating convention(s): {}",
            printed_failed.join(" "),
            validating.into_iter().collect::<Vec<_>>().join(" ; ")
        ));
    }
    Outcome {
        failures,
        detail: format!(
            "I_2(C_0) = I_(2+m)(C_m) for m = 1,2; {}",
            findings.join("; ")
        ),
    }
}

fn c8_limits() -> Outcome {
    let mut rng = sample::rng(SEED ^ 8);
    let mut failures = 0;
    let mut interior_special = 0;
    for (d, n) in [(2, 1), (2, 2)] {
        for _ in 0..100 {
            let fam = sample::random_family(&mut rng, d, n, 4);
            for m in [d - 1, d] {
                let lim = match family_limit(&fam, m) {
                    Ok(l) => l,
                    Err(e) => {
                        failures += 1;
                        eprintln!("  family {}: {e}", fam.family());
                        continue;
                    }
                };
                if lim.tuple.levels.iter().any(|l| l.is_zero()) {
                    failures += 1;
                    eprintln!("  family {}: a limit level vanishes", fam.family());
                }
                let f0 = fam.special_fiber();
                if torsion_degree(&f0) == 0 {
                    interior_special += 1;
                    let g = graph_point(&f0, m).unwrap();
                    let same = g
                        .levels
                        .iter()
                        .zip(&lim.tuple.levels)
                        .all(|(a, b)| a.coords == b.coords);
                    if !same {
                        failures += 1;
                        eprintln!(
                            "  family {}: limit differs from graph_point(f(0))",
                            fam.family()
                        );
                    }
                }
            }
        }
    }
    Outcome {
        failures,
        detail: format!(
            "200 families, m in {{d-1, d}}; {interior_special} limits with interior special fiber"
        ),
    }
}

fn c9_round_trip() -> Outcome {
    let mut failures = 0;
    let mut boundary = 0;
    for pt in all_fp_points(2, 1, 2) {
        let f = to_fp(&pt, 2);
        if torsion_degree(&f) == 0 {
            continue;
        }
        boundary += 1;
        let ok = psi(&f)
            .and_then(|pair| phi(&pair.h, &pair.g))
            .is_ok_and(|b| b.projectively_eq(&f));
        if !ok {
            failures += 1;
            eprintln!("  round trip fails at {f} over F_2");
        }
    }
    let mut rng = sample::rng(SEED ^ 9);
    for _ in 0..500 {
        let d = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=3);
        let t = rng.gen_range(1..=d);
        let (_, _, f) = sample::planted(&mut rng, d, n, t, 6);
        let scaled = f.scale(&Q::new(3.into(), 7.into()));
        let ok = psi(&scaled)
            .and_then(|pair| {
                let lead_one = pair.h.coeffs().iter().find(|c| !Ring::is_zero(*c)) == Some(&qi(1));
                if lead_one {
                    phi(&pair.h, &pair.g)
                } else {
                    Err(mapstrata::Error::InternalInconsistency(
                        "h not monic".into(),
                    ))
                }
            })
            .is_ok_and(|b| b.projectively_eq(&f));
        if !ok {
            failures += 1;
            eprintln!("  round trip fails at {f}");
        }
    }
    Outcome {
        failures,
        detail: format!(
            "{boundary} boundary points of N_2 over F_2, 500 planted Q boundary points"
        ),
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(
            1,
            "rank criterion gives the planted gcd degree",
            secs(60),
            c1_rank_gcd,
        ),
        criterion(
            2,
            "F_p census matches the product structure",
            secs(10),
            c2_census,
        ),
        criterion(
            3,
            "recursive and closed Hodge polynomials agree",
            secs(5),
            c3_hodge,
        ),
        criterion(
            4,
            "Picard coefficient is d+1 for n >= 2",
            secs(5),
            c4_picard,
        ),
        criterion(
            5,
            "wedge levels vanish exactly on the strata",
            secs(120),
            c5_wedge_vanishing,
        ),
        criterion(6, "A_(g.h,m) = A_(g,m) L_h", secs(30), c6_functoriality),
        criterion(
            7,
            "determinantal ideal stability on the chart",
            secs(300),
            c7_ideals,
        ),
        criterion(
            8,
            "family limits exist and extend the graph",
            secs(120),
            c8_limits,
        ),
        criterion(9, "phi(psi(f)) = f", secs(30), c9_round_trip),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
