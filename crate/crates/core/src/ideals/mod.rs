//! Symbolic resultant matrices on the chart `a_00 ≠ 0` and their minor ideals.

mod groebner;

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

pub use groebner::{groebner_basis, ideal_contains, ideal_equal, GroebnerGuard};

use crate::error::{Error, Result};
use crate::exact::{colex_subsets, Matrix, MultiPoly, PolyRing, Ring, Q};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A matrix of polynomials over a declared variable ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    pub ring: Arc<PolyRing>,
    pub matrix: Matrix<MultiPoly>,
    pub label: String,
}

impl SymbolicMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// Substitute rational values for all variables.
    pub fn specialize(&self, point: &[Q]) -> Matrix<Q> {
        self.matrix.map(|p| p.eval(point))
    }
}

/// Generators of an ideal, with a note on where they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub ring: Arc<PolyRing>,
    pub generators: Vec<MultiPoly>,
    pub provenance: String,
}

impl IdealPresentation {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<MultiPoly>, provenance: &str) -> Self {
        IdealPresentation {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            provenance: provenance.to_string(),
        }
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }
}

/// `ℚ[c_0_1 .. c_0_d, c_1_1 .. c_n_d]`.
pub fn chart_ring(d: usize, n: usize) -> Arc<PolyRing> {
    let mut names = Vec::with_capacity((n + 1) * d);
    for i in 0..=n {
        for j in 1..=d {
            names.push(format!("c_{i}_{j}"));
        }
    }
    PolyRing::new(names)
}

fn c_var(ring: &Arc<PolyRing>, d: usize, i: usize, j: usize) -> MultiPoly {
    MultiPoly::var(ring, i * d + (j - 1))
}

fn block_toeplitz(
    ring: &Arc<PolyRing>,
    n: usize,
    d: usize,
    m: usize,
    entry: impl Fn(usize, usize) -> MultiPoly,
) -> Matrix<MultiPoly> {
    let n1 = n + 1;
    let mut out = Matrix::filled((m + 1) * n1, d + m + 1, MultiPoly::zero(ring));
    for s in 0..=m {
        for i in 0..n1 {
            for j in 0..=d {
                out.set(s * n1 + i, s + j, entry(i, j));
            }
        }
    }
    out
}

/// The reduced chart matrix `C_{f,m}`: block-Toeplitz with first block
/// `[[1, c_0_1, .., c_0_d], [0, c_i_1, .., c_i_d]]`.
pub fn chart_reduce(d: usize, n: usize, m: usize) -> Result<SymbolicMatrix> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "chart matrices need d >= 1 and n >= 1, got d = {d}, n = {n}"
        )));
    }
    let ring = chart_ring(d, n);
    let matrix = block_toeplitz(&ring, n, d, m, |i, j| match (i, j) {
        (0, 0) => MultiPoly::constant(&ring, Q::one()),
        (_, 0) => MultiPoly::zero(&ring),
        (i, j) => c_var(&ring, d, i, j),
    });
    Ok(SymbolicMatrix {
        ring,
        matrix,
        label: format!("C_{m}"),
    })
}

/// The generic resultant matrix `A_{f,m}` over `ℚ[a_i_j]`.
pub fn generic_resultant(d: usize, n: usize, m: usize) -> SymbolicMatrix {
    let mut names = Vec::new();
    for i in 0..=n {
        for j in 0..=d {
            names.push(format!("a_{i}_{j}"));
        }
    }
    let ring = PolyRing::new(names);
    let matrix = block_toeplitz(&ring, n, d, m, |i, j| {
        MultiPoly::var(&ring, i * (d + 1) + j)
    });
    SymbolicMatrix {
        ring,
        matrix,
        label: format!("A_{m}"),
    }
}

/// The chart matrix `B_{f,m}`: `A_{f,m}` with `a_00 = 1`, over `ℚ[b_i_j]`
/// (all `(i, j) ≠ (0, 0)`).
pub fn chart_matrix(d: usize, n: usize, m: usize) -> SymbolicMatrix {
    let ring = b_ring(d, n);
    let matrix = block_toeplitz(&ring, n, d, m, |i, j| b_var(&ring, d, i, j));
    SymbolicMatrix {
        ring,
        matrix,
        label: format!("B_{m}"),
    }
}

fn b_ring(d: usize, n: usize) -> Arc<PolyRing> {
    let mut names = Vec::new();
    for i in 0..=n {
        for j in 0..=d {
            if (i, j) != (0, 0) {
                names.push(format!("b_{i}_{j}"));
            }
        }
    }
    PolyRing::new(names)
}

fn b_var(ring: &Arc<PolyRing>, d: usize, i: usize, j: usize) -> MultiPoly {
    if (i, j) == (0, 0) {
        MultiPoly::constant(ring, Q::one())
    } else {
        MultiPoly::var(ring, i * (d + 1) + j - 1)
    }
}

/// Replace each variable of `p` by the corresponding polynomial in `images`.
pub fn substitute(p: &MultiPoly, images: &[MultiPoly], target: &Arc<PolyRing>) -> MultiPoly {
    let mut out = MultiPoly::zero(target);
    for (mono, c) in p.terms() {
        let mut t = MultiPoly::constant(target, c.clone());
        for (v, &e) in mono.0.iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&images[v]);
            }
        }
        out = out.add(&t);
    }
    out
}

/// Checks that subtracting `b_i0 · row(s,0)` from each `row(s,i)` of
/// `B_{f,m}` gives `C_{f,m}` under `c_0j = b_0j`, `c_ij = b_ij - b_i0 b_0j`.
pub fn check_chart_reduction(d: usize, n: usize, m: usize) -> Result<bool> {
    let b = chart_matrix(d, n, m);
    let c = chart_reduce(d, n, m)?;
    let n1 = n + 1;
    let mut reduced = b.matrix.clone();
    for s in 0..=m {
        for i in 1..n1 {
            let factor = b_var(&b.ring, d, i, 0);
            for col in 0..reduced.cols() {
                let v = reduced
                    .get(s * n1 + i, col)
                    .sub(&factor.mul(b.matrix.get(s * n1, col)));
                reduced.set(s * n1 + i, col, v);
            }
        }
    }
    let mut images = Vec::new();
    for i in 0..=n {
        for j in 1..=d {
            let bij = b_var(&b.ring, d, i, j);
            images.push(if i == 0 {
                bij
            } else {
                bij.sub(&b_var(&b.ring, d, i, 0).mul(&b_var(&b.ring, d, 0, j)))
            });
        }
    }
    let substituted = c.matrix.map(|p| substitute(p, &images, &b.ring));
    Ok(substituted == reduced)
}

/// All nonzero `r x r` minors, rows outer and columns inner in colex order,
/// with repeats up to a scalar factor dropped.
pub fn minor_ideal(m: &SymbolicMatrix, r: usize) -> Result<IdealPresentation> {
    if r == 0 || r > m.rows().min(m.cols()) {
        return Err(Error::InvalidParameter(format!(
            "minor size {r} outside 1..={} for a {}x{} matrix",
            m.rows().min(m.cols()),
            m.rows(),
            m.cols()
        )));
    }
    let row_sets: Vec<Vec<usize>> = colex_subsets(m.rows(), r).collect();
    let col_sets: Vec<Vec<usize>> = colex_subsets(m.cols(), r).collect();
    let minors_for = |rows: &Vec<usize>| -> Vec<MultiPoly> {
        col_sets
            .iter()
            .map(|cols| crate::exact::laplace_det(&m.matrix.submatrix(rows, cols)))
            .collect()
    };
    #[cfg(feature = "parallel")]
    let blocks: Vec<Vec<MultiPoly>> = row_sets.par_iter().map(minors_for).collect();
    #[cfg(not(feature = "parallel"))]
    let blocks: Vec<Vec<MultiPoly>> = row_sets.iter().map(minors_for).collect();

    let mut seen = std::collections::HashSet::new();
    let mut gens = Vec::new();
    for g in blocks.into_iter().flatten() {
        if g.is_zero() {
            continue;
        }
        if seen.insert(g.monic().to_string()) {
            gens.push(g);
        }
    }
    Ok(IdealPresentation::new(
        &m.ring,
        gens,
        &format!("I_{r}({})", m.label),
    ))
}

/// One reading of the row relation
/// `row_i + Σ_j (σ c_{a,j} row_{j(n+1)+e} + c_{0j} row_{j(n+1)+g}) = 0`, rows 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RowConvention {
    /// `a = i - c_index_shift`.
    pub c_index_shift: usize,
    pub sign: i8,
    /// `e = i - 1` when false, `e = 1` (first row of block `j`) when true.
    pub c_row_block_lead: bool,
    /// `g = i` when false, `g = i - 1` when true.
    pub c0_row_shifted: bool,
}

impl RowConvention {
    /// The relation read literally: `c_{ij}`, plus sign, rows `j(n+1)+i-1` and `j(n+1)+i`.
    pub const PRINTED: RowConvention = RowConvention {
        c_index_shift: 0,
        sign: 1,
        c_row_block_lead: false,
        c0_row_shifted: false,
    };

    pub fn all() -> Vec<RowConvention> {
        let mut out = vec![];
        for c_index_shift in [0, 1] {
            for sign in [1, -1] {
                for c_row_block_lead in [false, true] {
                    for c0_row_shifted in [false, true] {
                        out.push(RowConvention {
                            c_index_shift,
                            sign,
                            c_row_block_lead,
                            c0_row_shifted,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        let a = if self.c_index_shift == 0 { "i" } else { "i-1" };
        let s = if self.sign > 0 { "+" } else { "-" };
        let e = if self.c_row_block_lead { "1" } else { "i-1" };
        let g = if self.c0_row_shifted { "i-1" } else { "i" };
        format!("row_i + sum_j ({s}c_({a},j) row_(j(n+1)+{e}) + c_(0,j) row_(j(n+1)+{g}))")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionResult {
    pub convention: RowConvention,
    pub description: String,
    pub holds: bool,
    /// First nonzero entry of the combined row, if any.
    pub offending: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowRelationReport {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub printed_holds: bool,
    pub results: Vec<ConventionResult>,
}

impl RowRelationReport {
    /// Conventions under which the relation holds.
    pub fn validating(&self) -> Vec<&ConventionResult> {
        self.results.iter().filter(|r| r.holds).collect()
    }

    /// The relation holds as printed, or some nearby convention validates.
    pub fn resolved(&self) -> bool {
        self.printed_holds || !self.validating().is_empty()
    }
}

fn evaluate_convention(
    c: &SymbolicMatrix,
    d: usize,
    n: usize,
    conv: RowConvention,
) -> ConventionResult {
    let n1 = n + 1;
    let total = c.rows();
    let row = |one_based: usize| -> Option<&[MultiPoly]> {
        (one_based >= 1 && one_based <= total).then(|| c.matrix.row(one_based - 1))
    };
    let fail = |why: String| ConventionResult {
        convention: conv,
        description: conv.describe(),
        holds: false,
        offending: Some(why),
    };
    for i in 2..=n1 {
        let a = i - conv.c_index_shift;
        if a > n {
            return fail(format!("i = {i}: coefficient c_({a},j) does not exist"));
        }
        let Some(base) = row(i) else {
            return fail(format!("i = {i}: row {i} out of range"));
        };
        let mut acc: Vec<MultiPoly> = base.to_vec();
        for j in 1..=d {
            let e = if conv.c_row_block_lead { 1 } else { i - 1 };
            let g = if conv.c0_row_shifted { i - 1 } else { i };
            let (Some(re), Some(rg)) = (row(j * n1 + e), row(j * n1 + g)) else {
                return fail(format!("i = {i}, j = {j}: row index beyond {total}"));
            };
            let mut cij = c_var(&c.ring, d, a, j);
            if conv.sign < 0 {
                cij = cij.neg();
            }
            let c0j = c_var(&c.ring, d, 0, j);
            for (col, v) in acc.iter_mut().enumerate() {
                *v = v.add(&cij.mul(&re[col])).add(&c0j.mul(&rg[col]));
            }
        }
        if let Some((col, v)) = acc.iter().enumerate().find(|(_, v)| !v.is_zero()) {
            return fail(format!("i = {i}: column {col} is {v}"));
        }
    }
    ConventionResult {
        convention: conv,
        description: conv.describe(),
        holds: true,
        offending: None,
    }
}

/// Evaluates the row-elimination relation on `C_{f,m}` under the printed
/// indexing and under each nearby convention.
pub fn check_row_relation(d: usize, n: usize, m: usize) -> Result<RowRelationReport> {
    if m < d {
        return Err(Error::InvalidParameter(format!(
            "row relation needs m >= d, got m = {m}, d = {d}"
        )));
    }
    let c = chart_reduce(d, n, m)?;
    let results: Vec<ConventionResult> = RowConvention::all()
        .into_iter()
        .map(|conv| evaluate_convention(&c, d, n, conv))
        .collect();
    let printed_holds = results
        .iter()
        .any(|r| r.convention == RowConvention::PRINTED && r.holds);
    Ok(RowRelationReport {
        d,
        n,
        m,
        printed_holds,
        results,
    })
}

/// A minor of `C_{f,m}` equal to `±c_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub i: usize,
    pub j: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorExtractionReport {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub witnesses: Vec<MinorWitness>,
    /// `(i, j)` with no witnessing minor.
    pub missing: Vec<(usize, usize)>,
}

impl MinorExtractionReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
    }
}

/// For each `c_ij`, searches the rows `(s,0)`, `s = 0..=m`, plus `(m,i)`, over
/// all column choices for an `(m+2) x (m+2)` minor equal to `±c_ij`.
pub fn check_minor_extraction(d: usize, n: usize, m: usize) -> Result<MinorExtractionReport> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "minor extraction needs m >= 1".into(),
        ));
    }
    let c = chart_reduce(d, n, m)?;
    let n1 = n + 1;
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for i in 1..=n {
        let mut rows: Vec<usize> = (0..=m).map(|s| s * n1).collect();
        rows.push(m * n1 + i);
        for j in 1..=d {
            let target = c_var(&c.ring, d, i, j);
            let found = colex_subsets(c.cols(), m + 2).find_map(|cols| {
                let det = crate::exact::laplace_det(&c.matrix.submatrix(&rows, &cols));
                if det == target {
                    Some((cols, 1))
                } else if det == target.neg() {
                    Some((cols, -1))
                } else {
                    None
                }
            });
            match found {
                Some((cols, sign)) => witnesses.push(MinorWitness {
                    i,
                    j,
                    rows: rows.clone(),
                    cols,
                    sign,
                }),
                None => missing.push((i, j)),
            }
        }
    }
    Ok(MinorExtractionReport {
        d,
        n,
        m,
        witnesses,
        missing,
    })
}

/// `I_{k+2+m}(C_{f,m})` on the chart.
pub fn stratum_ideal(d: usize, n: usize, k: usize, m: usize) -> Result<IdealPresentation> {
    let c = chart_reduce(d, n, m)?;
    minor_ideal(&c, k + 2 + m)
}

/// Whether every generator vanishes at the point.
pub fn vanishes_at(ideal: &IdealPresentation, point: &[Q]) -> bool {
    ideal
        .generators
        .iter()
        .all(|g| Zero::is_zero(&g.eval(point)))
}
