//! Resultant matrices `A_{f,k}` and the rank criteria that detect the
//! degree of the common factor of a tuple of binary forms.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Field, HomogPoly, Matrix, Ring};

/// A point `[f] = [f_0 : .. : f_n]` of the projective space of `(n+1)`-tuples
/// of degree-`d` binary forms.
///
/// Degree 0 is allowed: it is where the gcd-free part of a point with full
/// torsion lands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapPoint<R> {
    polys: Vec<HomogPoly<R>>,
}

impl<R: Ring> MapPoint<R> {
    pub fn new(polys: Vec<HomogPoly<R>>) -> Result<Self> {
        if polys.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "a map to P^n needs n+1 >= 2 forms, got {}",
                polys.len()
            )));
        }
        let d = polys[0].degree();
        if let Some(bad) = polys.iter().find(|p| p.degree() != d) {
            return Err(Error::InvalidParameter(format!(
                "forms of different degrees {d} and {}",
                bad.degree()
            )));
        }
        let first = &polys[0].coeffs()[0];
        if polys
            .iter()
            .flat_map(|p| p.coeffs())
            .any(|c| !c.same_ring(first))
        {
            return Err(Error::MixedField);
        }
        if polys.iter().all(HomogPoly::is_zero) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(MapPoint { polys })
    }

    /// Rows of coefficients `a_{i0} .. a_{id}`.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let polys = rows
            .into_iter()
            .map(HomogPoly::try_new)
            .collect::<Result<Vec<_>>>()?;
        MapPoint::new(polys)
    }

    pub fn n(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn d(&self) -> usize {
        self.polys[0].degree()
    }

    pub fn polys(&self) -> &[HomogPoly<R>] {
        &self.polys
    }

    /// The coordinate `a_{ij}`.
    pub fn coeff(&self, i: usize, j: usize) -> &R {
        self.polys[i].coeff(j)
    }

    /// Homogeneous coordinates flattened as `a_00, a_01, .., a_nd`.
    pub fn coordinates(&self) -> Vec<R> {
        self.polys
            .iter()
            .flat_map(|p| p.coeffs().iter().cloned())
            .collect()
    }

    pub fn zero_scalar(&self) -> R {
        self.polys[0].coeffs()[0].zero_like()
    }

    pub fn scale(&self, c: &R) -> Self {
        MapPoint {
            polys: self.polys.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

impl<F: Field> MapPoint<F> {
    /// Canonical representative of `[f]`.
    pub fn normalized(&self) -> Self {
        let mut coords = self.coordinates();
        F::normalize_projective(&mut coords);
        let w = self.d() + 1;
        MapPoint {
            polys: coords
                .chunks(w)
                .map(|c| HomogPoly::new(c.to_vec()))
                .collect(),
        }
    }

    /// Equality in projective space.
    pub fn projectively_eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.d() == other.d() && self.normalized() == other.normalized()
    }
}

impl<R: Ring> fmt::Display for MapPoint<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.polys.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// The `(k+1)(n+1) x (d+k+1)` matrix of `w ↦ Σ w_i f_i` from `W_k` to `V_{d+k}`.
///
/// Row `s*(n+1) + i` holds the coefficients of `x^{k-s} y^s f_i` against
/// `x^{d+k-j} y^j`, i.e. entry `a_{i, j-s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantMatrix<R> {
    pub k: usize,
    pub matrix: Matrix<R>,
}

pub fn build_resultant_matrix<R: Ring>(f: &MapPoint<R>, k: usize) -> ResultantMatrix<R> {
    let n1 = f.n() + 1;
    let d = f.d();
    let cols = d + k + 1;
    let zero = f.zero_scalar();
    let mut m = Matrix::filled((k + 1) * n1, cols, zero);
    for s in 0..=k {
        for i in 0..n1 {
            for j in 0..=d {
                m.set(s * n1 + i, j + s, f.coeff(i, j).clone());
            }
        }
    }
    ResultantMatrix { k, matrix: m }
}

/// Exact rank over the field.
pub fn exact_rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

/// Degree of the common factor of `f_0, .., f_n`, read off the rank of
/// `A_{f,d-1}`: it equals `2d - rank`.
pub fn torsion_degree<F: Field>(f: &MapPoint<F>) -> usize {
    let d = f.d();
    if d == 0 {
        return 0;
    }
    let rank = exact_rank(&build_resultant_matrix(f, d - 1).matrix);
    2 * d - rank
}

/// Position of a point in the filtration `C_{d,0} ⊂ .. ⊂ C_{d,d-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    Interior,
    /// Minimal `k` with `[f] ∈ C_{d,k}`, namely `d - torsion_degree`.
    Boundary {
        k: usize,
    },
}

impl Stratum {
    pub fn from_torsion(d: usize, torsion: usize) -> Self {
        if torsion == 0 {
            Stratum::Interior
        } else {
            Stratum::Boundary { k: d - torsion }
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Interior => write!(f, "interior"),
            Stratum::Boundary { k } => write!(f, "boundary k={k}"),
        }
    }
}

impl Stratum {
    /// Set-theoretic description inside `N_d`, e.g. `C_{2,1} \ C_{2,0}`.
    pub fn describe(&self, d: usize) -> String {
        match *self {
            Stratum::Interior => "interior".into(),
            Stratum::Boundary { k: 0 } => format!("C_{{{d},0}}"),
            Stratum::Boundary { k } => format!("C_{{{d},{k}}} \\ C_{{{d},{}}}", k - 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub d: usize,
    pub torsion_degree: usize,
    pub stratum: Stratum,
    /// `ranks[k] = rank A_{f,k}` for `k = 0..=k_max`.
    pub ranks: Vec<usize>,
}

/// Ranks of `A_{f,k}` for `k = 0..=k_max`, checked against the rank theorem:
/// (a) `rank = k+1+d-T` once `k >= d-T-1`, (b) `rank >= 2(k+1)` below that,
/// (c) consecutive ranks in regime (a) differ by one.
pub fn rank_profile<F: Field>(f: &MapPoint<F>, k_max: usize) -> Result<StratumReport> {
    let d = f.d();
    if d == 0 {
        return Err(Error::InvalidParameter("rank profile needs d >= 1".into()));
    }
    if k_max + 1 < d {
        return Err(Error::InvalidParameter(format!(
            "k_max = {k_max} must be at least d-1 = {}",
            d - 1
        )));
    }
    let ranks: Vec<usize> = (0..=k_max)
        .map(|k| exact_rank(&build_resultant_matrix(f, k).matrix))
        .collect();
    let torsion = 2 * d - ranks[d - 1];
    let free = d - torsion; // d - T
    for (k, &r) in ranks.iter().enumerate() {
        if k + 1 >= free {
            let expected = k + 1 + free;
            if r != expected {
                return Err(Error::InternalInconsistency(format!(
                    "rank A_(f,{k}) = {r}, expected k+1+d-T = {expected} for {f}"
                )));
            }
            if k > 0 && k >= free && ranks[k - 1] + 1 != r {
                return Err(Error::InternalInconsistency(format!(
                    "ranks at k = {} and {k} do not differ by one for {f}",
                    k - 1
                )));
            }
        }
        if k < free && r < 2 * (k + 1) {
            return Err(Error::InternalInconsistency(format!(
                "rank A_(f,{k}) = {r} below the bound 2(k+1) for {f}"
            )));
        }
    }
    Ok(StratumReport {
        d,
        torsion_degree: torsion,
        stratum: Stratum::from_torsion(d, torsion),
        ranks,
    })
}

/// Set-level membership `[f] ∈ C_{d,k}`, tested as `rank A_{f,m} <= k+1+m`.
pub fn in_stratum<F: Field>(f: &MapPoint<F>, k: usize, m: usize) -> Result<bool> {
    let d = f.d();
    if d == 0 || k >= d {
        return Err(Error::InvalidParameter(format!(
            "stratum index k = {k} outside 0..={}",
            d as i64 - 1
        )));
    }
    if m < k {
        return Err(Error::InvalidParameter(format!(
            "m = {m} must be at least k = {k}"
        )));
    }
    Ok(exact_rank(&build_resultant_matrix(f, m).matrix) <= k + 1 + m)
}
