//! Product structure of the strata: `φ(h, g) = g·h`, its inverse by gcd
//! extraction, the multiplication matrices `L_h`, and exhaustive censuses of
//! the strata over prime fields.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{hp_gcd, Field, Fp, HomogPoly, Matrix, Ring};
use crate::resultant::{torsion_degree, MapPoint, Stratum};

/// `([h], [g])` with `h` monic and `g` gcd-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPair<F> {
    pub h: HomogPoly<F>,
    pub g: MapPoint<F>,
}

/// `[g ∘ h]`: multiply every component of `g` by `h`.
pub fn phi<R: Ring>(h: &HomogPoly<R>, g: &MapPoint<R>) -> Result<MapPoint<R>> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let polys = g
        .polys()
        .iter()
        .map(|gi| gi.try_mul(h))
        .collect::<Result<Vec<_>>>()?;
    MapPoint::new(polys)
}

/// Split a boundary point into its common factor and the gcd-free quotient.
pub fn psi<F: Field>(f: &MapPoint<F>) -> Result<FactorPair<F>> {
    let t = torsion_degree(f);
    if t == 0 {
        return Err(Error::Interior);
    }
    let h = hp_gcd(f.polys())?;
    if h.degree() != t {
        return Err(Error::InternalInconsistency(format!(
            "gcd of {f} has degree {} but the rank criterion gives {t}",
            h.degree()
        )));
    }
    let polys = f
        .polys()
        .iter()
        .map(|fi| {
            fi.div_exact(&h).ok_or_else(|| {
                Error::InternalInconsistency(format!("gcd {h} does not divide {fi}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let g = MapPoint::new(polys)?;
    let tg = torsion_degree(&g);
    if tg != 0 {
        return Err(Error::InternalInconsistency(format!(
            "quotient {g} still has torsion degree {tg}"
        )));
    }
    Ok(FactorPair { h, g })
}

/// Matrix of `g ↦ g·h` from `V_s` to `V_{r+s}` (`r = deg h`): row `u` holds
/// the coefficients of `x^{s-u} y^u h`.
pub fn mul_matrix<R: Ring>(h: &HomogPoly<R>, s: usize) -> Result<Matrix<R>> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let r = h.degree();
    let mut m = Matrix::filled(s + 1, r + s + 1, h.coeff(0).zero_like());
    for u in 0..=s {
        for (j, c) in h.coeffs().iter().enumerate() {
            m.set(u, u + j, c.clone());
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub label: String,
    pub stratum: Stratum,
    pub torsion_degree: usize,
    pub count: u64,
    /// `|P^{d-k}(F_p)| * |interior of N_k(F_p)|`; absent for the interior.
    pub prediction: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusTable {
    pub p: u32,
    pub d: usize,
    pub n: usize,
    pub rows: Vec<CensusRow>,
    pub total: u64,
    /// `|P^{(d+1)(n+1)-1}(F_p)|`
    pub projective_count: u64,
}

impl CensusTable {
    pub fn row(&self, stratum: Stratum) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.stratum == stratum)
    }

    pub fn interior(&self) -> u64 {
        self.row(Stratum::Interior).map_or(0, |r| r.count)
    }

    /// Every stratum count equals its product prediction and the counts
    /// add up to the size of the projective space.
    pub fn consistent(&self) -> bool {
        self.total == self.projective_count
            && self
                .rows
                .iter()
                .all(|r| r.prediction.is_none_or(|p| p == r.count))
    }
}

/// `|P^r(F_p)|`
pub fn projective_points(p: u32, r: usize) -> u64 {
    (0..=r).map(|i| (p as u64).pow(i as u32)).sum()
}

/// Default cap on the number of affine vectors a census will enumerate.
pub const CENSUS_LIMIT: u64 = 100_000_000;

/// Classify every point of `N_d(F_p)` by torsion degree.
///
/// The torsion degree comes from the rank criterion and is cross-checked
/// against the gcd over `F_p` at every point.
pub fn census(d: usize, n: usize, p: u32, limit: u64) -> Result<CensusTable> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidParameter(
            "census needs d >= 1 and n >= 1".into(),
        ));
    }
    if !crate::exact::scalar::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let counts = torsion_counts(d, n, p, limit)?;
    let mut rows = vec![CensusRow {
        label: "interior".into(),
        stratum: Stratum::Interior,
        torsion_degree: 0,
        count: counts[0],
        prediction: None,
    }];
    for k in (0..d).rev() {
        let interior_k = if k == 0 {
            projective_points(p, n)
        } else {
            torsion_counts(k, n, p, limit)?[0]
        };
        rows.push(CensusRow {
            label: format!("k={k}"),
            stratum: Stratum::Boundary { k },
            torsion_degree: d - k,
            count: counts[d - k],
            prediction: Some(projective_points(p, d - k) * interior_k),
        });
    }
    Ok(CensusTable {
        p,
        d,
        n,
        total: counts.iter().sum(),
        projective_count: projective_points(p, (d + 1) * (n + 1) - 1),
        rows,
    })
}

/// `counts[t]` = number of points of `N_d(F_p)` with torsion degree `t`.
fn torsion_counts(d: usize, n: usize, p: u32, limit: u64) -> Result<Vec<u64>> {
    let len = (d + 1) * (n + 1);
    let affine = (p as u64)
        .checked_pow(len as u32)
        .filter(|&a| a <= limit)
        .ok_or_else(|| {
            Error::GuardExceeded(format!(
                "census of N_{d} for n = {n} over F_{p} needs {p}^{len} vectors (limit {limit})"
            ))
        })?;
    let classify = |index: u64| -> Result<Option<usize>> {
        let mut digits = Vec::with_capacity(len);
        let mut x = index;
        for _ in 0..len {
            digits.push((x % p as u64) as i64);
            x /= p as u64;
        }
        digits.reverse();
        // representatives: first nonzero coordinate equal to 1
        match digits.iter().find(|&&v| v != 0) {
            Some(1) => {}
            _ => return Ok(None),
        }
        let rows = digits
            .chunks(d + 1)
            .map(|c| c.iter().map(|&v| Fp::new(v, p)).collect())
            .collect();
        let f = MapPoint::from_rows(rows)?;
        let t = torsion_degree(&f);
        let g = hp_gcd(f.polys())?.degree();
        if g != t {
            return Err(Error::InternalInconsistency(format!(
                "over F_{p}: rank criterion gives torsion {t} but gcd has degree {g} at {f}"
            )));
        }
        Ok(Some(t))
    };
    let tally = |range: std::ops::Range<u64>| -> Result<Vec<u64>> {
        let mut c = vec![0u64; d + 1];
        for i in range {
            if let Some(t) = classify(i)? {
                c[t] += 1;
            }
        }
        Ok(c)
    };
    let chunk = 4096u64;
    let chunks: Vec<std::ops::Range<u64>> = (0..affine.div_ceil(chunk))
        .map(|i| i * chunk..((i + 1) * chunk).min(affine))
        .collect();
    #[cfg(feature = "parallel")]
    let partial: Vec<Result<Vec<u64>>> = {
        use rayon::prelude::*;
        chunks.into_par_iter().map(tally).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partial: Vec<Result<Vec<u64>>> = chunks.into_iter().map(tally).collect();
    let mut total = vec![0u64; d + 1];
    for c in partial {
        for (t, v) in c?.into_iter().enumerate() {
            total[t] += v;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qi, Q};

    fn hq(c: &[i64]) -> HomogPoly<Q> {
        HomogPoly::new(c.iter().map(|&x| qi(x)).collect())
    }

    fn pt(rows: &[&[i64]]) -> MapPoint<Q> {
        MapPoint::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn phi_examples() {
        let g = pt(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            phi(&hq(&[1, 0]), &g).unwrap(),
            pt(&[&[1, 0, 0], &[0, 1, 0]])
        );
        assert_eq!(
            phi(&hq(&[1, 1]), &g).unwrap(),
            pt(&[&[1, 1, 0], &[0, 1, 1]])
        );
        assert_eq!(phi(&hq(&[1]), &g).unwrap(), g);
        assert!(matches!(phi(&hq(&[0, 0]), &g), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn psi_examples() {
        let fp = psi(&pt(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(fp.h, hq(&[1, 0]));
        assert_eq!(fp.g, pt(&[&[1, 0], &[0, 1]]));
        let fp = psi(&pt(&[&[1, 1, 0], &[0, 1, 1]])).unwrap();
        assert_eq!(fp.h, hq(&[1, 1]));
        assert_eq!(fp.g, pt(&[&[1, 0], &[0, 1]]));
        assert!(matches!(
            psi(&pt(&[&[1, 0, 0], &[0, 0, 1]])),
            Err(Error::Interior)
        ));
        // full torsion: g lands in degree 0
        let fp = psi(&pt(&[&[2, 0, 0], &[3, 0, 0]])).unwrap();
        assert_eq!(fp.h, hq(&[1, 0, 0]));
        assert_eq!(fp.g.d(), 0);
    }

    #[test]
    fn mul_matrix_examples() {
        let m = mul_matrix(&hq(&[1, 0]), 1).unwrap();
        assert_eq!(
            m,
            Matrix::from_rows(
                3,
                vec![vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)]]
            )
        );
        assert_eq!(
            mul_matrix(&hq(&[1, 1]), 0).unwrap(),
            Matrix::from_rows(2, vec![vec![qi(1), qi(1)]])
        );
        let m = mul_matrix(&hq(&[1, 0, 1]), 1).unwrap();
        assert_eq!(
            m,
            Matrix::from_rows(
                4,
                vec![
                    vec![qi(1), qi(0), qi(1), qi(0)],
                    vec![qi(0), qi(1), qi(0), qi(1)]
                ]
            )
        );
        assert_eq!(m.rank(), 2);
        assert!(mul_matrix(&hq(&[0]), 2).is_err());
    }

    #[test]
    fn census_examples() {
        let t = census(1, 1, 2, CENSUS_LIMIT).unwrap();
        assert_eq!((t.total, t.interior()), (15, 6));
        assert_eq!(t.row(Stratum::Boundary { k: 0 }).unwrap().count, 9);
        assert!(t.consistent());

        let t = census(2, 1, 2, CENSUS_LIMIT).unwrap();
        assert_eq!(t.total, 63);
        assert_eq!(t.interior(), 24);
        let k1 = t.row(Stratum::Boundary { k: 1 }).unwrap();
        assert_eq!((k1.count, k1.prediction), (18, Some(18)));
        let k0 = t.row(Stratum::Boundary { k: 0 }).unwrap();
        assert_eq!((k0.count, k0.prediction), (21, Some(21)));

        let t = census(1, 2, 2, CENSUS_LIMIT).unwrap();
        assert_eq!((t.total, t.interior()), (63, 42));
        assert_eq!(t.row(Stratum::Boundary { k: 0 }).unwrap().count, 21);
    }

    #[test]
    fn census_guard() {
        assert!(matches!(
            census(3, 3, 5, CENSUS_LIMIT),
            Err(Error::GuardExceeded(_))
        ));
        assert!(census(1, 1, 4, CENSUS_LIMIT).is_err());
    }
}
