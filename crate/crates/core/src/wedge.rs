//! Exterior-power (maximal-minor) coordinates of resultant matrices, the
//! graph of `[f] ↦ ([∧^{m+2} ρ_{f,m}], .., [∧^{m+d+1} ρ_{f,m}])`, and limits
//! of one-parameter families in the closure of that graph.
//!
//! Coordinates are indexed by pairs `(R, C)` of `r`-subsets of rows and
//! columns of `A_{f,m}`, enumerated colexicographically with `R` outer and
//! `C` inner.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::matrix::{bareiss_det, bareiss_rank, binomial, colex_subsets};
use crate::exact::{Field, HomogPoly, Matrix, Ring, TPoly, Q};
use crate::resultant::{build_resultant_matrix, torsion_degree, MapPoint};

/// The `r x r` minors of `A_{f,m}` with `r = m + 2 + level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector<R> {
    pub level: usize,
    pub order: usize,
    /// Number of rows and columns of the underlying resultant matrix.
    pub shape: (usize, usize),
    pub coords: Vec<R>,
    /// Power of `t` divided out, for limits of families.
    pub valuation: Option<usize>,
}

impl<R: Ring> WedgeVector<R> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }

    /// The `(R, C)` index pair of each coordinate, in storage order.
    pub fn index_pairs(&self) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_ {
        let cols: Vec<Vec<usize>> = colex_subsets(self.shape.1, self.order).collect();
        colex_subsets(self.shape.0, self.order)
            .flat_map(move |r| cols.clone().into_iter().map(move |c| (r.clone(), c)))
    }
}

impl<F: Field> WedgeVector<F> {
    pub fn normalize(&mut self) {
        F::normalize_projective(&mut self.coords);
    }
}

/// The tuple of projectivized minor vectors for levels `0..d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeTuple<R> {
    pub m: usize,
    pub levels: Vec<WedgeVector<R>>,
}

fn check_range(d: usize, m: usize, level: usize) -> Result<()> {
    if d == 0 || level >= d {
        return Err(Error::InvalidParameter(format!(
            "level {level} outside 0..={}",
            d as i64 - 1
        )));
    }
    if m + 1 < d {
        return Err(Error::InvalidParameter(format!(
            "m = {m} must be at least d-1 = {}",
            d - 1
        )));
    }
    Ok(())
}

/// All `r x r` minors of `a` in colex order, using `det` on each submatrix.
fn all_minors<R, D>(a: &Matrix<R>, r: usize, det: D) -> Vec<R>
where
    R: Ring,
    D: Fn(&Matrix<R>) -> R + Sync,
{
    let row_sets: Vec<Vec<usize>> = colex_subsets(a.rows(), r).collect();
    let col_sets: Vec<Vec<usize>> = colex_subsets(a.cols(), r).collect();
    let block = |rows: &Vec<usize>| -> Vec<R> {
        col_sets
            .iter()
            .map(|cols| det(&a.submatrix(rows, cols)))
            .collect()
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        row_sets.par_iter().flat_map_iter(block).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        row_sets.iter().flat_map(block).collect()
    }
}

/// Raw (unnormalized) level-`level` coordinates of `[f]`.
pub fn wedge_coords<F: Field>(f: &MapPoint<F>, m: usize, level: usize) -> Result<WedgeVector<F>> {
    check_range(f.d(), m, level)?;
    let a = build_resultant_matrix(f, m).matrix;
    let r = m + 2 + level;
    let coords = all_minors(&a, r, |s| s.det());
    debug_assert_eq!(coords.len(), binomial(a.rows(), r) * binomial(a.cols(), r));
    Ok(WedgeVector {
        level,
        order: r,
        shape: (a.rows(), a.cols()),
        coords,
        valuation: None,
    })
}

/// The point of the graph over an interior `[f]`: every level normalized.
pub fn graph_point<F: Field>(f: &MapPoint<F>, m: usize) -> Result<WedgeTuple<F>> {
    let d = f.d();
    if m + 1 < d {
        return Err(Error::InvalidParameter(format!(
            "m = {m} must be at least d-1 = {}",
            d - 1
        )));
    }
    let t = torsion_degree(f);
    if t > 0 {
        return Err(Error::Boundary {
            torsion: t,
            reason: format!(
                "levels {}..={} vanish, so the graph map is undefined here; pass a family to take a limit",
                d - t,
                d - 1
            ),
        });
    }
    let levels = (0..d)
        .map(|l| {
            let mut v = wedge_coords(f, m, l)?;
            if v.is_zero() {
                return Err(Error::InternalInconsistency(format!(
                    "level {l} vanishes at the interior point {f}"
                )));
            }
            v.normalize();
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WedgeTuple { m, levels })
}

/// A one-parameter family `f(t)` of points, coefficients in `ℚ[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPoint {
    family: MapPoint<TPoly>,
}

impl FamilyPoint {
    pub fn new(family: MapPoint<TPoly>) -> Self {
        FamilyPoint { family }
    }

    pub fn family(&self) -> &MapPoint<TPoly> {
        &self.family
    }

    pub fn d(&self) -> usize {
        self.family.d()
    }

    /// Smallest power of `t` across all coefficients.
    pub fn content_valuation(&self) -> usize {
        self.family
            .coordinates()
            .iter()
            .filter_map(TPoly::valuation)
            .min()
            .expect("a family is not identically zero")
    }

    /// `lim_{t→0} [f(t)]` in projective space: divide out `t^v`, set `t = 0`.
    pub fn special_fiber(&self) -> MapPoint<Q> {
        let v = self.content_valuation();
        let rows = self
            .family
            .polys()
            .iter()
            .map(|p| {
                p.coeffs()
                    .iter()
                    .map(|c| c.shift_down(v).eval_at_zero())
                    .collect()
            })
            .collect();
        MapPoint::from_rows(rows)
            .expect("the leading t-power has a nonzero coefficient")
            .normalized()
    }

    /// Torsion degree of the member over the field `ℚ(t)`.
    pub fn generic_torsion(&self) -> usize {
        let d = self.d();
        if d == 0 {
            return 0;
        }
        let a = build_resultant_matrix(&self.family, d - 1).matrix;
        2 * d - bareiss_rank(&a)
    }

    /// Specialize the family at a rational value of `t`.
    pub fn at(&self, t: &Q) -> Option<MapPoint<Q>> {
        let polys = self
            .family
            .polys()
            .iter()
            .map(|p| HomogPoly::new(p.coeffs().iter().map(|c| c.eval(t)).collect()))
            .collect();
        MapPoint::new(polys).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyLimit {
    pub tuple: WedgeTuple<Q>,
    /// `v_l`: the power of `t` divided out at each level.
    pub valuations: Vec<usize>,
    /// Image of the limit in the space of tuples of forms.
    pub projection: MapPoint<Q>,
}

/// Limit of the graph point along a family whose generic member is interior.
pub fn family_limit(family: &FamilyPoint, m: usize) -> Result<FamilyLimit> {
    let d = family.d();
    if m + 1 < d {
        return Err(Error::InvalidParameter(format!(
            "m = {m} must be at least d-1 = {}",
            d - 1
        )));
    }
    let t = family.generic_torsion();
    if t > 0 {
        return Err(Error::Boundary {
            torsion: t,
            reason: format!(
                "the generic member has a common factor of degree {t}; level {} vanishes identically along the family",
                d - t
            ),
        });
    }
    let a = build_resultant_matrix(family.family(), m).matrix;
    let mut levels = Vec::with_capacity(d);
    let mut valuations = Vec::with_capacity(d);
    for l in 0..d {
        let r = m + 2 + l;
        let minors = all_minors(&a, r, bareiss_det);
        let v = minors
            .iter()
            .filter_map(TPoly::valuation)
            .min()
            .ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "level {l} vanishes for a generically interior family"
                ))
            })?;
        let coords: Vec<Q> = minors
            .iter()
            .map(|p| {
                if p.is_zero() {
                    Q::zero()
                } else {
                    p.shift_down(v).eval_at_zero()
                }
            })
            .collect();
        let mut wv = WedgeVector {
            level: l,
            order: r,
            shape: (a.rows(), a.cols()),
            coords,
            valuation: Some(v),
        };
        wv.normalize();
        levels.push(wv);
        valuations.push(v);
    }
    Ok(FamilyLimit {
        tuple: WedgeTuple { m, levels },
        valuations,
        projection: family.special_fiber(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qi, Fp};

    fn pt(rows: &[&[i64]]) -> MapPoint<Q> {
        MapPoint::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn fam(rows: &[&[&str]]) -> FamilyPoint {
        FamilyPoint::new(
            MapPoint::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|s| s.parse::<TPoly>().unwrap()).collect())
                    .collect(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn wedge_examples() {
        let v = wedge_coords(&pt(&[&[1, 0], &[0, 1]]), 0, 0).unwrap();
        assert_eq!(v.coords, vec![qi(1)]);
        let v = wedge_coords(&pt(&[&[1, 0], &[1, 0]]), 0, 0).unwrap();
        assert_eq!(v.coords, vec![qi(0)]);
        // (x^2, xy + y^2), m = 1, level 1: det of rows
        // (1,0,0,0),(0,1,1,0),(0,1,0,0),(0,0,1,1) in block order
        let v = wedge_coords(&pt(&[&[1, 0, 0], &[0, 1, 1]]), 1, 1).unwrap();
        assert_eq!(v.coords.len(), 1);
        assert_eq!(v.coords[0].clone() * v.coords[0].clone(), qi(1));
        assert!(wedge_coords(&pt(&[&[1, 0, 0], &[0, 1, 1]]), 0, 0).is_err());
        assert!(wedge_coords(&pt(&[&[1, 0, 0], &[0, 1, 1]]), 1, 2).is_err());
    }

    #[test]
    fn graph_point_examples() {
        let g = graph_point(&pt(&[&[1, 0], &[0, 1]]), 0).unwrap();
        assert_eq!(g.levels.len(), 1);
        assert_eq!(g.levels[0].coords, vec![qi(1)]);

        let g = graph_point(&pt(&[&[1, 0, 0], &[0, 0, 1]]), 1).unwrap();
        assert_eq!(g.levels[1].coords, vec![qi(1)]);
        let lvl0 = &g.levels[0].coords;
        assert_eq!(lvl0.len(), 16);
        assert_eq!(lvl0.iter().filter(|c| !Ring::is_zero(*c)).count(), 4);
        assert!(lvl0
            .iter()
            .all(|c| Ring::is_zero(c) || *c == qi(1) || *c == qi(-1)));
        assert_eq!(lvl0.iter().find(|c| !Ring::is_zero(*c)), Some(&qi(1)));

        assert!(matches!(
            graph_point(&pt(&[&[1, 0, 0], &[0, 1, 0]]), 1),
            Err(Error::Boundary { torsion: 1, .. })
        ));
    }

    #[test]
    fn index_pairs_follow_storage_order() {
        let v = wedge_coords(&pt(&[&[1, 0, 0], &[0, 0, 1]]), 1, 0).unwrap();
        let pairs: Vec<_> = v.index_pairs().collect();
        assert_eq!(pairs.len(), v.coords.len());
        assert_eq!(pairs[0], (vec![0, 1, 2], vec![0, 1, 2]));
        assert_eq!(pairs[1], (vec![0, 1, 2], vec![0, 1, 3]));
        assert_eq!(pairs[4], (vec![0, 1, 3], vec![0, 1, 2]));
    }

    #[test]
    fn family_limit_examples() {
        // (x^2, xy + t y^2), m = 1
        let f = fam(&[&["1", "0", "0"], &["0", "1", "t"]]);
        let lim = family_limit(&f, 1).unwrap();
        assert_eq!(lim.valuations, vec![0, 2]);
        assert_eq!(lim.tuple.levels[1].coords, vec![qi(1)]);
        let mut expected = wedge_coords(&pt(&[&[1, 0, 0], &[0, 1, 0]]), 1, 0).unwrap();
        assert!(!expected.is_zero());
        expected.normalize();
        assert_eq!(lim.tuple.levels[0].coords, expected.coords);
        assert!(lim
            .projection
            .projectively_eq(&pt(&[&[1, 0, 0], &[0, 1, 0]])));

        // (x, y + t x), m = 0
        let f = fam(&[&["1", "0"], &["t", "1"]]);
        let lim = family_limit(&f, 0).unwrap();
        assert_eq!(lim.valuations, vec![0]);
        assert_eq!(lim.tuple.levels[0].coords, vec![qi(1)]);
        assert!(lim.projection.projectively_eq(&pt(&[&[1, 0], &[0, 1]])));

        // (x(x + t y), y(x + t y)) has generic common factor x + t y
        let f = fam(&[&["1", "t", "0"], &["0", "1", "t"]]);
        match family_limit(&f, 1) {
            Err(Error::Boundary { torsion, reason }) => {
                assert_eq!(torsion, 1);
                assert!(reason.contains("level 1"));
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn projection_removes_t_content() {
        let f = fam(&[&["t", "0"], &["t^2", "2*t"]]);
        assert!(f.special_fiber().projectively_eq(&pt(&[&[1, 0], &[0, 2]])));
    }

    #[test]
    fn prime_field_graph_point() {
        let f = MapPoint::from_rows(vec![
            vec![Fp::new(1, 3), Fp::new(0, 3), Fp::new(0, 3)],
            vec![Fp::new(0, 3), Fp::new(0, 3), Fp::new(2, 3)],
        ])
        .unwrap();
        let g = graph_point(&f, 1).unwrap();
        assert!(g
            .levels
            .iter()
            .all(|l| l.coords.iter().find(|c| !c.is_zero()) == Some(&Fp::new(1, 3))));
    }
}
