//! Seeded random points, factor pairs and families for tests and self-checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{hp_gcd, qi, Fp, HomogPoly, TPoly, Q};
use crate::resultant::MapPoint;
use crate::wedge::FamilyPoint;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A form with integer coefficients in `[-bound, bound]`, not identically zero.
pub fn random_form(rng: &mut SampleRng, d: usize, bound: i64) -> HomogPoly<Q> {
    loop {
        let h = HomogPoly::new((0..=d).map(|_| qi(rng.gen_range(-bound..=bound))).collect());
        if !h.is_zero() {
            return h;
        }
    }
}

/// A point with `gcd(g_0, .., g_n) = 1`, the components possibly zero.
pub fn random_coprime(rng: &mut SampleRng, d: usize, n: usize, bound: i64) -> MapPoint<Q> {
    loop {
        let polys: Vec<HomogPoly<Q>> = (0..=n)
            .map(|_| {
                // sparse components make degenerate coordinates common
                if rng.gen_bool(0.15) {
                    HomogPoly::zero(d, qi(0))
                } else {
                    random_form(rng, d, bound)
                }
            })
            .collect();
        let Ok(g) = MapPoint::new(polys) else {
            continue;
        };
        if hp_gcd(g.polys()).is_ok_and(|h| h.degree() == 0) {
            return g;
        }
    }
}

/// `f = h·g` with `deg h = t` and `g` coprime of degree `d - t`.
pub fn planted(
    rng: &mut SampleRng,
    d: usize,
    n: usize,
    t: usize,
    bound: i64,
) -> (HomogPoly<Q>, MapPoint<Q>, MapPoint<Q>) {
    assert!(t <= d);
    let h = random_form(rng, t, bound);
    let g = random_coprime(rng, d - t, n, bound);
    let f = MapPoint::new(g.polys().iter().map(|gi| gi.mul(&h)).collect())
        .expect("a product with a nonzero form is nonzero");
    (h, g, f)
}

/// A uniformly random nonzero point over `F_p`.
pub fn random_fp_point(rng: &mut SampleRng, d: usize, n: usize, p: u32) -> MapPoint<Fp> {
    loop {
        let rows: Vec<Vec<Fp>> = (0..=n)
            .map(|_| {
                (0..=d)
                    .map(|_| Fp::new(rng.gen_range(0..p as i64), p))
                    .collect()
            })
            .collect();
        if let Ok(f) = MapPoint::from_rows(rows) {
            return f;
        }
    }
}

/// A family `f(t) = f_0 + t f_1 + t^2 f_2` with interior generic member. The
/// special fiber `f_0` has a planted gcd of random degree, and is sometimes
/// zero so that the limit has to be read off higher powers of `t`.
pub fn random_family(rng: &mut SampleRng, d: usize, n: usize, bound: i64) -> FamilyPoint {
    loop {
        let t0 = rng.gen_range(0..=d);
        let f0 = if rng.gen_bool(0.1) {
            None
        } else {
            Some(planted(rng, d, n, t0, bound).2)
        };
        let f1 = random_coprime(rng, d, n, bound);
        let f2 = random_coprime(rng, d, n, bound);
        let rows: Vec<Vec<TPoly>> = (0..=n)
            .map(|i| {
                (0..=d)
                    .map(|j| {
                        let c0 = f0.as_ref().map_or(qi(0), |f| f.coeff(i, j).clone());
                        TPoly::new(vec![c0, f1.coeff(i, j).clone(), f2.coeff(i, j).clone()])
                    })
                    .collect()
            })
            .collect();
        let Ok(point) = MapPoint::from_rows(rows) else {
            continue;
        };
        let family = FamilyPoint::new(point);
        if family.generic_torsion() == 0 {
            return family;
        }
    }
}
