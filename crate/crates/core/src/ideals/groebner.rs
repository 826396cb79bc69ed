//! Buchberger's algorithm over ℚ in degrevlex, producing reduced bases.

use std::collections::HashSet;

use num_traits::One;

use super::IdealPresentation;
use crate::error::{Error, Result};
use crate::exact::{Monomial, MultiPoly, Ring};

/// Size limits for Gröbner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerGuard {
    pub max_vars: usize,
    pub max_degree: u32,
    /// Cap on intermediate basis size.
    pub max_basis: usize,
}

impl Default for GroebnerGuard {
    fn default() -> Self {
        GroebnerGuard {
            max_vars: 10,
            max_degree: 4,
            max_basis: 2000,
        }
    }
}

impl GroebnerGuard {
    fn check(&self, ideal: &IdealPresentation) -> Result<()> {
        let nvars = ideal.ring.nvars();
        if nvars > self.max_vars {
            return Err(Error::GuardExceeded(format!(
                "{nvars} variables (limit {})",
                self.max_vars
            )));
        }
        let deg = ideal
            .generators
            .iter()
            .map(MultiPoly::total_degree)
            .max()
            .unwrap_or(0);
        if deg > self.max_degree {
            return Err(Error::GuardExceeded(format!(
                "generator of degree {deg} (limit {})",
                self.max_degree
            )));
        }
        Ok(())
    }
}

fn lm(p: &MultiPoly) -> &Monomial {
    p.leading().expect("basis elements are nonzero").0
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.recip(), &fm.quotient_of(&l));
    let b = g.mul_term(&gc.recip(), &gm.quotient_of(&l));
    a.sub(&b)
}

/// Reduced Gröbner basis, monic, sorted by decreasing leading monomial.
pub fn groebner_basis(
    ideal: &IdealPresentation,
    guard: &GroebnerGuard,
) -> Result<IdealPresentation> {
    guard.check(ideal)?;
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in &ideal.generators {
        let r = g.reduce(&basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        // normal selection strategy: smallest lcm first, ties by index
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lm(&basis[a.0]).lcm(lm(&basis[a.1]));
                let lb = lm(&basis[b.0]).lcm(lm(&basis[b.1]));
                la.cmp(&lb).then(a.cmp(b))
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        let (mi, mj) = (lm(&basis[i]), lm(&basis[j]));
        if mi.coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = s_polynomial(&basis[i], &basis[j]).reduce(&basis);
        if r.is_zero() {
            continue;
        }
        basis.push(r.monic());
        if basis.len() > guard.max_basis {
            return Err(Error::GuardExceeded(format!(
                "intermediate basis exceeded {} elements",
                guard.max_basis
            )));
        }
        let new = basis.len() - 1;
        for k in 0..new {
            pending.insert((k, new));
        }
    }
    Ok(IdealPresentation {
        ring: ideal.ring.clone(),
        generators: reduce_basis(basis),
        provenance: format!("reduced Groebner basis of {}", ideal.provenance),
    })
}

fn reduce_basis(basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, h)| k != idx && lm(h).divides(lm(g)) && (lm(h) != lm(g) || k < idx));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<MultiPoly> = (0..minimal.len())
        .map(|idx| {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, h)| h.clone())
                .collect();
            let g = &minimal[idx];
            let (m, c) = g.leading().expect("nonzero");
            let lead = MultiPoly::term(g.ring(), c.clone(), m.clone());
            let tail = g.sub(&lead).reduce(&others);
            lead.add(&tail).monic()
        })
        .collect();
    reduced.sort_by(|a, b| lm(b).cmp(lm(a)));
    debug_assert!(reduced
        .iter()
        .all(|g| g.leading().is_some_and(|(_, c)| c.is_one())));
    reduced
}

/// Whether two ideals of the same ring coincide, by comparing reduced bases.
pub fn ideal_equal(
    a: &IdealPresentation,
    b: &IdealPresentation,
    guard: &GroebnerGuard,
) -> Result<bool> {
    if a.ring != b.ring {
        return Err(Error::MixedField);
    }
    let ga = groebner_basis(a, guard)?;
    let gb = groebner_basis(b, guard)?;
    Ok(ga.generators == gb.generators)
}

/// Whether `p` lies in the ideal, by reduction against its reduced basis.
pub fn ideal_contains(
    ideal: &IdealPresentation,
    p: &MultiPoly,
    guard: &GroebnerGuard,
) -> Result<bool> {
    let g = groebner_basis(ideal, guard)?;
    Ok(p.reduce(&g.generators).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qi, PolyRing};
    use std::sync::Arc;

    fn ring(names: &[&str]) -> Arc<crate::exact::PolyRing> {
        PolyRing::new(names.iter().map(|s| s.to_string()).collect())
    }

    fn ideal(r: &Arc<PolyRing>, gens: Vec<MultiPoly>) -> IdealPresentation {
        IdealPresentation::new(r, gens, "test")
    }

    #[test]
    fn linear_ideal_is_its_own_basis() {
        let r = ring(&["c_1_1", "c_1_2"]);
        let (a, b) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1));
        let g = groebner_basis(
            &ideal(&r, vec![a.clone(), b.clone()]),
            &GroebnerGuard::default(),
        )
        .unwrap();
        assert_eq!(g.generators, vec![a, b]);
    }

    #[test]
    fn monomial_ideal() {
        let r = ring(&["x", "y"]);
        let (x, y) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1));
        let gens = vec![x.mul(&x), x.mul(&y)];
        let g = groebner_basis(&ideal(&r, gens.clone()), &GroebnerGuard::default()).unwrap();
        assert_eq!(g.generators, gens);
    }

    #[test]
    fn equality_examples() {
        let r = ring(&["c_1_1"]);
        let c = MultiPoly::var(&r, 0);
        let guard = GroebnerGuard::default();
        assert!(ideal_equal(
            &ideal(&r, vec![c.clone()]),
            &ideal(&r, vec![c.clone()]),
            &guard
        )
        .unwrap());
        assert!(!ideal_equal(
            &ideal(&r, vec![c.clone()]),
            &ideal(&r, vec![c.mul(&c)]),
            &guard
        )
        .unwrap());
    }

    #[test]
    fn classic_example() {
        // <x^2 - y, x^3 - x> in degrevlex x > y
        let r = ring(&["x", "y"]);
        let (x, y) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1));
        let f1 = x.mul(&x).sub(&y);
        let f2 = x.mul(&x).mul(&x).sub(&x);
        let g = groebner_basis(
            &ideal(&r, vec![f1.clone(), f2.clone()]),
            &GroebnerGuard::default(),
        )
        .unwrap();
        // x^3 - x = x(x^2 - y) + xy - x, so xy - x is in the ideal
        let xy_minus_x = x.mul(&y).sub(&x);
        assert!(xy_minus_x.reduce(&g.generators).is_zero());
        assert!(f2.reduce(&g.generators).is_zero());
        // y^2 - y is in the ideal too: y(x^2 - y) - x(xy - x) = x^2 - y^2 ... reduce to check
        let y2 = y.mul(&y).sub(&y);
        assert!(y2.reduce(&g.generators).is_zero());
        assert!(!y.reduce(&g.generators).is_zero());
        let _ = qi(0);
    }

    #[test]
    fn guard_trips() {
        let r = ring(&["x"]);
        let x = MultiPoly::var(&r, 0);
        let x5 = (0..4).fold(x.clone(), |acc, _| acc.mul(&x));
        assert!(matches!(
            groebner_basis(&ideal(&r, vec![x5]), &GroebnerGuard::default()),
            Err(Error::GuardExceeded(_))
        ));
    }
}
