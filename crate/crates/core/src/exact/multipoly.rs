//! Sparse multivariate polynomials over ℚ in graded reverse lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::scalar::{Ring, Q};

/// A polynomial ring `ℚ[v_0, .., v_{k-1}]`; the variable order fixes the term order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
}

impl PolyRing {
    pub fn new(names: Vec<String>) -> Arc<Self> {
        Arc::new(PolyRing { names })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector ordered by degrevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // Same degree: the larger monomial has the smaller exponent in
            // the last variable where they differ.
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms keyed by monomial, no zero coefficients. The leading term is the
/// largest key.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Q) -> Self {
        let mut p = MultiPoly::zero(ring);
        if !Zero::is_zero(&c) {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[index] = 1;
        MultiPoly::term(ring, Q::one(), Monomial(e))
    }

    pub fn term(ring: &Arc<PolyRing>, c: Q, m: Monomial) -> Self {
        let mut p = MultiPoly::zero(ring);
        if !Zero::is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if Zero::is_zero(c) {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Q, m: &Monomial) -> Self {
        MultiPoly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !Zero::is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    /// Evaluate at a point (one value per variable).
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.ring.nvars());
        self.terms.iter().fold(Q::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc + t
        })
    }

    /// Multivariate division by a list: returns the remainder of the full
    /// reduction (no term of it divisible by a leading monomial).
    pub fn reduce(&self, divisors: &[MultiPoly]) -> MultiPoly {
        let mut p = self.clone();
        let mut rem = MultiPoly::zero(&self.ring);
        while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let divisor = divisors
                .iter()
                .find(|g| g.leading().is_some_and(|(gm, _)| gm.divides(&lm)));
            match divisor {
                Some(g) => {
                    let (gm, gc) = g.leading().expect("nonzero divisor");
                    let factor = lc / gc;
                    let shift = gm.quotient_of(&lm);
                    p = p.sub(&g.mul_term(&factor, &shift));
                }
                None => {
                    p.terms.remove(&lm);
                    rem.terms.insert(lm, lc);
                }
            }
        }
        rem
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        MultiPoly::constant(&self.ring, Q::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = MultiPoly::zero(&self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        let (rm, rc) = rhs.leading()?;
        let mut p = self.clone();
        let mut quot = MultiPoly::zero(&self.ring);
        while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !rm.divides(&lm) {
                return None;
            }
            let factor = lc / rc;
            let shift = rm.quotient_of(&lm);
            p = p.sub(&rhs.mul_term(&factor, &shift));
            quot.add_term(shift, factor);
        }
        Some(quot)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.ring == other.ring
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text: terms in decreasing order, `coeff*var^e*...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| {
                        let name = &self.ring.names[v];
                        if e == 1 {
                            name.clone()
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::qi;

    fn ring3() -> Arc<PolyRing> {
        PolyRing::new(vec!["x".into(), "y".into(), "z".into()])
    }

    #[test]
    fn degrevlex_order() {
        let m = |a: u32, b: u32, c: u32| Monomial(vec![a, b, c]);
        // x > y > z in degree one
        assert!(m(1, 0, 0) > m(0, 1, 0));
        assert!(m(0, 1, 0) > m(0, 0, 1));
        // degree first
        assert!(m(0, 0, 2) > m(1, 0, 0));
        // x*z vs y^2: y^2 has smaller z exponent, so y^2 > x*z
        assert!(m(0, 2, 0) > m(1, 0, 1));
        // x^2*z vs x*y^2... degrevlex: compare z first: x*y^2 > x^2*z
        assert!(m(1, 2, 0) > m(2, 0, 1));
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring3();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(p.div_exact(&x.add(&y)).unwrap(), x.sub(&y));
        assert_eq!(p.div_exact(&x), None);
        assert_eq!(p.eval(&[qi(3), qi(1), qi(0)]), qi(8));
        assert_eq!(MultiPoly::zero(&r).to_string(), "0");
        assert_eq!(x.scale(&qi(-2)).to_string(), "-2*x");
    }

    #[test]
    fn reduction_remainder() {
        let r = ring3();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let z = MultiPoly::var(&r, 2);
        let p = x.mul(&y).add(&z);
        assert_eq!(p.reduce(std::slice::from_ref(&x)), z);
        assert!(p.sub(&z).reduce(&[x]).is_zero());
    }
}
