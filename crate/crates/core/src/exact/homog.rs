//! Binary forms `f = Σ_j a_j x^{d-j} y^j`, stored densely as `(a_0, .., a_d)`.

use std::fmt;

use super::scalar::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> HomogPoly<R> {
    /// Coefficients `(a_0, .., a_d)` against `x^d, x^{d-1}y, .., y^d`.
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a binary form needs at least one coefficient"
        );
        HomogPoly { coeffs }
    }

    /// Like [`HomogPoly::new`], but rejects coefficients from different rings.
    pub fn try_new(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a binary form needs at least one coefficient".into(),
            ));
        }
        if coeffs.windows(2).any(|w| !w[0].same_ring(&w[1])) {
            return Err(Error::MixedField);
        }
        Ok(HomogPoly { coeffs })
    }

    pub fn zero(degree: usize, zero: R) -> Self {
        HomogPoly {
            coeffs: vec![zero; degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &R {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.coeffs[0].same_ring(&other.coeffs[0])
    }

    /// The product, rejecting operands over different fields.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !self.same_ring(other) {
            return Err(Error::MixedField);
        }
        Ok(self.mul(other))
    }

    /// Coefficient convolution; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        HomogPoly { coeffs: out }
    }

    pub fn scale(&self, c: &R) -> Self {
        HomogPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "adding forms of different degree"
        );
        HomogPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// Number of leading zero coefficients, i.e. the power of `y` dividing `f`.
    fn y_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|a| !a.is_zero())
    }

    /// Power of `x` dividing `f`.
    fn x_order(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|a| !a.is_zero())
            .map(|last| self.degree() - last)
    }

    /// `self / h` when `h` divides `self` exactly.
    pub fn div_exact(&self, h: &Self) -> Option<Self> {
        let lo = h.y_order()?;
        if h.degree() > self.degree() {
            return None;
        }
        let qdeg = self.degree() - h.degree();
        let lead = &h.coeffs[lo];
        let mut q: Vec<R> = Vec::with_capacity(qdeg + 1);
        for k in 0..=qdeg {
            let idx = k + lo;
            let mut acc = if idx <= self.degree() {
                self.coeffs[idx].clone()
            } else {
                lead.zero_like()
            };
            for i in lo + 1..=h.degree() {
                if i <= idx && idx - i <= k && idx - i < q.len() {
                    acc = acc.sub(&h.coeffs[i].mul(&q[idx - i]));
                }
            }
            q.push(acc.div_exact(lead)?);
        }
        let q = HomogPoly { coeffs: q };
        (q.mul(h) == *self).then_some(q)
    }
}

impl<F: Field> HomogPoly<F> {
    /// Scale so that the first nonzero coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.coeffs.iter().find(|a| !a.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }
}

/// Product of two binary forms.
pub fn hp_mul<R: Ring>(f: &HomogPoly<R>, g: &HomogPoly<R>) -> Result<HomogPoly<R>> {
    f.try_mul(g)
}

/// Greatest common divisor of a nonempty family of binary forms, normalized
/// so its first nonzero coefficient is 1. Zero inputs are ignored; an
/// all-zero family is rejected.
///
/// Works on dehomogenizations at `y = 1` after splitting off the monomial
/// factors `x^a y^b`, which the dehomogenization would lose.
pub fn hp_gcd<F: Field>(fs: &[HomogPoly<F>]) -> Result<HomogPoly<F>> {
    let nonzero: Vec<&HomogPoly<F>> = fs.iter().filter(|f| !f.is_zero()).collect();
    let first = *nonzero.first().ok_or(Error::ZeroPolynomial)?;
    if nonzero.iter().any(|f| !f.same_ring(first)) {
        return Err(Error::MixedField);
    }
    let zero = first.coeffs[0].zero_like();
    let one = zero.one_like();
    let mut x_pow = usize::MAX;
    let mut y_pow = usize::MAX;
    let mut g: Option<Vec<F>> = None;
    for f in &nonzero {
        let yo = f.y_order().expect("nonzero");
        let xo = f.x_order().expect("nonzero");
        x_pow = x_pow.min(xo);
        y_pow = y_pow.min(yo);
        // core coefficients a_yo..a_{d-xo}; at y = 1, a_j multiplies x^{d-j},
        // so the core in ascending powers of x is the reversed slice.
        let core: Vec<F> = f.coeffs[yo..=f.degree() - xo]
            .iter()
            .rev()
            .cloned()
            .collect();
        g = Some(match g {
            None => core,
            Some(prev) => upoly_gcd(prev, core),
        });
    }
    let core = upoly_monic(g.expect("at least one nonzero input"));
    // Homogenize: core(x) = Σ c_e x^e with c_0 != 0, degree e_g, becomes
    // Σ c_e x^e y^{e_g - e}; coefficient index j = e_g - e.
    let eg = core.len() - 1;
    let degree = x_pow + y_pow + eg;
    let mut coeffs = vec![zero; degree + 1];
    for (e, c) in core.iter().enumerate() {
        coeffs[y_pow + (eg - e)] = c.clone();
    }
    let out = HomogPoly { coeffs }.monic();
    debug_assert!(out.coeffs.contains(&one));
    Ok(out)
}

// Univariate helpers over a field, ascending coefficients, trimmed.

fn upoly_trim<F: Field>(mut p: Vec<F>) -> Vec<F> {
    while p.len() > 1 && p.last().is_some_and(Ring::is_zero) {
        p.pop();
    }
    p
}

fn upoly_is_zero<F: Field>(p: &[F]) -> bool {
    p.iter().all(Ring::is_zero)
}

fn upoly_rem<F: Field>(mut a: Vec<F>, b: &[F]) -> Vec<F> {
    let b = upoly_trim(b.to_vec());
    let lead_inv = b.last().expect("nonempty").inv().expect("nonzero divisor");
    a = upoly_trim(a);
    while a.len() >= b.len() && !upoly_is_zero(&a) {
        let shift = a.len() - b.len();
        let factor = a.last().expect("nonempty").mul(&lead_inv);
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = a[shift + i].sub(&factor.mul(c));
        }
        a.pop();
        a = upoly_trim(a);
    }
    a
}

fn upoly_gcd<F: Field>(mut a: Vec<F>, mut b: Vec<F>) -> Vec<F> {
    a = upoly_trim(a);
    b = upoly_trim(b);
    while !upoly_is_zero(&b) {
        let r = upoly_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

fn upoly_monic<F: Field>(p: Vec<F>) -> Vec<F> {
    let p = upoly_trim(p);
    let inv = p.last().expect("nonempty").inv().expect("gcd is nonzero");
    p.iter().map(|c| c.mul(&inv)).collect()
}

impl<R: Ring> fmt::Display for HomogPoly<R> {
    /// Human-readable form such as `x^2 + 3*x*y - y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mono = monomial(d - j, j);
            let text = a.to_string();
            let (neg, abs) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let abs_is_one = abs == "1";
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (mono.is_empty(), abs_is_one) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn monomial(xe: usize, ye: usize) -> String {
    let part = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let (a, b) = (part("x", xe), part("y", ye));
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b,
        (false, true) => a,
        (false, false) => format!("{a}*{b}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{qi, Fp, Q};
    use proptest::prelude::*;

    fn hq(c: &[i64]) -> HomogPoly<Q> {
        HomogPoly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(hp_mul(&hq(&[1, 0]), &hq(&[0, 1])).unwrap(), hq(&[0, 1, 0]));
        assert_eq!(
            hp_mul(&hq(&[1, 1]), &hq(&[1, -1])).unwrap(),
            hq(&[1, 0, -1])
        );
        // (x+2y)(3x+y) = 3x^2 + x*y + 6x*y + 2y^2
        assert_eq!(hp_mul(&hq(&[1, 2]), &hq(&[3, 1])).unwrap(), hq(&[3, 7, 2]));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = HomogPoly::new(vec![Fp::new(1, 3)]);
        let b = HomogPoly::new(vec![Fp::new(1, 5)]);
        assert!(matches!(hp_mul(&a, &b), Err(Error::MixedField)));
        assert!(matches!(hp_gcd(&[a, b]), Err(Error::MixedField)));
        assert!(HomogPoly::try_new(vec![Fp::new(1, 3), Fp::new(1, 5)]).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            hp_gcd(&[hq(&[1, 0, 0]), hq(&[0, 1, 0])]).unwrap(),
            hq(&[1, 0])
        );
        assert_eq!(hp_gcd(&[hq(&[1, 0, 0]), hq(&[0, 0, 1])]).unwrap(), hq(&[1]));
        // x^2 + xy = x(x+y), xy + y^2 = y(x+y)
        assert_eq!(
            hp_gcd(&[hq(&[1, 1, 0]), hq(&[0, 1, 1])]).unwrap(),
            hq(&[1, 1])
        );
        assert_eq!(
            hp_gcd(&[hq(&[0, 0, 0]), hq(&[0, 2, 4])]).unwrap(),
            hq(&[0, 1, 2])
        );
        assert!(matches!(hp_gcd(&[hq(&[0, 0])]), Err(Error::ZeroPolynomial)));
        // y^2 and xy^2 share y^2
        assert_eq!(
            hp_gcd(&[hq(&[0, 0, 1]), hq(&[0, 0, 1, 0])]).unwrap(),
            hq(&[0, 0, 1])
        );
    }

    #[test]
    fn exact_division() {
        let f = hq(&[1, 1, 0]);
        assert_eq!(f.div_exact(&hq(&[1, 0])).unwrap(), hq(&[1, 1]));
        assert_eq!(f.div_exact(&hq(&[0, 1])), None);
        assert_eq!(hq(&[0, 0, 1]).div_exact(&hq(&[0, 1])).unwrap(), hq(&[0, 1]));
        assert_eq!(hq(&[0, 1, 0]).div_exact(&hq(&[1, 0])).unwrap(), hq(&[0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(hq(&[1, -3, 0, 2]).to_string(), "x^3 - 3*x^2*y + 2*y^3");
        assert_eq!(hq(&[0, 0]).to_string(), "0");
        assert_eq!(hq(&[5]).to_string(), "5");
    }

    fn small_form(max_deg: usize) -> impl Strategy<Value = HomogPoly<Q>> {
        (0..=max_deg)
            .prop_flat_map(|d| prop::collection::vec(-3i64..4, d + 1))
            .prop_map(|c| hq(&c))
    }

    proptest! {
        #[test]
        fn mul_is_commutative_and_associative(a in small_form(3), b in small_form(3), c in small_form(3)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).degree(), a.degree() + b.degree());
        }

        #[test]
        fn gcd_divides_inputs_and_planted_factor(
            h in small_form(2),
            a in small_form(3),
            b in small_form(3),
        ) {
            prop_assume!(!h.is_zero());
            let b = if b.degree() == a.degree() { b } else { hq(&vec![1; a.degree() + 1]) };
            let fs = [a.mul(&h), b.mul(&h)];
            prop_assume!(!fs[0].is_zero() || !fs[1].is_zero());
            let g = hp_gcd(&fs).unwrap();
            for f in &fs {
                if !f.is_zero() {
                    prop_assert!(f.div_exact(&g).is_some());
                }
            }
            prop_assert!(g.div_exact(&h).is_some());
        }
    }
}
