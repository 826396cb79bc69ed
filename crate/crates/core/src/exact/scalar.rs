//! Scalar rings and fields.
//!
//! Elements are self-describing: an [`Fp`] value carries its modulus, so
//! generic code never needs a separate ring context. Operations on elements
//! of different prime fields panic; the public constructors of composite
//! types ([`HomogPoly`](super::HomogPoly), [`MapPoint`](crate::MapPoint))
//! check compatibility up front and report [`Error::MixedField`](crate::Error::MixedField).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{self, Matrix};

/// Rational numbers, always stored reduced with a positive denominator.
pub type Q = BigRational;

/// A commutative ring without zero divisors, with exact division where it exists.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The quotient `self / rhs` if `rhs` divides `self` exactly.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
    /// Whether the two elements live in the same ring (e.g. same prime).
    fn same_ring(&self, _other: &Self) -> bool {
        true
    }
}

/// Which field a scalar belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(u32),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldKind::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .ok_or_else(|| format!("unknown field `{s}` (expected \"Q\" or \"Fp:<prime>\")"))?;
        let p: u32 = p.parse().map_err(|_| format!("bad prime in field `{s}`"))?;
        if !is_prime(p) || p >= (1 << 31) {
            return Err(format!("{p} is not a prime below 2^31"));
        }
        Ok(FieldKind::Prime(p))
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u32;
    while (q as u64) * (q as u64) <= p as u64 {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// A field. Rank and determinant default to Gaussian elimination; the
/// rationals override them with integer fraction-free elimination.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
    fn kind(&self) -> FieldKind;
    /// Embed an integer into the same field as `self`.
    fn embed_i64(&self, v: i64) -> Self;
    /// Parse a scalar string (`"p/q"` or `"p"`) into the given field.
    fn parse_in(kind: FieldKind, s: &str) -> Result<Self, String>
    where
        Self: Sized;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize
    where
        Self: Sized,
    {
        matrix::gauss_rank(m)
    }

    fn matrix_det(m: &Matrix<Self>) -> Self
    where
        Self: Sized,
    {
        matrix::gauss_det(m)
    }

    /// Canonical representative of the projective class of a nonzero vector.
    /// Default: divide by the first nonzero entry.
    fn normalize_projective(v: &mut [Self])
    where
        Self: Sized,
    {
        if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
            let inv = lead
                .inv()
                .expect("nonzero element of a field is invertible");
            for x in v.iter_mut() {
                *x = x.mul(&inv);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Rationals

impl Ring for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn embed_i64(&self, v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn parse_in(kind: FieldKind, s: &str) -> Result<Self, String> {
        match kind {
            FieldKind::Rational => parse_rational(s),
            FieldKind::Prime(p) => Err(format!("cannot read a rational from field Fp:{p}")),
        }
    }

    fn matrix_rank(m: &Matrix<Self>) -> usize {
        let (int, _) = integer_rows(m);
        matrix::bareiss_rank_int(&int)
    }

    fn matrix_det(m: &Matrix<Self>) -> Self {
        assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
        let (int, scales) = integer_rows(m);
        let det = matrix::bareiss_det_int(&int);
        let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Q::new(det, denom)
    }

    fn normalize_projective(v: &mut [Self]) {
        let Some(lead) = v.iter().find(|x| !Zero::is_zero(*x)).cloned() else {
            return;
        };
        let denoms = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| x.numer() * (&denoms / x.denom()))
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if lead.is_negative() {
            content = -content;
        }
        for (x, i) in v.iter_mut().zip(ints) {
            *x = Q::from_integer(i / &content);
        }
    }
}

/// Parse `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("`{s}` is not a rational number"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("`{s}` is not a rational number"))?;
    if Zero::is_zero(&den) {
        return Err(format!("`{s}` has zero denominator"));
    }
    Ok(Q::new(num, den))
}

/// Scale every row of a rational matrix by the lcm of its denominators.
/// Returns the integer matrix and the per-row scale factors.
pub(crate) fn integer_rows(m: &Matrix<Q>) -> (Matrix<BigInt>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(m.rows());
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        let row = m.row(r);
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        data.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        scales.push(l);
    }
    (Matrix::from_vec(m.rows(), m.cols(), data), scales)
}

// ---------------------------------------------------------------------------
// Integers (used internally by fraction-free elimination)

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        Zero::is_zero(&r).then_some(q)
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// An element of 𝔽_p, `value` in `[0, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        debug_assert!(modulus >= 2);
        Fp {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "arithmetic between different prime fields"
        );
    }

    fn pow(&self, mut e: u64) -> Self {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc as u32,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp::new(0, self.modulus)
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u64 + rhs.value as u64) % self.modulus as u64;
        Fp {
            value: s as u32,
            modulus: self.modulus,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u64 * rhs.value as u64) % self.modulus as u64;
        Fp {
            value: s as u32,
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus as u64 - 2))
        }
    }
    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.modulus)
    }
    fn embed_i64(&self, v: i64) -> Self {
        Fp::new(v, self.modulus)
    }
    fn parse_in(kind: FieldKind, s: &str) -> Result<Self, String> {
        let FieldKind::Prime(p) = kind else {
            return Err("cannot read a prime-field element from field Q".into());
        };
        let q = parse_rational(s)?;
        let reduce = |b: &BigInt| -> i64 {
            b.mod_floor(&BigInt::from(p))
                .to_i64()
                .expect("reduced residue fits")
        };
        let num = Fp::new(reduce(q.numer()), p);
        let den = Fp::new(reduce(q.denom()), p);
        num.div(&den)
            .ok_or_else(|| format!("`{s}` has a denominator divisible by {p}"))
    }
}

/// Convenience constructor for small rationals.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for small integers as rationals.
pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("6/-4").unwrap(), q(-3, 2));
        assert_eq!(q(-3, 2).to_string(), "-3/2");
        assert_eq!(qi(5).to_string(), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn prime_field_basics() {
        let a = Fp::new(3, 7);
        assert_eq!(a.inv().unwrap().mul(&a), Fp::new(1, 7));
        assert_eq!(a.neg().value(), 4);
        assert_eq!(Fp::new(-1, 5).value(), 4);
        assert_eq!(
            Fp::parse_in(FieldKind::Prime(5), "1/2").unwrap(),
            Fp::new(3, 5)
        );
        assert!(Fp::parse_in(FieldKind::Prime(5), "1/5").is_err());
        assert!(Fp::new(0, 5).inv().is_none());
    }

    #[test]
    fn field_kind_parsing() {
        assert_eq!("Q".parse::<FieldKind>().unwrap(), FieldKind::Rational);
        assert_eq!("Fp:3".parse::<FieldKind>().unwrap(), FieldKind::Prime(3));
        assert!("Fp:4".parse::<FieldKind>().is_err());
        assert!("R".parse::<FieldKind>().is_err());
    }

    #[test]
    fn rational_projective_normalization() {
        let mut v = vec![qi(0), q(-2, 3), q(4, 9), qi(0)];
        Q::normalize_projective(&mut v);
        assert_eq!(v, vec![qi(0), qi(3), qi(-2), qi(0)]);
    }

    #[test]
    #[should_panic(expected = "different prime fields")]
    fn mixed_primes_panic() {
        let _ = Fp::new(1, 3).add(&Fp::new(1, 5));
    }
}
