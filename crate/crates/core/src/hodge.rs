//! Virtual Hodge polynomials of the iterated blowup `M_d`, in `λ = uv`.
//!
//! Every space involved (projective spaces, their products, blowups along
//! smooth centers) has Hodge numbers on the diagonal, so the single variable
//! `λ` carries everything; `e(u, v) = e(uv)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

/// Integer polynomial in `λ`, constant term first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct LambdaPoly(Vec<i64>);

impl LambdaPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        LambdaPoly(coeffs)
    }

    pub fn one() -> Self {
        LambdaPoly(vec![1])
    }

    /// `1 + λ + .. + λ^{k-1}`, i.e. `(λ^k - 1)/(λ - 1)`.
    pub fn geometric(k: usize) -> Self {
        LambdaPoly::new(vec![1; k])
    }

    /// `λ^k - λ^j`
    fn binomial(k: usize, j: usize) -> Self {
        let mut c = vec![0; k.max(j) + 1];
        c[k] += 1;
        c[j] -= 1;
        LambdaPoly::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        LambdaPoly::new(
            (0..n)
                .map(|i| {
                    self.coeff(i)
                        .checked_add(other.coeff(i))
                        .expect("coefficient overflow")
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LambdaPoly::default();
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                let t = a.checked_mul(*b).expect("coefficient overflow");
                out[i + j] = out[i + j].checked_add(t).expect("coefficient overflow");
            }
        }
        LambdaPoly::new(out)
    }

    /// Exact division; fails if the remainder is not identically zero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidParameter("division by the zero polynomial".into()))?;
        let lead = divisor.0[dd];
        let mut rem = self.0.clone();
        let mut quot = vec![0i64; rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let top = *rem.last().expect("nonempty");
            if top % lead != 0 {
                break;
            }
            let f = top / lead;
            for (i, c) in divisor.0.iter().enumerate() {
                rem[shift + i] -= f * c;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        if !rem.is_empty() {
            return Err(Error::InternalInconsistency(format!(
                "{self} is not divisible by {divisor}"
            )));
        }
        Ok(LambdaPoly::new(quot))
    }

    pub fn eval(&self, x: i64) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * x + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "L")?,
                (1, _) => write!(f, "{a}L")?,
                (_, 1) => write!(f, "L^{i}")?,
                _ => write!(f, "{a}L^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `R_i(λ) = (λ^{i+1} - 1)/(λ - 1) · (λ^{ni} - λ)/(λ - 1)`: the contribution
/// of blowing up a center `P^i × M_{d-i}` of codimension `ni`.
pub fn r_factor(i: usize, n: usize) -> Result<LambdaPoly> {
    if i == 0 || n == 0 {
        return Err(Error::InvalidParameter(
            "R_i needs i >= 1 and n >= 1".into(),
        ));
    }
    let line = LambdaPoly::binomial(1, 0);
    let first = LambdaPoly::binomial(i + 1, 0).div_exact(&line)?;
    let second = LambdaPoly::binomial(n * i, 1).div_exact(&line)?;
    Ok(first.mul(&second))
}

/// `e(N_d) = (λ^{(d+1)(n+1)} - 1)/(λ - 1)`
pub fn e_n(d: usize, n: usize) -> LambdaPoly {
    LambdaPoly::geometric((d + 1) * (n + 1))
}

/// `e(M_d) = e(N_d) + Σ_{k<d} e(M_k) R_{d-k}`, memoized bottom-up.
pub fn e_m_recursive(d: usize, n: usize) -> Result<LambdaPoly> {
    let mut memo: Vec<LambdaPoly> = Vec::with_capacity(d + 1);
    for dd in 0..=d {
        let mut e = e_n(dd, n);
        for (k, em) in memo.iter().enumerate() {
            e = e.add(&em.mul(&r_factor(dd - k, n)?));
        }
        memo.push(e);
    }
    Ok(memo.pop().expect("d + 1 entries"))
}

/// Ordered tuples of positive integers with sum at most `max_sum`, including
/// the empty tuple.
pub fn compositions_up_to(max_sum: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), 0usize)];
    while let Some((prefix, sum)) = frontier.pop() {
        for part in 1..=max_sum - sum {
            let mut next = prefix.clone();
            next.push(part);
            out.push(next.clone());
            frontier.push((next, sum + part));
        }
    }
    out.sort_by(|a, b| {
        let sa: usize = a.iter().sum();
        let sb: usize = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    out
}

/// `e(M_d) = Σ_{|α| ≤ d} R_α e(N_{d-|α|})` over compositions `α`.
pub fn e_m_closed(d: usize, n: usize) -> Result<LambdaPoly> {
    let mut r_cache: BTreeMap<usize, LambdaPoly> = BTreeMap::new();
    let mut total = LambdaPoly::default();
    for alpha in compositions_up_to(d) {
        let size: usize = alpha.iter().sum();
        let mut term = e_n(d - size, n);
        for &part in &alpha {
            let r = match r_cache.get(&part) {
                Some(r) => r.clone(),
                None => {
                    let r = r_factor(part, n)?;
                    r_cache.insert(part, r.clone());
                    r
                }
            };
            term = term.mul(&r);
        }
        total = total.add(&term);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub d: usize,
    pub n: usize,
    /// `b_{2i}`; odd Betti numbers vanish.
    pub even: Vec<i64>,
    pub euler: i64,
}

pub fn betti(d: usize, n: usize) -> Result<BettiTable> {
    let e = e_m_recursive(d, n)?;
    let euler = e.coeffs().iter().sum();
    Ok(BettiTable {
        d,
        n,
        even: e.coeffs().to_vec(),
        euler,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardReport {
    pub d: usize,
    pub n: usize,
    /// Coefficient of `λ` in `e(M_d)`, i.e. `b_2`.
    pub coefficient: i64,
    /// `d + 1`: the hyperplane class plus one exceptional divisor per center.
    pub expected: i64,
    pub matches: bool,
}

/// Compare `b_2(M_d)` with `d + 1`. For `n = 1` the centers with `d - k = 1`
/// are divisors, so a mismatch is expected and only reported.
pub fn picard_check(d: usize, n: usize) -> Result<PicardReport> {
    if d == 0 {
        return Err(Error::InvalidParameter("picard check needs d >= 1".into()));
    }
    let coefficient = e_m_recursive(d, n)?.coeff(1);
    let expected = d as i64 + 1;
    Ok(PicardReport {
        d,
        n,
        coefficient,
        expected,
        matches: coefficient == expected,
    })
}

/// Predicted `|M_d(F_q)|` from evaluating `e(M_d)` at `λ = q`.
pub fn point_count_prediction(d: usize, n: usize, q: i64) -> Result<BigInt> {
    Ok(e_m_recursive(d, n)?.eval(q))
}
