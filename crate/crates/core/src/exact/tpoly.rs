//! Polynomials in a deformation parameter `t` with rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::scalar::{parse_rational, Ring, Q};

/// Ascending coefficients, trailing zeros trimmed; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TPoly {
    coeffs: Vec<Q>,
}

impl TPoly {
    pub fn new(coeffs: Vec<Q>) -> Self {
        let mut p = TPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Q) -> Self {
        TPoly::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        TPoly::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at `t = 0`; `None` stands for +∞.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !Zero::is_zero(c))
    }

    pub fn eval_at_zero(&self) -> Q {
        self.coeffs.first().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * t + c)
    }

    /// Divide by `t^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.valuation().is_none_or(|v| v >= k));
        TPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    fn div_rem(&self, rhs: &Self) -> Option<(TPoly, TPoly)> {
        let dr = rhs.degree()?;
        let lead = rhs.coeffs[dr].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dr)];
        while rem.len() > dr && !rem.is_empty() {
            let shift = rem.len() - 1 - dr;
            let factor = rem.last().expect("nonempty") / &lead;
            for (i, c) in rhs.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Some((TPoly::new(quot), TPoly::new(rem)))
    }
}

impl Ring for TPoly {
    fn zero_like(&self) -> Self {
        TPoly::default()
    }
    fn one_like(&self) -> Self {
        TPoly::constant(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Q::zero();
        TPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::default();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::new(out)
    }
    fn neg(&self) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs)?;
        r.is_zero().then_some(q)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            match (mono.is_empty(), abs.is_one()) {
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

impl FromStr for TPoly {
    type Err = String;

    /// Parses sums of terms like `3/2`, `t`, `-2*t^3`, `1/4 t^2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = TPoly::default();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-Q::one(), rest),
                None => (Q::one(), term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, power) = match body.find('t') {
                None => (parse_rational(body)?, 0),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() {
                        Q::one()
                    } else {
                        parse_rational(c)?
                    };
                    let rest = &body[pos + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(|| format!("bad term `{term}`"))?
                            .parse::<usize>()
                            .map_err(|_| format!("bad exponent in `{term}`"))?
                    };
                    (c, k)
                }
            };
            acc = acc.add(&TPoly::monomial(sign * coef, power));
        }
        Ok(acc)
    }
}
