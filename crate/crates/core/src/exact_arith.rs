//! Exact rationals, Hirzebruch–Jung continued fractions and modular inverses.
//!
//! Rationals are `num_rational::BigRational`: the denominator is always
//! positive and the fraction is kept in lowest terms after every operation.
//! `Display` renders `p/q`, or just `p` when the denominator is one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Least common multiple of the denominators; `1` for an empty slice.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Parses `p/q` or `p` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// The entries `b_1, ..., b_s` of `n/q = b_1 - 1/(b_2 - 1/(... - 1/b_s))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HJExpansion(Vec<i64>);

impl HJExpansion {
    /// Checks that the list is non-empty and every entry is at least 2.
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::validation("continued fraction must have at least one entry"));
        }
        if let Some(b) = entries.iter().find(|&&b| b < 2) {
            return Err(Error::validation(format!(
                "continued fraction entry {b} is < 2"
            )));
        }
        Ok(HJExpansion(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> HJExpansion {
        HJExpansion(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for HJExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]")
    }
}

fn check_coprime_pair(n: i64, q: i64) -> Result<()> {
    if q <= 0 {
        return Err(Error::validation(format!("q = {q} must be > 0")));
    }
    if q >= n {
        return Err(Error::validation(format!("q = {q} must be < n = {n}")));
    }
    if n.gcd(&q) != 1 {
        return Err(Error::validation(format!(
            "gcd(n, q) = gcd({n}, {q}) = {} must be 1",
            n.gcd(&q)
        )));
    }
    Ok(())
}

/// Hirzebruch–Jung expansion of `n/q` for coprime `0 < q < n`.
///
/// Uses `b = ceil(n/q)`, `(n, q) <- (q, b*q - n)` until `q` divides `n`.
pub fn hj_expand(n: i64, q: i64) -> Result<HJExpansion> {
    check_coprime_pair(n, q)?;
    let (mut n, mut q) = (n, q);
    let mut entries = Vec::new();
    while q > 0 {
        let b = Integer::div_ceil(&n, &q);
        entries.push(b);
        (n, q) = (q, b * q - n);
    }
    Ok(HJExpansion(entries))
}

/// Evaluates `b_1 - 1/(b_2 - 1/(... - 1/b_s))` exactly.
pub fn hj_eval(expansion: &HJExpansion) -> Result<Rational> {
    hj_eval_entries(expansion.entries())
}

/// Like [`hj_eval`] for a raw slice; rejects entries below 2.
pub fn hj_eval_entries(entries: &[i64]) -> Result<Rational> {
    let checked = HJExpansion::new(entries.to_vec())?;
    let mut rest = checked.0.iter().rev();
    let mut value = int(*rest.next().expect("non-empty"));
    for &b in rest {
        value = int(b) - value.recip();
    }
    Ok(value)
}

/// `q'` with `0 < q' <= n` and `q q' = 1 (mod n)`.
pub fn mod_inverse(q: i64, n: i64) -> Result<i64> {
    if n <= 0 || q <= 0 {
        return Err(Error::validation(format!(
            "mod_inverse needs positive arguments, got q = {q}, n = {n}"
        )));
    }
    let ext = q.extended_gcd(&n);
    if ext.gcd != 1 {
        return Err(Error::validation(format!(
            "gcd(q, n) = gcd({q}, {n}) = {} must be 1",
            ext.gcd
        )));
    }
    let r = ext.x.rem_euclid(n);
    Ok(if r == 0 { n } else { r })
}

/// `ceil(a / b)` for `b > 0`.
pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    Integer::div_ceil(&a, &b)
}

/// `floor(a / b)` for `b > 0`.
pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    Integer::div_floor(&a, &b)
}

pub(crate) fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
