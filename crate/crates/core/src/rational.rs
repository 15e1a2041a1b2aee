//! Exact rationals.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. Text form is `p` or `p/q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `[+-]digits[/digits]`, surrounding whitespace allowed.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let offset = text.len() - text.trim_start().len();
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::syntax(offset, "expected a rational number"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numerator: BigInt = parse_integer(num)
        .ok_or_else(|| Error::syntax(offset, format!("invalid numerator `{num}`")))?;
    let denominator: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            let value = if d.starts_with(['+', '-']) {
                None
            } else {
                parse_integer(d)
            };
            value.ok_or_else(|| Error::syntax(offset, format!("invalid denominator `{d}`")))?
        }
    };
    if denominator.is_zero() {
        return Err(Error::syntax(offset, "zero denominator"));
    }
    Ok(Rational::new(numerator, denominator))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Writes `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub(crate) fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
