//! Truncated formal power series with exact rational coefficients.
//!
//! A series of order `N` stores `c_0..=c_N`; nothing beyond `z^N` is known.
//! Binary operations truncate to the smaller order. The module is
//! convention-free: exponential generating functions (coefficient
//! `dim / n!`) are converted with [`TruncatedSeries::from_dims`] and
//! [`TruncatedSeries::to_dims`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl TruncatedSeries {
    /// Series with the given coefficients `c_0, c_1, ...`; the order is
    /// `coeffs.len() - 1`. An empty vector gives the zero series of order 0.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rational::one(), 0, order)
    }

    /// The series `z`.
    pub fn var(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    /// `c * z^k` truncated at `order` (zero if `k > order`).
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// EGF of a sequence of dimensions: `dims[n]` is the dimension in arity
    /// `n`, and the coefficient of `z^n` becomes `dims[n] / n!`.
    pub fn from_dims<T: Into<BigInt> + Clone>(dims: &[T]) -> Self {
        Self::new(
            dims.iter()
                .enumerate()
                .map(|(n, d)| Rational::new(d.clone().into(), factorial(n)))
                .collect(),
        )
    }

    /// Inverse of [`from_dims`](Self::from_dims): `n! * c_n` for each `n`.
    pub fn to_dims(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * Rational::from_integer(factorial(n)))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `z^n`, or `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops coefficients above `order`; never extends.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Self::new(self.coeffs[..=keep].to_vec())
    }

    /// Reads the series as a polynomial and re-truncates at `order`,
    /// padding with zeros when `order` exceeds the stored order.
    pub fn as_polynomial_to(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Rational::zero());
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `f(z) / z`; requires `c_0 = 0` and lowers the order by one.
    pub fn divide_by_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::MalformedInput(
                "cannot divide by z: nonzero constant term".into(),
            ));
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * Rational::from_integer(n.into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            (0..=order)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            (0..=order)
                .map(|n| &self.coeffs[n] - &other.coeffs[n])
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Multiplicative inverse by exact recursive division.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(order + 1);
        b.push(inv0.clone());
        for n in 1..=order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[n - k];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(Self::new(b))
    }

    /// `outer(inner(z))`, by Horner's scheme; requires `inner_0 = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(z)) = z`, computed degree by
    /// degree from undetermined coefficients.
    pub fn reversion(&self) -> Result<Self> {
        let order = self.order();
        if !self.coeffs[0].is_zero() || order == 0 || self.coeffs[1].is_zero() {
            return Err(Error::NotReversible);
        }
        let inv1 = self.coeffs[1].recip();
        let mut g = Self::zero(order);
        g.coeffs[1] = inv1.clone();
        for n in 2..=order {
            // with g_n = 0 the z^n coefficient of self(g) is what a_1 * g_n must cancel
            let probe = self.truncate(n).compose(&g.truncate(n))?;
            g.coeffs[n] = -&probe.coeffs[n] * &inv1;
        }
        Ok(g)
    }

    /// Smallest `n` with `c_n < 0`, if any within the truncation.
    pub fn first_negative_coefficient(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }

    /// Exact value of the truncated polynomial at `x`.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Parses the literal syntax `c_0, c_1, ...` (rationals as `p` or `p/q`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        let mut offset = 0;
        for piece in text.split(',') {
            let c = parse_rational(piece).map_err(|e| match e {
                Error::Syntax { position, message } => Error::Syntax {
                    position: position + offset,
                    message,
                },
                other => other,
            })?;
            coeffs.push(c);
            offset += piece.len() + 1;
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}
