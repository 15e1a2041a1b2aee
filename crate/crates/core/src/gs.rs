//! The operadic Golod-Shafarevich criterion and related series.
//!
//! For an operad minimally generated by `X` with minimal relations `R`,
//! non-negativity of `(1 - X(z)/z + R(z)/z)^{-1}` implies the operad is
//! infinite. Everything here is certified only up to a truncation order,
//! and the verdict is conditional on minimality of the supplied data.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quotient::QuotientEngine;
use crate::rational::{format_rational, sign, Rational};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonNegativeUpToOrder,
    NegativeAt(usize),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::NonNegativeUpToOrder => write!(f, "NonNegativeUpToOrder"),
            Verdict::NegativeAt(n) => write!(f, "NegativeAt({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsReport {
    pub order: usize,
    pub criterion_series: TruncatedSeries,
    pub verdict: Verdict,
    pub euler_defect: Option<TruncatedSeries>,
    pub bound_series: Option<TruncatedSeries>,
    /// The verdict only means something if `X` and `R` are minimal; the
    /// engine does not test minimality.
    pub assumes_minimality: bool,
}

/// Serializable form: rationals as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsReportRecord {
    pub order: usize,
    pub criterion: Vec<String>,
    pub verdict: String,
    pub first_negative: Option<usize>,
    pub euler_defect: Option<Vec<String>>,
    pub euler_defect_nonnegative: Option<bool>,
    pub bound: Option<Vec<String>>,
    pub note: String,
}

fn strings(s: &TruncatedSeries) -> Vec<String> {
    s.coeffs().iter().map(format_rational).collect()
}

impl GsReport {
    pub fn first_negative(&self) -> Option<usize> {
        match self.verdict {
            Verdict::NegativeAt(n) => Some(n),
            Verdict::NonNegativeUpToOrder => None,
        }
    }

    pub fn euler_defect_nonnegative(&self) -> Option<bool> {
        self.euler_defect
            .as_ref()
            .map(|e| e.first_negative_coefficient().is_none())
    }

    pub fn record(&self) -> GsReportRecord {
        GsReportRecord {
            order: self.order,
            criterion: strings(&self.criterion_series),
            verdict: self.verdict.to_string(),
            first_negative: self.first_negative(),
            euler_defect: self.euler_defect.as_ref().map(strings),
            euler_defect_nonnegative: self.euler_defect_nonnegative(),
            bound: self.bound_series.as_ref().map(strings),
            note: format!(
                "certified only up to order {}; conditional on minimal generators and relations",
                self.order
            ),
        }
    }
}

fn check_no_low_terms(s: &TruncatedSeries, what: &str) -> Result<()> {
    for n in 0..=s.order().min(1) {
        if !s.coeffs()[n].is_zero() {
            return Err(Error::MalformedInput(format!(
                "{what} must have zero constant and linear coefficients"
            )));
        }
    }
    Ok(())
}

/// `φ(z) = 1 - X(z)/z + R(z)/z` to `order`, reading `X` and `R` as
/// polynomials (finite S-modules).
pub fn phi(x: &TruncatedSeries, r: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    check_no_low_terms(x, "X")?;
    check_no_low_terms(r, "R")?;
    let xs = x.as_polynomial_to(order + 1).divide_by_z()?;
    let rs = r.as_polynomial_to(order + 1).divide_by_z()?;
    Ok(TruncatedSeries::one(order).sub(&xs).add(&rs))
}

pub fn gs_criterion(x: &TruncatedSeries, r: &TruncatedSeries, order: usize) -> Result<GsReport> {
    if order < 2 {
        return Err(Error::MalformedInput("order must be at least 2".into()));
    }
    let criterion_series = phi(x, r, order)?.reciprocal()?;
    let verdict = match criterion_series.first_negative_coefficient() {
        Some(n) => Verdict::NegativeAt(n),
        None => Verdict::NonNegativeUpToOrder,
    };
    Ok(GsReport {
        order,
        criterion_series,
        verdict,
        euler_defect: None,
        bound_series: None,
        assumes_minimality: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Rational,
    pub hi: Rational,
    pub derivative_nonzero: bool,
}

/// Brackets a sign change of `φ` on `interval` by exact evaluation on a
/// uniform grid of `grid` steps. An exact zero at an interior grid point is
/// bracketed by its neighbours when they have opposite signs.
pub fn gs_binary_root(
    x: &TruncatedSeries,
    r: &TruncatedSeries,
    interval: (Rational, Rational),
    grid: usize,
) -> Result<Option<RootBracket>> {
    for (n, c) in x.coeffs().iter().enumerate() {
        if n != 2 && !c.is_zero() {
            return Err(Error::MalformedInput(
                "X must consist of binary generators only".into(),
            ));
        }
    }
    let (lo, hi) = interval;
    if lo >= hi || grid == 0 {
        return Err(Error::MalformedInput(
            "need lo < hi and a positive grid".into(),
        ));
    }
    let degree = x.order().max(r.order()).max(2);
    let f = phi(x, r, degree - 1)?;
    let df = f.derivative();
    let step = (&hi - &lo) / Rational::from_integer(BigInt::from(grid));
    let points: Vec<Rational> = (0..=grid)
        .map(|j| &lo + &step * Rational::from_integer(BigInt::from(j)))
        .collect();
    let signs: Vec<i8> = points.iter().map(|p| sign(&f.evaluate(p))).collect();
    let mut bracket = None;
    for j in 0..grid {
        if signs[j] * signs[j + 1] < 0 {
            bracket = Some((j, j + 1));
            break;
        }
        if j > 0 && signs[j] == 0 && signs[j - 1] * signs[j + 1] < 0 {
            bracket = Some((j - 1, j + 1));
            break;
        }
    }
    Ok(bracket.map(|(a, b)| {
        let da = sign(&df.evaluate(&points[a]));
        let db = sign(&df.evaluate(&points[b]));
        RootBracket {
            lo: points[a].clone(),
            hi: points[b].clone(),
            derivative_nonzero: da != 0 && da == db,
        }
    }))
}

/// `R(P(z)) - X(P(z)) + P(z) - z` for a given dimension series `P`.
pub fn euler_defect_series(
    p: &TruncatedSeries,
    x: &TruncatedSeries,
    r: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    let order = p.order();
    let xp = x.as_polynomial_to(order).compose(p)?;
    let rp = r.as_polynomial_to(order).compose(p)?;
    Ok(rp.sub(&xp).add(p).sub(&TruncatedSeries::var(order)))
}

/// Euler defect of a presentation, with `P` its quotient dimension series.
pub fn euler_defect(
    engine: &mut QuotientEngine,
    x: &TruncatedSeries,
    r: &TruncatedSeries,
    order: usize,
) -> Result<TruncatedSeries> {
    let p = engine.quotient_dim_series(order)?;
    euler_defect_series(&p, x, r)
}

/// Truncated solution of `Q = z + X(Q) - R(Q)`, offered as a candidate
/// lower bound for the dimension series.
pub fn bound_series(
    x: &TruncatedSeries,
    r: &TruncatedSeries,
    order: usize,
) -> Result<TruncatedSeries> {
    check_no_low_terms(x, "X")?;
    check_no_low_terms(r, "R")?;
    let x = x.as_polynomial_to(order);
    let r = r.as_polynomial_to(order);
    let z = TruncatedSeries::var(order);
    let mut q = z.clone();
    for _ in 1..order {
        q = z.add(&x.compose(&q)?).sub(&r.compose(&q)?);
    }
    Ok(q)
}

/// Heuristic growth diagnostic; see [`growth_exponent_estimate`].
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthEstimate {
    /// `dim(n) / dim(n')` for the last two data points.
    pub ratio: Rational,
    /// `ln dim(n) / n` at the last point.
    pub log_rate: f64,
    /// The ratio grew between the last two consecutive pairs: factorial-type
    /// growth rather than exponential.
    pub ratio_increasing: bool,
}

pub fn growth_exponent_estimate(dims: &[(usize, BigInt)]) -> Result<GrowthEstimate> {
    let mut pts: Vec<&(usize, BigInt)> = dims.iter().filter(|(_, d)| *d > BigInt::zero()).collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientData(
            "need at least three points with positive dimension".into(),
        ));
    }
    pts.sort_by_key(|(n, _)| *n);
    let k = pts.len();
    let ratio_of = |a: &BigInt, b: &BigInt| Rational::new(a.clone(), b.clone());
    let ratio = ratio_of(&pts[k - 1].1, &pts[k - 2].1);
    let previous = ratio_of(&pts[k - 2].1, &pts[k - 3].1);
    let (n, d) = pts[k - 1];
    let log_rate = d
        .to_f64()
        .map(|v| v.ln() / *n as f64)
        .unwrap_or(f64::INFINITY);
    Ok(GrowthEstimate {
        ratio_increasing: ratio > previous,
        ratio,
        log_rate,
    })
}
