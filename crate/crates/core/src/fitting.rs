//! Exact overconstrained polynomial fits in `n` and checks on the fitted polynomials.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::correlation::{CorrelationId, OracleError};
use crate::rational::{self, Rational};
use crate::series::{Series, VarTag};
use crate::transforms::{self, TransformError};
use crate::{ht, lt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("duplicate abscissa n = {0}")]
    DuplicatePoint(i64),
    #[error("no polynomial of degree <= {max_degree} fits; top divided differences {residuals:?}")]
    NoPolynomialFit {
        max_degree: usize,
        residuals: Vec<(i64, String)>,
    },
    #[error("series for n = {n} is known only through exponent {order}, needed {needed}")]
    InsufficientOrder { n: i64, order: i64, needed: i64 },
    #[error("malformed polynomial {0:?}")]
    MalformedPolynomial(String),
    #[error("denominator vanishes at n = {0}")]
    ZeroDenominator(i64),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Polynomial in `n`, coefficients in ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::new(vec![c])
    }

    /// `n - r`
    pub fn linear_root(r: Rational) -> Poly {
        Poly::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `0` for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_int(&self, n: i64) -> Rational {
        self.eval(&rational::int(n))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).cloned().unwrap_or_else(Rational::zero);
        Poly::new((0..len).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    /// `p(n + h)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, h: &Rational) -> Poly {
        let mut c = self.0.clone();
        let d = c.len();
        for i in 0..d {
            for j in (i..d.saturating_sub(1)).rev() {
                let t = &c[j + 1] * h;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lead = d.leading();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            for (i, c) in d.0.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Smallest positive integer `D` with `D p` integral, and `D p` itself.
    pub fn integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let den = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        (den, ints)
    }

    /// Parse sums and products such as `n^2+3n-1`, `(n+1)(n+2)`, `n(n-1)/4`.
    pub fn parse(s: &str) -> Result<Poly, FitError> {
        let cleaned: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = PolyParser {
            src: &cleaned,
            pos: 0,
            text: s,
        };
        let p = parser.sum()?;
        if parser.pos != cleaned.len() {
            return Err(FitError::MalformedPolynomial(s.to_string()));
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    /// Integer-coefficient numerator over a common denominator, e.g. `(n^4+2n^3+3n^2+10n)/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (den, ints) = self.integer_form();
        let mut body = String::new();
        let mut terms = 0;
        for (k, c) in ints.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms += 1;
            let sign = if c.is_negative() { "-" } else if body.is_empty() { "" } else { "+" };
            let mag = c.abs();
            let coeff = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            let var = match k {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{k}"),
            };
            body.push_str(&format!("{sign}{coeff}{var}"));
        }
        if den.is_one() {
            write!(f, "{body}")
        } else if terms == 1 {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(rational::fmt).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| rational::parse(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

struct PolyParser<'a> {
    src: &'a [char],
    pos: usize,
    text: &'a str,
}

impl PolyParser<'_> {
    fn err(&self) -> FitError {
        FitError::MalformedPolynomial(self.text.to_string())
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Poly, FitError> {
        let mut acc = Poly::zero();
        let mut sign = Rational::one();
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = -sign;
            }
        }
        loop {
            let t = self.product()?;
            acc = acc.add(&t.scale(&sign));
            match self.peek() {
                Some('+') => sign = Rational::one(),
                Some('-') => sign = -Rational::one(),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Poly, FitError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return Err(self.err());
                    }
                    acc = acc.scale(&d.recip());
                }
                Some('(' | 'n' | '0'..='9') => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, FitError> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err());
                }
                self.pos += 1;
                p
            }
            Some('n') => {
                self.pos += 1;
                Poly::from_ints(&[0, 1])
            }
            Some('0'..='9') => Poly::constant(self.number()?),
            _ => return Err(self.err()),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.number()?;
            if !e.is_integer() || e.is_negative() {
                return Err(self.err());
            }
            let k: usize = e.to_integer().try_into().map_err(|_| self.err())?;
            let mut out = Poly::constant(Rational::one());
            for _ in 0..k {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<Rational, FitError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err());
        }
        let s: String = self.src[start..self.pos].iter().collect();
        Ok(Rational::from_integer(s.parse().map_err(|_| self.err())?))
    }
}

/// An accepted fit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitResult {
    pub poly: Poly,
    pub degree: usize,
    /// Exact mismatch at each held-out point (all zero for an accepted fit).
    #[serde(rename = "surplus", with = "rational_vec")]
    pub surplus_residuals: Vec<Rational>,
    pub points_used: usize,
    /// Prescribed denominator, for rational fits.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub denominator: Option<Poly>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

mod rational_vec {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<String> = v.iter().map(rational::fmt).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| rational::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl FitResult {
    pub fn surplus(&self) -> usize {
        self.surplus_residuals.len()
    }

    /// The fitted function at integer `n`.
    pub fn eval_int(&self, n: i64) -> Result<Rational, FitError> {
        let num = self.poly.eval_int(n);
        match &self.denominator {
            None => Ok(num),
            Some(d) => {
                let dv = d.eval_int(n);
                if dv.is_zero() {
                    return Err(FitError::ZeroDenominator(n));
                }
                Ok(num / dv)
            }
        }
    }
}

impl fmt::Display for FitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.denominator {
            None => write!(f, "{}", self.poly)?,
            Some(d) => write!(f, "[{}] / [{}]", self.poly, d)?,
        }
        let res: Vec<String> = self.surplus_residuals.iter().map(rational::fmt).collect();
        write!(f, ", surplus residuals: [{}]", res.join(", "))
    }
}

fn sorted_points(points: &[(i64, Rational)]) -> Result<Vec<(i64, Rational)>, FitError> {
    let mut pts = points.to_vec();
    pts.sort_by_key(|p| p.0);
    if let Some(w) = pts.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(FitError::DuplicatePoint(w[0].0));
    }
    Ok(pts)
}

/// Minimal-degree polynomial through the points, certified by at least one surplus point.
///
/// The degree is the first order `d` at which all divided differences of
/// order `d` agree (there must be at least two of them). The polynomial is the
/// Newton form through the first `d + 1` points; the remaining points give the
/// surplus residuals.
pub fn fit_minimal_polynomial(points: &[(i64, Rational)]) -> Result<FitResult, FitError> {
    if points.len() < 3 {
        return Err(FitError::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let pts = sorted_points(points)?;
    let xs: Vec<Rational> = pts.iter().map(|p| rational::int(p.0)).collect();
    let mut level: Vec<Rational> = pts.iter().map(|p| p.1.clone()).collect();
    // leading[k] = k-th divided difference over the first k + 1 points
    let mut leading = vec![level[0].clone()];
    let mut degree = None;
    for d in 0..pts.len() - 1 {
        if level.len() >= 2 && level.iter().all(|v| *v == level[0]) {
            degree = Some(d);
            break;
        }
        let next: Vec<Rational> = (0..level.len() - 1)
            .map(|i| (&level[i + 1] - &level[i]) / (&xs[i + d + 1] - &xs[i]))
            .collect();
        leading.push(next[0].clone());
        level = next;
    }
    let Some(degree) = degree else {
        return Err(FitError::NoPolynomialFit {
            max_degree: pts.len() - 2,
            residuals: level
                .iter()
                .enumerate()
                .map(|(i, v)| (pts[i].0, rational::fmt(v)))
                .collect(),
        });
    };
    let mut poly = Poly::zero();
    let mut basis = Poly::constant(Rational::one());
    for (k, c) in leading.iter().take(degree + 1).enumerate() {
        poly = poly.add(&basis.scale(c));
        basis = basis.mul(&Poly::linear_root(xs[k].clone()));
    }
    let surplus_residuals: Vec<Rational> = pts[degree + 1..]
        .iter()
        .map(|(n, y)| poly.eval_int(*n) - y)
        .collect();
    debug_assert!(surplus_residuals.iter().all(|r| r.is_zero()));
    let mut warnings = Vec::new();
    if surplus_residuals.len() < 2 {
        warnings.push(format!(
            "only {} surplus point(s) certify degree {degree}",
            surplus_residuals.len()
        ));
    }
    Ok(FitResult {
        poly,
        degree,
        surplus_residuals,
        points_used: pts.len(),
        denominator: None,
        warnings,
    })
}

/// Fit `y(n) = P(n) / den(n)` with `den` prescribed: a polynomial fit to `y den`.
pub fn fit_with_denominator(points: &[(i64, Rational)], den: &Poly) -> Result<FitResult, FitError> {
    let scaled = points
        .iter()
        .map(|(n, y)| {
            let d = den.eval_int(*n);
            if d.is_zero() {
                Err(FitError::ZeroDenominator(*n))
            } else {
                Ok((*n, y * d))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut fit = fit_minimal_polynomial(&scaled)?;
    fit.denominator = Some(den.clone());
    Ok(fit)
}

/// True iff `p(n + 1) - p(n)` equals `claimed` identically.
pub fn verify_difference_identity(fit: &FitResult, claimed: &Poly) -> bool {
    fit.denominator.is_none() && fit.poly.shift(&Rational::one()).sub(&fit.poly) == *claimed
}

/// True iff `p(n)` is an integer (and even, if required) for `1 <= n <= n_max`.
pub fn verify_integrality(fit: &FitResult, n_max: i64, require_even: bool) -> bool {
    if fit.denominator.is_some() {
        return (1..=n_max).all(|n| {
            fit.eval_int(n)
                .is_ok_and(|v| v.is_integer() && (!require_even || rational::is_even_integer(&v)))
        });
    }
    // integer numerator modulo 2D decides both questions without rationals
    let (den, ints) = fit.poly.integer_form();
    let modulus: BigInt = if require_even { &den * 2 } else { den };
    (1..=n_max).all(|n| {
        let nb = BigInt::from(n);
        let v = ints
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * &nb + c).mod_floor(&modulus));
        v.is_zero()
    })
}

/// A real number isolated in `[lower, upper]`; `exact` when it is rational and found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPoint {
    pub lower: Rational,
    pub upper: Rational,
    pub exact: bool,
}

impl RealPoint {
    pub fn approx(&self) -> f64 {
        rational::to_f64(&((&self.lower + &self.upper) / rational::int(2)))
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / rational::int(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extremum {
    pub at: RealPoint,
    pub kind: ExtremumKind,
    /// Value at the midpoint of the isolating interval.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationaryReport {
    /// Distinct real roots with `n >= 1`.
    pub roots: Vec<RealPoint>,
    /// Local extrema with `n > 1`.
    pub extrema: Vec<Extremum>,
}

/// Isolating-interval width used by [`stationary_analysis`].
pub fn default_precision() -> Rational {
    rational::frac(1, 1_000_000_000_000)
}

/// Real roots (`n >= 1`) and interior extrema (`n > 1`) of a fitted polynomial.
///
/// Roots are counted with Sturm sequences and refined by bisection on exact
/// sign evaluations until the interval is narrower than `1e-12`.
pub fn stationary_analysis(fit: &FitResult) -> StationaryReport {
    let p = &fit.poly;
    let one = Rational::one();
    let eps = default_precision();
    let mut roots = Vec::new();
    if p.degree() >= 1 {
        if p.eval(&one).is_zero() {
            roots.push(RealPoint {
                lower: one.clone(),
                upper: one.clone(),
                exact: true,
            });
        }
        roots.extend(real_roots_in(p, &one, &eps));
    }
    let mut extrema = Vec::new();
    let dp = p.derivative();
    if dp.degree() >= 1 {
        for at in real_roots_in(&dp, &one, &eps) {
            // an extremum needs a sign change of p' across the root
            let step = &eps * rational::int(1000);
            let left = dp.eval(&(&at.lower - &step));
            let right = dp.eval(&(&at.upper + &step));
            let kind = match (left.is_negative(), right.is_positive(), left.is_positive(), right.is_negative()) {
                (true, true, _, _) => ExtremumKind::Minimum,
                (_, _, true, true) => ExtremumKind::Maximum,
                _ => continue,
            };
            let value = rational::to_f64(&p.eval(&at.midpoint()));
            extrema.push(Extremum { at, kind, value });
        }
    }
    StationaryReport { roots, extrema }
}

/// Distinct real roots of `p` in `(lo, B]` where `B` bounds all roots.
fn real_roots_in(p: &Poly, lo: &Rational, eps: &Rational) -> Vec<RealPoint> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let lead = p.leading().abs();
    let bound = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one();
    if bound <= *lo {
        return Vec::new();
    }
    let sturm = sturm_chain(p);
    let mut out = Vec::new();
    isolate(&sturm, lo.clone(), bound, eps, &mut out);
    out
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
        chain.push(r.neg());
    }
}

fn sign_changes(chain: &[Poly], x: &Rational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| {
            let v = q.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots in `(a, b]`.
fn count_roots(chain: &[Poly], a: &Rational, b: &Rational) -> usize {
    sign_changes(chain, a).saturating_sub(sign_changes(chain, b))
}

fn isolate(chain: &[Poly], a: Rational, b: Rational, eps: &Rational, out: &mut Vec<RealPoint>) {
    let count = count_roots(chain, &a, &b);
    if count == 0 {
        return;
    }
    let p = &chain[0];
    if count == 1 {
        if p.eval(&b).is_zero() {
            out.push(RealPoint {
                lower: b.clone(),
                upper: b,
                exact: true,
            });
            return;
        }
        let (mut lo, mut hi) = (a, b);
        while &hi - &lo > *eps {
            let mid = (&lo + &hi) / rational::int(2);
            if p.eval(&mid).is_zero() {
                out.push(RealPoint {
                    lower: mid.clone(),
                    upper: mid,
                    exact: true,
                });
                return;
            }
            if count_roots(chain, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(RealPoint {
            lower: lo,
            upper: hi,
            exact: false,
        });
        return;
    }
    let mid = (&a + &b) / rational::int(2);
    isolate(chain, a, mid.clone(), eps, out);
    isolate(chain, mid, b, eps, out);
}

/// Coefficient families that can be fitted in `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Coefficient of `v^{n+j}` in the HT row series.
    HtRow,
    /// Bracket coefficient of `k^j` in the HT row series in `k_>/4`.
    HtRowKhat,
    /// Coefficient of `u^{n+2+j}` in the connected LT row series, over 4.
    LtConn,
    /// Coefficient of `k^{n+2+j}` in the connected LT row series in `k_</4`, over 4.
    LtConnKhat,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::HtRow, Family::HtRowKhat, Family::LtConn, Family::LtConnKhat];

    pub fn name(self) -> &'static str {
        match self {
            Family::HtRow => "ht_row",
            Family::HtRowKhat => "ht_row_khat",
            Family::LtConn => "lt_conn",
            Family::LtConnKhat => "lt_conn_khat",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Order of the underlying oracle series needed for offset `j`.
    pub fn required_order(self, n: i64, j: i64) -> i64 {
        match self {
            Family::HtRow => n + j,
            Family::HtRowKhat => n + 2 * j,
            Family::LtConn | Family::LtConnKhat => n + 2 + j,
        }
    }

    /// Oracle series for `R_n` (HT in `v`, connected LT in `u`).
    pub fn source_series(self, n: i64, order: i64) -> Result<Series, FitError> {
        let id = CorrelationId::row(n as u32);
        Ok(match self {
            Family::HtRow | Family::HtRowKhat => ht::ht_series(id, order)?,
            Family::LtConn | Family::LtConnKhat => lt::lt_series_connected(id, order)?,
        })
    }

    /// Normalized coefficient at offset `j` from a source series of `R_n`.
    pub fn coefficient(self, n: i64, source: &Series, j: i64) -> Result<Rational, FitError> {
        let needed = self.required_order(n, j);
        if source.order() < needed {
            return Err(FitError::InsufficientOrder {
                n,
                order: source.order(),
                needed,
            });
        }
        let s = source.truncate(needed);
        Ok(match self {
            Family::HtRow => s.coeff(n + j),
            Family::HtRowKhat => {
                let form = transforms::half_power_form(&transforms::to_khat_gt(&s)?, VarTag::KgtHat)?;
                form.bracket.coeff(j)
            }
            Family::LtConn => s.coeff(n + 2 + j) / rational::int(4),
            Family::LtConnKhat => transforms::to_khat_lt(&s)?.coeff(n + 2 + j) / rational::int(4),
        })
    }
}

/// `(n, normalized coefficient)` for each `n` in the range, computed by the oracles.
pub fn collect_coefficients(
    family: Family,
    offset: i64,
    n_range: RangeInclusive<i64>,
) -> Result<Vec<(i64, Rational)>, FitError> {
    n_range
        .map(|n| {
            let source = family.source_series(n, family.required_order(n, offset))?;
            Ok((n, family.coefficient(n, &source, offset)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(i64, Rational)> {
        v.iter().map(|&(n, y)| (n, rational::int(y))).collect()
    }

    #[test]
    fn constant_data() {
        let f = fit_minimal_polynomial(&pts(&[(1, 5), (2, 5), (3, 5)])).unwrap();
        assert_eq!(f.degree, 0);
        assert_eq!(f.poly, Poly::from_ints(&[5]));
        assert_eq!(f.surplus_residuals.len(), 2);
    }

    #[test]
    fn quadratic_with_one_surplus_warns() {
        let f = fit_minimal_polynomial(&pts(&[(1, 2), (2, 6), (3, 12), (4, 20)])).unwrap();
        assert_eq!(f.poly, Poly::from_ints(&[0, 1, 1]));
        assert_eq!(f.surplus(), 1);
        assert_eq!(f.warnings.len(), 1);
    }

    #[test]
    fn no_fit_without_surplus() {
        let e = fit_minimal_polynomial(&pts(&[(1, 1), (2, 4), (3, 10)])).unwrap_err();
        assert!(matches!(e, FitError::NoPolynomialFit { max_degree: 1, .. }));
        assert!(matches!(
            fit_minimal_polynomial(&pts(&[(1, 1), (2, 4)])),
            Err(FitError::TooFewPoints { .. })
        ));
        assert_eq!(
            fit_minimal_polynomial(&pts(&[(1, 1), (1, 4), (2, 3)])),
            Err(FitError::DuplicatePoint(1))
        );
    }

    #[test]
    fn display_common_denominator() {
        let p = Poly::new(vec![
            rational::int(0),
            rational::frac(10, 4),
            rational::frac(3, 4),
            rational::frac(2, 4),
            rational::frac(1, 4),
        ]);
        assert_eq!(p.to_string(), "(n^4+2n^3+3n^2+10n)/4");
        assert_eq!(Poly::from_ints(&[0, 1, 1]).to_string(), "n^2+n");
        assert_eq!(Poly::new(vec![rational::int(0), rational::frac(1, 2)]).to_string(), "n/2");
        assert_eq!(Poly::from_ints(&[-3]).to_string(), "-3");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Poly::parse("(n+1)(n+2)").unwrap(), Poly::from_ints(&[2, 3, 1]));
        assert_eq!(Poly::parse("n^2 + 3n - 1").unwrap(), Poly::from_ints(&[-1, 3, 1]));
        assert_eq!(
            Poly::parse("n(n-1)/4").unwrap(),
            Poly::new(vec![rational::int(0), rational::frac(-1, 4), rational::frac(1, 4)])
        );
        assert_eq!(Poly::parse("-n").unwrap(), Poly::from_ints(&[0, -1]));
        assert!(Poly::parse("n+").is_err());
        assert!(Poly::parse("(n+1").is_err());
    }

    #[test]
    fn shift_and_division() {
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(p.shift(&rational::int(1)), Poly::from_ints(&[1, 2, 1]));
        let (q, r) = Poly::from_ints(&[2, 3, 1]).div_rem(&Poly::from_ints(&[1, 1]));
        assert_eq!(q, Poly::from_ints(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn square_difference_identity() {
        let f = fit_minimal_polynomial(&pts(&[(1, 1), (2, 4), (3, 9), (4, 16)])).unwrap();
        assert!(verify_difference_identity(&f, &Poly::from_ints(&[1, 2])));
        assert!(!verify_difference_identity(&f, &Poly::from_ints(&[0, 2])));
    }

    #[test]
    fn half_n_is_not_integral() {
        let f = FitResult {
            poly: Poly::new(vec![rational::int(0), rational::frac(1, 2)]),
            degree: 1,
            surplus_residuals: vec![],
            points_used: 0,
            denominator: None,
            warnings: vec![],
        };
        assert!(!verify_integrality(&f, 10, false));
        let g = FitResult {
            poly: Poly::from_ints(&[0, 1, 1]),
            ..f
        };
        assert!(verify_integrality(&g, 100, true));
    }

    #[test]
    fn linear_has_no_extremum() {
        let f = fit_minimal_polynomial(&pts(&[(1, 3), (2, 5), (3, 7)])).unwrap();
        let r = stationary_analysis(&f);
        assert!(r.extrema.is_empty());
        assert!(r.roots.is_empty());
    }

    #[test]
    fn rational_fit_with_prescribed_denominator() {
        // y = n (2n^2 + 3n + 5) / (n + 1)
        let data: Vec<(i64, Rational)> = (1..=5)
            .map(|n| (n, rational::frac(n * (2 * n * n + 3 * n + 5), n + 1)))
            .collect();
        assert!(fit_minimal_polynomial(&data).is_err());
        let f = fit_with_denominator(&data, &Poly::parse("n+1").unwrap()).unwrap();
        assert_eq!(f.poly, Poly::from_ints(&[0, 5, 3, 2]));
        assert_eq!(f.eval_int(2).unwrap(), rational::frac(38, 3));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::parse(f.name()), Some(f));
        }
    }
}
