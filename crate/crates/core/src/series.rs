//! Truncated Laurent series over exact rationals.
//!
//! A [`Series`] stores the coefficients of `var^min_exp .. var^order`
//! densely. Everything above `order` is unknown; operations propagate the
//! truncation order pessimistically and never invent coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};

/// Expansion variable carried by every series.
///
/// `Wgt` and `Wlt` are the square roots of `KgtHat` and `KltHat`, used for
/// expansions with half-integer powers of the rescaled moduli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarTag {
    V,
    Z,
    X,
    U,
    KgtHat,
    KltHat,
    Wgt,
    Wlt,
    T,
    Generic,
}

impl VarTag {
    pub const ALL: [VarTag; 10] = [
        VarTag::V,
        VarTag::Z,
        VarTag::X,
        VarTag::U,
        VarTag::KgtHat,
        VarTag::KltHat,
        VarTag::Wgt,
        VarTag::Wlt,
        VarTag::T,
        VarTag::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VarTag::V => "v",
            VarTag::Z => "z",
            VarTag::X => "x",
            VarTag::U => "u",
            VarTag::KgtHat => "kgt_hat",
            VarTag::KltHat => "klt_hat",
            VarTag::Wgt => "wgt",
            VarTag::Wlt => "wlt",
            VarTag::T => "t",
            VarTag::Generic => "s",
        }
    }
}

impl fmt::Display for VarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for VarTag {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v" => Ok(VarTag::V),
            "z" => Ok(VarTag::Z),
            "x" => Ok(VarTag::X),
            "u" => Ok(VarTag::U),
            "kgt_hat" => Ok(VarTag::KgtHat),
            "klt_hat" => Ok(VarTag::KltHat),
            "wgt" => Ok(VarTag::Wgt),
            "wlt" => Ok(VarTag::Wlt),
            "t" => Ok(VarTag::T),
            "generic" | "s" => Ok(VarTag::Generic),
            other => Err(SeriesError::UnknownVariable(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(VarTag, VarTag),
    #[error("leading coefficient is zero (series vanishes to order {0})")]
    ZeroLeadingCoefficient(i64),
    #[error("exponent {exp} * {power} is not an integer")]
    NonIntegerExponent { exp: i64, power: Box<Rational> },
    #[error("leading scale {scale} has no rational {power} power")]
    IrrationalLeadingScale {
        scale: Box<Rational>,
        power: Box<Rational>,
    },
    #[error("invalid valuation: {0}")]
    InvalidValuation(String),
    #[error("coefficient count {got} does not match exponent range {min_exp}..={order}")]
    LengthMismatch { min_exp: i64, order: i64, got: usize },
    #[error("unknown variable tag {0:?}")]
    UnknownVariable(String),
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
}

/// Truncated Laurent series `sum_{k=min_exp}^{order} c_k var^k + O(var^{order+1})`.
///
/// Invariant: either `coeffs` is empty (the series vanishes through `order`,
/// and then `min_exp == order + 1`) or `coeffs[0]` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::record::SeriesJson", into = "crate::record::SeriesJson")]
pub struct Series {
    var: VarTag,
    min_exp: i64,
    order: i64,
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(
        var: VarTag,
        min_exp: i64,
        order: i64,
        coeffs: Vec<Rational>,
    ) -> Result<Series, SeriesError> {
        let expected = order - min_exp + 1;
        if expected < 0 || coeffs.len() as i64 != expected {
            return Err(SeriesError::LengthMismatch {
                min_exp,
                order,
                got: coeffs.len(),
            });
        }
        Ok(Series::normalized(var, min_exp, order, coeffs))
    }

    /// Series whose known coefficients are `coeffs`, starting at `min_exp`;
    /// the order is the last listed exponent.
    pub fn from_coeffs(var: VarTag, min_exp: i64, coeffs: Vec<Rational>) -> Series {
        let order = min_exp + coeffs.len() as i64 - 1;
        Series::normalized(var, min_exp, order, coeffs)
    }

    pub fn from_ints(var: VarTag, min_exp: i64, coeffs: &[i64]) -> Series {
        Series::from_coeffs(var, min_exp, coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    /// Sparse constructor: listed `(exponent, coefficient)` terms, zero elsewhere, known through `order`.
    pub fn from_terms(var: VarTag, order: i64, terms: &[(i64, Rational)]) -> Series {
        let lo = terms.iter().map(|t| t.0).min().unwrap_or(order + 1).min(order + 1);
        let mut coeffs = vec![Rational::zero(); (order - lo + 1).max(0) as usize];
        for (k, c) in terms {
            if *k <= order {
                coeffs[(k - lo) as usize] += c;
            }
        }
        Series::normalized(var, lo, order, coeffs)
    }

    pub fn zero(var: VarTag, order: i64) -> Series {
        Series {
            var,
            min_exp: order + 1,
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(var: VarTag, order: i64) -> Series {
        Series::constant(var, Rational::one(), order)
    }

    pub fn constant(var: VarTag, c: Rational, order: i64) -> Series {
        if order < 0 {
            return Series::zero(var, order);
        }
        let mut coeffs = vec![Rational::zero(); order as usize + 1];
        coeffs[0] = c;
        Series::normalized(var, 0, order, coeffs)
    }

    /// `c * var^exp`, known through `order`.
    pub fn monomial(var: VarTag, c: Rational, exp: i64, order: i64) -> Series {
        Series::from_terms(var, order, &[(exp, c)])
    }

    /// The identity map `var`, known through `order`.
    pub fn identity(var: VarTag, order: i64) -> Series {
        Series::monomial(var, Rational::one(), 1, order)
    }

    fn normalized(var: VarTag, min_exp: i64, order: i64, mut coeffs: Vec<Rational>) -> Series {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Series::zero(var, order),
            Some(i) => {
                coeffs.drain(..i);
                Series {
                    var,
                    min_exp: min_exp + i as i64,
                    order,
                    coeffs,
                }
            }
        }
    }

    pub fn var(&self) -> VarTag {
        self.var
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Dense coefficients for exponents `min_exp..=order`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation, or `None` if the series vanishes through its order.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `var^k`, or `None` when `k` lies beyond the truncation order.
    pub fn get(&self, k: i64) -> Option<Rational> {
        if k > self.order {
            None
        } else if k < self.min_exp {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(k - self.min_exp) as usize].clone())
        }
    }

    /// Coefficient of `var^k`.
    ///
    /// Panics if `k` is above the truncation order.
    pub fn coeff(&self, k: i64) -> Rational {
        self.get(k).unwrap_or_else(|| {
            panic!("coefficient of {}^{} requested beyond order {}", self.var, k, self.order)
        })
    }

    /// Relabel the expansion variable without touching the coefficients.
    pub fn with_var(mut self, var: VarTag) -> Series {
        self.var = var;
        self
    }

    /// Drop everything above `order` (no-op if already lower).
    pub fn truncate(&self, order: i64) -> Series {
        if order >= self.order {
            return self.clone();
        }
        if order < self.min_exp {
            return Series::zero(self.var, order);
        }
        let keep = (order - self.min_exp + 1) as usize;
        Series::normalized(self.var, self.min_exp, order, self.coeffs[..keep].to_vec())
    }

    fn check_var(&self, other: &Series) -> Result<(), SeriesError> {
        if self.var != other.var {
            return Err(SeriesError::VariableMismatch(self.var, other.var));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_var(other)?;
        let order = self.order.min(other.order);
        let lo = self.min_exp.min(other.min_exp).min(order + 1);
        let mut coeffs = vec![Rational::zero(); (order - lo + 1).max(0) as usize];
        for s in [self, other] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let k = s.min_exp + i as i64;
                if k > order {
                    break;
                }
                coeffs[(k - lo) as usize] += c;
            }
        }
        Ok(Series::normalized(self.var, lo, order, coeffs))
    }

    pub fn neg(&self) -> Series {
        Series {
            var: self.var,
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series::zero(self.var, self.order);
        }
        Series {
            var: self.var,
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Series {
        Series {
            var: self.var,
            min_exp: self.min_exp + k,
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_var(other)?;
        let order = (self.order + other.min_exp).min(other.order + self.min_exp);
        let lo = self.min_exp + other.min_exp;
        if self.is_zero() || other.is_zero() || order < lo {
            return Ok(Series::zero(self.var, order));
        }
        let len = (order - lo + 1) as usize;
        let coeffs = mul_trunc(&self.coeffs, &other.coeffs, len);
        Ok(Series::normalized(self.var, lo, order, coeffs))
    }

    pub fn reciprocal(&self) -> Result<Series, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroLeadingCoefficient(self.order));
        }
        let m = self.min_exp;
        let len = (self.order - m + 1) as usize;
        let inv = inv_trunc(&self.coeffs, len);
        Ok(Series::normalized(self.var, -m, -m + len as i64 - 1, inv))
    }

    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        self.check_var(other)?;
        self.mul(&other.reciprocal()?)
    }

    pub fn pow_int(&self, k: i64) -> Result<Series, SeriesError> {
        if k < 0 {
            return self.reciprocal()?.pow_int(-k);
        }
        let mut acc = Series::one(self.var, self.order - self.min_exp);
        let mut base = self.clone();
        let mut e = k;
        if e == 0 {
            return Ok(acc);
        }
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base)? };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^power` for a rational power.
    ///
    /// Writes `self = c var^e (1 + h)` and returns `c^power var^{e power} (1+h)^power`,
    /// with the binomial part generated by the J.C.P. Miller recurrence.
    pub fn pow_rational(&self, power: &Rational) -> Result<Series, SeriesError> {
        let lead = self
            .leading()
            .ok_or(SeriesError::ZeroLeadingCoefficient(self.order))?;
        let e_r = power * rational::int(self.min_exp);
        if !e_r.is_integer() {
            return Err(SeriesError::NonIntegerExponent {
                exp: self.min_exp,
                power: Box::new(power.clone()),
            });
        }
        let scale = rational::rational_pow(lead, power).ok_or_else(|| {
            SeriesError::IrrationalLeadingScale {
                scale: Box::new(lead.clone()),
                power: Box::new(power.clone()),
            }
        })?;
        let new_min = e_r.to_integer().to_i64().expect("exponent fits in i64");
        let len = self.coeffs.len();
        let inv_lead = lead.recip();
        let a: Vec<Rational> = self.coeffs.iter().map(|c| c * &inv_lead).collect();
        let mut b = Vec::with_capacity(len);
        b.push(Rational::one());
        let rp1 = power + Rational::one();
        for k in 1..len {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if a[j].is_zero() {
                    continue;
                }
                let w = &rp1 * rational::int(j as i64) - rational::int(k as i64);
                acc += w * &a[j] * &b[k - j];
            }
            b.push(acc / rational::int(k as i64));
        }
        let coeffs = b.into_iter().map(|c| c * &scale).collect();
        Ok(Series::normalized(self.var, new_min, new_min + len as i64 - 1, coeffs))
    }

    /// Termwise `d/dvar`.
    pub fn derivative(&self) -> Series {
        let order = self.order - 1;
        if self.is_zero() {
            return Series::zero(self.var, order);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * rational::int(self.min_exp + i as i64))
            .collect();
        Series::normalized(self.var, self.min_exp - 1, order, coeffs)
    }

    /// Substitute `g` (valuation >= 1) into `self` (a power series).
    ///
    /// The result is tagged with `g`'s variable and carries the highest order
    /// that both truncations support.
    pub fn compose(&self, g: &Series) -> Result<Series, SeriesError> {
        if self.min_exp < 0 && !self.is_zero() {
            return Err(SeriesError::InvalidValuation(format!(
                "outer series has negative valuation {}",
                self.min_exp
            )));
        }
        let gv = match g.valuation() {
            Some(v) if v >= 1 => v,
            Some(v) => {
                return Err(SeriesError::InvalidValuation(format!(
                    "inner series must have valuation >= 1, got {v}"
                )))
            }
            None => {
                // g vanishes through its order: f(g) is the constant term
                let c = self.get(0).unwrap_or_else(Rational::zero);
                let order = if self.order >= 1 { g.order } else { 0 };
                return Ok(Series::constant(g.var, c, order));
            }
        };
        // missing f terms start at g^(order+1); missing g terms enter through f'(g)
        let from_f = (self.order + 1) * gv - 1;
        let first_active = (1..=self.order).find(|&k| !self.get(k).unwrap().is_zero());
        let from_g = match first_active {
            Some(k) => g.order + (k - 1) * gv,
            None => i64::MAX,
        };
        let order = from_f.min(from_g);
        let len = (order + 1) as usize;
        let dense_f: Vec<Rational> = (0..=self.order).map(|k| self.coeff(k)).collect();
        let dense_g: Vec<Rational> = (0..=g.order.min(order)).map(|k| g.coeff(k)).collect();
        let out = compose_trunc(&dense_f, &dense_g, len);
        Ok(Series::normalized(g.var, 0, order, out))
    }

    /// Compositional inverse of a series with valuation exactly one.
    ///
    /// Newton iteration `h <- h - (g(h) - s) / g'(h)`, doubling the number of
    /// correct coefficients each round.
    pub fn revert(&self) -> Result<Series, SeriesError> {
        if self.valuation() != Some(1) {
            return Err(SeriesError::InvalidValuation(format!(
                "reversion needs valuation 1, got {:?}",
                self.valuation()
            )));
        }
        let n = self.order;
        let len = (n + 1) as usize;
        let g: Vec<Rational> = (0..=n).map(|k| self.coeff(k)).collect();
        let dg: Vec<Rational> = (1..=n)
            .map(|k| self.coeff(k) * rational::int(k))
            .collect();
        let mut h = vec![Rational::zero(); len];
        if len > 1 {
            h[1] = g[1].recip();
        }
        let mut prec = 2.min(len);
        while prec < len {
            prec = (2 * prec).min(len);
            let hp = &h[..prec];
            let mut resid = compose_trunc(&g[..prec], hp, prec);
            resid[1] -= Rational::one();
            let deriv = compose_trunc(&dg[..prec.min(dg.len())], hp, prec);
            let step = mul_trunc(&resid, &inv_trunc(&deriv, prec), prec);
            for (hk, sk) in h.iter_mut().zip(step) {
                *hk -= sk;
            }
        }
        Ok(Series::normalized(self.var, 0, n, h))
    }

    /// Partial sum at a floating-point argument.
    pub fn eval_f64(&self, at: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| rational::to_f64(c) * at.powi((self.min_exp + i as i64) as i32))
            .sum()
    }

    /// Exact partial sum at a rational argument.
    pub fn eval_rational(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.min_exp + i as i64;
            acc += c * rational::pow_i64(at, k);
        }
        acc
    }

    /// True when every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Coefficients as integers; `None` if any is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{}", rational::fmt(&mag))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", rational::fmt(&mag))?;
                    }
                    if k == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{}", self.var, k)?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order + 1)
    }
}

/// Truncated Cauchy product of dense coefficient slices (both starting at exponent 0).
pub(crate) fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Truncated reciprocal; `a[0]` must be nonzero.
pub(crate) fn inv_trunc(a: &[Rational], len: usize) -> Vec<Rational> {
    let inv0 = a[0].recip();
    let mut out = Vec::with_capacity(len);
    out.push(inv0.clone());
    for k in 1..len {
        let mut acc = Rational::zero();
        for j in 1..=k.min(a.len() - 1) {
            if !a[j].is_zero() {
                acc += &a[j] * &out[k - j];
            }
        }
        out.push(-acc * &inv0);
    }
    out
}

/// Horner evaluation of `f(g)` truncated to `len` coefficients; `g[0]` is ignored (taken as 0).
pub(crate) fn compose_trunc(f: &[Rational], g: &[Rational], len: usize) -> Vec<Rational> {
    let mut gz: Vec<Rational> = g.iter().take(len).cloned().collect();
    if let Some(g0) = gz.first_mut() {
        *g0 = Rational::zero();
    }
    let mut acc = vec![Rational::zero(); len];
    for c in f.iter().rev() {
        let mut next = mul_trunc(&acc, &gz, len);
        if len > 0 {
            next[0] += c;
        }
        acc = next;
    }
    acc
}

/// Greatest common divisor of all numerators, useful for pretty output.
pub fn content(s: &Series) -> BigInt {
    s.coeffs
        .iter()
        .filter(|c| c.is_integer())
        .fold(BigInt::zero(), |g, c| g.gcd(&c.to_integer()))
}
