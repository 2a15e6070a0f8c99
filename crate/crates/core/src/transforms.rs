//! Changes of expansion variable.
//!
//! With `v = tanh K`, `z = e^{-2K}` and `u = z^2`:
//!
//! - `k_> = (2v / (1 - v^2))^2`, so `w = sqrt(k_>/4) = v / (1 - v^2)` ([`VarTag::Wgt`]);
//! - `k_< = 4u / (1 - u)^2`, so `k_</4 = u / (1 - u)^2` ([`VarTag::KltHat`]);
//! - `x = v^2` and `t = k_>^{-2} = (1 - x)^4 / (16 x^2)`;
//! - `z = (1 - v) / (1 + v)`.
//!
//! The `v <-> z` map moves the expansion point, so it is only offered as an
//! exact evaluation at a rational point.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::series::{Series, SeriesError, VarTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("transform expects a series in {expected}, got {got}")]
    WrongVariable { expected: VarTag, got: VarTag },
    #[error("series has negative valuation {0}; only polynomial parts can be mapped")]
    NotAPolynomial(i64),
    #[error("exponent {0} breaks the parity needed to split into a squared variable")]
    ParityViolation(i64),
    #[error("point {0} is outside the domain of the map")]
    OutOfDomain(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A supported substitution. Each has an [`inverse`](Transform::inverse).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    /// `v -> w`, `w = sqrt(k_>/4)`.
    VToWgt,
    WgtToV,
    /// `u -> k_</4`.
    UToKltHat,
    KltHatToU,
    /// `v -> x = v^2` (series must have a single exponent parity, even).
    VToX,
    XToV,
    /// `u -> z` with `u = z^2`.
    UToZ,
    ZToU,
}

impl Transform {
    pub fn source(self) -> VarTag {
        match self {
            Transform::VToWgt | Transform::VToX => VarTag::V,
            Transform::WgtToV => VarTag::Wgt,
            Transform::UToKltHat | Transform::UToZ => VarTag::U,
            Transform::KltHatToU => VarTag::KltHat,
            Transform::XToV => VarTag::X,
            Transform::ZToU => VarTag::Z,
        }
    }

    pub fn target(self) -> VarTag {
        self.inverse().source()
    }

    pub fn inverse(self) -> Transform {
        match self {
            Transform::VToWgt => Transform::WgtToV,
            Transform::WgtToV => Transform::VToWgt,
            Transform::UToKltHat => Transform::KltHatToU,
            Transform::KltHatToU => Transform::UToKltHat,
            Transform::VToX => Transform::XToV,
            Transform::XToV => Transform::VToX,
            Transform::UToZ => Transform::ZToU,
            Transform::ZToU => Transform::UToZ,
        }
    }

    pub fn apply(self, s: &Series) -> Result<Series, TransformError> {
        expect_var(s, self.source())?;
        match self {
            Transform::VToWgt => substitute(s, &inner(Inner::VOfW, s.order())?),
            Transform::WgtToV => substitute(s, &inner(Inner::WOfV, s.order())?),
            Transform::UToKltHat => substitute(s, &inner(Inner::UOfKlt, s.order())?),
            Transform::KltHatToU => substitute(s, &inner(Inner::KltOfU, s.order())?),
            Transform::VToX => halve_exponents(s, VarTag::X),
            Transform::XToV => Ok(double_exponents(s, VarTag::V)),
            Transform::UToZ => Ok(double_exponents(s, VarTag::Z)),
            Transform::ZToU => halve_exponents(s, VarTag::U),
        }
    }

    /// The transform taking `from` to `to` directly, if one exists.
    pub fn between(from: VarTag, to: VarTag) -> Option<Transform> {
        use Transform::*;
        [VToWgt, WgtToV, UToKltHat, KltHatToU, VToX, XToV, UToZ, ZToU]
            .into_iter()
            .find(|t| t.source() == from && t.target() == to)
    }
}

fn expect_var(s: &Series, expected: VarTag) -> Result<(), TransformError> {
    if s.var() != expected {
        return Err(TransformError::WrongVariable {
            expected,
            got: s.var(),
        });
    }
    Ok(())
}

fn substitute(s: &Series, inner: &Series) -> Result<Series, TransformError> {
    if let Some(v) = s.valuation() {
        if v < 0 {
            return Err(TransformError::NotAPolynomial(v));
        }
    }
    Ok(s.compose(inner)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Inner {
    /// `v` as a series in `w`.
    VOfW,
    /// `w = v / (1 - v^2)`.
    WOfV,
    /// `u` as a series in `k_</4`.
    UOfKlt,
    /// `k_</4 = u / (1 - u)^2`.
    KltOfU,
}

type Cache = RwLock<HashMap<Inner, Series>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Inner substitution series through `order`, built once per order and reused.
fn inner(kind: Inner, order: i64) -> Result<Series, TransformError> {
    let order = order.max(1);
    if let Some(s) = cache().read().expect("cache lock").get(&kind) {
        if s.order() >= order {
            return Ok(s.truncate(order));
        }
    }
    let built = match kind {
        Inner::WOfV => w_of_v(order),
        Inner::VOfW => w_of_v(order).revert()?.with_var(VarTag::Wgt),
        Inner::KltOfU => klt_of_u(order),
        Inner::UOfKlt => klt_of_u(order).revert()?.with_var(VarTag::KltHat),
    };
    cache().write().expect("cache lock").insert(kind, built.clone());
    Ok(built)
}

/// `v / (1 - v^2)` through `order`.
fn w_of_v(order: i64) -> Series {
    let terms: Vec<(i64, Rational)> = (1..=order).step_by(2).map(|k| (k, Rational::one())).collect();
    Series::from_terms(VarTag::V, order, &terms)
}

/// `u / (1 - u)^2 = sum k u^k` through `order`.
fn klt_of_u(order: i64) -> Series {
    let terms: Vec<(i64, Rational)> = (1..=order).map(|k| (k, rational::int(k))).collect();
    Series::from_terms(VarTag::U, order, &terms)
}

/// Map `s(y)` with only even exponents to the series in `y^2`.
pub fn halve_exponents(s: &Series, var: VarTag) -> Result<Series, TransformError> {
    if let Some((k, _)) = s.terms().find(|(k, _)| k.rem_euclid(2) == 1) {
        return Err(TransformError::ParityViolation(k));
    }
    let order = s.order().div_euclid(2);
    let terms: Vec<(i64, Rational)> = s.terms().map(|(k, c)| (k / 2, c.clone())).collect();
    Ok(Series::from_terms(var, order, &terms))
}

/// Map `s(y)` to the same series in `sqrt(y)`: exponents double.
pub fn double_exponents(s: &Series, var: VarTag) -> Series {
    let terms: Vec<(i64, Rational)> = s.terms().map(|(k, c)| (2 * k, c.clone())).collect();
    // the next unknown power y^(N+1) becomes var^(2N+2)
    Series::from_terms(var, 2 * s.order() + 1, &terms)
}

/// HT series in `v` re-expressed in `w = sqrt(k_>/4)`.
pub fn to_khat_gt(s: &Series) -> Result<Series, TransformError> {
    Transform::VToWgt.apply(s)
}

/// LT series in `u` re-expressed in `k_</4`.
pub fn to_khat_lt(s: &Series) -> Result<Series, TransformError> {
    Transform::UToKltHat.apply(s)
}

/// `k^(p/2) [1 + b_1 k + b_2 k^2 + ...]` form of a series in a square-root variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPowerForm {
    /// Exponent of the prefactor, in halves of `k`.
    pub half_exponent: i64,
    /// Leading coefficient pulled out of the bracket.
    pub scale: Rational,
    /// Bracket as a series in `k`, starting at 1.
    pub bracket: Series,
}

impl HalfPowerForm {
    pub fn prefactor(&self) -> String {
        let scale = if self.scale.is_one() {
            String::new()
        } else {
            format!("{} ", rational::fmt(&self.scale))
        };
        let p = self.half_exponent;
        if p % 2 == 0 {
            format!("{scale}k^{}", p / 2)
        } else {
            format!("{scale}k^({p}/2)")
        }
    }
}

/// Split `c w^p (1 + ...)`, all exponents of the parity of `p`, into a half-power prefactor
/// and a bracket in `k = w^2` tagged `var`.
pub fn half_power_form(s: &Series, var: VarTag) -> Result<HalfPowerForm, TransformError> {
    let p = s.valuation().ok_or(SeriesError::ZeroLeadingCoefficient(s.order()))?;
    let scale = s.leading().cloned().unwrap_or_else(Rational::zero);
    let normalized = s.shift(-p).scale(&scale.recip());
    let bracket = halve_exponents(&normalized, var)?;
    Ok(HalfPowerForm {
        half_exponent: p,
        scale,
        bracket,
    })
}

/// `t = (1 - x)^4 / (16 x^2)` through `x^order` (exact, `min_exp = -2`).
pub fn t_of_x(order: i64) -> Series {
    let binom = [1, -4, 6, -4, 1];
    let terms: Vec<(i64, Rational)> = binom
        .iter()
        .enumerate()
        .map(|(k, &b)| (k as i64 - 2, rational::frac(b, 16)))
        .collect();
    Series::from_terms(VarTag::X, order.max(-2), &terms)
}

/// `dt/dx = -(1 - x)^3 (1 + x) / (8 x^3)` through `x^order`.
pub fn dt_dx(order: i64) -> Series {
    t_of_x(order + 1).derivative()
}

/// `z = (1 - v) / (1 + v)`, an involution.
pub fn dual_point(v: &Rational) -> Result<Rational, TransformError> {
    let one = Rational::one();
    if (&one + v).is_zero() {
        return Err(TransformError::OutOfDomain(rational::fmt(v)));
    }
    Ok((&one - v) / (&one + v))
}

/// `k_> = (2v / (1 - v^2))^2`.
pub fn k_gt_of_v(v: &Rational) -> Result<Rational, TransformError> {
    modulus(v)
}

/// `k_< = (2z / (1 - z^2))^2 = 4u / (1 - u)^2`.
pub fn k_lt_of_z(z: &Rational) -> Result<Rational, TransformError> {
    modulus(z)
}

fn modulus(y: &Rational) -> Result<Rational, TransformError> {
    let den = Rational::one() - y * y;
    if den.is_zero() {
        return Err(TransformError::OutOfDomain(rational::fmt(y)));
    }
    let r = rational::int(2) * y / den;
    Ok(&r * &r)
}

/// Exact duality check `k_<(z(v)) k_>(v) = 1`.
pub fn duality_holds(v: &Rational) -> Result<bool, TransformError> {
    let z = dual_point(v)?;
    Ok(k_gt_of_v(v)? * k_lt_of_z(&z)? == Rational::one())
}

/// Evaluate the polynomial part of a series in `v` (or `z`) at the point dual to `at`.
pub fn v_z_dual(s: &Series, at: &Rational) -> Result<Rational, TransformError> {
    if s.var() != VarTag::V && s.var() != VarTag::Z {
        return Err(TransformError::WrongVariable {
            expected: VarTag::V,
            got: s.var(),
        });
    }
    if let Some(v) = s.valuation() {
        if v < 0 {
            return Err(TransformError::NotAPolynomial(v));
        }
    }
    Ok(s.eval_rational(&dual_point(at)?))
}
