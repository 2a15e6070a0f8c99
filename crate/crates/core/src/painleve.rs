//! Diagonal correlations and the sigma-form Painleve VI check.
//!
//! With `t = k^{-2}` (`k = k_>` above, `k_<` below the critical point),
//!
//! ```text
//! sigma_+ = t (t - 1) d ln D / dt - t / 4
//! sigma_- = t (t - 1) d ln D / dt - 1 / 4
//! [t (t-1) s'']^2 - n^2 [(t-1) s' - s]^2 + 4 s' [(t-1) s' - s - 1/4] (t s' - s) = 0
//! ```
//!
//! Every series lives in `x = v^2` (or `u` below), where `t = (1 - x)^4 / (16 x^2)`;
//! derivatives in `t` go through the chain rule.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::correlation::{CorrelationId, OracleError};
use crate::rational::{self, Rational};
use crate::series::{Series, SeriesError, VarTag};
use crate::transforms::{self, TransformError};
use crate::{ht, lt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// High temperature, series in `x = v^2`.
    Plus,
    /// Low temperature, series in `u`.
    Minus,
}

impl Branch {
    pub fn var(self) -> VarTag {
        match self {
            Branch::Plus => VarTag::X,
            Branch::Minus => VarTag::U,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSeries {
    pub n: u32,
    pub branch: Branch,
    pub series: Series,
}

/// HT series of `D_n` in `x = v^2` through `x^order`.
pub fn dn_ht_series(n: u32, order: i64) -> Result<Series, OracleError> {
    if order < n as i64 {
        return Err(OracleError::OrderTooSmall {
            order,
            needed: n as i64,
        });
    }
    let v = ht::ht_series(CorrelationId::diagonal(n), 2 * order)?;
    transforms::halve_exponents(&v, VarTag::X).map_err(|e| match e {
        TransformError::Series(s) => OracleError::Series(s),
        other => unreachable!("diagonal HT series has even exponents: {other}"),
    })
}

/// LT series of `D_n` in `u` through `u^order`.
pub fn dn_lt_series(n: u32, order: i64) -> Result<Series, OracleError> {
    lt::lt_series_full(CorrelationId::diagonal(n), order)
}

/// `(2n)! / (n!)^2`
pub fn central_binomial(n: u32) -> Rational {
    let mut c = Rational::one();
    for k in 1..=n as i64 {
        c = c * rational::int(n as i64 + k) / rational::int(k);
    }
    c
}

/// Closed forms of `c_{n, n+l} / c_{n, n}` for `l <= 5`.
pub fn ratio_formula(n: i64, ell: u32) -> Option<Rational> {
    let r = |num: i64, den: i64| Some(rational::frac(num, den));
    match ell {
        0 => r(1, 1),
        1 => r(2 * n, 1),
        2 => r(n * (2 * n * n + 3 * n + 5), n + 1),
        3 => r(2 * n * (2 * n.pow(3) + 5 * n * n + 16 * n + 25), 3 * (n + 1)),
        4 => r(
            4 * n.pow(6) + 24 * n.pow(5) + 103 * n.pow(4) + 372 * n.pow(3) + 943 * n * n + 726 * n - 48,
            6 * (n + 1) * (n + 2),
        ),
        5 => r(
            4 * n.pow(7)
                + 32 * n.pow(6)
                + 183 * n.pow(5)
                + 930 * n.pow(4)
                + 4031 * n.pow(3)
                + 10228 * n * n
                + 6972 * n
                - 960,
            15 * (n + 1) * (n + 2),
        ),
        _ => None,
    }
}

/// Measured `c_{n, n+l} / c_{n, n}` from a `D_n` series in `x`.
pub fn measured_ratio(n: u32, dn: &Series, ell: u32) -> Option<Rational> {
    let lead = dn.get(n as i64)?;
    if lead.is_zero() {
        return None;
    }
    Some(dn.get(n as i64 + ell as i64)? / lead)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioCheck {
    pub n: u32,
    pub ell: u32,
    pub measured: String,
    pub expected: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub leading: Vec<(u32, bool)>,
    pub checks: Vec<RatioCheck>,
}

impl RatioReport {
    pub fn all_ok(&self) -> bool {
        self.leading.iter().all(|l| l.1) && self.checks.iter().all(|c| c.ok)
    }
}

impl fmt::Display for RatioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>3} {:>3} {:>24} {:>24}  ok", "n", "l", "measured", "closed form")?;
        for c in &self.checks {
            writeln!(f, "{:>3} {:>3} {:>24} {:>24}  {}", c.n, c.ell, c.measured, c.expected, c.ok)?;
        }
        Ok(())
    }
}

/// Compare oracle ratios with the closed forms for each `n` and `1 <= l <= ell_max`.
pub fn check_ratio_formulas(
    ns: impl IntoIterator<Item = u32>,
    ell_max: u32,
) -> Result<RatioReport, OracleError> {
    let ell_max = ell_max.min(5);
    let mut report = RatioReport {
        leading: Vec::new(),
        checks: Vec::new(),
    };
    for n in ns {
        let dn = dn_ht_series(n, n as i64 + ell_max as i64)?;
        report.leading.push((n, dn.get(n as i64) == Some(central_binomial(n))));
        for ell in 1..=ell_max {
            let measured = measured_ratio(n, &dn, ell);
            let expected = ratio_formula(n as i64, ell).expect("ell <= 5");
            report.checks.push(RatioCheck {
                n,
                ell,
                measured: measured.as_ref().map(rational::fmt).unwrap_or_else(|| "?".into()),
                expected: rational::fmt(&expected),
                ok: measured.as_ref() == Some(&expected),
            });
        }
    }
    Ok(report)
}

fn t_series(var: VarTag, order: i64) -> Series {
    transforms::t_of_x(order).with_var(var)
}

fn dt_series(var: VarTag, order: i64) -> Series {
    transforms::dt_dx(order).with_var(var)
}

/// `d f / dt = (d f / dx) / (dt / dx)`.
fn d_dt(f: &Series) -> Result<Series, SeriesError> {
    let fx = f.derivative();
    let order = fx.order() + 3;
    fx.div(&dt_series(f.var(), order))
}

/// `sigma` built from a correlation series in `x` (plus) or `u` (minus).
pub fn sigma_from_series(n: u32, branch: Branch, d: &Series) -> Result<SigmaSeries, SeriesError> {
    let var = branch.var();
    if d.var() != var {
        return Err(SeriesError::VariableMismatch(d.var(), var));
    }
    let log_derivative = d.derivative().div(d)?;
    let order = log_derivative.order() + 8;
    let t = t_series(var, order);
    let tt1 = t.mul(&t.sub(&Series::one(var, order))?)?;
    let dlog_dt = log_derivative.div(&dt_series(var, order))?;
    let shift = match branch {
        Branch::Plus => t.scale(&rational::frac(1, 4)),
        Branch::Minus => Series::constant(var, rational::frac(1, 4), order),
    };
    Ok(SigmaSeries {
        n,
        branch,
        series: tt1.mul(&dlog_dt)?.sub(&shift)?,
    })
}

/// `sigma_{n,+}` from the HT oracle's `D_n` through `x^order`.
pub fn build_sigma(n: u32, branch: Branch, order: i64) -> Result<SigmaSeries, OracleError> {
    let d = match branch {
        Branch::Plus => dn_ht_series(n, order)?,
        Branch::Minus => dn_lt_series(n, order)?,
    };
    Ok(sigma_from_series(n, branch, &d)?)
}

/// Left side of the sigma-form ODE, assembled in the series ring.
pub fn p6_residual(sigma: &SigmaSeries) -> Result<Series, SeriesError> {
    let s = &sigma.series;
    let var = s.var();
    let order = s.order() + 8;
    let t = t_series(var, order);
    let one = Series::one(var, order);
    let quarter = Series::constant(var, rational::frac(1, 4), order);
    let n2 = rational::int(sigma.n as i64 * sigma.n as i64);

    let s1 = d_dt(s)?;
    let s2 = d_dt(&s1)?;
    let tm1 = t.sub(&one)?;
    let a = t.mul(&tm1)?.mul(&s2)?;
    let b = tm1.mul(&s1)?.sub(s)?;
    let c = b.sub(&quarter)?;
    let d = t.mul(&s1)?.sub(s)?;
    let first = a.mul(&a)?;
    let second = b.mul(&b)?.scale(&n2);
    let third = s1.mul(&c)?.mul(&d)?.scale(&rational::int(4));
    first.sub(&second)?.add(&third)
}

/// Residual of `sigma_{n,branch}` built from a fresh oracle series.
pub fn residual_for(n: u32, branch: Branch, order: i64) -> Result<Series, OracleError> {
    Ok(p6_residual(&build_sigma(n, branch, order)?)?)
}
