//! Low-temperature expansion of `<sigma_0 sigma_r>` in `u = z^2`, `z = e^{-2K}`.
//!
//! Configurations with `+` boundary are sets of closed domain walls on the dual
//! lattice, weighted `z^|walls|`. The product `sigma_a sigma_b` is `(-1)` to the
//! number of walls crossed by any spin path from `a` to `b`, so it is a signed
//! count with the crossed dual edges as the cut.
//!
//! The oracle computes the ratio `A = <sigma_a sigma_b> / (<sigma_a><sigma_b>)`
//! as `Z_ab Z / (Z_a Z_b)`, where `Z_a` carries a cut from `a` to the outside of
//! the window. Only clusters of walls that enclose both spins survive in this
//! ratio. A connected union of closed walls has length at least the perimeter
//! of its bounding box, so every surviving cluster of weight `u^N` fits in the
//! box around both spins widened by `N - (m + 1) - (n + 1)` in taxicab excess.
//! The full correlation is `A M^2` with `M^2` from its closed form.
//!
//! Dual vertex `(i, j)` sits at `(i + 1/2, j + 1/2)`. The spin bond
//! `(x, y)-(x + 1, y)` is crossed by dual edge `V(x, y - 1)` and the bond
//! `(x, y)-(x, y + 1)` by `H(x - 1, y)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::correlation::{CorrelationId, OracleError};
use crate::lattice::{Edge, Region, SubgraphProblem, DEFAULT_STATE_CAP};
use crate::rational;
use crate::series::{Series, VarTag};

/// Spin path used for the `a -> b` cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CutRoute {
    /// Along the row of `a`, then up the column of `b`.
    #[default]
    RowFirst,
    /// Up the column of `a`, then along the row of `b`.
    ColumnFirst,
}

/// Direction in which the single-spin cuts leave the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Escape {
    #[default]
    Left,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtOptions {
    /// Taxicab excess allowed around the box of the two spins; `None` picks
    /// `N - (m + 1) - (n + 1)`.
    pub padding: Option<i64>,
    pub route: CutRoute,
    pub escape: Escape,
    pub state_cap: usize,
}

impl Default for LtOptions {
    fn default() -> Self {
        LtOptions {
            padding: None,
            route: CutRoute::default(),
            escape: Escape::default(),
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtRun {
    /// `A = C / M^2` through `u^N`.
    pub ratio: Series,
    pub padding: i64,
    pub states_peak: usize,
}

/// The spin path from `(0, 0)` to `(m, n)` along the chosen route.
pub fn cut_path(id: CorrelationId, route: CutRoute) -> Vec<Edge> {
    let (m, n) = id.offset();
    let mut out = Vec::new();
    match route {
        CutRoute::RowFirst => {
            out.extend((0..m).map(|x| crossing_h(x, 0)));
            out.extend((0..n).map(|y| crossing_v(m, y)));
        }
        CutRoute::ColumnFirst => {
            out.extend((0..n).map(|y| crossing_v(0, y)));
            out.extend((0..m).map(|x| crossing_h(x, n)));
        }
    }
    out
}

/// Dual edge crossed by the spin bond `(x, y)-(x + 1, y)`.
fn crossing_h(x: i32, y: i32) -> Edge {
    Edge::V(x, y - 1)
}

/// Dual edge crossed by the spin bond `(x, y)-(x, y + 1)`.
fn crossing_v(x: i32, y: i32) -> Edge {
    Edge::H(x - 1, y)
}

fn escape_cut(spin: (i32, i32), escape: Escape, region: &Region) -> Vec<Edge> {
    let (x, y) = spin;
    match escape {
        Escape::Left => {
            let lo = region.x_range().0 - 1;
            (lo..x).map(|sx| crossing_h(sx, y)).collect()
        }
        Escape::Down => {
            let lo = region.y_range().0 - 1;
            (lo..y).map(|sy| crossing_v(x, sy)).collect()
        }
    }
}

pub fn default_padding(id: CorrelationId, order: i64) -> i64 {
    (order - id.graph_distance() - 2).max(0)
}

/// Dual vertices whose bounding-box excess around both spins is within `padding`.
pub fn window(id: CorrelationId, padding: i64) -> Region {
    let (m, n) = id.offset();
    let p = padding as i32;
    let excess = |v: i32, lo: i32, hi: i32| (lo - v).max(0).max(v - hi);
    Region::from_predicate((-1 - p, m + p), (-1 - p, n + p), |i, j| {
        (excess(i, -1, m) + excess(j, -1, n)) as i64 <= padding
    })
    .expect("box excess windows have contiguous columns")
}

/// `A = C / M^2` through `u^order`.
pub fn ratio_series_with(
    id: CorrelationId,
    order: i64,
    opts: &LtOptions,
) -> Result<LtRun, OracleError> {
    if order < 0 {
        return Err(OracleError::OrderTooSmall { order, needed: 0 });
    }
    if id.is_trivial() {
        let one = Series::one(VarTag::U, order);
        return Ok(LtRun {
            ratio: magnetization_squared(order).reciprocal()?.mul(&one)?,
            padding: 0,
            states_peak: 1,
        });
    }
    let padding = opts.padding.unwrap_or_else(|| default_padding(id, order));
    let region = window(id, padding);
    let (m, n) = id.offset();
    let max_degree = 2 * order as usize;
    let solve = |cut: Vec<Edge>| {
        SubgraphProblem::new(region.clone(), vec![], max_degree)
            .with_cut(cut)
            .with_state_cap(opts.state_cap)
            .solve()
    };
    let z = solve(vec![])?;
    let z_ab = solve(cut_path(id, opts.route))?;
    let z_a = solve(escape_cut((0, 0), opts.escape, &region))?;
    let z_b = solve(escape_cut((m, n), opts.escape, &region))?;
    let peak = [&z, &z_ab, &z_a, &z_b].iter().map(|c| c.states_peak).max().unwrap_or(0);
    let [z, z_ab, z_a, z_b] = [z, z_ab, z_a, z_b].map(|c| in_u(&c.coeffs, order));
    let num = z_ab?.mul(&z?)?;
    let den = z_a?.mul(&z_b?)?;
    Ok(LtRun {
        ratio: num.div(&den)?,
        padding,
        states_peak: peak,
    })
}

/// Polynomial in `z` with only even powers, re-expressed in `u = z^2`.
fn in_u(coeffs: &[BigInt], order: i64) -> Result<Series, OracleError> {
    if let Some(k) = coeffs.iter().enumerate().position(|(k, c)| k % 2 == 1 && !c.is_zero()) {
        return Err(OracleError::OddPower(k));
    }
    let mut out: Vec<_> = coeffs.iter().step_by(2).take(order as usize + 1).cloned().map(rational::big).collect();
    out.resize(order as usize + 1, rational::int(0));
    Ok(Series::from_coeffs(VarTag::U, 0, out))
}

pub fn ratio_series(id: CorrelationId, order: i64) -> Result<Series, OracleError> {
    Ok(ratio_series_with(id, order, &LtOptions::default())?.ratio)
}

/// `C(m, n)` through `u^order`.
pub fn lt_series_full(id: CorrelationId, order: i64) -> Result<Series, OracleError> {
    lt_series_full_with(id, order, &LtOptions::default())
}

pub fn lt_series_full_with(
    id: CorrelationId,
    order: i64,
    opts: &LtOptions,
) -> Result<Series, OracleError> {
    if order < 2 {
        return Err(OracleError::OrderTooSmall { order, needed: 2 });
    }
    if id.is_trivial() {
        return Ok(Series::one(VarTag::U, order));
    }
    let a = ratio_series_with(id, order, opts)?.ratio;
    Ok(a.mul(&magnetization_squared(order))?)
}

/// `C(m, n) - M^2` through `u^order`.
pub fn lt_series_connected(id: CorrelationId, order: i64) -> Result<Series, OracleError> {
    let needed = id.graph_distance() + 2;
    if order < needed {
        return Err(OracleError::OrderTooSmall { order, needed });
    }
    Ok(lt_series_full(id, order)?.sub(&magnetization_squared(order))?)
}

/// `M^2 = (1 + u)^{1/2} (1 - 6u + u^2)^{1/4} / (1 - u)` through `u^order`.
pub fn magnetization_squared(order: i64) -> Series {
    let order = order.max(0);
    let poly = |c: &[i64]| {
        let mut v: Vec<i64> = c.to_vec();
        v.resize(order as usize + 1, 0);
        v.truncate(order as usize + 1);
        Series::from_ints(VarTag::U, 0, &v)
    };
    let build = || -> Result<Series, OracleError> {
        let a = poly(&[1, 1]).pow_rational(&rational::frac(1, 2))?;
        let b = poly(&[1, -6, 1]).pow_rational(&rational::frac(1, 4))?;
        let c = poly(&[1, -1]).reciprocal()?;
        Ok(a.mul(&b)?.mul(&c)?)
    };
    build().expect("unit-leading polynomials have exact rational powers")
}
