//! High-temperature expansion of `<sigma_0 sigma_r>` in `v = tanh K`.
//!
//! `<sigma_a sigma_b> = sum_{dG = {a,b}} v^|G| / sum_{dG = {}} v^|G|`, both sums
//! running over edge subsets of a finite window with free boundary. A
//! contributing cluster of weight `v^N` never leaves the taxicab ellipse
//! `d(a,p) + d(p,b) <= N`, so that ellipse (plus padding) is the window.

use num_bigint::BigInt;

use crate::correlation::{CorrelationId, OracleError};
use crate::lattice::{Region, SubgraphProblem, DEFAULT_STATE_CAP};
use crate::rational;
use crate::series::{Series, VarTag};

/// Largest edge count accepted by [`ht_series_bruteforce`].
pub const BRUTE_FORCE_MAX_EDGES: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtOptions {
    /// Taxicab reach beyond the segment between the spins; `None` picks
    /// `(N - distance) / 2`, so the window is the ellipse of reach `N`.
    pub padding: Option<i64>,
    pub state_cap: usize,
}

impl Default for HtOptions {
    fn default() -> Self {
        HtOptions {
            padding: None,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

/// Series plus the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtRun {
    pub series: Series,
    pub padding: i64,
    pub states_peak: usize,
}

pub fn default_padding(distance: i64, order: i64) -> i64 {
    (order - distance).max(0) / 2
}

/// Exact HT series of `C(m, n)` through `v^order`.
pub fn ht_series(id: CorrelationId, order: i64) -> Result<Series, OracleError> {
    Ok(ht_series_with(id, order, &HtOptions::default())?.series)
}

pub fn ht_series_with(
    id: CorrelationId,
    order: i64,
    opts: &HtOptions,
) -> Result<HtRun, OracleError> {
    let dist = id.graph_distance();
    if id.is_trivial() {
        return Ok(HtRun {
            series: Series::one(VarTag::V, order.max(0)),
            padding: 0,
            states_peak: 1,
        });
    }
    if order < dist {
        return Err(OracleError::OrderTooSmall {
            order,
            needed: dist,
        });
    }
    let padding = opts.padding.unwrap_or_else(|| default_padding(dist, order));
    let (bx, by) = id.offset();
    let reach = dist + 2 * padding;
    let taxicab = move |x: i32, y: i32| -> i64 {
        (x.abs() + y.abs() + (x - bx).abs() + (y - by).abs()) as i64
    };
    let p = padding as i32;
    let region = Region::from_predicate((-p, bx + p), (-p, by + p), |x, y| taxicab(x, y) <= reach)?;
    let max_degree = order as usize;

    let num = SubgraphProblem::new(region.clone(), vec![(0, 0), (bx, by)], max_degree)
        .with_state_cap(opts.state_cap)
        .solve()?;
    let den = SubgraphProblem::new(region, vec![], max_degree)
        .with_state_cap(opts.state_cap)
        .solve()?;
    let series = ratio(&num.coeffs, &den.coeffs, VarTag::V, order)?;
    Ok(HtRun {
        series,
        padding,
        states_peak: num.states_peak.max(den.states_peak),
    })
}

pub(crate) fn ratio(
    num: &[BigInt],
    den: &[BigInt],
    var: VarTag,
    order: i64,
) -> Result<Series, OracleError> {
    let to_series = |c: &[BigInt]| {
        let mut v: Vec<_> = c.iter().take(order as usize + 1).cloned().map(rational::big).collect();
        v.resize(order as usize + 1, rational::int(0));
        Series::from_coeffs(var, 0, v)
    };
    Ok(to_series(num).div(&to_series(den))?)
}

/// Rectangular window for the exhaustive oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HtWindow {
    pub x_range: (i32, i32),
    pub y_range: (i32, i32),
}

impl HtWindow {
    /// Bounding box of the two spins, widened by `padding` on every side.
    pub fn padded(id: CorrelationId, padding: i32) -> HtWindow {
        let (bx, by) = id.offset();
        HtWindow {
            x_range: (-padding, bx + padding),
            y_range: (-padding, by + padding),
        }
    }

    pub fn edge_count(&self) -> usize {
        let w = (self.x_range.1 - self.x_range.0 + 1).max(0) as usize;
        let h = (self.y_range.1 - self.y_range.0 + 1).max(0) as usize;
        w.saturating_sub(1) * h + h.saturating_sub(1) * w
    }
}

/// Independent oracle: enumerate every edge subset of a small rectangle.
///
/// Subsets are visited in Gray-code order so each step toggles one edge and
/// updates the odd-vertex mask with a single XOR.
pub fn ht_series_bruteforce(
    id: CorrelationId,
    order: i64,
    window: HtWindow,
) -> Result<Series, OracleError> {
    if id.is_trivial() {
        return Ok(Series::one(VarTag::V, order.max(0)));
    }
    let edges = window.edge_count();
    if edges > BRUTE_FORCE_MAX_EDGES {
        return Err(OracleError::WindowTooLarge {
            edges,
            max: BRUTE_FORCE_MAX_EDGES,
        });
    }
    let (x0, x1) = window.x_range;
    let (y0, y1) = window.y_range;
    let w = (x1 - x0 + 1) as usize;
    let index = |x: i32, y: i32| ((y - y0) as usize) * w + (x - x0) as usize;
    let mut masks: Vec<u64> = Vec::with_capacity(edges);
    for y in y0..=y1 {
        for x in x0..=x1 {
            if x < x1 {
                masks.push(1 << index(x, y) | 1 << index(x + 1, y));
            }
            if y < y1 {
                masks.push(1 << index(x, y) | 1 << index(x, y + 1));
            }
        }
    }
    let (bx, by) = id.offset();
    let target = 1u64 << index(0, 0) | 1u64 << index(bx, by);
    let len = order as usize + 1;
    let mut num = vec![0u64; len];
    let mut den = vec![0u64; len];
    let mut odd = 0u64;
    let mut size = 0usize;
    den[0] = 1;
    for step in 1u64..(1u64 << edges) {
        let flip = step.trailing_zeros() as usize;
        odd ^= masks[flip];
        // Gray code: edge `flip` enters when bit `flip` of step ^ (step >> 1) is set
        let gray = step ^ (step >> 1);
        if gray >> flip & 1 == 1 {
            size += 1;
        } else {
            size -= 1;
        }
        if size < len {
            if odd == 0 {
                den[size] += 1;
            } else if odd == target {
                num[size] += 1;
            }
        }
    }
    let big = |c: Vec<u64>| c.into_iter().map(BigInt::from).collect::<Vec<_>>();
    ratio(&big(num), &big(den), VarTag::V, order)
}
