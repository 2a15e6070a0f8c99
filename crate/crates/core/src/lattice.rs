//! Frontier DP over edge subsets of a square-lattice region.
//!
//! Counts edge subsets `G` of a finite region whose odd-degree vertex set is
//! exactly a prescribed target set, weighted by `w^|G|` times a sign `-1`
//! for every chosen edge that belongs to a cut set. The result is a
//! polynomial in `w` truncated at a maximal degree.
//!
//! Two sweep orders are available. The column sweep processes vertices column
//! by column, bottom to top; its state records which horizontal edges leave
//! the processed part (one bit per row) plus one bit for the vertical edge
//! entering the next vertex. The antidiagonal sweep processes vertices by
//! increasing `x + y`; its state holds the accumulated degree parity of every
//! unfinished vertex, indexed by `x - y`. Rounded windows around a diagonal
//! offset have a much shorter antidiagonal frontier than column frontier.
//! `solve` picks whichever orientation has the narrowest frontier. States are
//! pruned as soon as their cheapest possible completion would exceed the
//! degree budget.

use std::collections::HashSet;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use thiserror::Error;

/// Default cap on the number of live frontier states.
pub const DEFAULT_STATE_CAP: usize = 1 << 22;

const CARRY: u64 = 1 << 63;
const MAX_HEIGHT: i32 = 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("frontier state count {states} exceeds the configured cap {cap}")]
    ResourceBudgetExceeded { states: usize, cap: usize },
    #[error("region height {0} exceeds the supported frontier width")]
    RegionTooTall(i32),
    #[error("column {0} has a non-contiguous row range")]
    NonContiguousColumn(i32),
    #[error("vertex ({0}, {1}) is outside the region")]
    OutsideRegion(i32, i32),
    #[error("coefficient overflow in the frontier table")]
    CoefficientOverflow,
}

/// Lattice edge, named by its lower-left endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    /// `(x, y) -- (x + 1, y)`
    H(i32, i32),
    /// `(x, y) -- (x, y + 1)`
    V(i32, i32),
}

impl Edge {
    pub fn endpoints(self) -> ((i32, i32), (i32, i32)) {
        match self {
            Edge::H(x, y) => ((x, y), (x + 1, y)),
            Edge::V(x, y) => ((x, y), (x, y + 1)),
        }
    }

    pub fn between(a: (i32, i32), b: (i32, i32)) -> Option<Edge> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match (hi.0 - lo.0, hi.1 - lo.1) {
            (1, 0) => Some(Edge::H(lo.0, lo.1)),
            (0, 1) => Some(Edge::V(lo.0, lo.1)),
            _ => None,
        }
    }

    fn transposed(self) -> Edge {
        match self {
            Edge::H(x, y) => Edge::V(y, x),
            Edge::V(x, y) => Edge::H(y, x),
        }
    }

    fn mirrored(self) -> Edge {
        match self {
            Edge::H(x, y) => Edge::H(x, -y),
            Edge::V(x, y) => Edge::V(x, -y - 1),
        }
    }
}

/// A finite region: consecutive columns, each with a contiguous row range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    x0: i32,
    cols: Vec<(i32, i32)>,
}

impl Region {
    pub fn rectangle(x_range: (i32, i32), y_range: (i32, i32)) -> Region {
        Region {
            x0: x_range.0,
            cols: vec![y_range; (x_range.1 - x_range.0 + 1).max(0) as usize],
        }
    }

    /// Region of all `(x, y)` in the bounding box satisfying `keep`.
    ///
    /// Empty columns at the ends are dropped; a column whose kept rows are not
    /// contiguous is an error.
    pub fn from_predicate(
        x_range: (i32, i32),
        y_range: (i32, i32),
        keep: impl Fn(i32, i32) -> bool,
    ) -> Result<Region, LatticeError> {
        let mut cols = Vec::new();
        let mut x0 = None;
        for x in x_range.0..=x_range.1 {
            let rows: Vec<i32> = (y_range.0..=y_range.1).filter(|&y| keep(x, y)).collect();
            if rows.is_empty() {
                if x0.is_some() {
                    break;
                }
                continue;
            }
            let (lo, hi) = (rows[0], *rows.last().unwrap());
            if (hi - lo + 1) as usize != rows.len() {
                return Err(LatticeError::NonContiguousColumn(x));
            }
            x0.get_or_insert(x);
            cols.push((lo, hi));
        }
        Ok(Region {
            x0: x0.unwrap_or(x_range.0),
            cols,
        })
    }

    pub fn contains(&self, x: i32, y: i32) -> bool {
        self.column(x).is_some_and(|(lo, hi)| lo <= y && y <= hi)
    }

    fn column(&self, x: i32) -> Option<(i32, i32)> {
        let i = x - self.x0;
        (i >= 0).then(|| self.cols.get(i as usize).copied()).flatten()
    }

    pub fn x_range(&self) -> (i32, i32) {
        (self.x0, self.x0 + self.cols.len() as i32 - 1)
    }

    pub fn y_range(&self) -> (i32, i32) {
        let lo = self.cols.iter().map(|c| c.0).min().unwrap_or(0);
        let hi = self.cols.iter().map(|c| c.1).max().unwrap_or(-1);
        (lo, hi)
    }

    /// Number of rows spanned, which bounds the frontier width.
    pub fn height(&self) -> i32 {
        let (lo, hi) = self.y_range();
        hi - lo + 1
    }

    pub fn width(&self) -> i32 {
        self.cols.len() as i32
    }

    pub fn vertex_count(&self) -> usize {
        self.cols.iter().map(|(lo, hi)| (hi - lo + 1) as usize).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(move |(i, &(lo, hi))| (lo..=hi).map(move |y| (self.x0 + i as i32, y)))
    }

    /// All edges with both endpoints in the region.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (x, y) in self.vertices() {
            if self.contains(x + 1, y) {
                out.push(Edge::H(x, y));
            }
            if self.contains(x, y + 1) {
                out.push(Edge::V(x, y));
            }
        }
        out
    }

    /// Mirror across the diagonal `x = y`, when that yields contiguous columns.
    pub fn transposed(&self) -> Result<Region, LatticeError> {
        let (ylo, yhi) = self.y_range();
        let (xlo, xhi) = self.x_range();
        Region::from_predicate((ylo, yhi), (xlo, xhi), |x, y| self.contains(y, x))
    }

    /// Reflection `y -> -y`.
    pub fn mirrored(&self) -> Region {
        Region {
            x0: self.x0,
            cols: self.cols.iter().map(|&(lo, hi)| (-hi, -lo)).collect(),
        }
    }

    /// Frontier size of the antidiagonal sweep: one more than the longest
    /// antidiagonal `x + y = c`. `None` when the `x - y` span does not fit a
    /// 64-bit state.
    fn antidiagonal_width(&self) -> Option<usize> {
        let (mut dlo, mut dhi) = (i32::MAX, i32::MIN);
        let mut counts: std::collections::BTreeMap<i32, usize> = Default::default();
        for (x, y) in self.vertices() {
            dlo = dlo.min(x - y);
            dhi = dhi.max(x - y);
            *counts.entry(x + y).or_default() += 1;
        }
        if dhi >= dlo && dhi - dlo >= 64 {
            return None;
        }
        Some(counts.values().max().copied().unwrap_or(0) + 1)
    }
}

/// Edge-subset counting problem on a region.
#[derive(Clone, Debug)]
pub struct SubgraphProblem {
    pub region: Region,
    /// Vertices required to have odd degree; all others must be even.
    pub targets: Vec<(i32, i32)>,
    /// Edges carrying weight `-w` instead of `w`.
    pub cut: HashSet<Edge>,
    pub max_degree: usize,
    pub state_cap: usize,
}

/// Truncated weight polynomial plus sweep statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphCount {
    pub coeffs: Vec<BigInt>,
    pub states_peak: usize,
}

impl SubgraphProblem {
    pub fn new(region: Region, targets: Vec<(i32, i32)>, max_degree: usize) -> SubgraphProblem {
        SubgraphProblem {
            region,
            targets,
            cut: HashSet::new(),
            max_degree,
            state_cap: DEFAULT_STATE_CAP,
        }
    }

    pub fn with_cut(mut self, cut: impl IntoIterator<Item = Edge>) -> SubgraphProblem {
        self.cut = cut.into_iter().collect();
        self
    }

    pub fn with_state_cap(mut self, cap: usize) -> SubgraphProblem {
        self.state_cap = cap;
        self
    }

    /// Swap the roles of rows and columns so the sweep runs along the longer axis.
    fn oriented(&self) -> Result<SubgraphProblem, LatticeError> {
        if self.region.height() <= self.region.width() {
            return Ok(self.clone());
        }
        Ok(SubgraphProblem {
            region: self.region.transposed()?,
            targets: self.targets.iter().map(|&(x, y)| (y, x)).collect(),
            cut: self.cut.iter().map(|e| e.transposed()).collect(),
            max_degree: self.max_degree,
            state_cap: self.state_cap,
        })
    }

    fn mirrored(&self) -> SubgraphProblem {
        SubgraphProblem {
            region: self.region.mirrored(),
            targets: self.targets.iter().map(|&(x, y)| (x, -y)).collect(),
            cut: self.cut.iter().map(|e| e.mirrored()).collect(),
            max_degree: self.max_degree,
            state_cap: self.state_cap,
        }
    }

    /// Frontier bit counts of the column sweep and of the two antidiagonal sweeps.
    pub fn frontier_widths(&self) -> (usize, Option<usize>, Option<usize>) {
        let column = self.region.height().min(self.region.width()).max(0) as usize + 1;
        (
            column,
            self.region.antidiagonal_width(),
            self.region.mirrored().antidiagonal_width(),
        )
    }

    pub fn solve(&self) -> Result<SubgraphCount, LatticeError> {
        for &(x, y) in &self.targets {
            if !self.region.contains(x, y) {
                return Err(LatticeError::OutsideRegion(x, y));
            }
        }
        let (column, diag, anti) = self.frontier_widths();
        let diag = diag.unwrap_or(usize::MAX);
        let anti = anti.unwrap_or(usize::MAX);
        if column <= diag && column <= anti {
            self.solve_columns()
        } else if diag <= anti {
            self.sweep_antidiagonal()
        } else {
            self.mirrored().sweep_antidiagonal()
        }
    }

    /// Column sweep along the longer axis.
    pub fn solve_columns(&self) -> Result<SubgraphCount, LatticeError> {
        self.oriented()?.sweep()
    }

    /// Antidiagonal sweep in the given orientation.
    pub fn solve_antidiagonal(&self) -> Result<SubgraphCount, LatticeError> {
        if self.region.antidiagonal_width().is_none() {
            return Err(LatticeError::RegionTooTall(self.region.height()));
        }
        self.sweep_antidiagonal()
    }

    fn sweep_antidiagonal(&self) -> Result<SubgraphCount, LatticeError> {
        let region = &self.region;
        let mut order: Vec<(i32, i32)> = region.vertices().collect();
        order.sort_unstable_by_key(|&(x, y)| (x + y, x));
        let dmin = order.iter().map(|&(x, y)| x - y).min().unwrap_or(0);
        let stride = self.max_degree + 1;
        let budget = self.max_degree as i64;

        let mut targets: Vec<(i32, i32)> = self.targets.clone();
        targets.sort_unstable_by_key(|&(x, y)| (x + y, x));
        targets.dedup();
        let rank = |p: (i32, i32)| (p.0 + p.1, p.0);

        let mut keys: Vec<u64> = vec![0];
        let mut table: Vec<i128> = vec![0; stride];
        table[0] = 1;
        let mut states_peak = 1usize;

        let mut next_index: FxHashMap<u64, u32> = FxHashMap::default();
        let mut next_keys: Vec<u64> = Vec::new();
        let mut next_table: Vec<i128> = Vec::new();
        let mut open: Vec<OpenEnd> = Vec::new();

        for &(x, y) in &order {
            let c = x + y;
            let bit = (x - y - dmin) as u32;
            let is_target = targets.contains(&(x, y)) as u64;
            let pending: Vec<(i32, i32)> = targets
                .iter()
                .copied()
                .filter(|&t| rank(t) > rank((x, y)))
                .collect();
            let right_ok = region.contains(x + 1, y);
            let up_ok = region.contains(x, y + 1);
            let cut_r = self.cut.contains(&Edge::H(x, y)) as u64;
            let cut_u = self.cut.contains(&Edge::V(x, y)) as u64;

            next_index.clear();
            next_keys.clear();
            next_table.clear();

            for (si, &key) in keys.iter().enumerate() {
                let src = &table[si * stride..(si + 1) * stride];
                let parity = (key >> bit) & 1 ^ is_target;
                let base = key & !(1u64 << bit);
                for r in 0..=1u64 {
                    let u = parity ^ r;
                    if (r == 1 && !right_ok) || (u == 1 && !up_ok) {
                        continue;
                    }
                    let mut new_key = base;
                    if r == 1 {
                        new_key ^= 1u64 << (bit + 1);
                    }
                    if u == 1 {
                        new_key ^= 1u64 << (bit - 1);
                    }
                    let lb = antidiagonal_bound(new_key, c, dmin, &pending, &mut open);
                    let max_deg = budget - lb;
                    let shift = (r + u) as usize;
                    if max_deg < shift as i64 {
                        continue;
                    }
                    let top = max_deg as usize;
                    if src[..=top - shift].iter().all(|&a| a == 0) {
                        continue;
                    }
                    let negate = (r & cut_r) ^ (u & cut_u) == 1;
                    let slot = *next_index.entry(new_key).or_insert_with(|| {
                        next_keys.push(new_key);
                        next_table.resize(next_table.len() + stride, 0);
                        (next_keys.len() - 1) as u32
                    }) as usize;
                    let dst = &mut next_table[slot * stride..(slot + 1) * stride];
                    for d in shift..=top {
                        let a = src[d - shift];
                        if a == 0 {
                            continue;
                        }
                        let a = if negate { -a } else { a };
                        dst[d] = dst[d].checked_add(a).ok_or(LatticeError::CoefficientOverflow)?;
                    }
                }
            }
            if next_keys.len() > self.state_cap {
                return Err(LatticeError::ResourceBudgetExceeded {
                    states: next_keys.len(),
                    cap: self.state_cap,
                });
            }
            states_peak = states_peak.max(next_keys.len());
            std::mem::swap(&mut keys, &mut next_keys);
            std::mem::swap(&mut table, &mut next_table);
        }

        Ok(SubgraphCount {
            coeffs: final_coeffs(&keys, &table, stride),
            states_peak,
        })
    }

    fn sweep(&self) -> Result<SubgraphCount, LatticeError> {
        let region = &self.region;
        for &(x, y) in &self.targets {
            if !region.contains(x, y) {
                return Err(LatticeError::OutsideRegion(x, y));
            }
        }
        let height = region.height();
        if height > MAX_HEIGHT {
            return Err(LatticeError::RegionTooTall(height));
        }
        let y_base = region.y_range().0;
        let stride = self.max_degree + 1;
        let budget = self.max_degree as i64;

        // sweep order index of each target, to know which are still pending
        let order_index = |x: i32, y: i32| -> usize {
            let (lo, _) = region.column(x).unwrap();
            let before: usize = region.cols[..(x - region.x0) as usize]
                .iter()
                .map(|(a, b)| (b - a + 1) as usize)
                .sum();
            before + (y - lo) as usize
        };
        let mut targets: Vec<(usize, i32, i32)> = self
            .targets
            .iter()
            .map(|&(x, y)| (order_index(x, y), x, y))
            .collect();
        targets.sort_unstable();
        targets.dedup();

        let mut keys: Vec<u64> = vec![0];
        let mut table: Vec<i128> = vec![0; stride];
        table[0] = 1;
        let mut states_peak = 1usize;
        let mut step = 0usize;

        let mut next_index: FxHashMap<u64, u32> = FxHashMap::default();
        let mut next_keys: Vec<u64> = Vec::new();
        let mut next_table: Vec<i128> = Vec::new();

        for (ci, &(lo, hi)) in region.cols.iter().enumerate() {
            let x = region.x0 + ci as i32;
            for y in lo..=hi {
                let row = (y - y_base) as u32;
                let bit = 1u64 << row;
                let is_target = targets.iter().any(|t| t.0 == step) as u64;
                step += 1;
                let pending: Vec<(i32, i32)> = targets
                    .iter()
                    .filter(|t| t.0 >= step)
                    .map(|t| (t.1, t.2))
                    .collect();
                let right_ok = region.contains(x + 1, y);
                let up_ok = y < hi;
                let cut_r = self.cut.contains(&Edge::H(x, y)) as u64;
                let cut_u = self.cut.contains(&Edge::V(x, y)) as u64;

                next_index.clear();
                next_keys.clear();
                next_table.clear();

                for (si, &key) in keys.iter().enumerate() {
                    let src = &table[si * stride..(si + 1) * stride];
                    let h = (key & bit != 0) as u64;
                    let c = (key & CARRY != 0) as u64;
                    let parity = h ^ c ^ is_target;
                    let base = key & !bit & !CARRY;
                    for r in 0..=(right_ok as u64) {
                        let u = parity ^ r;
                        if u == 1 && !up_ok {
                            continue;
                        }
                        let new_key = base | (r * bit) | (u * CARRY);
                        let lb = completion_bound(new_key, x, y, y_base, &pending);
                        let max_deg = budget - lb;
                        if max_deg < 0 {
                            continue;
                        }
                        let shift = (r + u) as usize;
                        let negate = (r & cut_r) ^ (u & cut_u) == 1;
                        let top = max_deg as usize;
                        if top < shift || src[..=top - shift].iter().all(|&a| a == 0) {
                            continue;
                        }
                        let slot = *next_index.entry(new_key).or_insert_with(|| {
                            next_keys.push(new_key);
                            next_table.resize(next_table.len() + stride, 0);
                            (next_keys.len() - 1) as u32
                        }) as usize;
                        let dst = &mut next_table[slot * stride..(slot + 1) * stride];
                        for d in shift..=top {
                            let a = src[d - shift];
                            if a == 0 {
                                continue;
                            }
                            let a = if negate { -a } else { a };
                            dst[d] = dst[d].checked_add(a).ok_or(LatticeError::CoefficientOverflow)?;
                        }
                    }
                }
                if next_keys.len() > self.state_cap {
                    return Err(LatticeError::ResourceBudgetExceeded {
                        states: next_keys.len(),
                        cap: self.state_cap,
                    });
                }
                states_peak = states_peak.max(next_keys.len());
                std::mem::swap(&mut keys, &mut next_keys);
                std::mem::swap(&mut table, &mut next_table);
            }
        }

        Ok(SubgraphCount {
            coeffs: final_coeffs(&keys, &table, stride),
            states_peak,
        })
    }
}

fn final_coeffs(keys: &[u64], table: &[i128], stride: usize) -> Vec<BigInt> {
    match keys.iter().position(|&k| k == 0) {
        Some(i) => table[i * stride..(i + 1) * stride]
            .iter()
            .map(|&a| BigInt::from(a))
            .collect(),
        None => vec![BigInt::from(0); stride],
    }
}

/// Unfinished vertex in rotated coordinates `c = x + y`, `d = x - y`.
#[derive(Clone, Copy, Debug)]
struct OpenEnd {
    c: i32,
    d: i32,
}

/// Lower bound for the antidiagonal sweep.
///
/// Every open end must be joined to another by a path of at least their
/// taxicab distance `max(|dc|, |dd|)`. Frontier vertices lie on two adjacent
/// antidiagonals, where that distance is `|dd|` and optimal pairing is
/// consecutive in `d`. A single target beyond the frontier is paired with each
/// frontier vertex in turn; with more than one, only the `d` projection is used.
fn antidiagonal_bound(
    key: u64,
    c: i32,
    dmin: i32,
    pending: &[(i32, i32)],
    open: &mut Vec<OpenEnd>,
) -> i64 {
    open.clear();
    let mut mask = key;
    let mut far: Option<OpenEnd> = None;
    let mut far_count = 0;
    for &(tx, ty) in pending {
        let t = OpenEnd { c: tx + ty, d: tx - ty };
        if t.c <= c + 1 {
            mask ^= 1u64 << (t.d - dmin);
        } else {
            far = Some(t);
            far_count += 1;
            open.push(t);
        }
    }
    let mut bits = mask;
    while bits != 0 {
        let b = bits.trailing_zeros() as i32;
        let d = b + dmin;
        // parity of d fixes which of the two live antidiagonals holds the vertex
        let vc = if (d - c).rem_euclid(2) == 0 { c } else { c + 1 };
        open.push(OpenEnd { c: vc, d });
        bits &= bits - 1;
    }
    if far_count != 1 {
        let mut ds: Vec<i32> = open.iter().map(|e| e.d).collect();
        ds.sort_unstable();
        return consecutive_pairing(&ds);
    }
    let t = far.unwrap();
    let mut ds: Vec<(i32, i32)> = open[1..].iter().map(|e| (e.d, e.c)).collect();
    if ds.is_empty() {
        return 0;
    }
    ds.sort_unstable();
    let m = ds.len();
    // prefix[j]: pairs (0,1),(2,3).. among the first j (j even); suffix[j]: pairs from j to the end
    let mut prefix = vec![0i64; m + 1];
    let mut j = 2;
    while j <= m {
        prefix[j] = prefix[j - 2] + (ds[j - 1].0 - ds[j - 2].0) as i64;
        j += 2;
    }
    let mut suffix = vec![0i64; m + 2];
    let mut j = m as i64 - 2;
    while j >= 0 {
        let ju = j as usize;
        suffix[ju] = suffix[ju + 2] + (ds[ju + 1].0 - ds[ju].0) as i64;
        j -= 2;
    }
    let mut best = i64::MAX;
    for (i, &(d, vc)) in ds.iter().enumerate() {
        let link = ((t.c - vc).abs().max((t.d - d).abs())) as i64;
        let rest = if m.is_multiple_of(2) {
            // odd number of other open ends: no perfect pairing exists
            return i64::MAX / 4;
        } else if i % 2 == 0 {
            prefix[i] + suffix[i + 1]
        } else {
            prefix[i - 1] + (ds[i + 1].0 - ds[i - 1].0) as i64 + suffix[i + 2]
        };
        best = best.min(link + rest);
    }
    best
}

fn consecutive_pairing(sorted: &[i32]) -> i64 {
    if sorted.len() % 2 == 1 {
        return i64::MAX / 4;
    }
    sorted.chunks(2).map(|p| (p[1] - p[0]) as i64).sum()
}

/// Lower bound on the number of edges still needed to close every open end.
///
/// Open ends are the frontier bits, the carry (entering `(x, y + 1)`) and the
/// targets not yet processed. Pairing them costs at least the optimal 1D
/// matching of their rows; a lone pending target additionally needs the
/// horizontal distance from the frontier.
fn completion_bound(key: u64, x: i32, y: i32, y_base: i32, pending: &[(i32, i32)]) -> i64 {
    let mut rows: [i32; 66] = [0; 66];
    let mut n = 0usize;
    let mut bits = key & !CARRY;
    while bits != 0 {
        rows[n] = bits.trailing_zeros() as i32 + y_base;
        n += 1;
        bits &= bits - 1;
    }
    let mut extra = 0usize;
    if key & CARRY != 0 {
        rows[n] = y + 1;
        n += 1;
        extra += 1;
    }
    for &(_, ty) in pending {
        rows[n] = ty;
        n += 1;
        extra += 1;
    }
    if extra > 0 {
        rows[..n].sort_unstable();
    }
    let mut vertical = 0i64;
    let mut i = 0;
    while i + 1 < n {
        vertical += (rows[i + 1] - rows[i]) as i64;
        i += 2;
    }
    let horizontal = match pending {
        [(tx, _)] => (*tx as i64 - x as i64 - 1).max(0),
        _ => 0,
    };
    vertical.max(horizontal)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive enumeration over all edge subsets.
    fn brute(problem: &SubgraphProblem) -> Vec<i64> {
        let edges = problem.region.edges();
        assert!(edges.len() <= 22);
        let mut out = vec![0i64; problem.max_degree + 1];
        let verts: Vec<(i32, i32)> = problem.region.vertices().collect();
        for mask in 0u32..(1 << edges.len()) {
            let size = mask.count_ones() as usize;
            if size > problem.max_degree {
                continue;
            }
            let mut deg = std::collections::HashMap::new();
            let mut sign = 1i64;
            for (i, e) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (a, b) = e.endpoints();
                    *deg.entry(a).or_insert(0) += 1;
                    *deg.entry(b).or_insert(0) += 1;
                    if problem.cut.contains(e) {
                        sign = -sign;
                    }
                }
            }
            let ok = verts.iter().all(|v| {
                let odd = deg.get(v).copied().unwrap_or(0) % 2 == 1;
                odd == problem.targets.contains(v)
            });
            if ok {
                out[size] += sign;
            }
        }
        out
    }

    fn as_i64(c: &SubgraphCount) -> Vec<i64> {
        c.coeffs.iter().map(|b| i64::try_from(b).unwrap()).collect()
    }

    #[test]
    fn single_square() {
        let p = SubgraphProblem::new(Region::rectangle((0, 1), (0, 1)), vec![], 4);
        assert_eq!(as_i64(&p.solve().unwrap()), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn matches_brute_force_on_small_rectangles() {
        for (w, h) in [(3, 3), (4, 3), (3, 4), (5, 2)] {
            let region = Region::rectangle((0, w - 1), (0, h - 1));
            for targets in [vec![], vec![(0, 1), (2, 1)], vec![(0, 0), (1, 1)]] {
                let p = SubgraphProblem::new(region.clone(), targets, 12)
                    .with_cut([Edge::V(1, 0), Edge::H(0, 1)]);
                assert_eq!(as_i64(&p.solve().unwrap()), brute(&p), "{w}x{h} {:?}", p.targets);
            }
        }
    }

    #[test]
    fn irregular_region_matches_brute_force() {
        let region = Region::from_predicate((-2, 2), (-2, 2), |x, y| x.abs() + y.abs() <= 2).unwrap();
        assert_eq!(region.vertex_count(), 13);
        let p = SubgraphProblem::new(region, vec![(-1, 0), (1, 0)], 14);
        assert_eq!(as_i64(&p.solve().unwrap()), brute(&p));
    }

    #[test]
    fn transposed_sweep_agrees() {
        let region = Region::rectangle((0, 1), (0, 4));
        let p = SubgraphProblem::new(region, vec![(0, 0), (1, 3)], 12).with_cut([Edge::H(0, 2)]);
        assert_eq!(as_i64(&p.solve().unwrap()), brute(&p));
        assert!(p.oriented().unwrap().region.height() <= 2);
    }

    #[test]
    fn every_sweep_matches_brute_force() {
        let shapes = [
            Region::rectangle((0, 3), (0, 2)),
            Region::from_predicate((-2, 2), (-2, 2), |x, y| x.abs() + y.abs() <= 2).unwrap(),
            Region::from_predicate((-1, 3), (-1, 3), |x, y| {
                x.abs() + y.abs() + (x - 2).abs() + (y - 2).abs() <= 6
            })
            .unwrap(),
        ];
        for region in shapes {
            if region.edges().len() > 22 {
                continue;
            }
            for targets in [vec![], vec![(0, 0), (1, 1)], vec![(0, 0), (2, 0)], vec![(0, 0)]] {
                let p = SubgraphProblem::new(region.clone(), targets, 16)
                    .with_cut([Edge::V(0, 0), Edge::H(0, 1), Edge::H(-1, 0)]);
                let expect = brute(&p);
                assert_eq!(as_i64(&p.solve_columns().unwrap()), expect);
                assert_eq!(as_i64(&p.solve_antidiagonal().unwrap()), expect);
                assert_eq!(as_i64(&p.mirrored().solve_antidiagonal().unwrap()), expect);
            }
        }
    }

    #[test]
    fn sweeps_agree_on_larger_window() {
        let region = Region::from_predicate((-3, 6), (-3, 6), |x, y| {
            x.abs() + y.abs() + (x - 3).abs() + (y - 3).abs() <= 12
        })
        .unwrap();
        let p = SubgraphProblem::new(region, vec![(0, 0), (3, 3)], 14).with_cut([Edge::V(1, 1)]);
        let a = p.solve_columns().unwrap();
        let b = p.solve_antidiagonal().unwrap();
        assert_eq!(a.coeffs, b.coeffs);
        let (column, diag, _) = p.frontier_widths();
        assert!(diag.unwrap() < column);
    }

    #[test]
    fn antidiagonal_bound_pairs_far_target() {
        let mut open = Vec::new();
        // frontier vertex at d = 0 on line c = 0, target at (3, 3): c = 6, d = 0
        assert_eq!(antidiagonal_bound(1, 0, 0, &[(3, 3)], &mut open), 6);
        // two frontier vertices at d = 0 and d = 4
        assert_eq!(antidiagonal_bound(0b10001, 0, 0, &[], &mut open), 4);
    }

    #[test]
    fn state_cap_is_reported() {
        let p = SubgraphProblem::new(Region::rectangle((0, 6), (0, 6)), vec![], 20).with_state_cap(4);
        assert!(matches!(
            p.solve(),
            Err(LatticeError::ResourceBudgetExceeded { cap: 4, .. })
        ));
    }

    #[test]
    fn non_contiguous_column_rejected() {
        let r = Region::from_predicate((0, 0), (0, 4), |_, y| y != 2);
        assert_eq!(r, Err(LatticeError::NonContiguousColumn(0)));
    }

    #[test]
    fn bound_is_consecutive_pairing() {
        // bits at rows 0, 3 and carry into row 5, pending target at row 9
        let key = 0b1001 | CARRY;
        assert_eq!(completion_bound(key, 0, 4, 0, &[(0, 9)]), 3 + 4);
        assert_eq!(completion_bound(0, 0, 0, 0, &[(7, 0)]), 6);
    }
}
