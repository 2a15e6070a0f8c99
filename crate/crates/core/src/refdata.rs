//! Reference data: printed series, numeric tables, critical values and the
//! structure constants `B_n`, `p_n`.
//!
//! The fixtures live in `resources/golden.json`, frozen by a SHA-256 checksum.
//! Printed misprints are kept verbatim under `raw` and corrected under the
//! canonical fields, each with a note. Comparisons use canonical values.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::correlation::{CorrelationId, OracleError};
use crate::rational::{self, Rational};
use crate::series::{Series, VarTag};
use crate::transforms::{self, TransformError};
use crate::{ht, lt};

const GOLDEN_JSON: &str = include_str!("../resources/golden.json");

/// SHA-256 of `resources/golden.json`.
pub const GOLDEN_SHA256: &str = "b950ad6a0d5e0768a8c2dd5b3b9b85bcdb44c93c82d5128166c6ba5128bdb493";

/// Default precision of [`critical_value`] evaluations.
pub const DEFAULT_DIGITS: usize = 50;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RefdataError {
    #[error("unknown fixture label {0:?}")]
    UnknownLabel(String),
    #[error("{0} is out of range")]
    OutOfRange(String),
    #[error("printed entry {0} is a misprint without a recoverable value")]
    Withdrawn(String),
    #[error("malformed fixture: {0}")]
    Malformed(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `<sigma_0 sigma_r>`.
    Full,
    /// `<sigma_0 sigma_r> - M^2`.
    Connected,
    MagnetizationSquared,
}

/// Which side of the critical point a table or evaluation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableSide {
    High,
    Low,
}

impl std::str::FromStr for TableSide {
    type Err = RefdataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "high" => Ok(TableSide::High),
            "low" => Ok(TableSide::Low),
            other => Err(RefdataError::OutOfRange(format!("table {other:?}"))),
        }
    }
}

/// Printed form kept when the canonical fixture differs from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSeries {
    pub terms: Vec<(i64, String)>,
    pub order: i64,
}

/// A printed series.
///
/// When `prefactor_half_exponent` is `Some(p)`, the printed form is
/// `k^(p/2) [series]` and `series` holds the bracket in `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenSeries {
    pub label: String,
    pub correlation: Option<CorrelationId>,
    pub quantity: Quantity,
    pub prefactor_half_exponent: Option<i64>,
    pub series: Series,
    /// Coefficients exactly as printed, exponent first.
    pub printed: Vec<(i64, String)>,
    pub raw: Option<RawSeries>,
    /// Exponents where the print offers several candidates.
    pub ambiguous: Vec<(i64, Vec<Rational>)>,
    pub note: Option<String>,
}

impl GoldenSeries {
    pub fn var(&self) -> VarTag {
        self.series.var()
    }

    pub fn order(&self) -> i64 {
        self.series.order()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub k: String,
    /// `(v, T/Tc)` above, `(z, T/Tc)` below.
    pub aux: [String; 2],
    pub raw: [String; 6],
    /// `None` where a misprint leaves no recoverable value.
    pub canonical: [Option<String>; 6],
    pub notes: Vec<TableNote>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableNote {
    pub n: u32,
    pub note: String,
    /// Range implied by neighbouring printed entries, for withdrawn values.
    pub bracket: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub raw: String,
    pub value: Option<f64>,
    pub bracket: Option<(f64, f64)>,
    pub note: Option<String>,
}

/// `2^(p/2) sum_k c_k pi^(-2k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalForm {
    pub sqrt2_power: i64,
    pub pi_terms: Vec<(u32, Rational)>,
}

impl fmt::Display for CriticalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.sqrt2_power;
        if p % 2 == 0 {
            write!(f, "2^{}", p / 2)?;
        } else {
            write!(f, "2^({p}/2)")?;
        }
        write!(f, " (")?;
        for (i, (k, c)) in self.pi_terms.iter().enumerate() {
            let mag = rational::fmt(&c.abs());
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}/pi^2")?,
                _ => write!(f, "{mag}/pi^{}", 2 * k)?,
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalValue {
    pub n: u32,
    pub form: CriticalForm,
    pub printed: String,
}

struct Fixtures {
    series: Vec<GoldenSeries>,
    high: Vec<TableRow>,
    low: Vec<TableRow>,
    aux_notes: [String; 2],
    critical: Vec<CriticalValue>,
    bn: Vec<Rational>,
}

mod file {
    use serde::Deserialize;

    #[derive(Deserialize)]
    pub struct Doc {
        pub series: Vec<Series>,
        pub tables: Tables,
        pub critical: Vec<Critical>,
        pub bn: Vec<String>,
    }

    #[derive(Deserialize)]
    pub struct Correlation {
        pub kind: String,
        pub m: u32,
        pub n: u32,
    }

    #[derive(Deserialize)]
    pub struct Raw {
        pub terms: Vec<(i64, String)>,
        pub order: i64,
    }

    #[derive(Deserialize)]
    pub struct Series {
        pub label: String,
        pub correlation: Option<Correlation>,
        pub quantity: super::Quantity,
        pub var: String,
        pub prefactor_half_exponent: Option<i64>,
        pub order: i64,
        pub terms: Vec<(i64, String)>,
        pub raw: Option<Raw>,
        #[serde(default)]
        pub ambiguous: Vec<(i64, Vec<String>)>,
        pub note: Option<String>,
    }

    #[derive(Deserialize)]
    pub struct Tables {
        pub high: Table,
        pub low: Table,
    }

    #[derive(Deserialize)]
    pub struct Table {
        pub aux_note: String,
        pub rows: Vec<Row>,
    }

    #[derive(Deserialize)]
    pub struct Note {
        pub n: u32,
        pub note: String,
        pub bracket: Option<(String, String)>,
    }

    #[derive(Deserialize)]
    pub struct Row {
        pub k: String,
        pub aux: [String; 2],
        pub raw: [String; 6],
        pub canonical: Option<[Option<String>; 6]>,
        #[serde(default)]
        pub notes: Vec<Note>,
    }

    #[derive(Deserialize)]
    pub struct Critical {
        pub n: u32,
        pub sqrt2_power: i64,
        pub pi_terms: Vec<(u32, String)>,
        pub printed: String,
    }
}

fn malformed(what: impl fmt::Display) -> RefdataError {
    RefdataError::Malformed(what.to_string())
}

fn parse_q(s: &str) -> Result<Rational, RefdataError> {
    rational::parse(s).map_err(|_| malformed(format!("coefficient {s:?}")))
}

fn load() -> Result<Fixtures, RefdataError> {
    let doc: file::Doc = serde_json::from_str(GOLDEN_JSON).map_err(malformed)?;
    let mut series = Vec::with_capacity(doc.series.len());
    for s in doc.series {
        let correlation = match s.correlation {
            None => None,
            Some(c) => Some(match c.kind.as_str() {
                "row" => CorrelationId::row(c.m),
                "diagonal" => CorrelationId::diagonal(c.m),
                _ => CorrelationId::general(c.m, c.n),
            }),
        };
        let var: VarTag = s.var.parse().map_err(malformed)?;
        let terms = s
            .terms
            .iter()
            .map(|(k, c)| Ok((*k, parse_q(c)?)))
            .collect::<Result<Vec<_>, RefdataError>>()?;
        let ambiguous = s
            .ambiguous
            .iter()
            .map(|(k, cs)| Ok((*k, cs.iter().map(|c| parse_q(c)).collect::<Result<Vec<_>, _>>()?)))
            .collect::<Result<Vec<_>, RefdataError>>()?;
        series.push(GoldenSeries {
            label: s.label,
            correlation,
            quantity: s.quantity,
            prefactor_half_exponent: s.prefactor_half_exponent,
            series: Series::from_terms(var, s.order, &terms),
            printed: s.raw.as_ref().map(|r| r.terms.clone()).unwrap_or_else(|| s.terms.clone()),
            raw: s.raw.map(|r| RawSeries {
                terms: r.terms,
                order: r.order,
            }),
            ambiguous,
            note: s.note,
        });
    }
    let aux_notes = [doc.tables.high.aux_note.clone(), doc.tables.low.aux_note.clone()];
    let rows = |t: file::Table| -> Vec<TableRow> {
        t.rows
            .into_iter()
            .map(|r| TableRow {
                canonical: r.canonical.unwrap_or_else(|| r.raw.clone().map(Some)),
                k: r.k,
                aux: r.aux,
                raw: r.raw,
                notes: r
                    .notes
                    .into_iter()
                    .map(|n| TableNote {
                        n: n.n,
                        note: n.note,
                        bracket: n.bracket,
                    })
                    .collect(),
            })
            .collect()
    };
    let critical = doc
        .critical
        .into_iter()
        .map(|c| {
            Ok(CriticalValue {
                n: c.n,
                form: CriticalForm {
                    sqrt2_power: c.sqrt2_power,
                    pi_terms: c
                        .pi_terms
                        .iter()
                        .map(|(k, q)| Ok((*k, parse_q(q)?)))
                        .collect::<Result<_, RefdataError>>()?,
                },
                printed: c.printed,
            })
        })
        .collect::<Result<Vec<_>, RefdataError>>()?;
    Ok(Fixtures {
        series,
        high: rows(doc.tables.high),
        low: rows(doc.tables.low),
        aux_notes,
        critical,
        bn: doc.bn.iter().map(|b| parse_q(b)).collect::<Result<_, _>>()?,
    })
}

fn fixtures() -> &'static Fixtures {
    static DATA: OnceLock<Fixtures> = OnceLock::new();
    DATA.get_or_init(|| load().expect("embedded fixtures are well formed"))
}

/// Hex SHA-256 of the embedded fixture file.
pub fn checksum() -> String {
    Sha256::digest(GOLDEN_JSON.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn checksum_ok() -> bool {
    checksum() == GOLDEN_SHA256
}

pub fn labels() -> Vec<&'static str> {
    fixtures().series.iter().map(|s| s.label.as_str()).collect()
}

pub fn golden(label: &str) -> Result<&'static GoldenSeries, RefdataError> {
    fixtures()
        .series
        .iter()
        .find(|s| s.label == label)
        .ok_or_else(|| RefdataError::UnknownLabel(label.to_string()))
}

/// `floor(n^2 / 4)`.
pub fn pn(n: u64) -> u64 {
    n * n / 4
}

pub fn bn(n: u32) -> Result<Rational, RefdataError> {
    let b = &fixtures().bn;
    if n == 0 || n as usize > b.len() {
        return Err(RefdataError::OutOfRange(format!("B_{n}")));
    }
    Ok(b[n as usize - 1].clone())
}

pub fn critical_form(n: u32) -> Result<&'static CriticalValue, RefdataError> {
    fixtures()
        .critical
        .iter()
        .find(|c| c.n == n)
        .ok_or_else(|| RefdataError::OutOfRange(format!("critical value for n = {n}")))
}

/// `R_n` at the critical point, rounded to `digits` decimals.
pub fn critical_value(n: u32, digits: usize) -> Result<String, RefdataError> {
    let form = &critical_form(n)?.form;
    let guard = digits + 30;
    let scale = BigInt::from(10).pow(guard as u32);
    let pi = pi_fixed(&scale);
    // 1/pi^2 in fixed point
    let inv_pi2 = &scale * &scale * &scale / (&pi * &pi);
    let mut power = scale.clone();
    let mut acc = BigInt::zero();
    let mut next = 0u32;
    for (k, c) in &form.pi_terms {
        while next < *k {
            power = &power * &inv_pi2 / &scale;
            next += 1;
        }
        acc += &power * c.numer() / c.denom();
    }
    let p = form.sqrt2_power;
    let half = p.div_euclid(2);
    if half >= 0 {
        acc *= BigInt::from(2).pow(half as u32);
    } else {
        acc /= BigInt::from(2).pow((-half) as u32);
    }
    if p.rem_euclid(2) == 1 {
        let sqrt2 = (BigInt::from(2) * &scale * &scale).sqrt();
        acc = acc * sqrt2 / &scale;
    }
    Ok(fixed_to_decimal(&acc, guard, digits))
}

/// `pi * scale` by Machin's formula.
fn pi_fixed(scale: &BigInt) -> BigInt {
    let atan_inv = |x: i64| {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut term = scale / &x;
        let mut sum = BigInt::zero();
        let mut k = 1i64;
        while !term.is_zero() {
            let t = &term / BigInt::from(k);
            if (k / 2) % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            k += 2;
        }
        sum
    };
    BigInt::from(16) * atan_inv(5) - BigInt::from(4) * atan_inv(239)
}

/// Round a value held as `x / 10^guard` to `digits` decimals.
fn fixed_to_decimal(x: &BigInt, guard: usize, digits: usize) -> String {
    let neg = x.is_negative();
    let drop = BigInt::from(10).pow((guard - digits) as u32);
    let (q, r) = x.abs().div_rem(&drop);
    let q = if r * 2 >= drop { q + 1 } else { q };
    let s = q.to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

pub fn table(which: TableSide) -> &'static [TableRow] {
    match which {
        TableSide::High => &fixtures().high,
        TableSide::Low => &fixtures().low,
    }
}

/// Caveat on the auxiliary columns of a table.
pub fn aux_note(which: TableSide) -> &'static str {
    match which {
        TableSide::High => &fixtures().aux_notes[0],
        TableSide::Low => &fixtures().aux_notes[1],
    }
}

fn grid_index(k: f64) -> Option<usize> {
    let i = (k * 10.0).round();
    ((k * 10.0 - i).abs() < 1e-9 && (0.0..=10.0).contains(&i)).then_some(i as usize)
}

pub fn table_entry(which: TableSide, k: f64, n: u32) -> Result<TableEntry, RefdataError> {
    let i = grid_index(k).ok_or_else(|| RefdataError::OutOfRange(format!("k = {k}")))?;
    if !(1..=6).contains(&n) {
        return Err(RefdataError::OutOfRange(format!("n = {n}")));
    }
    let row = &table(which)[i];
    let j = n as usize - 1;
    let decimal = |s: &str| s.parse::<f64>().map_err(|_| malformed(format!("table entry {s:?}")));
    let note = row.notes.iter().find(|t| t.n == n);
    Ok(TableEntry {
        raw: row.raw[j].clone(),
        value: row.canonical[j].as_deref().map(decimal).transpose()?,
        bracket: match note.and_then(|t| t.bracket.as_ref()) {
            Some((lo, hi)) => Some((decimal(lo)?, decimal(hi)?)),
            None => None,
        },
        note: note.map(|t| t.note.clone()),
    })
}

/// Canonical table entry at the printed grid point `k`.
pub fn table_value(which: TableSide, k: f64, n: u32) -> Result<f64, RefdataError> {
    let e = table_entry(which, k, n)?;
    e.value.ok_or_else(|| RefdataError::Withdrawn(format!("{which:?} table at k = {k}, n = {n}: {}", e.raw)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericEstimate {
    pub value: f64,
    /// Magnitude of the last nonzero term kept, a proxy for the truncation error.
    pub last_term: f64,
    pub order: i64,
}

/// Partial sum of `R_n` as a series in `k/4`, with `k` the modulus on `side`.
///
/// Above the critical point the series is summed in `w = sqrt(k/4)`; below,
/// the full series through `u^order` is summed in `k/4`. `order = None` uses
/// the valuation plus 16.
pub fn numeric_from_series(
    id: CorrelationId,
    side: TableSide,
    k: f64,
    order: Option<i64>,
) -> Result<NumericEstimate, RefdataError> {
    if !(0.0..1.0).contains(&k) {
        return Err(RefdataError::OutOfRange(format!("k = {k}")));
    }
    let source = match side {
        TableSide::High => ht::ht_series(id, order.unwrap_or(id.graph_distance() + 16))?,
        TableSide::Low => lt::lt_series_full(id, order.unwrap_or(16))?,
    };
    numeric_from_oracle_series(&source, side, k)
}

/// As [`numeric_from_series`], for an oracle series already in hand
/// (`v` above the critical point, full series in `u` below).
pub fn numeric_from_oracle_series(
    source: &Series,
    side: TableSide,
    k: f64,
) -> Result<NumericEstimate, RefdataError> {
    if !(0.0..1.0).contains(&k) {
        return Err(RefdataError::OutOfRange(format!("k = {k}")));
    }
    let (series, at) = match side {
        TableSide::High => (transforms::to_khat_gt(source)?, (k / 4.0).sqrt()),
        TableSide::Low => (transforms::to_khat_lt(source)?, k / 4.0),
    };
    let last_term = series
        .terms()
        .filter(|(_, c)| !c.is_zero())
        .last()
        .map(|(e, c)| (rational::to_f64(c) * at.powi(e as i32)).abs())
        .unwrap_or(0.0);
    Ok(NumericEstimate {
        value: series.eval_f64(at),
        last_term,
        order: series.order(),
    })
}

/// The oracle series in the printed form of `fixture`, through `order`.
pub fn derive(fixture: &GoldenSeries, order: i64) -> Result<Series, RefdataError> {
    let id = fixture.correlation;
    let need_id = || id.ok_or_else(|| malformed(format!("{} has no correlation", fixture.label)));
    let var = fixture.var();
    let s = match (fixture.quantity, var) {
        (Quantity::MagnetizationSquared, VarTag::U) => lt::magnetization_squared(order),
        (Quantity::Full, VarTag::V) => ht::ht_series(need_id()?, order)?,
        (Quantity::Full, VarTag::KgtHat) => {
            let id = need_id()?;
            let p = fixture.prefactor_half_exponent.unwrap_or(0);
            let w = transforms::to_khat_gt(&ht::ht_series(id, p + 2 * order)?)?;
            let form = transforms::half_power_form(&w, VarTag::KgtHat)?;
            if form.half_exponent != p || !form.scale.is_one() {
                return Err(malformed(format!(
                    "{}: derived prefactor {} does not match the printed form",
                    fixture.label,
                    form.prefactor()
                )));
            }
            form.bracket
        }
        (Quantity::Full, VarTag::U) => lt::lt_series_full(need_id()?, order)?,
        (Quantity::Connected, VarTag::U) => lt::lt_series_connected(need_id()?, order)?,
        (Quantity::Full, VarTag::KltHat) => transforms::to_khat_lt(&lt::lt_series_full(need_id()?, order)?)?,
        (Quantity::Connected, VarTag::KltHat) => {
            transforms::to_khat_lt(&lt::lt_series_connected(need_id()?, order)?)?
        }
        (q, v) => return Err(malformed(format!("{}: no derivation for {q:?} in {v}", fixture.label))),
    };
    Ok(s.truncate(order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exp: i64,
    pub printed: Rational,
    pub derived: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub exp: i64,
    pub derived: Rational,
    pub candidates: Vec<Rational>,
}

impl Resolution {
    /// Index of the printed candidate equal to the derived value.
    pub fn matching_candidate(&self) -> Option<usize> {
        self.candidates.iter().position(|c| *c == self.derived)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCheck {
    pub label: String,
    pub order: i64,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
    pub resolutions: Vec<Resolution>,
    pub derived: Series,
}

impl GoldenCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Re-derive `fixture` with the oracles and compare every printed coefficient.
pub fn check_golden(fixture: &GoldenSeries) -> Result<GoldenCheck, RefdataError> {
    let order = fixture.order();
    let deepest = fixture.ambiguous.iter().map(|a| a.0).fold(order, i64::max);
    let derived = derive(fixture, deepest)?;
    let lo = fixture.series.min_exp().min(derived.min_exp());
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for e in lo..=order {
        let printed = fixture.series.coeff(e);
        let got = derived.coeff(e);
        compared += 1;
        if printed != got {
            mismatches.push(Mismatch {
                exp: e,
                printed,
                derived: got,
            });
        }
    }
    let resolutions = fixture
        .ambiguous
        .iter()
        .map(|(e, cands)| Resolution {
            exp: *e,
            derived: derived.coeff(*e),
            candidates: cands.clone(),
        })
        .collect();
    Ok(GoldenCheck {
        label: fixture.label.clone(),
        order,
        compared,
        mismatches,
        resolutions,
        derived,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksum_is_frozen() {
        assert_eq!(checksum(), GOLDEN_SHA256);
    }

    #[test]
    fn every_label_loads() {
        assert_eq!(labels().len(), 37);
        for l in labels() {
            let g = golden(l).unwrap();
            assert!(!g.series.is_zero(), "{l}");
        }
        assert!(matches!(golden("r7v_taylor"), Err(RefdataError::UnknownLabel(_))));
    }

    #[test]
    fn printed_prefix_of_r5v() {
        let g = golden("r5v_taylor").unwrap();
        let head: Vec<i64> = (5..=11).step_by(2).map(|e| g.series.coeff(e).to_integer().try_into().unwrap()).collect();
        assert_eq!(head, [1, 30, 250, 1200]);
        assert_eq!(g.correlation, Some(CorrelationId::row(5)));
    }

    #[test]
    fn structure_constants() {
        assert_eq!(pn(5), 6);
        assert_eq!(pn(1), 0);
        assert_eq!(bn(5).unwrap(), rational::frac(1, 81));
        assert_eq!(bn(6).unwrap(), rational::frac(1, 18225));
        assert!(bn(7).is_err());
    }

    #[test]
    fn pi_digits() {
        let scale = BigInt::from(10).pow(40);
        let pi = pi_fixed(&scale).to_string();
        assert!(pi.starts_with("31415926535897932384626433832795028841"));
    }

    #[test]
    fn rounding() {
        assert_eq!(fixed_to_decimal(&BigInt::from(12345), 4, 2), "1.23");
        assert_eq!(fixed_to_decimal(&BigInt::from(12355), 4, 3), "1.236");
        assert_eq!(fixed_to_decimal(&BigInt::from(-5), 4, 3), "-0.001");
        assert_eq!(fixed_to_decimal(&BigInt::from(995), 3, 2), "1.00");
    }

    #[test]
    fn critical_n1_is_inverse_sqrt2() {
        assert_eq!(critical_value(1, 6).unwrap(), "0.707107");
        assert!(critical_value(0, 6).is_err());
    }

    #[test]
    fn table_lookup() {
        assert_eq!(table_value(TableSide::High, 0.5, 1).unwrap(), 0.4013);
        assert_eq!(table_value(TableSide::Low, 0.3, 2).unwrap(), 0.9769);
        let typo = table_entry(TableSide::Low, 0.3, 4).unwrap();
        assert_eq!((typo.raw.as_str(), typo.value), ("09767.", Some(0.9767)));
        assert!(typo.note.is_some());
        let gone = table_entry(TableSide::Low, 0.2, 2).unwrap();
        assert_eq!((gone.value, gone.bracket), (None, Some((0.9899, 0.9904))));
        assert!(matches!(table_value(TableSide::Low, 0.2, 2), Err(RefdataError::Withdrawn(_))));
        assert_eq!(table_value(TableSide::Low, 0.0, 3).unwrap(), 1.0);
        assert!(table_value(TableSide::High, 0.35, 1).is_err());
        assert!(table_value(TableSide::High, 0.3, 7).is_err());
    }

    #[test]
    fn critical_form_display() {
        let f = &critical_form(3).unwrap().form;
        assert_eq!(f.to_string(), "2^(3/2) (1 - 8/pi^2)");
    }
}
