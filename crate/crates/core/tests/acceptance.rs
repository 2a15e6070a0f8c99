//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A failure exits nonzero unless it is a reference claim the exact data
//! contradicts; those still print FAIL, with the contradiction spelled out.

use std::ops::RangeInclusive;
use std::thread;
use std::time::{Duration, Instant};

use isingser_core::correlation::CorrelationId;
use isingser_core::fitting::{self, ExtremumKind, Family, FitResult, Poly};
use isingser_core::ht::{self, HtOptions, HtWindow};
use isingser_core::lt::{self, LtOptions};
use isingser_core::painleve::{self, Branch};
use isingser_core::rational::{self, Rational};
use isingser_core::refdata::{self, GoldenCheck, TableSide};
use isingser_core::series::{Series, VarTag};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

mod common;

struct Failure {
    detail: String,
    unattainable: bool,
}

impl From<String> for Failure {
    fn from(detail: String) -> Self {
        Failure { detail, unattainable: false }
    }
}

type Outcome = Result<String, Failure>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn check_labels(labels: &[String]) -> Result<Vec<GoldenCheck>, String> {
    labels
        .iter()
        .map(|l| refdata::check_golden(refdata::golden(l).map_err(err)?).map_err(err))
        .collect()
}

fn describe_failures(checks: &[GoldenCheck]) -> String {
    checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| {
            let m = &c.mismatches[0];
            format!(
                "{} at exponent {}: printed {}, derived {}",
                c.label,
                m.exp,
                rational::fmt(&m.printed),
                rational::fmt(&m.derived)
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn labels(pattern: &str) -> Vec<String> {
    (1..=6).map(|n| pattern.replace('#', &n.to_string())).collect()
}

/// Printed coefficients: listed terms, counting zeros the print shows explicitly.
fn printed_count(checks: &[GoldenCheck]) -> usize {
    checks
        .iter()
        .map(|c| refdata::golden(&c.label).unwrap().printed.len())
        .sum()
}

fn criterion_1() -> Outcome {
    let checks = check_labels(&labels("r#v_taylor"))?;
    let printed = printed_count(&checks);
    ensure(checks.iter().all(GoldenCheck::passed), || describe_failures(&checks))?;
    ensure(printed == 48, || format!("expected 48 printed coefficients, found {printed}"))?;
    Ok(format!("{printed}/48 printed coefficients of R_1..R_6 in v reproduced"))
}

fn criterion_2() -> Outcome {
    let checks = check_labels(&labels("r#kkg_taylor"))?;
    ensure(checks.iter().all(GoldenCheck::passed), || describe_failures(&checks))?;
    let zero = |n: usize, e: i64| checks[n - 1].derived.coeff(e).is_zero();
    ensure(zero(1, 2) && zero(4, 3), || "expected zero bracket coefficients are nonzero".into())?;
    let compared: usize = checks.iter().map(|c| c.compared).sum();
    Ok(format!("{compared} bracket coefficients in k_>/4 reproduced, zeros at k^2 (R_1) and k^3 (R_4) confirmed"))
}

fn criterion_3() -> Outcome {
    let mut all = Vec::new();
    for p in ["r#u_taylor", "r#u_conn_taylor", "r#kl_conn_taylor", "r#kl_taylor"] {
        all.extend(labels(p));
    }
    let checks = check_labels(&all)?;
    ensure(checks.iter().all(GoldenCheck::passed), || describe_failures(&checks))?;
    let compared: usize = checks.iter().map(|c| c.compared).sum();
    let mut notes = Vec::new();
    for c in &checks {
        for r in &c.resolutions {
            let cands: Vec<String> = r.candidates.iter().map(rational::fmt).collect();
            notes.push(format!(
                "{} k^{} resolved to {} (printed candidates {})",
                c.label,
                r.exp,
                rational::fmt(&r.derived),
                cands.join(", ")
            ));
        }
    }
    Ok(format!("{compared} coefficients over 24 LT series reproduced; {}", notes.join("; ")))
}

fn criterion_4() -> Outcome {
    let printed = &refdata::golden("Msq_taylor").map_err(err)?.series;
    let m2 = lt::magnetization_squared(11);
    ensure(&m2 == printed, || format!("M^2 = {m2}"))?;
    for n in 1..=6u32 {
        let full = lt::lt_series_full(CorrelationId::row(n), n as i64 + 2).map_err(err)?;
        let diff = full.sub(&lt::magnetization_squared(n as i64 + 2)).map_err(err)?;
        let v = diff.valuation().unwrap_or(i64::MAX);
        ensure(v > n as i64 + 1, || format!("R_{n} - M^2 starts at u^{v}"))?;
    }
    Ok("M^2 through u^11 exact; R_n - M^2 = O(u^(n+2)) for n = 1..6".into())
}

struct FitCase {
    name: &'static str,
    family: Family,
    offset: i64,
    expected: &'static str,
}

const FITS: [FitCase; 8] = [
    FitCase { name: "r_{n,2}", family: Family::HtRow, offset: 2, expected: "n(n+1)" },
    FitCase { name: "r_{n,4}", family: Family::HtRow, offset: 4, expected: "n(n^3+2n^2+3n+10)/4" },
    FitCase { name: "~r_{n,1}", family: Family::HtRowKhat, offset: 1, expected: "n^2" },
    FitCase { name: "~r_{n,2}", family: Family::HtRowKhat, offset: 2, expected: "n(n-1)(n^2-n-8)/4" },
    FitCase { name: "rho_{n,1}", family: Family::LtConn, offset: 1, expected: "n^2+2n+4" },
    FitCase { name: "rho_{n,2}", family: Family::LtConn, offset: 2, expected: "(n^4+4n^3+13n^2+26n+32)/2" },
    FitCase { name: "~rho_{n,1}", family: Family::LtConnKhat, offset: 1, expected: "n^2" },
    FitCase { name: "~rho_{n,2}", family: Family::LtConnKhat, offset: 2, expected: "(n+2)(n^3-2n^2+n+6)/2" },
];

const NS: RangeInclusive<i64> = 1..=6;

fn fit(case: &FitCase) -> Result<FitResult, String> {
    let pts = fitting::collect_coefficients(case.family, case.offset, NS).map_err(err)?;
    fitting::fit_minimal_polynomial(&pts).map_err(err)
}

fn criterion_5() -> Outcome {
    let mut fits = Vec::new();
    for case in &FITS {
        let f = fit(case)?;
        let expected = Poly::parse(case.expected).map_err(err)?;
        ensure(f.poly == expected, || format!("{}: fitted {} expected {}", case.name, f.poly, expected))?;
        ensure(f.surplus() >= 1 && f.surplus_residuals.iter().all(Zero::is_zero), || {
            format!("{}: no zero surplus residual", case.name)
        })?;
        fits.push(f);
    }
    let diff = |i: usize, claimed: &str| -> Result<(), String> {
        let claimed = Poly::parse(claimed).map_err(err)?;
        ensure(fitting::verify_difference_identity(&fits[i], &claimed), || {
            format!("{} difference is not {claimed}", FITS[i].name)
        })
    };
    for i in [0, 1] {
        ensure(fitting::verify_integrality(&fits[i], 10_000, true), || {
            format!("{} is not an even integer for some n <= 10^4", FITS[i].name)
        })?;
    }
    diff(1, "(n+2)(n^2+n+2)")?;
    // The claimed rho_{n,2} step is not the difference of the claimed rho_{n,2}
    // itself (38 -> 92 at n = 1 is 54, the claim gives 36); the exact step is
    // reported so the failure carries its own diagnosis.
    diff(5, "(n+1)(2n^2+5n+11)").map_err(|e| {
        let step = fits[5].poly.shift(&Rational::from_integer(1.into())).sub(&fits[5].poly);
        Failure {
            detail: format!(
                "{e}; exact step is {step}. All 8 fits, the r_{{n,4}} identity and evenness through 10^4 passed"
            ),
            unattainable: true,
        }
    })?;
    Ok("8 closed forms recovered from n = 1..6 with zero surplus residuals; both difference identities hold; r_{n,2}, r_{n,4} even through n = 10^4".into())
}

fn criterion_6() -> Outcome {
    let f = fit(&FITS[3])?;
    let report = fitting::stationary_analysis(&f);
    let five = |x: f64| format!("{x:.5}");
    let min_at = (1.0 + 17f64.sqrt()) / 2.0;
    let zero_at = (1.0 + 33f64.sqrt()) / 2.0;
    let minimum = report
        .extrema
        .iter()
        .find(|e| e.kind == ExtremumKind::Minimum && five(e.at.approx()) == five(min_at))
        .ok_or_else(|| format!("no minimum at {}: {:?}", five(min_at), report.extrema))?;
    ensure(five(minimum.value) == five(-4.0), || format!("minimum value {}", minimum.value))?;
    ensure(report.roots.iter().any(|r| five(r.approx()) == five(zero_at)), || {
        format!("no root at {}", five(zero_at))
    })?;
    Ok(format!(
        "minimum {:.5} at n = {:.5}, zero at n = {}",
        minimum.value,
        minimum.at.approx(),
        five(zero_at)
    ))
}

fn criterion_7() -> Outcome {
    let handles: Vec<_> = (1..=4u32)
        .map(|n| thread::spawn(move || painleve::residual_for(n, Branch::Plus, n as i64 + 10)))
        .collect();
    let mut through = Vec::new();
    for (n, h) in (1..=4).zip(handles) {
        let r = h.join().map_err(|_| "worker panicked".to_string())?.map_err(err)?;
        ensure(r.is_zero(), || format!("n = {n}: residual {r}"))?;
        through.push(format!("x^{}", r.order()));
    }
    let report = painleve::check_ratio_formulas(1..=4, 5).map_err(err)?;
    ensure(report.all_ok(), || report.to_string())?;
    Ok(format!(
        "residual identically zero for n = 1..4 (through {}); 20 ratio closed forms and 4 leading coefficients match",
        through.join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let mut got = Vec::new();
    for n in 1..=6 {
        let c = refdata::critical_form(n).map_err(err)?;
        let digits = c.printed.split('.').nth(1).map_or(0, str::len);
        let v = refdata::critical_value(n, digits).map_err(err)?;
        ensure(v == c.printed, || format!("n = {n}: {v} vs printed {}", c.printed))?;
        got.push(v);
    }
    Ok(got.join(", "))
}

const TOLERANCE: f64 = 2e-3;

fn criterion_9() -> Outcome {
    let grid = [0.0, 0.1, 0.2, 0.3];
    let jobs: Vec<_> = (1..=6u32)
        .flat_map(|n| [TableSide::High, TableSide::Low].map(|s| (n, s)))
        .map(|(n, side)| {
            thread::spawn(move || -> Result<Vec<(f64, u32, TableSide, f64)>, String> {
                let id = CorrelationId::row(n);
                let source = match side {
                    TableSide::High => ht::ht_series(id, id.graph_distance() + 16),
                    TableSide::Low => lt::lt_series_full(id, 16),
                }
                .map_err(err)?;
                grid.iter()
                    .map(|&k| {
                        let e = refdata::numeric_from_oracle_series(&source, side, k).map_err(err)?;
                        Ok((k, n, side, e.value))
                    })
                    .collect()
            })
        })
        .collect();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    let mut bracketed = Vec::new();
    for j in jobs {
        for (k, n, side, value) in j.join().map_err(|_| "worker panicked".to_string())?? {
            let entry = refdata::table_entry(side, k, n).map_err(err)?;
            match (entry.value, entry.bracket) {
                (Some(t), _) => {
                    let d = (value - t).abs();
                    ensure(d <= TOLERANCE, || format!("{side:?} k = {k}, n = {n}: series {value:.6}, table {t}"))?;
                    worst = worst.max(d);
                    checked += 1;
                }
                (None, Some((lo, hi))) => {
                    ensure(value >= lo - TOLERANCE && value <= hi + TOLERANCE, || {
                        format!("{side:?} k = {k}, n = {n}: series {value:.6} outside [{lo}, {hi}]")
                    })?;
                    bracketed.push(format!(
                        "{side:?} k = {k}, n = {n} printed {} withdrawn, series {value:.6} within {TOLERANCE:e} of [{lo}, {hi}]",
                        entry.raw
                    ));
                }
                (None, None) => return Err(format!("{side:?} k = {k}, n = {n}: no reference value").into()),
            }
        }
    }
    Ok(format!(
        "{checked} entries with k <= 0.3 within {TOLERANCE:e} (worst {worst:.1e}); {}",
        bracketed.join("; ")
    ))
}

fn run_property<S: Strategy>(name: &str, cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn agree(a: &Series, b: &Series) -> bool {
    let o = a.order().min(b.order());
    a.truncate(o) == b.truncate(o)
}

fn small_series(min: std::ops::Range<i64>) -> impl Strategy<Value = Series> {
    (min, 1i64..=9, prop::collection::vec(-9i64..=9, 0..7)).prop_map(|(m, lead, rest)| {
        let mut c = vec![lead];
        c.extend(rest);
        Series::from_ints(VarTag::U, m, &c)
    })
}

fn criterion_10() -> Outcome {
    let mut passed = Vec::new();
    run_property("ring axioms", 128, (small_series(-2..3), small_series(-2..3), small_series(-2..3)), |(a, b, c)| {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        prop_assert!(agree(&lhs, &a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()));
        let p = a.mul(&a.reciprocal().unwrap()).unwrap();
        prop_assert!(agree(&p, &Series::one(VarTag::U, p.order())));
        Ok(())
    })?;
    passed.push("ring axioms");

    run_property("reversion", 128, small_series(1..2), |f| {
        let g = f.revert().unwrap();
        let id = Series::identity(VarTag::U, f.order());
        prop_assert!(agree(&f.compose(&g).unwrap(), &id));
        prop_assert!(agree(&g.compose(&f).unwrap(), &id));
        Ok(())
    })?;
    passed.push("reversion round trips");

    for (id, order) in [(CorrelationId::row(3), 11), (CorrelationId::diagonal(2), 10), (CorrelationId::general(2, 1), 11)] {
        let base = ht::default_padding(id.graph_distance(), order);
        let run = |p| ht::ht_series_with(id, order, &HtOptions { padding: Some(p), ..HtOptions::default() });
        ensure(run(base).map_err(err)?.series == run(2 * base).map_err(err)?.series, || format!("HT doubling {id}"))?;
    }
    for (id, order) in [(CorrelationId::row(1), 7), (CorrelationId::diagonal(1), 8), (CorrelationId::general(2, 1), 8)] {
        let base = lt::default_padding(id, order);
        let run = |p| lt::ratio_series_with(id, order, &LtOptions { padding: Some(p), ..LtOptions::default() });
        ensure(run(base).map_err(err)?.ratio == run(2 * base).map_err(err)?.ratio, || format!("LT doubling {id}"))?;
    }
    passed.push("window doubling (3 HT + 3 LT)");

    run_property("parity", 24, (0u32..4, 0u32..4), |(m, n)| {
        prop_assume!(m + n > 0);
        let id = CorrelationId::general(m, n);
        let dist = id.graph_distance();
        let s = ht::ht_series(id, dist + 4).unwrap();
        prop_assert!(s.terms().all(|(e, c)| c.is_zero() || (e - dist) % 2 == 0));
        // odd z powers are rejected inside the LT oracle
        prop_assert!(lt::ratio_series(id, dist + 3).is_ok());
        Ok(())
    })?;
    passed.push("parity/evenness");

    for (id, p) in [(CorrelationId::row(1), 1), (CorrelationId::row(2), 1), (CorrelationId::diagonal(1), 1)] {
        let order = id.graph_distance() + 2 * p as i64;
        let brute = ht::ht_series_bruteforce(id, order + 1, HtWindow::padded(id, p)).map_err(err)?;
        ensure(ht::ht_series(id, order).map_err(err)? == brute.truncate(order), || format!("HT brute force {id}"))?;
    }
    for (id, q) in [(CorrelationId::row(1), 1), (CorrelationId::row(2), 1), (CorrelationId::general(2, 1), 1)] {
        let order = id.graph_distance() + 2 + q as i64;
        let brute = common::lt_ratio_by_spins(id, q, order).truncate(order);
        ensure(lt::ratio_series(id, order).map_err(err)? == brute, || format!("LT brute force {id}"))?;
    }
    passed.push("brute-force equivalence (edges and spins)");

    let d2 = painleve::dn_ht_series(2, 12).map_err(err)?;
    ensure(painleve::p6_residual(&painleve::sigma_from_series(2, Branch::Plus, &d2).map_err(err)?).map_err(err)?.is_zero(), || {
        "unmutated residual is nonzero".into()
    })?;
    for k in 2..=9 {
        let bumped = d2.add(&Series::monomial(VarTag::X, Rational::from_integer(1.into()), k, d2.order())).map_err(err)?;
        let r = painleve::p6_residual(&painleve::sigma_from_series(2, Branch::Plus, &bumped).map_err(err)?).map_err(err)?;
        ensure(!r.is_zero(), || format!("mutation at x^{k} not detected"))?;
    }
    passed.push("Painleve mutation sensitivity");
    Ok(passed.join(", "))
}

const TITLES: [&str; 10] = [
    "HT golden reproduction",
    "HT k-space reproduction",
    "LT golden reproduction",
    "Magnetization",
    "Fits",
    "Stationary analysis",
    "Painleve",
    "Critical values",
    "Numeric tables",
    "Property suites",
];

fn main() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let start = Instant::now();
    let handles: Vec<_> = criteria
        .into_iter()
        .map(|c| {
            thread::spawn(move || {
                let t = Instant::now();
                (c(), t.elapsed())
            })
        })
        .collect();
    let mut failures = 0;
    let mut contradicted = 0;
    for (i, h) in handles.into_iter().enumerate() {
        let (outcome, took): (Outcome, Duration) = match h.join() {
            Ok(r) => r,
            Err(_) => (Err(String::from("panicked").into()), Duration::ZERO),
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(f) if f.unattainable => {
                contradicted += 1;
                ("FAIL", format!("{} [unattainable as stated]", f.detail))
            }
            Err(f) => {
                failures += 1;
                ("FAIL", f.detail)
            }
        };
        println!("criterion {:>2} {tag} {}: {detail} ({:.1} s)", i + 1, TITLES[i], took.as_secs_f64());
    }
    println!(
        "acceptance: {} of 10 passed, {contradicted} unattainable as stated, {failures} unexpected failures in {:.1} s",
        10 - failures - contradicted,
        start.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
