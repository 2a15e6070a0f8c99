//! Reference-data commands: fixture checks, tables and the full comparison reports.

use isingser_core::refdata::{self, GoldenCheck, TableSide};
use isingser_core::{rational, CorrelationId, Series};
use serde_json::json;

use crate::cache::{self, Cache};
use crate::commands::{ht_cached, lt_full_cached, OracleKnobs};
use crate::error::{CliError, CliResult};
use crate::render::{self, Format};
use crate::{pool, Emit, GoldenArgs, TableArgs};

/// Tolerance of a four-decimal printed entry.
const HALF_UNIT: f64 = 5e-5;

fn check_all(labels: &[&str]) -> CliResult<Vec<GoldenCheck>> {
    pool::map(labels, |l| -> CliResult<GoldenCheck> { Ok(refdata::check_golden(refdata::golden(l)?)?) })
        .into_iter()
        .collect()
}

fn golden_rows(checks: &[GoldenCheck]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for c in checks {
        let status = match c.mismatches.first() {
            None => "ok".to_string(),
            Some(m) => format!(
                "MISMATCH at exponent {}: printed {}, derived {}",
                m.exp,
                rational::fmt(&m.printed),
                rational::fmt(&m.derived)
            ),
        };
        rows.push(vec![c.label.clone(), c.order.to_string(), c.compared.to_string(), status]);
        for r in &c.resolutions {
            let cands: Vec<String> = r.candidates.iter().map(rational::fmt).collect();
            rows.push(vec![
                String::new(),
                String::new(),
                String::new(),
                format!(
                    "exponent {}: printed candidates {}, derived {}",
                    r.exp,
                    cands.join(" | "),
                    rational::fmt(&r.derived)
                ),
            ]);
        }
    }
    rows
}

const GOLDEN_HEADER: [&str; 4] = ["fixture", "order", "compared", "status"];

pub fn golden(a: &GoldenArgs) -> CliResult<String> {
    if a.list {
        let rows: Vec<Vec<String>> = refdata::labels()
            .into_iter()
            .map(|l| {
                let g = refdata::golden(l).expect("listed labels resolve");
                vec![l.to_string(), g.var().to_string(), g.order().to_string(), g.note.clone().unwrap_or_default()]
            })
            .collect();
        return Ok(render::table(&["fixture", "var", "order", "note"], &rows));
    }
    if let Some(label) = &a.show {
        let g = refdata::golden(label)?;
        return Ok(match a.format {
            Format::Json => serde_json::to_string(&g.series).expect("series serialize"),
            _ => {
                let mut out = g.series.to_string();
                if let Some(p) = g.prefactor_half_exponent {
                    out = format!("k^({p}/2) [{out}]");
                }
                if let Some(n) = &g.note {
                    out.push_str(&format!("\nnote: {n}"));
                }
                out
            }
        });
    }
    let which = a.check.as_deref().expect("clap requires an action");
    let labels: Vec<&str> = if which == "all" {
        refdata::labels()
    } else {
        vec![refdata::golden(which)?.label.as_str()]
    };
    let checks = check_all(&labels)?;
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let out = match a.format {
        Format::Json => json!(checks
            .iter()
            .map(|c| json!({
                "label": c.label,
                "order": c.order,
                "compared": c.compared,
                "passed": c.passed(),
                "mismatches": c.mismatches.iter().map(|m| json!({
                    "exp": m.exp,
                    "printed": rational::fmt(&m.printed),
                    "derived": rational::fmt(&m.derived),
                })).collect::<Vec<_>>(),
                "resolutions": c.resolutions.iter().map(|r| json!({
                    "exp": r.exp,
                    "derived": rational::fmt(&r.derived),
                    "candidates": r.candidates.iter().map(rational::fmt).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>())
        .to_string(),
        _ => format!(
            "{}\n{} of {} fixtures agree",
            render::table(&GOLDEN_HEADER, &golden_rows(&checks)),
            checks.len() - failed,
            checks.len()
        ),
    };
    if failed > 0 {
        Err(CliError::Mismatch(out))
    } else {
        Ok(out)
    }
}

fn oracle_series(cache: &Cache, side: TableSide, order: Option<i64>) -> CliResult<Vec<Series>> {
    let ns: Vec<u32> = (1..=6).collect();
    pool::map(&ns, |&n| {
        let id = CorrelationId::row(n);
        match side {
            TableSide::High => ht_cached(cache, id, order.unwrap_or(id.graph_distance() + 16), OracleKnobs::default()),
            TableSide::Low => lt_full_cached(cache, id, order.unwrap_or(16), OracleKnobs::default()),
        }
    })
    .into_iter()
    .collect()
}

fn aux_names(side: TableSide) -> [&'static str; 2] {
    match side {
        TableSide::High => ["v", "T/Tc"],
        TableSide::Low => ["z", "T/Tc"],
    }
}

fn plain_table(side: TableSide) -> String {
    let [a, b] = aux_names(side);
    let header = ["k", a, b, "n=1", "n=2", "n=3", "n=4", "n=5", "n=6"];
    let rows: Vec<Vec<String>> = refdata::table(side)
        .iter()
        .map(|r| {
            let mut row = vec![r.k.clone(), r.aux[0].clone(), r.aux[1].clone()];
            row.extend(r.raw.iter().cloned());
            row
        })
        .collect();
    render::table(&header, &rows)
}

fn table_notes(side: TableSide) -> String {
    let mut lines = vec![format!("note: {}", refdata::aux_note(side))];
    for r in refdata::table(side) {
        for t in &r.notes {
            lines.push(format!("note (k = {}, n = {}): {}", r.k, t.n, t.note));
        }
    }
    lines.join("\n")
}

/// Printed entries against series partial sums, one row per entry.
fn compared_table(side: TableSide, series: &[Series]) -> String {
    let header = ["k", "n", "printed", "series", "difference", "last term", "status"];
    let mut rows = Vec::new();
    for r in refdata::table(side) {
        let Ok(k) = r.k.parse::<f64>() else { continue };
        for n in 1..=6u32 {
            let entry = refdata::table_entry(side, k, n);
            let estimate = refdata::numeric_from_oracle_series(&series[n as usize - 1], side, k);
            let (raw, series_cell, diff, last, status) = match (entry, estimate) {
                (Ok(e), Ok(est)) => {
                    let (diff, status) = match (e.value, e.bracket) {
                        (Some(t), _) => {
                            let d = est.value - t;
                            let ok = d.abs() <= HALF_UNIT + est.last_term;
                            (format!("{d:+.1e}"), if ok { "agrees" } else { "differs" }.to_string())
                        }
                        (None, Some((lo, hi))) => {
                            let inside = est.value >= lo - est.last_term && est.value <= hi + est.last_term;
                            (
                                String::new(),
                                format!("withdrawn; bracket [{lo}, {hi}] {}", if inside { "contains sum" } else { "misses sum" }),
                            )
                        }
                        (None, None) => (String::new(), "withdrawn".to_string()),
                    };
                    (e.raw, format!("{:.6}", est.value), diff, format!("{:.1e}", est.last_term), status)
                }
                (Ok(e), Err(_)) => (e.raw, "n/a".into(), String::new(), String::new(), "outside series range".into()),
                (Err(e), _) => return format!("table lookup failed: {e}"),
            };
            rows.push(vec![r.k.clone(), n.to_string(), raw, series_cell, diff, last, status]);
        }
    }
    render::table(&header, &rows)
}

pub fn table(a: &TableArgs) -> CliResult<String> {
    let mut out = if a.compare {
        let cache = Cache::from_env(a.cache.mode());
        compared_table(a.side, &oracle_series(&cache, a.side, a.order)?)
    } else {
        plain_table(a.side)
    };
    out.push('\n');
    out.push_str(&table_notes(a.side));
    Ok(out)
}

fn critical_rows() -> CliResult<String> {
    let mut rows = Vec::new();
    for n in 1..=6 {
        let c = refdata::critical_form(n)?;
        let digits = c.printed.split('.').nth(1).map_or(0, str::len);
        let v = refdata::critical_value(n, digits)?;
        let status = if v == c.printed { "ok" } else { "MISMATCH" };
        rows.push(vec![n.to_string(), c.form.to_string(), c.printed.clone(), v, status.to_string()]);
    }
    Ok(render::table(&["n", "closed form", "printed", "computed", "status"], &rows))
}

fn expand(patterns: &[&str]) -> Vec<String> {
    patterns
        .iter()
        .flat_map(|p| (1..=6).map(move |n| p.replace('#', &n.to_string())))
        .collect()
}

pub fn emit(which: Emit) -> CliResult<String> {
    let (mut labels, side) = match which {
        Emit::High => (expand(&["r#v_taylor", "r#kkg_taylor"]), TableSide::High),
        Emit::Low => (
            expand(&["r#u_taylor", "r#u_conn_taylor", "r#kl_conn_taylor", "r#kl_taylor"]),
            TableSide::Low,
        ),
    };
    if which == Emit::Low {
        labels.push("Msq_taylor".into());
    }
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let checks = check_all(&refs)?;
    let failed = checks.iter().filter(|c| !c.passed()).count();

    let mut sections = vec![format!(
        "series\n{}\n{} of {} fixtures agree",
        render::table(&GOLDEN_HEADER, &golden_rows(&checks)),
        checks.len() - failed,
        checks.len()
    )];
    if which == Emit::High {
        sections.push(format!("critical values\n{}", critical_rows()?));
    }
    let cache = Cache::from_env(cache::Mode::Use);
    sections.push(format!(
        "table\n{}\n{}",
        compared_table(side, &oracle_series(&cache, side, None)?),
        table_notes(side)
    ));
    let out = sections.join("\n\n");
    if failed > 0 {
        Err(CliError::Mismatch(out))
    } else {
        Ok(out)
    }
}
