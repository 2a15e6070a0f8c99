use isingser_core::fitting::{self, ExtremumKind, Family, Poly};
use isingser_core::ht::{self, HtOptions};
use isingser_core::lt::{self, LtOptions};
use isingser_core::painleve::{self, Branch};
use isingser_core::refdata;
use isingser_core::transforms::{self, Transform};
use isingser_core::{rational, CorrelationId, Provenance, Series, VarTag};
use serde_json::json;

use crate::cache::Cache;
use crate::error::{CliError, CliResult};
use crate::render::{self, Format, Shaped};
use crate::{BranchArg, CriticalArgs, FitArgs, PainleveArgs, SeriesArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    High,
    Low,
}

/// Knobs shared by every oracle request.
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleKnobs {
    pub padding: Option<i64>,
    pub state_cap: Option<usize>,
}

pub fn ht_cached(cache: &Cache, id: CorrelationId, order: i64, knobs: OracleKnobs) -> CliResult<Series> {
    let prov = Provenance::new("ht", id, order, knobs.padding);
    cache.get_or_compute(&prov, || {
        let mut opts = HtOptions { padding: knobs.padding, ..HtOptions::default() };
        if let Some(cap) = knobs.state_cap {
            opts.state_cap = cap;
        }
        ht::ht_series_with(id, order, &opts).map(|r| r.series)
    })
}

pub fn lt_full_cached(cache: &Cache, id: CorrelationId, order: i64, knobs: OracleKnobs) -> CliResult<Series> {
    let prov = Provenance::new("lt_full", id, order, knobs.padding);
    cache.get_or_compute(&prov, || {
        let mut opts = LtOptions { padding: knobs.padding, ..LtOptions::default() };
        if let Some(cap) = knobs.state_cap {
            opts.state_cap = cap;
        }
        lt::lt_series_full_with(id, order, &opts)
    })
}

fn parse_var(tag: Option<&str>, side: Side) -> CliResult<VarTag> {
    let Some(tag) = tag else {
        return Ok(match side {
            Side::High => VarTag::V,
            Side::Low => VarTag::U,
        });
    };
    let var: VarTag = tag.parse().map_err(|e| CliError::Usage(format!("--var: {e}")))?;
    let allowed: &[VarTag] = match side {
        Side::High => &[VarTag::V, VarTag::X, VarTag::Wgt, VarTag::KgtHat],
        Side::Low => &[VarTag::U, VarTag::Z, VarTag::KltHat],
    };
    if !allowed.contains(&var) {
        let names: Vec<&str> = allowed.iter().map(|v| v.name()).collect();
        return Err(CliError::Usage(format!("--var {tag} is not available here; use one of {}", names.join(", "))));
    }
    Ok(var)
}

fn reshape(s: Series, var: VarTag, exact: bool) -> CliResult<Shaped> {
    let series = match var {
        VarTag::KgtHat => {
            return Ok(Shaped::HalfPower(transforms::half_power_form(
                &transforms::to_khat_gt(&s)?,
                VarTag::KgtHat,
            )?));
        }
        VarTag::KltHat => transforms::to_khat_lt(&s)?,
        v if v == s.var() => s,
        v => Transform::between(s.var(), v)
            .ok_or_else(|| CliError::Usage(format!("no map from {} to {v}", s.var())))?
            .apply(&s)?,
    };
    Ok(Shaped::Plain { series, exact })
}

pub fn series(side: Side, a: &SeriesArgs) -> CliResult<String> {
    let id = a.target.id();
    let var = parse_var(a.var.as_deref(), side)?;
    if a.connected && side == Side::High {
        return Err(CliError::Usage("--connected applies to lt only".into()));
    }
    let order = a.order.unwrap_or(id.graph_distance() + 10);
    if order < 0 {
        return Err(CliError::Usage(format!("--order {order} is negative")));
    }
    let cache = Cache::from_env(a.cache.mode());
    let knobs = OracleKnobs {
        padding: a.padding,
        state_cap: a.state_cap,
    };
    let s = match side {
        Side::High => ht_cached(&cache, id, order, knobs)?,
        Side::Low => {
            let full = lt_full_cached(&cache, id, order, knobs)?;
            if a.connected {
                full.sub(&lt::magnetization_squared(order))?
            } else {
                full
            }
        }
    };
    // the self-correlation is exactly 1 (0 once connected)
    Ok(render::shaped(&reshape(s, var, id.is_trivial())?, a.format))
}

fn fmt_list(v: &[isingser_core::Rational]) -> String {
    let items: Vec<String> = v.iter().map(rational::fmt).collect();
    format!("[{}]", items.join(", "))
}

pub fn fit(a: &FitArgs) -> CliResult<String> {
    let family = Family::parse(&a.family).ok_or_else(|| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        CliError::Usage(format!("unknown family {:?}; expected one of {}", a.family, names.join(", ")))
    })?;
    if a.nmin < 1 || a.nmax < a.nmin {
        return Err(CliError::Usage(format!("bad range n = {}..{}", a.nmin, a.nmax)));
    }
    let points = fitting::collect_coefficients(family, a.offset, a.nmin..=a.nmax)?;
    let fit = fitting::fit_minimal_polynomial(&points)?;
    for w in &fit.warnings {
        eprintln!("warning: {w}");
    }
    let mut lines = vec![format!("{}, surplus residuals: {}", fit.poly, fmt_list(&fit.surplus_residuals))];
    let mut failed = false;
    let mut extra = serde_json::Map::new();

    if let Some(claimed) = &a.difference {
        let claimed = Poly::parse(claimed)?;
        let ok = fitting::verify_difference_identity(&fit, &claimed);
        let step = fit.poly.shift(&rational::int(1)).sub(&fit.poly);
        lines.push(format!(
            "difference p(n+1) - p(n) = {step}: {}",
            if ok { format!("equals {claimed}") } else { format!("differs from {claimed}") }
        ));
        extra.insert("difference".into(), json!({ "exact": step.to_string(), "claimed": claimed.to_string(), "holds": ok }));
        failed |= !ok;
    }
    if let Some(n_max) = a.integral_to {
        let ok = fitting::verify_integrality(&fit, n_max, a.even);
        let what = if a.even { "even integer" } else { "integer" };
        lines.push(format!("{what} for 1 <= n <= {n_max}: {}", if ok { "yes" } else { "no" }));
        extra.insert("integrality".into(), json!({ "n_max": n_max, "even": a.even, "holds": ok }));
        failed |= !ok;
    }
    if a.stationary {
        let report = fitting::stationary_analysis(&fit);
        let mut roots = Vec::new();
        for r in &report.roots {
            let text = if r.exact { rational::fmt(&r.lower) } else { format!("{:.5}", r.approx()) };
            lines.push(format!("zero at n = {text}"));
            roots.push(text);
        }
        let mut extrema = Vec::new();
        for e in &report.extrema {
            let kind = match e.kind {
                ExtremumKind::Minimum => "minimum",
                ExtremumKind::Maximum => "maximum",
            };
            lines.push(format!("{kind} {:.5} at n = {:.5}", e.value, e.at.approx()));
            extrema.push(json!({ "kind": kind, "at": e.at.approx(), "value": e.value }));
        }
        extra.insert("stationary".into(), json!({ "roots": roots, "extrema": extrema }));
    }

    let out = match a.format {
        Format::Json => {
            let mut v = serde_json::to_value(&fit).expect("fit results serialize");
            v["display"] = json!(fit.poly.to_string());
            if let serde_json::Value::Object(m) = &mut v {
                m.extend(extra);
            }
            v.to_string()
        }
        Format::Pretty | Format::Csv => lines.join("\n"),
    };
    if failed {
        Err(CliError::Mismatch(out))
    } else {
        Ok(out)
    }
}

pub fn painleve(a: &PainleveArgs) -> CliResult<String> {
    let branch = match a.branch {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    };
    let r = painleve::residual_for(a.n, branch, a.order)?;
    let var = r.var();
    let mut lines = Vec::new();
    let mut failed = false;
    match r.valuation() {
        None => lines.push(format!("residual: 0 (through {var}^{})", r.order())),
        Some(k) => {
            failed = true;
            let c = r.leading().map(rational::fmt).unwrap_or_default();
            lines.push(format!("residual: nonzero, first term {c}*{var}^{k} (through {var}^{})", r.order()));
        }
    }
    if let Some(ell) = a.ratios {
        if branch != Branch::Plus {
            return Err(CliError::Usage("--ratios applies to the plus branch".into()));
        }
        let report = painleve::check_ratio_formulas([a.n], ell)?;
        failed |= !report.all_ok();
        lines.push(report.to_string().trim_end().to_string());
    }
    let out = lines.join("\n");
    if failed {
        Err(CliError::Mismatch(out))
    } else {
        Ok(out)
    }
}

pub fn critical(a: &CriticalArgs) -> CliResult<String> {
    let c = refdata::critical_form(a.n)?;
    let digits = a
        .digits
        .unwrap_or_else(|| c.printed.split('.').nth(1).map_or(refdata::DEFAULT_DIGITS, str::len));
    let value = refdata::critical_value(a.n, digits)?;
    Ok(match a.format {
        Format::Json => json!({ "n": a.n, "value": value, "form": c.form.to_string(), "printed": c.printed }).to_string(),
        Format::Csv => format!("n,value,form\n{},{value},{}", a.n, c.form),
        Format::Pretty if a.form => format!("{value} = {}", c.form),
        Format::Pretty => value,
    })
}
