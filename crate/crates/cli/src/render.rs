use std::fmt::Write as _;

use clap::ValueEnum;
use isingser_core::rational;
use isingser_core::transforms::HalfPowerForm;
use isingser_core::Series;
use num_traits::Zero;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

/// A series as requested: plain, or split into a half-power prefactor and bracket.
pub enum Shaped {
    Plain { series: Series, exact: bool },
    HalfPower(HalfPowerForm),
}

#[derive(Serialize)]
struct HalfPowerJson<'a> {
    prefactor_half_exponent: i64,
    scale: String,
    bracket: &'a Series,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("in-memory values serialize")
}

fn csv_rows(out: &mut String, s: &Series) {
    for (e, c) in s.terms() {
        if !c.is_zero() {
            let _ = writeln!(out, "{e},{}", rational::fmt(c));
        }
    }
}

fn pretty_series(s: &Series, exact: bool) -> String {
    let text = s.to_string();
    if !exact {
        return text;
    }
    // an exact series carries no truncation tail
    match text.rfind(" + O(") {
        Some(i) => text[..i].to_string(),
        None => text,
    }
}

pub fn shaped(value: &Shaped, format: Format) -> String {
    match (value, format) {
        (Shaped::Plain { series, exact }, Format::Pretty) => pretty_series(series, *exact),
        (Shaped::Plain { series, .. }, Format::Json) => json(series),
        (Shaped::Plain { series, .. }, Format::Csv) => {
            let mut out = format!("# var={} order={}\nexponent,coefficient\n", series.var(), series.order());
            csv_rows(&mut out, series);
            out.truncate(out.trim_end().len());
            out
        }
        (Shaped::HalfPower(form), Format::Pretty) => format!("{} [{}]", form.prefactor(), form.bracket),
        (Shaped::HalfPower(form), Format::Json) => json(&HalfPowerJson {
            prefactor_half_exponent: form.half_exponent,
            scale: rational::fmt(&form.scale),
            bracket: &form.bracket,
        }),
        (Shaped::HalfPower(form), Format::Csv) => {
            let mut out = format!(
                "# prefactor={} var={} order={}\nexponent,coefficient\n",
                form.prefactor(),
                form.bracket.var(),
                form.bracket.order()
            );
            csv_rows(&mut out, &form.bracket);
            out.truncate(out.trim_end().len());
            out
        }
    }
}

/// Fixed-width text table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{c:<w$}");
        }
        s.trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push('\n');
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
