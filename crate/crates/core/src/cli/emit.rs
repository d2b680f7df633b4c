//! Text and JSON rendering of reports and matrices.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::reps::Mat;
use crate::scenarios::ScenarioReport;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Renders one report.
pub fn emit_report(report: &ScenarioReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        Format::Text => report_table(report),
    }
}

/// Renders several reports; JSON output is an array.
pub fn emit_reports(reports: &[ScenarioReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Text => reports
            .iter()
            .map(report_table)
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn report_table(report: &ScenarioReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", report.scenario);
    if !report.params.is_empty() {
        let params: Vec<String> = report
            .params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                v => format!("{k}={v}"),
            })
            .collect();
        let _ = writeln!(out, "params: {}", params.join(" "));
    }
    let id_w = report.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let rendered: Vec<String> = report
        .checks
        .iter()
        .map(|c| c.residual.to_string())
        .collect();
    let res_w = rendered.iter().map(|r| r.len()).max().unwrap_or(0);
    for (c, r) in report.checks.iter().zip(&rendered) {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let source = serde_json::to_value(c.source).expect("source serializes");
        let source = source.as_str().unwrap_or_default();
        let _ = writeln!(out, "  {status}  {:id_w$}  {:res_w$}  {source}", c.id, r);
    }
    let _ = writeln!(out, "verdict: {}", report.verdict);
    out
}

/// `{"dim": n, "rows": [[[re, im], ...], ...]}`.
pub fn matrix_json(m: &Mat<Complex64>) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = m
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
        .collect();
    json!({ "dim": m.dim(), "rows": rows })
}

/// Plain rows of `re+imi` entries.
pub fn matrix_text(m: &Mat<Complex64>) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(fmt_complex).collect())
        .collect();
    let w = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn fmt_complex(z: Complex64) -> String {
    let tidy = |x: f64| if x == 0.0 { 0.0 } else { x };
    let (re, im) = (tidy(z.re), tidy(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{Check, Source, Verdict};

    #[test]
    fn empty_report_is_inconclusive() {
        let r = ScenarioReport::new("x").finish();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let j: Value = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(j["verdict"], "INCONCLUSIVE");
        assert_eq!(j["checks"], json!([]));
    }

    #[test]
    fn text_table_shows_residual() {
        let mut r = ScenarioReport::new("plane");
        r.push(Check::symbolic("cubic", "-(1/3)*hbar^2", false, Source::Paper).as_witness());
        let r = r.finish();
        let t = emit_report(&r, Format::Text);
        assert!(t.contains("FAIL  cubic  -(1/3)*hbar^2  PAPER"), "{t}");
        assert!(t.ends_with("verdict: OBSTRUCTED\n"));
    }

    #[test]
    fn matrix_shape() {
        let m = Mat::from_fn(2, |j, k| Complex64::new(j as f64, k as f64));
        let j = matrix_json(&m);
        assert_eq!(
            j,
            json!({"dim": 2, "rows": [[[0.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [1.0, 1.0]]]})
        );
        assert_eq!(matrix_text(&m), "   0    1i\n   1  1+1i");
    }
}
