//! Rendering of polynomials, Gram matrices and verification reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use hypersob_core::verify::{CheckKind, CheckReport, CheckStatus, Suite, Summary};
use hypersob_core::{ComplexPoint, Polynomial, Rational, Scaling};

use crate::doc::{PolynomialDoc, RationalDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

fn csv_document(rows: impl IntoIterator<Item = Vec<String>>) -> anyhow::Result<String> {
    let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        writer.write_record(&row)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

enum Style {
    Latex,
    Text,
}

fn coefficient_body(c: &Rational, style: &Style) -> String {
    if c.is_integer() {
        return c.to_string();
    }
    match style {
        Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
        Style::Text => format!("{}/{}", c.numer(), c.denom()),
    }
}

fn monomial(i: usize, style: &Style) -> String {
    match (i, style) {
        (0, _) => String::new(),
        (1, _) => "x".into(),
        (_, Style::Latex) => format!("x^{{{i}}}"),
        (_, Style::Text) => format!("x^{i}"),
    }
}

fn polynomial_expression(p: &Polynomial, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = c.abs();
        let x = monomial(i, &style);
        if i > 0 && magnitude.is_one() {
            out.push_str(&x);
            continue;
        }
        out.push_str(&coefficient_body(&magnitude, &style));
        if i > 0 {
            if let Style::Text = style {
                out.push('*');
            }
            out.push_str(&x);
        }
    }
    out
}

/// LaTeX display-math fragment, lowest degree first, e.g. `-2 - 2x - x^{2}`.
pub fn latex_polynomial(p: &Polynomial) -> String {
    polynomial_expression(p, Style::Latex)
}

/// Plain text, e.g. `3 + 2*x + 1/2*x^2`.
pub fn text_polynomial(p: &Polynomial) -> String {
    polynomial_expression(p, Style::Text)
}

pub fn render_polynomial(n: usize, rho: u32, scaling: Scaling, p: &Polynomial, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&PolynomialDoc::new(n, rho, scaling, p))? + "\n",
        Format::Csv => csv_document(p.coeffs().iter().map(|c| {
            let RationalDoc { num, den } = RationalDoc::from(c);
            vec![num, den]
        }))?,
        Format::Latex => latex_polynomial(p) + "\n",
        Format::Text => format!("y_{n}(rho={rho}; x) [{scaling}] = {}\n", text_polynomial(p)),
    })
}

pub fn render_matrix(m: &[Vec<Rational>], format: Format) -> anyhow::Result<String> {
    let cells: Vec<Vec<String>> = m.iter().map(|row| row.iter().map(Rational::to_string).collect()).collect();
    Ok(match format {
        Format::Json => serde_json::to_string(&cells)? + "\n",
        Format::Csv => csv_document(cells)?,
        Format::Latex => {
            let rows: Vec<String> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| {
                            let body = coefficient_body(&c.abs(), &Style::Latex);
                            if c.is_negative() {
                                format!("-{body}")
                            } else {
                                body
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" & ")
                })
                .collect();
            format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n", rows.join(" \\\\\n"))
        }
        Format::Text => {
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            let mut out = String::new();
            for row in &cells {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
    })
}

/// Formats like C's `%.15g`: 15 significant digits, no trailing zeros.
pub fn significant15(x: f64) -> String {
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    // also folds -0 into 0
    if rounded == 0.0 {
        return "0".into();
    }
    let magnitude = rounded.abs();
    if (1e-5..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn render_complex(z: ComplexPoint) -> String {
    format!("{},{}\n", significant15(z.re()), significant15(z.im()))
}

/// Exact Gram matrix attached to a verification report.
#[derive(Debug, Clone)]
pub struct GramTable {
    pub rho: u32,
    pub scaling: Scaling,
    pub matrix: Vec<Vec<Rational>>,
}

/// Parameters of a verification run, echoed in every report format.
#[derive(Debug, Clone)]
pub struct RunInfo {
    pub n_max: usize,
    pub rho_max: u32,
    pub suite: Suite,
    pub gram_tables: Vec<GramTable>,
}

fn report_json(r: &CheckReport) -> Value {
    json!({
        "check": r.check_name,
        "suite": r.suite.as_str(),
        "kind": match r.kind { CheckKind::Mandatory => "mandatory", CheckKind::Advisory => "advisory" },
        "params": r.params,
        "scaling": r.scaling.map(|s| s.as_str()),
        "at": r.at,
        "status": r.status.as_str(),
        "residual": r.residual.as_ref().map(|p| p.coeffs().iter().map(RationalDoc::from).collect::<Vec<_>>()),
        "numeric_error": r.numeric_error,
        "detail": r.detail,
    })
}

#[derive(Default)]
struct Tally {
    suite: Option<Suite>,
    kind: Option<CheckKind>,
    counts: Summary,
}

fn tally(reports: &[CheckReport]) -> BTreeMap<&str, Tally> {
    let mut by_check: BTreeMap<&str, Tally> = BTreeMap::new();
    for r in reports {
        let t = by_check.entry(r.check_name.as_str()).or_default();
        t.suite = Some(r.suite);
        t.kind = Some(r.kind);
        let c = &mut t.counts;
        match r.status {
            CheckStatus::Pass => c.passed += 1,
            CheckStatus::Fail => c.failed += 1,
            CheckStatus::AdvisoryFail => c.advisory_failed += 1,
            CheckStatus::NotApplicable => c.not_applicable += 1,
        }
    }
    by_check
}

fn point_label(r: &CheckReport) -> String {
    let mut parts: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if let Some(s) = r.scaling {
        parts.push(format!("scaling={s}"));
    }
    if let Some(a) = r.at {
        parts.push(format!("a={a}"));
    }
    parts.join(" ")
}

fn render_text(reports: &[CheckReport], info: &RunInfo) -> String {
    let summary = Summary::of(reports);
    let mut out = String::new();
    let _ = writeln!(out, "verify: n_max={} rho_max={} suite={}", info.n_max, info.rho_max, info.suite);
    let tallies = tally(reports);
    for (heading, kind) in [("mandatory checks", CheckKind::Mandatory), ("advisory checks", CheckKind::Advisory)] {
        let rows: Vec<_> = tallies.iter().filter(|(_, t)| t.kind == Some(kind)).collect();
        if rows.is_empty() {
            continue;
        }
        let _ = writeln!(out, "\n{heading}");
        let _ = writeln!(out, "  {:<26} {:<11} {:>6} {:>6} {:>9} {:>6}", "check", "suite", "pass", "fail", "advisory", "n/a");
        for (name, t) in rows {
            let c = t.counts;
            let suite = t.suite.map_or("", Suite::as_str);
            let _ = writeln!(
                out,
                "  {name:<26} {suite:<11} {:>6} {:>6} {:>9} {:>6}",
                c.passed, c.failed, c.advisory_failed, c.not_applicable
            );
        }
    }

    let failures: Vec<&CheckReport> = reports.iter().filter(|r| r.is_mandatory_failure()).collect();
    let _ = writeln!(out, "\nmandatory failures");
    if failures.is_empty() {
        let _ = writeln!(out, "  none");
    }
    for r in failures {
        let _ = write!(out, "  {} {}", r.check_name, point_label(r));
        if let Some(d) = &r.detail {
            let _ = write!(out, ": {d}");
        }
        if let Some(res) = r.residual.as_ref().filter(|p| !p.is_zero()) {
            let _ = write!(out, " (residual {})", text_polynomial(res));
        }
        out.push('\n');
    }

    let advisory: Vec<&CheckReport> = reports
        .iter()
        .filter(|r| r.kind == CheckKind::Advisory && r.status != CheckStatus::NotApplicable)
        .collect();
    if !advisory.is_empty() {
        let _ = writeln!(out, "\nfidelity report (printed formulas vs exact results)");
        for r in advisory {
            let _ = write!(out, "  {} {}: {}", r.check_name, point_label(r), r.status);
            if let Some(d) = &r.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
    }

    let _ = writeln!(
        out,
        "\nsummary: {} passed, {} failed, {} advisory failures, {} not applicable",
        summary.passed, summary.failed, summary.advisory_failed, summary.not_applicable
    );
    let _ = writeln!(out, "result: {}", if summary.all_mandatory_passed() { "PASS" } else { "FAIL" });
    out
}

pub fn render_reports(reports: &[CheckReport], info: &RunInfo, format: Format) -> anyhow::Result<String> {
    let summary = Summary::of(reports);
    Ok(match format {
        Format::Text => render_text(reports, info),
        Format::Json => {
            let doc = json!({
                "n_max": info.n_max,
                "rho_max": info.rho_max,
                "suite": info.suite.as_str(),
                "summary": {
                    "passed": summary.passed,
                    "failed": summary.failed,
                    "advisory_failed": summary.advisory_failed,
                    "not_applicable": summary.not_applicable,
                    "all_mandatory_passed": summary.all_mandatory_passed(),
                },
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                "gram": info.gram_tables.iter().map(|t| json!({
                    "rho": t.rho,
                    "scaling": t.scaling.as_str(),
                    "matrix": t.matrix.iter().map(|row| row.iter().map(Rational::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let header = ["check", "suite", "kind", "n", "rho", "scaling", "at", "status", "numeric_error", "detail"];
            let rows = reports.iter().map(|r| {
                vec![
                    r.check_name.clone(),
                    r.suite.to_string(),
                    match r.kind {
                        CheckKind::Mandatory => "mandatory".into(),
                        CheckKind::Advisory => "advisory".into(),
                    },
                    r.n().map(|v| v.to_string()).unwrap_or_default(),
                    r.rho().map(|v| v.to_string()).unwrap_or_default(),
                    r.scaling.map(|s| s.to_string()).unwrap_or_default(),
                    r.at.map(|a| a.to_string()).unwrap_or_default(),
                    r.status.to_string(),
                    r.numeric_error.map(|e| format!("{e:e}")).unwrap_or_default(),
                    r.detail.clone().unwrap_or_default(),
                ]
            });
            csv_document(std::iter::once(header.map(String::from).to_vec()).chain(rows))?
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{llrrrr}\ncheck & suite & pass & fail & advisory & n/a \\\\\n\\hline\n");
            for (name, t) in tally(reports) {
                let c = t.counts;
                let _ = writeln!(
                    out,
                    "\\texttt{{{}}} & {} & {} & {} & {} & {} \\\\",
                    name.replace('_', "\\_"),
                    t.suite.map_or("", Suite::as_str),
                    c.passed,
                    c.failed,
                    c.advisory_failed,
                    c.not_applicable
                );
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    })
}
