//! Canonical output documents: human-readable by default, JSON on
//! request. All rationals render as "p" or "p/q" strings so the JSON
//! round-trips losslessly.

use riordan_core::rat::render_rat;
use riordan_core::verify::CheckReport;
use riordan_core::{FiniteOperator, NumeratorResult, Poly, QSeries};
use serde::Serialize;

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutputDoc {
    Polynomial {
        coeffs: Vec<String>,
    },
    Numerator {
        coeffs: Vec<String>,
        denominator_exponent: usize,
        residual_ok: bool,
    },
    Series {
        coeffs: Vec<String>,
        order: usize,
    },
    Matrix {
        dim: usize,
        entries: Vec<String>,
    },
    Report {
        checks: Vec<CheckDoc>,
        all_pass: bool,
    },
}

#[derive(Serialize)]
pub struct CheckDoc {
    pub id: String,
    pub verdict: String,
    pub params: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub elapsed_ms: u128,
}

pub fn poly_doc(p: &Poly) -> OutputDoc {
    OutputDoc::Polynomial {
        coeffs: poly_coeffs(p),
    }
}

pub fn numerator_doc(r: &NumeratorResult) -> OutputDoc {
    OutputDoc::Numerator {
        coeffs: poly_coeffs(&r.numerator),
        denominator_exponent: r.denominator_exponent,
        residual_ok: r.residual_ok,
    }
}

pub fn series_doc(s: &QSeries) -> OutputDoc {
    OutputDoc::Series {
        coeffs: s.coeffs().iter().map(render_rat).collect(),
        order: s.order(),
    }
}

pub fn matrix_doc(m: &FiniteOperator) -> OutputDoc {
    OutputDoc::Matrix {
        dim: m.dim(),
        entries: m.entries().iter().map(render_rat).collect(),
    }
}

pub fn report_doc(reports: &[CheckReport]) -> OutputDoc {
    let all_pass = reports
        .iter()
        .all(|r| r.verdict == riordan_core::verify::Verdict::Pass);
    OutputDoc::Report {
        checks: reports
            .iter()
            .map(|r| CheckDoc {
                id: r.id.as_str().to_string(),
                verdict: r.verdict.as_str().to_string(),
                params: r.params.clone(),
                counterexample: r.counterexample.clone(),
                elapsed_ms: r.elapsed.as_millis(),
            })
            .collect(),
        all_pass,
    }
}

fn poly_coeffs(p: &Poly) -> Vec<String> {
    match p.degree() {
        None => vec!["0".to_string()],
        Some(d) => (0..=d).map(|k| render_rat(&p.coeff(k))).collect(),
    }
}

pub fn render_doc(doc: &OutputDoc, json: bool) -> String {
    if json {
        return serde_json::to_string(doc).expect("serialization cannot fail");
    }
    match doc {
        OutputDoc::Polynomial { coeffs } => render_poly_human(coeffs),
        OutputDoc::Numerator {
            coeffs,
            denominator_exponent,
            residual_ok,
        } => format!(
            "{}  / (1-x)^{}{}",
            render_poly_human(coeffs),
            denominator_exponent,
            if *residual_ok { "" } else { "  [residual NOT ok]" }
        ),
        OutputDoc::Series { coeffs, .. } => coeffs.join(", "),
        OutputDoc::Matrix { dim, entries } => {
            let width = entries.iter().map(|e| e.len()).max().unwrap_or(1);
            entries
                .chunks(*dim)
                .map(|row| {
                    row.iter()
                        .map(|e| format!("{e:>width$}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        OutputDoc::Report { checks, all_pass } => {
            let mut lines: Vec<String> = checks
                .iter()
                .map(|c| {
                    let mut line = format!("{:<22} {}", c.id, c.verdict);
                    if let Some(ce) = &c.counterexample {
                        line.push_str(&format!("  ({ce})"));
                    }
                    line
                })
                .collect();
            lines.push(if *all_pass {
                "all checks passed".to_string()
            } else {
                "CHECK FAILURES PRESENT".to_string()
            });
            lines.join("\n")
        }
    }
}

fn render_poly_human(coeffs: &[String]) -> String {
    // reconstruct from canonical strings; coeffs are exact "p" or "p/q"
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c == "0" {
            continue;
        }
        let neg = c.starts_with('-');
        let mag = c.trim_start_matches('-');
        let var = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        let body = if var.is_empty() {
            mag.to_string()
        } else if mag == "1" {
            var
        } else {
            format!("{mag}{var}")
        };
        if parts.is_empty() {
            parts.push(if neg { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}
