//! Report rendering: a human-readable text layout and a line-delimited
//! machine format.
//!
//! The machine format is JSON Lines with a leading `schema_version` record;
//! every polynomial is serialized in canonical monomial order and parses
//! back through [`parse_polynomial`] to the exact internal value. Both
//! renderers are deterministic: two runs over the same input produce
//! byte-identical output (wall-clock timing never appears; the `timings`
//! record carries work counters).

use std::sync::Arc;

use serde::Serialize;

use crate::dirac::{
    AnalysisReport, AnalysisStatus, Constraint, ConstraintClass, ConstraintOrigin,
    MultiplierCondition,
};
use crate::error::ParseError;
use crate::polynomial::Polynomial;
use crate::problem::parse_expression;
use crate::variable::{VarKind, VariableTable};

pub const SCHEMA_VERSION: u32 = 1;

/// Parses a polynomial in the report's text form back over `table`.
pub fn parse_polynomial(
    text: &str,
    table: &Arc<VariableTable>,
) -> Result<Polynomial, ParseError> {
    parse_expression(text, table)
}

fn class_str(c: ConstraintClass) -> &'static str {
    match c {
        ConstraintClass::Unknown => "unknown",
        ConstraintClass::First => "first",
        ConstraintClass::Second => "second",
    }
}

fn origin_label(origin: &ConstraintOrigin) -> String {
    match origin {
        ConstraintOrigin::Primary { index } => format!("primary #{index}"),
        ConstraintOrigin::Consistency { parent, pass } => {
            format!("consistency of phi_{parent}, pass {pass}")
        }
        ConstraintOrigin::Combination { coefficients } => {
            let coeffs: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
            format!("combination ({})", coeffs.join(", "))
        }
    }
}

fn multiplier_name(report: &AnalysisReport, alpha: usize) -> String {
    let table = report.table();
    let mults = table.vars_of_kind(VarKind::Multiplier);
    mults
        .get(alpha - 1)
        .map(|v| table.name(*v).to_owned())
        .unwrap_or_else(|| format!("u{alpha}"))
}

fn condition_equation(report: &AnalysisReport, cond: &MultiplierCondition) -> String {
    let mut lhs = String::new();
    if !cond.u_free.is_zero() {
        lhs.push_str(&cond.u_free.to_string());
    }
    for (alpha, coeff) in &cond.coefficients {
        let name = multiplier_name(report, *alpha);
        if !lhs.is_empty() {
            lhs.push_str(" + ");
        }
        lhs.push_str(&format!("({coeff})*{name}"));
    }
    format!("{lhs} = 0")
}

/// Human-ordered plain-text report.
pub fn render_text(report: &AnalysisReport, include_eom: bool) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };

    push(&mut out, format!("status: {}", report.status.as_str()));
    push(
        &mut out,
        format!("canonical Hamiltonian: H_c = {}", report.canonical_hamiltonian),
    );
    if let Some(h_t) = &report.total_hamiltonian {
        push(&mut out, format!("total Hamiltonian:     H_t = {h_t}"));
    }

    let constraint_block = |out: &mut String, title: &str, list: &[Constraint], prefix: &str| {
        push(out, format!("{title} ({}):", list.len()));
        for (i, c) in list.iter().enumerate() {
            push(
                out,
                format!(
                    "  {prefix}{} = {}   [{}; {} class]",
                    i + 1,
                    c.poly,
                    origin_label(&c.origin),
                    class_str(c.class)
                ),
            );
        }
    };

    if report.status != AnalysisStatus::Regular {
        constraint_block(&mut out, "primary constraints", &report.primary, "phi_");
        constraint_block(
            &mut out,
            "complete constraint set",
            &report.complete,
            "phi_",
        );
    }

    if let Some(matrix) = &report.bracket_matrix {
        push(
            &mut out,
            format!(
                "Poisson bracket matrix modulo the constraint ideal (rank {}):",
                matrix.rank
            ),
        );
        for row in &matrix.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            push(&mut out, format!("  [ {} ]", cells.join(", ")));
        }
        constraint_block(
            &mut out,
            "first class constraints",
            &report.first_class,
            "chi_",
        );
        constraint_block(
            &mut out,
            "second class constraints",
            &report.second_class,
            "psi_",
        );
    }

    if !report.multiplier_conditions.is_empty() {
        push(
            &mut out,
            format!("multiplier conditions ({}):", report.multiplier_conditions.len()),
        );
        for cond in &report.multiplier_conditions {
            push(
                &mut out,
                format!(
                    "  from phi_{}: {}   (weakly)",
                    cond.source,
                    condition_equation(report, cond)
                ),
            );
        }
    }

    if include_eom {
        push(&mut out, "equations of motion:".to_owned());
        let table = report.table();
        for (v, rhs) in &report.equations_of_motion {
            push(&mut out, format!("  d/dt {} = {}", table.name(*v), rhs));
        }
    }

    if !report.warnings.is_empty() {
        push(&mut out, format!("warnings ({}):", report.warnings.len()));
        for w in &report.warnings {
            push(&mut out, format!("  - {w}"));
        }
    }

    push(
        &mut out,
        format!(
            "work: completion passes = {}, groebner runs = {}, constraints added = {}",
            report.stats.completion_passes,
            report.stats.groebner_runs,
            report.stats.constraints_added
        ),
    );
    out
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum OriginRecord {
    Primary { index: usize },
    Consistency { parent: String, pass: usize },
    Combination { coefficients: Vec<String> },
}

#[derive(Serialize)]
struct CoefficientRecord {
    multiplier: String,
    poly: String,
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum Record {
    Schema {
        schema_version: u32,
    },
    Status {
        value: String,
    },
    CanonicalHamiltonian {
        poly: String,
    },
    TotalHamiltonian {
        poly: Option<String>,
    },
    Constraint {
        set: String,
        name: String,
        poly: String,
        origin: OriginRecord,
        class: String,
    },
    BracketMatrix {
        rank: usize,
        rows: Vec<Vec<String>>,
    },
    MultiplierCondition {
        source: String,
        u_free: String,
        coefficients: Vec<CoefficientRecord>,
    },
    EquationOfMotion {
        variable: String,
        rhs: String,
    },
    Warning {
        message: String,
    },
    Timings {
        completion_passes: usize,
        groebner_runs: usize,
        constraints_added: usize,
    },
}

fn origin_record(origin: &ConstraintOrigin) -> OriginRecord {
    match origin {
        ConstraintOrigin::Primary { index } => OriginRecord::Primary { index: *index },
        ConstraintOrigin::Consistency { parent, pass } => OriginRecord::Consistency {
            parent: format!("phi_{parent}"),
            pass: *pass,
        },
        ConstraintOrigin::Combination { coefficients } => OriginRecord::Combination {
            coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
        },
    }
}

/// Line-delimited machine report (JSON Lines).
pub fn render_machine(report: &AnalysisReport) -> String {
    let mut records = vec![
        Record::Schema {
            schema_version: SCHEMA_VERSION,
        },
        Record::Status {
            value: report.status.as_str().to_owned(),
        },
        Record::CanonicalHamiltonian {
            poly: report.canonical_hamiltonian.to_string(),
        },
        Record::TotalHamiltonian {
            poly: report.total_hamiltonian.as_ref().map(|p| p.to_string()),
        },
    ];

    let constraint_records = |set: &str, prefix: &str, list: &[Constraint]| {
        list.iter()
            .enumerate()
            .map(|(i, c)| Record::Constraint {
                set: set.to_owned(),
                name: format!("{prefix}{}", i + 1),
                poly: c.poly.to_string(),
                origin: origin_record(&c.origin),
                class: class_str(c.class).to_owned(),
            })
            .collect::<Vec<_>>()
    };
    records.extend(constraint_records("primary", "phi_", &report.primary));
    records.extend(constraint_records("complete", "phi_", &report.complete));
    records.extend(constraint_records(
        "first_class",
        "chi_",
        &report.first_class,
    ));
    records.extend(constraint_records(
        "second_class",
        "psi_",
        &report.second_class,
    ));

    if let Some(matrix) = &report.bracket_matrix {
        records.push(Record::BracketMatrix {
            rank: matrix.rank,
            rows: matrix
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect(),
        });
    }

    for cond in &report.multiplier_conditions {
        records.push(Record::MultiplierCondition {
            source: format!("phi_{}", cond.source),
            u_free: cond.u_free.to_string(),
            coefficients: cond
                .coefficients
                .iter()
                .map(|(alpha, coeff)| CoefficientRecord {
                    multiplier: multiplier_name(report, *alpha),
                    poly: coeff.to_string(),
                })
                .collect(),
        });
    }

    let table = report.table();
    for (v, rhs) in &report.equations_of_motion {
        records.push(Record::EquationOfMotion {
            variable: table.name(*v).to_owned(),
            rhs: rhs.to_string(),
        });
    }

    for w in &report.warnings {
        records.push(Record::Warning { message: w.clone() });
    }

    records.push(Record::Timings {
        completion_passes: report.stats.completion_passes,
        groebner_runs: report.stats.groebner_runs,
        constraints_added: report.stats.constraints_added,
    });

    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(&r).expect("serializable"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{analyze, AnalysisOptions};
    use crate::problem::parse_problem;

    fn mixed_report() -> AnalysisReport {
        let (_, sys) =
            parse_problem("coords: q1 q2 q3 ; L = q1*(dq2 - q3) - dq1*q2", &[]).unwrap();
        analyze(&sys, &AnalysisOptions::default()).unwrap()
    }

    #[test]
    fn machine_report_is_versioned_and_deterministic() {
        let report = mixed_report();
        let a = render_machine(&report);
        let b = render_machine(&mixed_report());
        assert_eq!(a, b, "two runs must render byte-identically");
        let first_line = a.lines().next().unwrap();
        let v: serde_json::Value = serde_json::from_str(first_line).unwrap();
        assert_eq!(v["record"], "schema");
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn machine_polynomials_round_trip_exactly() {
        let report = mixed_report();
        let table = report.table().clone();
        let rendered = render_machine(&report);
        let mut checked = 0;
        for line in rendered.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            for key in ["poly", "rhs", "u_free"] {
                if let Some(text) = v.get(key).and_then(|x| x.as_str()) {
                    let parsed = parse_polynomial(text, &table).unwrap();
                    assert_eq!(parsed.to_string(), text);
                    checked += 1;
                }
            }
        }
        assert!(checked > 10);
        // internal values match, not just strings
        assert_eq!(
            parse_polynomial(&report.canonical_hamiltonian.to_string(), &table).unwrap(),
            report.canonical_hamiltonian
        );
    }

    #[test]
    fn text_report_sections() {
        let report = mixed_report();
        let text = render_text(&report, true);
        for needle in [
            "status: consistent",
            "canonical Hamiltonian",
            "total Hamiltonian",
            "primary constraints (3):",
            "complete constraint set (4):",
            "rank 2",
            "first class constraints (2):",
            "second class constraints (2):",
            "multiplier conditions",
            "equations of motion:",
            "work: completion passes",
        ] {
            assert!(text.contains(needle), "missing `{needle}` in:\n{text}");
        }
        let without_eom = render_text(&report, false);
        assert!(!without_eom.contains("equations of motion"));
    }

    #[test]
    fn regular_system_text_is_minimal() {
        let (_, sys) = parse_problem("coords: q1 ; L = 1/2*dq1^2", &[]).unwrap();
        let report = analyze(&sys, &AnalysisOptions::default()).unwrap();
        let text = render_text(&report, false);
        assert!(text.contains("status: regular"));
        assert!(!text.contains("primary constraints"));
        let machine = render_machine(&report);
        let statuses: Vec<serde_json::Value> = machine
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert!(statuses
            .iter()
            .any(|v| v["record"] == "total_hamiltonian" && v["poly"].is_null()));
        assert!(!statuses.iter().any(|v| v["record"] == "constraint"));
    }
}
