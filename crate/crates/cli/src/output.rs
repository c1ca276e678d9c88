//! Report rendering. Every floating-point value is printed with 17
//! significant digits (`{:.16e}`) in both CSV and JSON so downstream
//! tooling can re-verify results without precision loss.

use latball_core::enumerate::WeightedCount;
use latball_core::extremal::BoundValue;
use latball_core::verify::{PoissonCheckResult, SweepConfig, SweepOutcome, TrialOutcome, VerificationRecord};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io;

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact JSON with full-precision floats.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn render_json(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    let mut text = String::from_utf8(out).expect("serializer emits valid utf8");
    text.push('\n');
    text
}

pub fn count_report(count: &WeightedCount, csv: bool) -> String {
    if csv {
        let mut s = String::new();
        let _ = writeln!(s, "interior,boundary,weighted_total,scaled_total,main_term,discrepancy");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            count.interior,
            count.boundary,
            sci(count.weighted_total),
            sci(count.scaled_total),
            sci(count.main_term),
            sci(count.discrepancy)
        );
        s
    } else {
        render_json(&json!({
            "interior": count.interior,
            "boundary": count.boundary,
            "weighted_total": count.weighted_total,
            "scaled_total": count.scaled_total,
            "main_term": count.main_term,
            "discrepancy": count.discrepancy,
        }))
    }
}

pub fn bound_report(dim: u32, delta: f64, radius: f64, value: &BoundValue, csv: bool) -> String {
    if csv {
        let mut s = String::new();
        let _ = writeln!(s, "dim,delta,radius,u_value,surface_const,volume_const,bound,denominator");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            dim,
            sci(delta),
            sci(radius),
            sci(value.u_value),
            sci(value.surface_const),
            sci(value.volume_const),
            sci(value.bound),
            sci(value.denominator)
        );
        s
    } else {
        render_json(&json!({
            "dim": dim,
            "delta": delta,
            "radius": radius,
            "u_value": value.u_value,
            "surface_const": value.surface_const,
            "volume_const": value.volume_const,
            "bound": value.bound,
            "denominator": value.denominator,
        }))
    }
}

fn record_json(record: &VerificationRecord) -> Value {
    json!({
        "basis": {
            "rows": record.basis_summary.rows,
            "cols": record.basis_summary.cols,
            "op_norm": record.basis_summary.op_norm,
            "sqrt_det": record.basis_summary.sqrt_det,
        },
        "delta": record.delta,
        "radius": record.radius,
        "center": record.center,
        "lhs": record.lhs,
        "rhs": record.rhs,
        "margin": record.margin,
        "boundary_hits": record.boundary_hits,
        "passed": record.passed,
    })
}

fn record_csv_fields(record: &VerificationRecord, center_slots: usize, s: &mut String) {
    let mut fields: Vec<String> = vec![
        record.basis_summary.rows.to_string(),
        record.basis_summary.cols.to_string(),
        sci(record.basis_summary.op_norm),
        sci(record.delta),
        sci(record.radius),
    ];
    for slot in 0..center_slots {
        fields.push(record.center.get(slot).map(|&c| sci(c)).unwrap_or_default());
    }
    fields.push(sci(record.lhs));
    fields.push(sci(record.rhs));
    fields.push(sci(record.margin));
    fields.push(record.boundary_hits.to_string());
    fields.push(u8::from(record.passed).to_string());
    s.push_str(&fields.join(","));
}

pub fn verify_report(record: &VerificationRecord, csv: bool) -> String {
    if csv {
        let n = record.center.len();
        let mut s = String::from("m,n,op_norm,delta,r");
        for j in 1..=n {
            let _ = write!(s, ",center_{j}");
        }
        s.push_str(",lhs,rhs,margin,boundary_hits,passed\n");
        record_csv_fields(record, n, &mut s);
        s.push('\n');
        s
    } else {
        render_json(&record_json(record))
    }
}

pub fn sweep_report(config: &SweepConfig, outcome: &SweepOutcome, csv: bool) -> String {
    if csv {
        let slots = config.n_max as usize;
        let mut s = String::from("seed,trial,m,n,op_norm,delta,r");
        for j in 1..=slots {
            let _ = write!(s, ",center_{j}");
        }
        s.push_str(",lhs,rhs,margin,boundary_hits,passed\n");
        for report in &outcome.reports {
            if let TrialOutcome::Completed(record) = &report.outcome {
                let _ = write!(s, "{},{},", outcome.seed, report.trial);
                record_csv_fields(record, slots, &mut s);
                s.push('\n');
            }
        }
        s
    } else {
        let trials: Vec<Value> = outcome
            .reports
            .iter()
            .map(|report| match &report.outcome {
                TrialOutcome::Completed(record) => json!({
                    "trial": report.trial,
                    "record": record_json(record),
                }),
                TrialOutcome::Failed { message } => json!({
                    "trial": report.trial,
                    "error": message,
                }),
            })
            .collect();
        render_json(&json!({ "seed": outcome.seed, "trials": trials }))
    }
}

pub fn poisson_report(result: &PoissonCheckResult, csv: bool) -> String {
    if csv {
        let mut s = String::new();
        let _ = writeln!(s, "bandwidth,delta,lhs,rhs,truncation_bound,abs_error,freq_terms");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            sci(result.bandwidth),
            sci(result.delta),
            sci(result.lhs),
            sci(result.rhs),
            sci(result.truncation_bound),
            sci(result.abs_error),
            result.freq_terms
        );
        s
    } else {
        render_json(&json!({
            "bandwidth": result.bandwidth,
            "delta": result.delta,
            "lhs": result.lhs,
            "rhs": result.rhs,
            "truncation_bound": result.truncation_bound,
            "abs_error": result.abs_error,
            "freq_terms": result.freq_terms,
        }))
    }
}
