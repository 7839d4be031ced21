//! Report records and their table / JSON / CSV renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use killp::homology::{Coverage, HomologyResult};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// One homology group in the documented schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeRecord {
    pub theory: String,
    pub degree: i64,
    /// `oracle`, `closed_form`, `stabilized`, or `not_covered`.
    pub method: String,
    pub complete_rank: usize,
    pub free_rank: usize,
    pub torsion_p_exponents: Vec<u32>,
    pub truncated: bool,
    pub n_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    /// The route compared against the primary one.
    pub against: String,
    /// `agrees`, `differs`, or `not_covered`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ShapeRecord {
    pub fn from_result(r: &HomologyResult) -> Self {
        ShapeRecord {
            theory: r.theory.to_string(),
            degree: r.degree,
            method: r.method.to_string(),
            complete_rank: r.shape.complete_rank,
            free_rank: r.shape.free_rank,
            torsion_p_exponents: r.shape.torsion_exponents.clone(),
            truncated: r.shape.truncated,
            n_max: r.shape.n_max,
            display: Some(r.shape.to_string()),
            cross_check: None,
            reason: None,
        }
    }

    pub fn from_coverage(c: &Coverage) -> Self {
        match c {
            Coverage::Covered(r) => Self::from_result(r),
            Coverage::NotCovered { theory, degree, reason } => ShapeRecord {
                theory: theory.to_string(),
                degree: *degree,
                method: "not_covered".into(),
                complete_rank: 0,
                free_rank: 0,
                torsion_p_exponents: Vec::new(),
                truncated: false,
                n_max: None,
                display: None,
                cross_check: None,
                reason: Some(reason.clone()),
            },
        }
    }

    pub fn with_check(mut self, check: CrossCheck) -> Self {
        self.cross_check = Some(check);
        self
    }
}

/// Compare a primary result with a second route.
pub fn compare(against: &str, primary: &HomologyResult, other: &Coverage) -> CrossCheck {
    match other.result() {
        Some(r) if r.shape == primary.shape => {
            CrossCheck { against: against.into(), status: "agrees".into(), detail: None }
        }
        Some(r) => CrossCheck {
            against: against.into(),
            status: "differs".into(),
            detail: Some(format!("{} vs {}", primary.shape, r.shape)),
        },
        None => {
            let detail = match other {
                Coverage::NotCovered { reason, .. } => Some(reason.clone()),
                Coverage::Covered(_) => None,
            };
            CrossCheck { against: against.into(), status: "not_covered".into(), detail }
        }
    }
}

fn join_exponents(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(";")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_shapes(records: &[ShapeRecord], format: Format) -> String {
    match format {
        Format::Json => json(records),
        Format::Csv => {
            let mut out = String::from(
                "theory,degree,method,complete_rank,free_rank,torsion_p_exponents,truncated,n_max,cross_check\n",
            );
            for r in records {
                let check = r.cross_check.as_ref().map(|c| format!("{}:{}", c.against, c.status));
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.theory,
                    r.degree,
                    r.method,
                    r.complete_rank,
                    r.free_rank,
                    join_exponents(&r.torsion_p_exponents),
                    r.truncated,
                    r.n_max.map(|n| n.to_string()).unwrap_or_default(),
                    csv_field(&check.unwrap_or_default()),
                );
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            for r in records {
                let body = match (&r.display, &r.reason) {
                    (Some(d), _) => d.clone(),
                    (None, Some(why)) => format!("not covered ({why})"),
                    (None, None) => String::new(),
                };
                let _ = write!(out, "{}_{:<4} {body}  [{}", r.theory, r.degree, r.method);
                if let Some(c) = &r.cross_check {
                    let _ = write!(out, "; {} {}", c.against, c.status);
                    if let Some(d) = &c.detail {
                        let _ = write!(out, ": {d}");
                    }
                }
                out.push_str("]\n");
            }
            out
        }
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Key-value reports: JSON object, two-column CSV, or aligned table.
pub fn render_pairs<T: Serialize>(value: &T, format: Format) -> String {
    if format == Format::Json {
        return json(value);
    }
    let serde_json::Value::Object(map) = serde_json::to_value(value).expect("report types serialize") else {
        return json(value);
    };
    let flat = |v: &serde_json::Value| match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("key,value\n");
            for (k, v) in &map {
                let _ = writeln!(out, "{k},{}", csv_field(&flat(v)));
            }
        }
        _ => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in &map {
                let _ = writeln!(out, "{k:<width$}  {}", flat(v));
            }
        }
    }
    out
}
