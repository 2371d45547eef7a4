//! Reports: a kind, a JSON payload whose numeric fields are listed in a
//! `citations` map, the declared assumption flags, and an optional timings
//! envelope that is left out in comparison mode.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::assumptions::Assumption;
use crate::bounds::{citations, format_rational, BoundReport, KoszulInvariants};
use crate::engine::{ContainmentTable, FrobeniusClosureReport, MembershipCertificate, TightClosureReport, WitnessRow};
use crate::graded_ring::RingPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Bounds,
    Kq,
    Member,
    Tight,
    Frobenius,
    Koszul,
}

impl ReportKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportKind::Bounds => "bounds",
            ReportKind::Kq => "kq",
            ReportKind::Member => "member",
            ReportKind::Tight => "tight",
            ReportKind::Frobenius => "frobenius",
            ReportKind::Koszul => "koszul",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: ReportKind,
    pub payload: Value,
    pub assumptions: Vec<Assumption>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("csv output is only available for kq reports (got {0})")]
    CsvUnsupported(&'static str),
    #[error("malformed payload: {0}")]
    Malformed(String),
}

pub mod formulas {
    pub const K_EMPIRICAL: &str =
        "k(q) = min{k : R_k in I^[q]}; exact rank test over F_p, every block of full row rank";
    pub const CAP: &str = "cap = floor(q*nu+a)+1+8 with nu, else q*(d_1+...+d_n)+N";
    pub const MEMBER: &str = "h in I^[q] iff h lies in the image of sum_i R_{m-q*d_i} -> R_m, (v_i) -> sum v_i f_i^q";
    pub const WITNESS: &str = "c*f^q in I^[q], decided by the same exact linear algebra, for each tested q = p^e";
    pub const GUARANTEED: &str = "deg f >= nu and deg c > a imply c*f^q in I^[q] for all q";
    pub const FROBENIUS_TEST: &str = "f^q in I^[q] for the listed q = p^e";
    pub const PREDICTED_E: &str = "smallest e with p^e*(deg f - nu) > a";
    pub const KOSZUL_RANK: &str = "rank Syz_j = sum_{i>j} (-1)^(i-j-1) C(n,i)";
    pub const KOSZUL_DEGREE: &str =
        "deg Syz_j/deg Y = sum_{i>j} (-1)^(i-j-1) deg G_i, deg G_i = -C(n-1,i-1)*(d_1+...+d_n)";
    pub const KOSZUL_SLOPE: &str = "mu(Syz_j)/deg(Y) = degree/rank; derived, Koszul + strong semistability";
    pub const KOSZUL_SHIFTS: &str = "alpha_{k,j+1}: sums of j+1 distinct generator degrees";
    pub const DEGREE: &str = "total degree of the tested element";
    pub const Q: &str = "q = p^e";
    pub const MATRIX_ENTRIES: &str = "dim R_m * sum_i dim R_{m-q*d_i}, before splitting by the fine grading";
}

fn cite(pairs: &[(&str, &str)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect())
}

pub fn bounds_payload(b: &BoundReport) -> Value {
    let thresholds: Vec<Value> =
        b.inclusion_threshold.iter().map(|(q, t)| json!({ "q": q, "threshold": t.value.to_string() })).collect();
    json!({
        "nu": format_rational(&b.nu.value),
        "assumptions": b.assumptions.iter().map(Assumption::as_str).collect::<Vec<_>>(),
        "a": b.a_invariant.value,
        "smith_bound": b.smith_bound.value,
        "parameter_bound": b.parameter_bound.value,
        "tight_closure_threshold": format_rational(&b.tight_closure_threshold.value),
        "frobenius_closure_threshold": format_rational(&b.frobenius_closure_threshold.value),
        "inclusion_threshold": thresholds,
        "C1": format_rational(&b.c1.value),
        "C0": b.c0.value,
        "C1prime": b.chardin_c1prime.value,
        "caveats": b.caveats,
        "citations": cite(&[
            ("nu", b.nu.citation),
            ("a", b.a_invariant.citation),
            ("smith_bound", b.smith_bound.citation),
            ("parameter_bound", b.parameter_bound.citation),
            ("tight_closure_threshold", b.tight_closure_threshold.citation),
            ("frobenius_closure_threshold", b.frobenius_closure_threshold.citation),
            ("inclusion_threshold", citations::INCLUSION),
            ("C1", b.c1.citation),
            ("C0", b.c0.citation),
            ("C1prime", b.chardin_c1prime.citation),
        ]),
    })
}

pub fn koszul_payload(degrees: &[u32], rows: &[KoszulInvariants]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|k| {
            json!({
                "j": k.j,
                "rank": k.rank.to_string(),
                "degree_coeff": k.degree_coeff.to_string(),
                "slope_over_deg_y": format_rational(&k.slope_over_deg_y),
                "shift_degrees": k.shift_degrees,
            })
        })
        .collect();
    json!({
        "degrees": degrees,
        "rows": rows,
        "citations": cite(&[
            ("rank", formulas::KOSZUL_RANK),
            ("degree_coeff", formulas::KOSZUL_DEGREE),
            ("slope_over_deg_y", formulas::KOSZUL_SLOPE),
            ("shift_degrees", formulas::KOSZUL_SHIFTS),
        ]),
    })
}

/// `threshold_note` explains why thresholds are absent, if they are.
pub fn kq_payload(table: &ContainmentTable, p: u64, nu_citation: Option<&str>, threshold_note: Option<&str>) -> Value {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "e": r.e,
                "q": r.q,
                "k_empirical": r.k_empirical,
                "k_theoretical": r.k_theoretical,
                "tight": r.tight,
                "exceeds_threshold": r.exceeds_threshold,
                "cap": r.cap,
            })
        })
        .collect();
    json!({
        "p": p,
        "nu": table.nu.as_ref().map(format_rational),
        "a": table.a_invariant,
        "rows": rows,
        "monotone": table.is_monotone(),
        "threshold_note": threshold_note,
        "citations": cite(&[
            ("q", formulas::Q),
            ("k_empirical", formulas::K_EMPIRICAL),
            ("k_theoretical", citations::INCLUSION),
            ("cap", formulas::CAP),
            ("nu", nu_citation.unwrap_or("nu unavailable")),
            ("a", citations::A_INVARIANT),
        ]),
    })
}

fn certificate_json(cert: &MembershipCertificate, ring: &RingPresentation) -> Value {
    json!({
        "member": cert.member,
        "coefficients": cert.coefficients.as_ref().map(|hs| hs.iter().map(|h| ring.format_poly(h)).collect::<Vec<_>>()),
    })
}

pub fn member_payload(cert: &MembershipCertificate, ring: &RingPresentation, matrix_entries: u128) -> Value {
    let mut v = certificate_json(cert, ring);
    let obj = v.as_object_mut().expect("object");
    obj.insert("q".into(), json!(cert.q));
    obj.insert("element".into(), json!(ring.format_poly(&cert.element)));
    obj.insert("degree".into(), json!(cert.element.homogeneous_degree()));
    obj.insert("matrix_entries".into(), json!(matrix_entries.to_string()));
    obj.insert(
        "citations".into(),
        cite(&[
            ("member", formulas::MEMBER),
            ("q", formulas::Q),
            ("degree", formulas::DEGREE),
            ("matrix_entries", formulas::MATRIX_ENTRIES),
        ]),
    );
    v
}

fn witness_rows(rows: &[WitnessRow], ring: &RingPresentation) -> Vec<Value> {
    rows.iter()
        .map(|r| {
            let mut v = certificate_json(&r.certificate, ring);
            let obj = v.as_object_mut().expect("object");
            obj.insert("e".into(), json!(r.e));
            obj.insert("q".into(), json!(r.q));
            obj.insert("degree".into(), json!(r.degree));
            v
        })
        .collect()
}

pub fn tight_payload(
    report: &TightClosureReport,
    ring: &RingPresentation,
    f: &str,
    c: &str,
    nu: Option<&num_rational::BigRational>,
) -> Value {
    json!({
        "f": f,
        "c": c,
        "nu": nu.map(format_rational),
        "rows": witness_rows(&report.rows, ring),
        "all_passed": report.all_passed,
        "guaranteed": report.guaranteed,
        "caveats": report.caveats,
        "citations": cite(&[
            ("q", formulas::Q),
            ("degree", formulas::DEGREE),
            ("member", formulas::WITNESS),
            ("guaranteed", formulas::GUARANTEED),
            ("nu", citations::TIGHT),
        ]),
    })
}

pub fn frobenius_payload(
    report: &FrobeniusClosureReport,
    ring: &RingPresentation,
    f: &str,
    nu: Option<&num_rational::BigRational>,
) -> Value {
    json!({
        "f": f,
        "nu": nu.map(format_rational),
        "e_max": report.e_max,
        "rows": witness_rows(&report.rows, ring),
        "found_e": report.found_e,
        "predicted_e": report.predicted_e,
        "citations": cite(&[
            ("q", formulas::Q),
            ("degree", formulas::DEGREE),
            ("member", formulas::FROBENIUS_TEST),
            ("found_e", "smallest tested e with f^q in I^[q]"),
            ("predicted_e", formulas::PREDICTED_E),
            ("nu", citations::FROBENIUS_CLOSURE),
        ]),
    })
}

const CSV_HEADER: [&str; 7] = ["e", "q", "k_empirical", "k_theoretical", "tight", "exceeds_threshold", "cap"];

impl Report {
    pub fn new(kind: ReportKind, payload: Value, assumptions: impl IntoIterator<Item = Assumption>) -> Self {
        Self { kind, payload, assumptions: assumptions.into_iter().collect(), timings: None }
    }

    pub fn emit(&self, format: Format) -> Result<String, ReportError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| ReportError::Malformed(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
            Format::Text => Ok(self.text()),
        }
    }

    fn csv(&self) -> Result<String, ReportError> {
        if self.kind != ReportKind::Kq {
            return Err(ReportError::CsvUnsupported(self.kind.as_str()));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let malformed = |e: csv::Error| ReportError::Malformed(e.to_string());
        w.write_record(CSV_HEADER).map_err(malformed)?;
        let rows = self.payload["rows"].as_array().cloned().unwrap_or_default();
        for row in rows {
            let record: Vec<String> = CSV_HEADER.iter().map(|k| scalar(&row[*k])).collect();
            w.write_record(&record).map_err(malformed)?;
        }
        let bytes = w.into_inner().map_err(|e| ReportError::Malformed(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ReportError::Malformed(e.to_string()))
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.kind.as_str());
        let empty = Map::new();
        let payload = self.payload.as_object().unwrap_or(&empty);
        let citations = payload.get("citations").and_then(Value::as_object).unwrap_or(&empty);
        for (key, value) in payload {
            if key == "citations" || key == "caveats" {
                continue;
            }
            match value {
                Value::Array(items) if items.iter().any(Value::is_object) => {
                    let _ = writeln!(out, "  {key}:");
                    for item in items {
                        let fields: Vec<String> = item
                            .as_object()
                            .map(|o| o.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect())
                            .unwrap_or_default();
                        let _ = writeln!(out, "    {}", fields.join(" "));
                    }
                }
                _ => {
                    let _ = write!(out, "  {key} = {}", scalar(value));
                    if let Some(c) = citations.get(key).and_then(Value::as_str) {
                        let _ = write!(out, "    [{c}]");
                    }
                    out.push('\n');
                }
            }
        }
        let row_citations: Vec<_> = citations.iter().filter(|(k, _)| !payload.contains_key(*k)).collect();
        if !row_citations.is_empty() {
            let _ = writeln!(out, "  formulas:");
            for (k, c) in row_citations {
                let _ = writeln!(out, "    {k}: {}", c.as_str().unwrap_or_default());
            }
        }
        if let Some(caveats) = payload.get("caveats").and_then(Value::as_array) {
            for c in caveats {
                let _ = writeln!(out, "  note: {}", c.as_str().unwrap_or_default());
            }
        }
        let flags: Vec<&str> = self.assumptions.iter().map(Assumption::as_str).collect();
        let _ = writeln!(
            out,
            "  assumed (not verified): {}",
            if flags.is_empty() { "none".into() } else { flags.join(" ") }
        );
        if let Some(t) = self.timings {
            let _ = writeln!(out, "  elapsed: {:.3} ms", t.elapsed_us as f64 / 1000.0);
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
