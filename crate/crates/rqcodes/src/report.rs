//! JSON and CSV renderings of audit reports and analysis results.

use std::collections::BTreeMap;

use rqcodes_core::{AuditEntry, AuditReport, AuditValue, Rational, RqElement, WeightDistribution};
use serde_json::{json, Map, Value};

pub const CSV_HEADER: [&str; 9] =
    ["claim", "source", "params", "quantity", "normalization", "claimed", "computed", "verdict", "note"];

/// Integers become JSON numbers when they fit in 64 bits; anything else is a string.
pub fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        let v = *r.numer();
        if let Ok(x) = i64::try_from(v) {
            return Value::from(x);
        }
        if let Ok(x) = u64::try_from(v) {
            return Value::from(x);
        }
    }
    Value::String(r.to_string())
}

pub fn distribution_json<'a, I>(pairs: I) -> Value
where
    I: IntoIterator<Item = (&'a Rational, Value)>,
{
    let mut m = Map::new();
    for (w, c) in pairs {
        m.insert(w.to_string(), c);
    }
    Value::Object(m)
}

pub fn value_json(v: &AuditValue) -> Value {
    match v {
        AuditValue::Number(r) => rational_json(r),
        AuditValue::Distribution(d) => distribution_json(d.iter().map(|(w, c)| (w, rational_json(c)))),
        AuditValue::Bool(b) => Value::Bool(*b),
        AuditValue::Text(t) => Value::String(t.clone()),
        AuditValue::Missing => Value::Null,
    }
}

pub fn weight_distribution_json(d: &WeightDistribution) -> Value {
    distribution_json(d.counts.iter().map(|(w, c)| (w, Value::from(*c))))
}

pub fn entry_json(e: &AuditEntry) -> Value {
    let params: Map<String, Value> = e.params.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect();
    json!({
        "claim": e.claim,
        "source": e.source,
        "params": params,
        "quantity": e.quantity,
        "normalization": e.normalization,
        "claimed": value_json(&e.claimed),
        "computed": value_json(&e.computed),
        "verdict": e.verdict.name(),
        "note": e.note,
    })
}

pub fn audit_json(report: &AuditReport) -> String {
    let v = Value::Array(report.entries.iter().map(entry_json).collect());
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Cell text for a value: distributions and numbers use their JSON spelling.
fn value_cell(v: &AuditValue) -> String {
    match v {
        AuditValue::Missing => String::new(),
        AuditValue::Text(t) => t.clone(),
        other => value_json(other).to_string(),
    }
}

pub fn audit_csv(report: &AuditReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("writing to memory");
    for e in &report.entries {
        w.write_record([
            e.claim.to_string(),
            e.source.to_string(),
            e.params_text(),
            e.quantity.clone(),
            e.normalization.clone(),
            value_cell(&e.claimed),
            value_cell(&e.computed),
            e.verdict.name().to_string(),
            e.note.clone().unwrap_or_default(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is UTF-8")
}

/// One line per entry, aligned loosely for reading in a terminal.
pub fn audit_text(report: &AuditReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        out.push_str(&format!(
            "{:<16} {:<18} {:<36} {:<28} {:<16} claimed={} computed={}",
            e.claim,
            e.params_text(),
            e.quantity,
            e.normalization,
            e.verdict.name(),
            e.claimed,
            e.computed,
        ));
        if let Some(note) = &e.note {
            out.push_str(&format!("  # {note}"));
        }
        out.push('\n');
    }
    let mut totals: BTreeMap<&str, usize> = BTreeMap::new();
    for e in &report.entries {
        *totals.entry(e.verdict.name()).or_default() += 1;
    }
    let summary: Vec<String> = totals.iter().map(|(k, v)| format!("{k}={v}")).collect();
    out.push_str(&format!("total={} {}\n", report.entries.len(), summary.join(" ")));
    out
}

pub fn elements_json(v: &[RqElement]) -> Value {
    Value::Array(v.iter().map(|e| Value::from(e.coeffs())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rqcodes_core::{run_audit, Budget};

    fn small() -> AuditReport {
        let b = Budget { max_q: 1, max_k: 1, max_n: 1, ..Budget::default() };
        run_audit(&b)
    }

    #[test]
    fn json_schema_fields() {
        let v: Value = serde_json::from_str(&audit_json(&small())).unwrap();
        let first = &v.as_array().unwrap()[0];
        let keys: Vec<&str> = first.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            ["claim", "source", "params", "quantity", "normalization", "claimed", "computed", "verdict", "note"]
        );
    }

    #[test]
    fn csv_mirrors_json() {
        let report = small();
        let text = audit_csv(&report);
        let mut r = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
        let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), report.entries.len());
        for (row, e) in rows.iter().zip(&report.entries) {
            assert_eq!(&row[0], e.claim);
            assert_eq!(&row[7], e.verdict.name());
        }
    }

    #[test]
    fn large_and_fractional_numbers_are_strings() {
        assert_eq!(rational_json(&Rational::new(1, 2)), Value::String("1/2".into()));
        assert_eq!(rational_json(&Rational::from_integer(1 << 70)), Value::String("1180591620717411303424".into()));
        assert_eq!(rational_json(&Rational::from_integer(-3)), Value::from(-3));
    }
}
