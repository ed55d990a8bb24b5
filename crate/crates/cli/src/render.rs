use faber_core::{CheckReport, ParamValue};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::Format;

const TEXT_VALUE_WIDTH: usize = 40;

#[derive(Serialize)]
struct JsonRecord<'a> {
    check: &'a str,
    params: Map<String, Value>,
    status: faber_core::Status,
    expected: &'a str,
    computed: &'a str,
    mismatches: &'a [faber_core::Mismatch],
    facts: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metrics: Option<Map<String, Value>>,
    elapsed_ms: f64,
}

fn param_json(v: &ParamValue) -> Value {
    serde_json::to_value(v).expect("params serialize")
}

fn shorten(s: &str) -> String {
    if s.chars().count() <= TEXT_VALUE_WIDTH {
        s.to_string()
    } else {
        let head: String = s.chars().take(TEXT_VALUE_WIDTH - 3).collect();
        format!("{head}...")
    }
}

/// One record per report: a JSON line, or a summary line plus indented
/// mismatch details on failure. Neither ends with a newline.
pub fn render_report(report: &CheckReport, format: Format, bench: bool) -> String {
    let elapsed_ms = report.elapsed.as_secs_f64() * 1e3;
    match format {
        Format::Json => {
            let record = JsonRecord {
                check: &report.check,
                params: report.params.iter().map(|(k, v)| (k.clone(), param_json(v))).collect(),
                status: report.status,
                expected: &report.expected,
                computed: &report.computed,
                mismatches: &report.mismatches,
                facts: report.facts.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect(),
                metrics: bench.then(|| report.metrics.iter().map(|(k, v)| (k.clone(), Value::from(*v))).collect()),
                elapsed_ms: (elapsed_ms * 1e3).round() / 1e3,
            };
            serde_json::to_string(&record).expect("record serializes")
        }
        Format::Text => {
            let status = if report.is_pass() { "PASS" } else { "FAIL" };
            let params: Vec<String> = report.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let mut line = format!(
                "{status:<4}  {:<12} {:<28} expected={:<w$} computed={:<w$} {elapsed_ms:>10.2}ms",
                report.check,
                params.join(" "),
                shorten(&report.expected),
                shorten(&report.computed),
                w = TEXT_VALUE_WIDTH,
            );
            if bench {
                for (k, v) in &report.metrics {
                    line.push_str(&format!(" {k}={v}"));
                }
            }
            let failed_facts: Vec<&str> =
                report.facts.iter().filter(|(_, holds)| !holds).map(|(k, _)| k.as_str()).collect();
            if !failed_facts.is_empty() {
                line.push_str(&format!(" (false: {})", failed_facts.join(", ")));
            }
            if !report.is_pass() {
                for m in &report.mismatches {
                    line.push_str(&format!(
                        "\n      at {}:\n        expected: {}\n        computed: {}",
                        m.monomial, m.expected, m.computed
                    ));
                }
            }
            line
        }
    }
}
