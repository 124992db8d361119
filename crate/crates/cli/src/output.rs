use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use subcount::verify::{Verdict, VerificationReport};

pub const SCHEMA_VERSION: u32 = 1;

/// Witnesses shown per report in human output.
const HUMAN_WITNESS_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// Top-level JSON document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub command: String,
    pub worst_verdict: Verdict,
    pub reports: Vec<VerificationReport>,
}

impl Envelope {
    pub fn new(command: &str, reports: Vec<VerificationReport>) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            worst_verdict: Verdict::worst(reports.iter().map(|r| r.verdict)),
            reports,
        }
    }
}

/// Output of one subcommand: the reports, plus optional human-readable lines
/// that replace the generic rendering.
pub struct Outcome {
    pub envelope: Envelope,
    pub human: Option<Vec<String>>,
}

impl Outcome {
    pub fn reports(command: &str, reports: Vec<VerificationReport>) -> Self {
        Outcome {
            envelope: Envelope::new(command, reports),
            human: None,
        }
    }

    pub fn with_human(mut self, lines: Vec<String>) -> Self {
        self.human = Some(lines);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.envelope.worst_verdict.exit_code()
    }
}

/// Compact rendering of a JSON value, with certified enclosures shown by
/// their display string.
pub fn compact(value: &Value) -> String {
    match value {
        Value::Object(map) => {
            if let (Some(Value::String(d)), true) = (map.get("display"), map.contains_key("lo")) {
                return d.clone();
            }
            let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}: {}", compact(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(compact).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn human_report(r: &VerificationReport, out: &mut Vec<String>) {
    out.push(format!("{:<14} {} {}", r.verdict.label(), r.statement_id, compact(&r.inputs)));
    for w in r.witnesses.iter().take(HUMAN_WITNESS_LIMIT) {
        out.push(format!("    {}", compact(w)));
    }
    if r.witnesses.len() > HUMAN_WITNESS_LIMIT {
        out.push(format!("    ... {} more witnesses", r.witnesses.len() - HUMAN_WITNESS_LIMIT));
    }
    for n in &r.notes {
        out.push(format!("    note: {n}"));
    }
}

pub fn render(outcome: &Outcome, format: Format, sink: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *sink, &outcome.envelope)?;
            writeln!(sink)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(["statement_id", "verdict", "precision_used", "inputs", "witness"])?;
            for r in &outcome.envelope.reports {
                let witness = r.witnesses.first().map(|w| w.to_string()).unwrap_or_default();
                w.write_record([
                    r.statement_id.as_str(),
                    serde_json::to_value(r.verdict).unwrap_or_default().as_str().unwrap_or(""),
                    &r.precision_used.0.to_string(),
                    &r.inputs.to_string(),
                    &witness,
                ])?;
            }
            w.flush()
        }
        Format::Human => {
            let lines = match &outcome.human {
                Some(lines) => lines.clone(),
                None => {
                    let mut lines = Vec::new();
                    for r in &outcome.envelope.reports {
                        human_report(r, &mut lines);
                    }
                    lines.push(format!("overall: {}", outcome.envelope.worst_verdict.label()));
                    lines
                }
            };
            for l in lines {
                writeln!(sink, "{l}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn compact_uses_display() {
        let v = json!({ "x": { "lo": "1", "hi": "2", "level": 0, "display": "[1, 2]" }, "n": [1, 2] });
        assert_eq!(compact(&v), "{n: [1, 2], x: [1, 2]}");
    }
}
