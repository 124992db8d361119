use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact::Level;

/// Certified outcome of one checked statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    CounterexampleFound,
    Mismatch,
    Undecided,
}

impl Verdict {
    /// Ordering used to pick the worst verdict of a run.
    pub fn severity(self) -> u8 {
        match self {
            Verdict::Verified => 0,
            Verdict::CounterexampleFound | Verdict::Mismatch => 1,
            Verdict::Undecided => 2,
        }
    }

    pub fn exit_code(self) -> i32 {
        i32::from(self.severity())
    }

    pub fn worst(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts
            .into_iter()
            .max_by_key(|v| v.severity())
            .unwrap_or(Verdict::Verified)
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::CounterexampleFound => "COUNTEREXAMPLE",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Structured outcome of a check. Failing verdicts always carry a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement_id: String,
    pub inputs: Value,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    pub precision_used: Level,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Report under construction; the verdict is fixed by [`ReportBuilder::finish`].
#[derive(Clone, Debug)]
pub struct ReportBuilder {
    statement_id: String,
    inputs: Value,
    witnesses: Vec<Value>,
    notes: Vec<String>,
}

impl VerificationReport {
    #[allow(clippy::new_ret_no_self)]
    pub fn new(statement_id: impl Into<String>, inputs: Value) -> ReportBuilder {
        ReportBuilder {
            statement_id: statement_id.into(),
            inputs,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    /// Checks the witness invariant; used by tests and after deserialization.
    pub fn is_well_formed(&self) -> bool {
        !matches!(self.verdict, Verdict::CounterexampleFound | Verdict::Mismatch) || !self.witnesses.is_empty()
    }
}

impl ReportBuilder {
    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witnesses.push(witness);
        self
    }

    pub fn with_witnesses(mut self, witnesses: impl IntoIterator<Item = Value>) -> Self {
        self.witnesses.extend(witnesses);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn finish(self, verdict: Verdict, precision_used: Level) -> VerificationReport {
        let report = VerificationReport {
            statement_id: self.statement_id,
            inputs: self.inputs,
            verdict,
            witnesses: self.witnesses,
            precision_used,
            notes: self.notes,
        };
        assert!(
            report.is_well_formed(),
            "{} report for {} has no witness",
            verdict,
            report.statement_id
        );
        report
    }
}
