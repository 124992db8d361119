use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Verdict, VerificationReport};
use crate::exact::{factorize_u64, log2_enclosure, CertifiedReal, Level};
use crate::Result;

/// One observed overgroup count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeCase {
    pub label: String,
    /// `|sub(R, T)|`.
    pub subgroups: u64,
    /// `[R : T]`.
    pub index: u64,
}

/// Enclosure of `log(subgroups) / log(index) - lambda(index)`, where `lambda`
/// counts prime factors with multiplicity. `None` for index 1.
pub fn observed_exponent(case: &ProbeCase, level: Level) -> Result<Option<CertifiedReal>> {
    if case.index <= 1 {
        return Ok(None);
    }
    let lambda = factorize_u64(case.index)?.big_omega();
    let num = log2_enclosure(&BigInt::from(case.subgroups), level)?;
    let den = log2_enclosure(&BigInt::from(case.index), level)?;
    let ratio = num.checked_div(&den)?;
    Ok(Some((&ratio - &CertifiedReal::from(u64::from(lambda))).rounded(level)))
}

/// Tabulates the observed exponents and their maximum. Purely informational:
/// the verdict is `Verified` whenever the enclosures could be computed.
pub fn conjecture_probe(cases: &[ProbeCase], level: Level) -> Result<VerificationReport> {
    let mut witnesses = Vec::new();
    let mut max: Option<(String, CertifiedReal)> = None;
    let mut skipped = 0usize;
    for case in cases {
        let Some(e) = observed_exponent(case, level)? else {
            skipped += 1;
            continue;
        };
        witnesses.push(json!({
            "label": case.label,
            "subgroups": case.subgroups,
            "index": case.index,
            "observed_exponent": e,
        }));
        if max.as_ref().is_none_or(|(_, m)| e.approx() > m.approx()) {
            max = Some((case.label.clone(), e));
        }
    }
    let summary = json!({
        "cases": witnesses.len(),
        "skipped_index_one": skipped,
        "max": max.as_ref().map(|(label, e)| json!({ "label": label, "observed_exponent": e })),
    });
    Ok(VerificationReport::new("conjecture_probe", json!({ "cases": cases.len() }))
        .with_witness(summary)
        .with_witnesses(witnesses)
        .with_note("informational only; no bound is asserted")
        .finish(Verdict::Verified, level))
}
