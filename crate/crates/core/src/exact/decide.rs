use serde::{Deserialize, Serialize};

use super::{CertifiedReal, Level};
use crate::Result;

/// Outcome of a certified comparison `a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Certified `a <= b`.
    Leq,
    /// Certified `a > b`.
    Greater,
    /// The enclosures still overlapped at the escalation cap.
    Undecided,
}

/// A comparison outcome together with the enclosures that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub outcome: Comparison,
    pub level: Level,
    pub left: CertifiedReal,
    pub right: CertifiedReal,
}

impl Decision {
    pub fn holds(&self) -> bool {
        self.outcome == Comparison::Leq
    }

    pub fn fails(&self) -> bool {
        self.outcome == Comparison::Greater
    }
}

/// Decides `a <= b` where both sides can be re-evaluated at any precision
/// level. Levels follow [`Level::schedule`] up to `max_level`.
pub fn decide_leq<A, B>(a: A, b: B, max_level: Level) -> Result<Decision>
where
    A: Fn(Level) -> Result<CertifiedReal>,
    B: Fn(Level) -> Result<CertifiedReal>,
{
    let mut last = None;
    for level in Level::schedule(max_level) {
        let left = a(level)?;
        let right = b(level)?;
        let outcome = if left.hi() <= right.lo() {
            Comparison::Leq
        } else if left.lo() > right.hi() {
            Comparison::Greater
        } else {
            Comparison::Undecided
        };
        let decision = Decision {
            outcome,
            level,
            left,
            right,
        };
        if outcome != Comparison::Undecided {
            return Ok(decision);
        }
        last = Some(decision);
    }
    Ok(last.expect("schedule is never empty"))
}
