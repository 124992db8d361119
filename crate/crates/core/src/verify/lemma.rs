use num_bigint::BigInt;
use serde_json::json;

use super::{Verdict, VerificationReport};
use crate::exact::{decide_leq, is_prime, log2_enclosure, ratio, CertifiedReal, Comparison, Decision, Level};
use crate::qfunc::{sub_ceiling, theorem_constant};
use crate::{Error, Result};

/// Enclosure of `p^(c * log2(rt) / 4)`, evaluated as `2^(c log2 p log2 rt / 4)`.
pub fn p_power_of_log(p: u64, c: u32, rt: u64, level: Level) -> Result<CertifiedReal> {
    let lp = log2_enclosure(&BigInt::from(p), level)?;
    let lr = log2_enclosure(&BigInt::from(rt), level)?;
    let scale = CertifiedReal::exact(ratio(i64::from(c), 4));
    let exponent = (&(&lp * &lr) * &scale).rounded(level);
    Ok(exponent.exp2(level))
}

pub(crate) fn validate_row_args(p: u64, c: u32, rt: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if c == 0 {
        return Err(Error::InvalidArgument("c must be at least 1".into()));
    }
    let pc = p
        .checked_pow(c)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{c}")))?;
    if rt == 0 || !rt.is_multiple_of(pc) {
        return Err(Error::InvalidArgument(format!("{rt} is not a positive multiple of {p}^{c}")));
    }
    Ok(pc)
}

fn lemma_decision(p: u64, c: u32, rt: u64, max_level: Level) -> Result<Decision> {
    let k = CertifiedReal::exact(theorem_constant());
    decide_leq(
        |l| sub_ceiling(p, c, l).map(|s| s.value),
        |l| Ok((&k * &p_power_of_log(p, c, rt, l)?).rounded(l)),
        max_level,
    )
}

fn verdict_of(outcome: Comparison) -> Verdict {
    match outcome {
        Comparison::Leq => Verdict::Verified,
        Comparison::Greater => Verdict::CounterexampleFound,
        Comparison::Undecided => Verdict::Undecided,
    }
}

/// Certifies `S(p, c) <= 7.3722 p^(c log2(rt) / 4)` at `rt` and at `rt = p^c`.
///
/// The right side increases with `rt`, so the check at `p^c` covers every
/// multiple. Both comparisons are reported.
pub fn check_lemma0(p: u64, c: u32, rt: u64, max_level: Level) -> Result<VerificationReport> {
    let pc = validate_row_args(p, c, rt)?;
    let at_rt = lemma_decision(p, c, rt, max_level)?;
    let at_base = if rt == pc { at_rt.clone() } else { lemma_decision(p, c, pc, max_level)? };
    let verdict = Verdict::worst([verdict_of(at_rt.outcome), verdict_of(at_base.outcome)]);
    let level = at_rt.level.max(at_base.level);
    Ok(VerificationReport::new("lemma0", json!({ "p": p, "c": c, "rt": rt }))
        .with_witness(json!({ "rt": rt, "outcome": at_rt.outcome, "lhs": at_rt.left, "rhs": at_rt.right }))
        .with_witness(json!({ "rt": pc, "outcome": at_base.outcome, "lhs": at_base.left, "rhs": at_base.right }))
        .with_note("the right side is increasing in rt, so rt = p^c is the extremal case")
        .finish(verdict, level))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows_hold() {
        for (p, c, rt) in [(2, 1, 2), (3, 2, 9), (2, 6, 64), (2, 6, 640), (5, 3, 250)] {
            let r = check_lemma0(p, c, rt, Level(8)).unwrap();
            assert_eq!(r.verdict, Verdict::Verified, "{p} {c} {rt}");
            assert_eq!(r.witnesses.len(), 2);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(check_lemma0(4, 1, 4, Level::ZERO).is_err());
        assert!(check_lemma0(3, 2, 6, Level::ZERO).is_err());
        assert!(check_lemma0(3, 0, 6, Level::ZERO).is_err());
    }

    #[test]
    fn power_of_log_at_p23() {
        // 23^(log2(184)/4) = 364.1337...
        let v = p_power_of_log(23, 1, 184, Level(1)).unwrap();
        assert!(v.lo() > &ratio(36413, 100) && v.hi() < &ratio(36414, 100));
    }
}
