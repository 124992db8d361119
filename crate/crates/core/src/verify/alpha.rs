use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Verdict, VerificationReport};
use crate::exact::{decide_leq, log2_enclosure, ratio, CertifiedReal, Comparison, Level, PrimePower};
use crate::qfunc::{alpha_constant, sub_ceiling};
use crate::Result;

/// Primes that can remain after the exceptional rows are set aside.
pub const ALPHA_PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaConfig {
    pub primes: Vec<PrimePower>,
    pub objective: CertifiedReal,
}

impl AlphaConfig {
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .primes
            .iter()
            .map(|f| if f.exponent == 1 { f.prime.to_string() } else { format!("{}^{}", f.prime, f.exponent) })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// All admissible configurations: nonempty subsets of [`ALPHA_PRIMES`], with
/// exponent 1, 2 or 3 on the prime 3 and exponent 1 elsewhere.
pub fn alpha_configurations() -> Vec<Vec<PrimePower>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << ALPHA_PRIMES.len()) {
        let has_three = mask & 1 == 1;
        for e3 in 1..=if has_three { 3 } else { 1 } {
            let config = ALPHA_PRIMES
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| PrimePower {
                    prime: p,
                    exponent: if p == 3 { e3 } else { 1 },
                })
                .collect();
            out.push(config);
        }
    }
    out
}

/// `n + sum log2 S(p, c) / sum c log2 p - sum c log2 p / 4` over a configuration of size `n`.
pub fn alpha_objective(config: &[PrimePower], level: Level) -> Result<CertifiedReal> {
    let mut log_s = CertifiedReal::from(0u64);
    let mut log_n = CertifiedReal::from(0u64);
    for f in config {
        log_s = &log_s + &sub_ceiling(f.prime, f.exponent, level)?.value.log2(level)?;
        let lp = log2_enclosure(&BigInt::from(f.prime), level)?;
        log_n = &log_n + &(&CertifiedReal::from(u64::from(f.exponent)) * &lp);
    }
    let size = CertifiedReal::from(config.len() as u64);
    let quarter = &log_n * &CertifiedReal::exact(ratio(1, 4));
    Ok((&(&size + &log_s.checked_div(&log_n)?) - &quarter).rounded(level))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaSearch {
    /// Every configuration, sorted by decreasing objective.
    pub configs: Vec<AlphaConfig>,
    pub report: VerificationReport,
}

impl AlphaSearch {
    pub fn best(&self) -> &AlphaConfig {
        &self.configs[0]
    }
}

/// Exhaustive search for the largest objective, certified against `threshold`.
///
/// Verified when every configuration is certified `<= threshold`, and the
/// maximizer is then certified to dominate all others.
pub fn alpha_optimum(threshold: &BigRational, max_level: Level) -> Result<AlphaSearch> {
    let limit = CertifiedReal::exact(threshold.clone());
    let mut configs = Vec::new();
    let mut above = Vec::new();
    let mut undecided = Vec::new();
    let mut level = Level::ZERO;
    for primes in alpha_configurations() {
        let d = decide_leq(|l| alpha_objective(&primes, l), |_| Ok(limit.clone()), max_level)?;
        level = level.max(d.level);
        let config = AlphaConfig {
            primes,
            objective: d.left,
        };
        match d.outcome {
            Comparison::Leq => {}
            Comparison::Greater => above.push(json!({ "config": config.label(), "objective": config.objective })),
            Comparison::Undecided => undecided.push(json!({ "config": config.label(), "objective": config.objective })),
        }
        configs.push(config);
    }
    configs.sort_by(|a, b| b.objective.approx().partial_cmp(&a.objective.approx()).unwrap_or(Ordering::Equal));

    let best = &configs[0];
    let dominated = configs[1..].iter().all(|c| c.objective.hi() <= best.objective.lo());
    let verdict = if !above.is_empty() {
        Verdict::CounterexampleFound
    } else if !undecided.is_empty() {
        Verdict::Undecided
    } else {
        Verdict::Verified
    };
    let mut report = VerificationReport::new("alpha", json!({ "threshold": threshold.to_string(), "configurations": configs.len() }))
        .with_witness(json!({
            "maximizer": best.label(),
            "primes": best.primes,
            "objective": best.objective,
            "runner_up": configs.get(1).map(|c| json!({ "config": c.label(), "objective": c.objective })),
            "strict_maximum": dominated,
        }))
        .with_witnesses(above)
        .with_witnesses(undecided);
    if !dominated {
        report = report.with_note("the maximizer's enclosure overlaps another configuration");
    }
    Ok(AlphaSearch {
        report: report.finish(verdict, level),
        configs,
    })
}

/// [`alpha_optimum`] at the published constant 1.8919.
pub fn alpha_default(max_level: Level) -> Result<AlphaSearch> {
    alpha_optimum(&alpha_constant(), max_level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configuration_count() {
        assert_eq!(alpha_configurations().len(), 127);
    }

    #[test]
    fn single_prime_objective() {
        // {17}: 1 + 1/log2(17) - log2(17)/4 = 0.22278...
        let v = alpha_objective(&[PrimePower { prime: 17, exponent: 1 }], Level(1)).unwrap();
        assert!(v.lo() > &ratio(22278, 100000) && v.hi() < &ratio(22279, 100000));
    }

    #[test]
    fn maximizer() {
        let s = alpha_default(Level(4)).unwrap();
        assert_eq!(s.report.verdict, Verdict::Verified);
        assert_eq!(s.best().label(), "{3,5,7,11,13}");
        assert!(s.best().objective.lo() >= &ratio(18917, 10000));
    }
}
