use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::table1::{published_rows, ExceptionKind};
use super::{Verdict, VerificationReport};
use crate::exact::{decide_leq, factorize_u64, is_prime, Comparison, Level};
use crate::qfunc::{bound_f, bound_main};
use crate::{Error, Result};

/// Cap on the number of failing cases echoed as witnesses.
const MAX_WITNESSES: usize = 32;

/// Outcome of certifying `f(rt) <= B(rt)` for one value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCase {
    pub rt: u64,
    pub outcome: Comparison,
    pub level: Level,
    /// `f(rt) / B(rt)` as a float, for reporting margins only.
    pub ratio: f64,
}

fn certify(rt: u64, max_level: Level) -> Result<SweepCase> {
    let n = factorize_u64(rt)?;
    let d = decide_leq(|l| bound_f(&n, l), |l| bound_main(rt, l), max_level)?;
    Ok(SweepCase {
        rt,
        outcome: d.outcome,
        level: d.level,
        ratio: d.left.approx() / d.right.approx(),
    })
}

#[derive(Clone, Debug, Default)]
struct Partial {
    cases: u64,
    failures: Vec<SweepCase>,
    undecided: Vec<SweepCase>,
    worst: Option<SweepCase>,
    level: Level,
}

impl Partial {
    fn absorb(&mut self, case: SweepCase) {
        self.cases += 1;
        self.level = self.level.max(case.level);
        match case.outcome {
            Comparison::Leq => {}
            Comparison::Greater => self.failures.push(case.clone()),
            Comparison::Undecided => self.undecided.push(case.clone()),
        }
        if self.worst.as_ref().is_none_or(|w| case.ratio > w.ratio) {
            self.worst = Some(case);
        }
    }

    /// Merges a later chunk; ties on the worst ratio keep the smaller `rt`.
    fn merge(mut self, other: Partial) -> Partial {
        self.cases += other.cases;
        self.level = self.level.max(other.level);
        self.failures.extend(other.failures);
        self.undecided.extend(other.undecided);
        if let Some(w) = other.worst {
            if self.worst.as_ref().is_none_or(|s| w.ratio > s.ratio) {
                self.worst = Some(w);
            }
        }
        self
    }
}

/// Certifies `f(rt) <= 7.3722 rt^(log2(rt)/4 + 1.8919)` for every value.
///
/// The values are cut into contiguous chunks, one batch per worker, and the
/// partial results are merged in input order so the report does not depend
/// on scheduling or on `workers`.
pub fn sweep_values(
    statement_id: &str,
    inputs: serde_json::Value,
    values: &[u64],
    workers: usize,
    max_level: Level,
) -> Result<VerificationReport> {
    if workers == 0 {
        return Err(Error::InvalidArgument("worker count must be at least 1".into()));
    }
    if values.contains(&0) {
        return Err(Error::NotPositive("0".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let chunk = values.len().div_ceil(workers * 4).max(1);
    let partials: Vec<Result<Partial>> = pool.install(|| {
        values
            .par_chunks(chunk)
            .map(|slice| {
                let mut part = Partial::default();
                for &rt in slice {
                    part.absorb(certify(rt, max_level)?);
                }
                Ok(part)
            })
            .collect()
    });
    let mut total = Partial::default();
    for part in partials {
        total = total.merge(part?);
    }

    let verdict = if !total.failures.is_empty() {
        Verdict::CounterexampleFound
    } else if !total.undecided.is_empty() {
        Verdict::Undecided
    } else {
        Verdict::Verified
    };
    let mut report = VerificationReport::new(statement_id, inputs)
        .with_witness(json!({ "cases": total.cases, "worst": total.worst }))
        .with_witnesses(total.failures.iter().take(MAX_WITNESSES).map(|c| json!(c)))
        .with_witnesses(total.undecided.iter().take(MAX_WITNESSES).map(|c| json!(c)));
    if total.failures.len() > MAX_WITNESSES {
        report = report.with_note(format!("{} counterexamples in total", total.failures.len()));
    }
    Ok(report.finish(verdict, total.level))
}

/// Sweeps every multiple of `p^c` up to `rt_max`.
pub fn sweep_prop34(p: u64, c: u32, rt_max: u64, workers: usize, max_level: Level) -> Result<VerificationReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if c == 0 {
        return Err(Error::InvalidArgument("c must be at least 1".into()));
    }
    let pc = p
        .checked_pow(c)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{c}")))?;
    let values: Vec<u64> = (1..=rt_max / pc).map(|m| m * pc).collect();
    sweep_values(
        "sweep",
        json!({ "p": p, "c": c, "rt_max": rt_max, "multiples": values.len() }),
        &values,
        workers,
        max_level,
    )
}

/// A finite range to sweep: every multiple of `p^c` up to `rt_max`, or an
/// explicit value list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepTarget {
    Multiples { p: u64, c: u32, rt_max: u64 },
    Values { p: u64, c_min: u32, values: Vec<u64> },
}

/// The finite rows of the published exception table, as sweep targets.
pub fn finite_rows() -> Vec<SweepTarget> {
    published_rows()
        .into_iter()
        .filter_map(|row| match row.kind {
            ExceptionKind::Threshold { max_rt } => Some(SweepTarget::Multiples {
                p: row.p,
                c: row.c,
                rt_max: max_rt,
            }),
            ExceptionKind::FiniteSet { values } => Some(SweepTarget::Values {
                p: row.p,
                c_min: row.c,
                values,
            }),
            ExceptionKind::Any => None,
        })
        .collect()
}

/// Runs one sweep target.
pub fn sweep_target(target: &SweepTarget, workers: usize, max_level: Level) -> Result<VerificationReport> {
    match target {
        SweepTarget::Multiples { p, c, rt_max } => sweep_prop34(*p, *c, *rt_max, workers, max_level),
        SweepTarget::Values { p, c_min, values } => sweep_values(
            "sweep",
            json!({ "p": p, "c_min": c_min, "values": values }),
            values,
            workers,
            max_level,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_row_verifies() {
        let r = sweep_prop34(23, 1, 184, 2, Level(4)).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.witnesses[0]["cases"], 8);
        let one = sweep_prop34(23, 1, 23, 1, Level(4)).unwrap();
        assert_eq!(one.witnesses[0]["cases"], 1);
    }

    #[test]
    fn worker_count_does_not_change_report() {
        let a = sweep_prop34(7, 2, 294 * 4, 1, Level(4)).unwrap();
        let b = sweep_prop34(7, 2, 294 * 4, 3, Level(4)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn finite_rows_listed() {
        let rows = finite_rows();
        assert_eq!(rows.len(), 8);
        assert!(rows.contains(&SweepTarget::Multiples {
            p: 5,
            c: 2,
            rt_max: 407_850
        }));
    }
}
