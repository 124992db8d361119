//! Certified checks of the counting statements: the lemma grid, the exception
//! table, the exhaustive sweeps over its finite rows, and the search for the
//! exponent constant.

mod alpha;
mod conjecture;
mod lemma;
mod report;
mod sweep;
mod table1;

pub use alpha::{alpha_configurations, alpha_default, alpha_objective, alpha_optimum, AlphaConfig, AlphaSearch, ALPHA_PRIMES};
pub use conjecture::{conjecture_probe, observed_exponent, ProbeCase};
pub use lemma::{check_lemma0, p_power_of_log};
pub use report::{ReportBuilder, Verdict, VerificationReport};
pub use sweep::{finite_rows, sweep_prop34, sweep_target, sweep_values, SweepCase, SweepTarget};
pub use table1::{
    candidates_up_to, check_table1, exception_set_from, exception_threshold, is_exception, published_rows, tail_is_clear,
    BoundaryPoint, ExceptionKind, ExceptionRow, TailSearch, ThresholdSearch, SCAN_PRIME_LIMIT,
};
