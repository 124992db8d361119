mod common;

use num_traits::ToPrimitive;
use subcount::exact::{Comparison, Level};
use subcount::verify::{
    alpha_configurations, alpha_default, candidates_up_to, check_lemma0, exception_set_from, exception_threshold,
    is_exception, sweep_prop34, sweep_values, ExceptionKind, Verdict,
};

/// `S(p, c)` for `c <= 5` as the total number of subspaces of `F_p^c`.
fn ceiling_f64(p: u64, c: u32) -> f64 {
    (0..=c).map(|k| common::gauss_pascal(c, k, p).to_f64().unwrap()).sum()
}

/// `log2(rt S) - c log2(p) log2(rt) / 4`; positive exactly at exceptions.
fn exception_gap(p: u64, c: u32, rt: u64, s: f64) -> f64 {
    let lr = (rt as f64).log2();
    lr + s.log2() - f64::from(c) * (p as f64).log2() * lr / 4.0
}

/// Largest exception among candidates up to `limit` by a linear scan, and
/// whether the exceptions form an initial segment of the candidates.
fn scan(p: u64, c: u32, limit: u64, s: f64) -> (Option<u64>, bool) {
    let pc = p.pow(c);
    let mut last = None;
    let mut contiguous = true;
    let mut seen_non_exception = false;
    for rt in (pc..=limit).step_by(pc as usize).filter(|rt| !(rt / pc).is_multiple_of(p)) {
        let gap = exception_gap(p, c, rt, s);
        assert!(gap.abs() > 1e-9, "oracle too close to call at rt = {rt}");
        if gap > 0.0 {
            contiguous &= !seen_non_exception;
            last = Some(rt);
        } else {
            seen_non_exception = true;
        }
    }
    (last, contiguous)
}

#[test]
fn thresholds_match_linear_scan() {
    for (p, c, limit) in [(23u64, 1u32, 4000u64), (19, 1, 150_000), (7, 2, 5000), (5, 3, 5000), (3, 4, 40_000), (3, 5, 40_000)] {
        let (oracle, contiguous) = scan(p, c, limit, ceiling_f64(p, c));
        assert!(contiguous, "({p}, {c})");
        let search = exception_threshold(p, c, Level::DEFAULT_CAP).unwrap();
        assert!(!search.undecided);
        assert_eq!(search.max_rt(), oracle, "({p}, {c})");
    }
}

#[test]
fn large_threshold_row_matches_scan() {
    let (oracle, contiguous) = scan(5, 2, 900_000, ceiling_f64(5, 2));
    assert!(contiguous);
    assert_eq!(oracle, Some(407_850));
    assert_eq!(exception_threshold(5, 2, Level::DEFAULT_CAP).unwrap().max_rt(), oracle);
}

#[test]
fn small_prime_powers_are_always_exceptions() {
    for (p, c) in [(2u64, 1u32), (2, 4), (3, 2), (13, 1)] {
        let s = exception_threshold(p, c, Level(4)).unwrap();
        assert_eq!(s.row.kind, ExceptionKind::Any, "({p}, {c})");
        assert!(s.crossover.is_none() || p.pow(c) > 16);
    }
}

#[test]
fn tail_set_for_three_matches_scan() {
    let pent = |x: f64| {
        let mut sum = 1.0;
        for k in 1..40i32 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * (x.powi(k * (3 * k - 1) / 2) + x.powi(k * (3 * k + 1) / 2));
        }
        sum
    };
    let small_c = 2.129 / pent(1.0 / 3.0);
    let mut oracle = Vec::new();
    for c in 6..=12u32 {
        let s = small_c * 3f64.powf(f64::from(c * c) / 4.0);
        let pc = 3u64.pow(c);
        for rt in (pc..=100 * pc).step_by(pc as usize).filter(|rt| (rt / pc) % 3 != 0) {
            if exception_gap(3, c, rt, s) > 0.0 {
                oracle.push(rt);
            }
        }
    }
    oracle.sort_unstable();
    let tail = exception_set_from(3, 6, Level::DEFAULT_CAP).unwrap();
    assert_eq!(tail.values, oracle);
    assert_eq!(tail.values, vec![729, 1458, 2187, 2916]);
    assert!(tail.stop.is_some());
    assert!(exception_set_from(2, 6, Level(4)).unwrap().stop.is_none());
}

#[test]
fn single_point_decisions() {
    assert_eq!(is_exception(23, 1, 184, Level(8)).unwrap().outcome, Comparison::Greater);
    assert_eq!(is_exception(23, 1, 207, Level(8)).unwrap().outcome, Comparison::Leq);
    assert!(is_exception(23, 1, 24, Level(8)).is_err());
    assert!(is_exception(22, 1, 22, Level(8)).is_err());
    assert_eq!(candidates_up_to(3, 4, 500), vec![81, 162, 324, 405]);
}

#[test]
fn lemma_examples() {
    let r = check_lemma0(5, 2, 25, Level::DEFAULT_CAP).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert_eq!(r.witnesses.len(), 2);
    assert!(check_lemma0(5, 2, 30, Level(4)).is_err());
}

#[test]
fn sweeps_do_not_depend_on_worker_count() {
    let one = sweep_prop34(7, 2, 294, 1, Level::DEFAULT_CAP).unwrap();
    let many = sweep_prop34(7, 2, 294, 5, Level::DEFAULT_CAP).unwrap();
    assert_eq!(one, many);
    assert_eq!(one.verdict, Verdict::Verified);
    assert_eq!(one.witnesses[0]["cases"], 6);
    let values = [729u64, 1458, 2187, 2916];
    let a = sweep_values("sweep", serde_json::json!({}), &values, 1, Level(8)).unwrap();
    let b = sweep_values("sweep", serde_json::json!({}), &values, 3, Level(8)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.verdict, Verdict::Verified);
}

#[test]
fn sweep_ratio_matches_floats() {
    let r = sweep_prop34(23, 1, 184, 2, Level(4)).unwrap();
    assert_eq!(r.witnesses[0]["cases"], 8);
    let worst = &r.witnesses[0]["worst"];
    let rt = worst["rt"].as_u64().unwrap();
    let f = common::factor_pairs(rt);
    let ell = f.len() as i32;
    let mut fv = (rt as f64).powi(ell - 1);
    for (p, c) in f {
        fv *= ceiling_f64(p, c);
    }
    let l = (rt as f64).log2();
    let b = 7.3722 * (rt as f64).powf(l / 4.0 + 1.8919);
    assert!((worst["ratio"].as_f64().unwrap() / (fv / b) - 1.0).abs() < 1e-9);
}

#[test]
fn alpha_objectives_match_floats() {
    let search = alpha_default(Level(4)).unwrap();
    assert_eq!(search.configs.len(), alpha_configurations().len());
    for cfg in &search.configs {
        let mut log_s = 0.0;
        let mut log_n = 0.0;
        for pp in &cfg.primes {
            log_s += ceiling_f64(pp.prime, pp.exponent).log2();
            log_n += f64::from(pp.exponent) * (pp.prime as f64).log2();
        }
        let expected = cfg.primes.len() as f64 + log_s / log_n - log_n / 4.0;
        assert!((cfg.objective.approx() - expected).abs() < 1e-9, "{}", cfg.label());
    }
    let best = search.best();
    assert_eq!(best.label(), "{3,5,7,11,13}");
    assert!((best.objective.approx() - 1.891854).abs() < 1e-6);
}
