use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::GaussianTable;
use crate::exact::{decide_leq, is_prime, ratio, root_enclosure, CertifiedReal, Comparison, Level};
use crate::verify::{Verdict, VerificationReport};
use crate::{Error, Result};

/// Scale factor relating `c(p)` to `C(p)`.
pub fn c_scale() -> BigRational {
    ratio(2129, 1000)
}

/// Certified enclosure of `C(p) = prod_{i >= 1} 1 / (1 - p^-i)`.
///
/// The product is truncated after `N` factors. The finite product is a lower
/// bound; the tail is at most `1 + 4 p^-N` because `1/(1-x) <= 1 + 2x` for
/// `x <= 1/2` and `prod (1 + 2 p^-i) <= 1 / (1 - 2 p^-N / (p - 1))`.
pub fn cap_c(p: u64, level: Level) -> Result<CertifiedReal> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut acc: Option<CertifiedReal> = None;
    for k in 0..=level.0 {
        let next = cap_c_truncated(p, Level(k));
        acc = Some(match acc {
            None => next,
            Some(prev) => prev.intersect(&next).expect("nested truncations overlap"),
        });
    }
    Ok(acc.expect("at least level zero"))
}

fn cap_c_truncated(p: u64, level: Level) -> CertifiedReal {
    let bits = level.working_bits();
    let log2p = 63 - u64::from(p.leading_zeros());
    let terms = ((bits + 2) / log2p + 1).max(2);
    let base = BigInt::from(p);
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    let mut pi = BigInt::one();
    for _ in 0..terms {
        pi *= &base;
        numer *= &pi;
        denom *= &pi - 1;
    }
    let finite = BigRational::new(numer, denom);
    let tail = BigRational::one() + BigRational::new(BigInt::from(4), pi);
    let upper = &finite * tail;
    CertifiedReal::new(finite, upper, level)
        .expect("tail factor exceeds one")
        .rounded(level)
}

/// Certified enclosure of `c(p) = 2.129 C(p)`.
pub fn small_c(p: u64, level: Level) -> Result<CertifiedReal> {
    let big = cap_c(p, level)?;
    Ok((&CertifiedReal::exact(c_scale()) * &big).rounded(level))
}

/// Upper bound on the number of subgroups of a group of order `p^a`, and on
/// the number of overgroups of a subgroup of index `p^a` in a `p`-group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupCeiling {
    pub p: u64,
    pub a: u32,
    pub value: CertifiedReal,
}

impl SubgroupCeiling {
    pub fn is_exact(&self) -> bool {
        self.value.is_exact()
    }
}

/// Exact value of the polynomial cases `a <= 5`.
pub fn sub_ceiling_exact(p: u64, a: u32) -> Option<BigUint> {
    let p = BigUint::from(p);
    let pw = |k: u32| num_traits::pow(p.clone(), k as usize);
    let v = match a {
        0 => BigUint::one(),
        1 => BigUint::from(2u32),
        2 => &p + 3u32,
        3 => pw(2) * 2u32 + &p * 2u32 + 4u32,
        4 => pw(4) + pw(3) * 3u32 + pw(2) * 4u32 + &p * 3u32 + 5u32,
        5 => pw(6) * 2u32 + pw(5) * 2u32 + pw(4) * 6u32 + pw(3) * 6u32 + pw(2) * 6u32 + &p * 4u32 + 6u32,
        _ => return None,
    };
    Some(v)
}

/// `S(p, a)`: exact for `a <= 5`, `c(p) p^(a^2/4)` for `a >= 6`.
///
/// For odd `a` the power is split as `p^floor(a^2/4) * p^(1/4)` with the
/// fourth root enclosed by integer root extraction.
pub fn sub_ceiling(p: u64, a: u32, level: Level) -> Result<SubgroupCeiling> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let value = match sub_ceiling_exact(p, a) {
        Some(v) => CertifiedReal::from(&v),
        None => {
            let sq = u64::from(a) * u64::from(a);
            let whole = num_traits::pow(BigUint::from(p), (sq / 4) as usize);
            let mut power = CertifiedReal::from(&whole);
            if sq % 4 != 0 {
                power = &power * &root_enclosure(&BigUint::from(p), 4, level);
            }
            (&small_c(p, level)? * &power).rounded(level)
        }
    };
    Ok(SubgroupCeiling { p, a, value })
}

/// Certifies `sum_{k=0}^{a} [a choose k]_p <= S(p, a)`.
pub fn sum_gauss_le_ceiling(p: u64, a: u32, max_level: Level) -> Result<VerificationReport> {
    let mut table = GaussianTable::new(p)?;
    let sum = table.row_sum(a);
    let lhs = CertifiedReal::from(&sum);
    let decision = decide_leq(|_| Ok(lhs.clone()), |k| sub_ceiling(p, a, k).map(|s| s.value), max_level)?;
    let inputs = json!({ "p": p, "a": a });
    let witness = json!({
        "gaussian_sum": sum.to_string(),
        "ceiling": decision.right,
        "equality": decision.right.is_exact() && decision.right.lo() == lhs.lo(),
    });
    let verdict = match decision.outcome {
        Comparison::Leq => Verdict::Verified,
        Comparison::Greater => Verdict::CounterexampleFound,
        Comparison::Undecided => Verdict::Undecided,
    };
    Ok(VerificationReport::new("sum_gauss_le_ceiling", inputs)
        .with_witness(witness)
        .finish(verdict, decision.level))
}
