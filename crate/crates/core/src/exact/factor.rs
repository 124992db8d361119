use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Values above this are not factorized by trial division.
const DESK_SCALE_LIMIT: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// A positive integer with its prime factorization, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    value: u64,
    factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    /// Number of prime divisors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|f| f.exponent).sum()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|f| f.prime == p)
            .map_or(0, |f| f.exponent)
    }

    /// Multiplies the factors back together.
    pub fn reassemble(&self) -> u64 {
        self.factors.iter().map(PrimePower::value).product()
    }
}

/// Factorizes a positive integer by trial division.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if !n.is_positive() {
        return Err(Error::NotPositive(n.to_string()));
    }
    match n.to_u64() {
        Some(v) if v <= DESK_SCALE_LIMIT => factorize_u64(v),
        _ => Err(Error::TooLarge(n.to_string())),
    }
}

pub fn factorize_u64(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NotPositive("0".into()));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let e = strip(rest, p);
        if e > 0 {
            factors.push(PrimePower { prime: p, exponent: e });
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut d = 5u64;
    while d.saturating_mul(d) <= rest {
        push(d, &mut rest);
        push(d + 2, &mut rest);
        d += 6;
    }
    if rest > 1 {
        factors.push(PrimePower { prime: rest, exponent: 1 });
    }
    Ok(Factorization { value: n, factors })
}

fn strip(n: &mut u64, p: u64) -> u32 {
    let mut e = 0;
    while (*n).is_multiple_of(p) {
        *n /= p;
        e += 1;
    }
    e
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Exponent of `p` in `n` (`n > 0`, `p > 1`).
pub fn valuation(n: u64, p: u64) -> u32 {
    assert!(n > 0 && p > 1);
    let mut rest = n;
    strip(&mut rest, p)
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(valuation(n, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(n: u64) -> Vec<(u64, u32)> {
        factorize_u64(n)
            .unwrap()
            .factors()
            .iter()
            .map(|f| (f.prime, f.exponent))
            .collect()
    }

    #[test]
    fn small_factorizations() {
        assert!(pairs(1).is_empty());
        assert_eq!(pairs(12), vec![(2, 2), (3, 1)]);
        assert_eq!(pairs(407_850), vec![(2, 1), (3, 1), (5, 2), (2719, 1)]);
        assert_eq!(pairs(49), vec![(7, 2)]);
        assert_eq!(pairs(35), vec![(5, 1), (7, 1)]);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(factorize(&BigInt::from(0)).is_err());
        assert!(factorize(&BigInt::from(-4)).is_err());
        let huge: BigInt = "100000000000000000000000".parse().unwrap();
        assert!(matches!(factorize(&huge), Err(Error::TooLarge(_))));
    }

    #[test]
    fn lambda_and_ell() {
        let f = factorize_u64(360).unwrap();
        assert_eq!(f.distinct_primes(), 3);
        assert_eq!(f.big_omega(), 6);
        assert_eq!(f.exponent_of(3), 2);
        assert_eq!(f.exponent_of(7), 0);
    }

    #[test]
    fn primality_and_valuation() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert_eq!(valuation(9477, 3), 6);
        assert_eq!(p_part(9396, 3), 81);
    }
}
