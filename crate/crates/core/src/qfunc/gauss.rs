use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::is_prime;
use crate::{Error, Result};

/// A Gaussian binomial coefficient together with its arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianBinomial {
    pub m: u32,
    pub r: u32,
    pub p: u64,
    pub value: BigUint,
}

/// Memoized table of `[m choose r]_p` for one prime, filled row by row with
/// `[m+1, r] = [m, r] p^r + [m, r-1]`.
#[derive(Clone, Debug)]
pub struct GaussianTable {
    p: u64,
    powers: Vec<BigUint>,
    rows: Vec<Vec<BigUint>>,
}

impl GaussianTable {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(GaussianTable {
            p,
            powers: vec![BigUint::one()],
            rows: vec![vec![BigUint::one()]],
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn power(&mut self, r: usize) -> BigUint {
        while self.powers.len() <= r {
            let next = self.powers.last().expect("seeded") * self.p;
            self.powers.push(next);
        }
        self.powers[r].clone()
    }

    /// `[m choose r]_p`; zero when `r > m`.
    pub fn get(&mut self, m: u32, r: u32) -> BigUint {
        if r > m {
            return BigUint::zero();
        }
        let m = m as usize;
        while self.rows.len() <= m {
            let prev = self.rows.last().expect("seeded").clone();
            let n = prev.len();
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::one());
            for r in 1..n {
                let term = &prev[r] * self.power(r) + &prev[r - 1];
                row.push(term);
            }
            row.push(BigUint::one());
            self.rows.push(row);
        }
        self.rows[m][r as usize].clone()
    }

    /// `sum_{k=0}^{a} [a choose k]_p`.
    pub fn row_sum(&mut self, a: u32) -> BigUint {
        (0..=a).map(|k| self.get(a, k)).sum()
    }
}

/// `[m choose r]_p` by the recurrence. Zero when `r > m`; rejects non-prime `p`.
pub fn gauss_binom(m: u32, r: u32, p: u64) -> Result<BigUint> {
    Ok(GaussianTable::new(p)?.get(m, r))
}

/// `[m choose r]_p` by the product formula
/// `prod_{i=0}^{r-1} (p^(m-i) - 1) / (p^(i+1) - 1)`.
pub fn gauss_binom_product(m: u32, r: u32, p: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r > m {
        return Ok(BigUint::zero());
    }
    let base = BigUint::from(p);
    let mut numer = BigUint::one();
    let mut denom = BigUint::one();
    for i in 0..r {
        numer *= num_traits::pow(base.clone(), (m - i) as usize) - 1u32;
        denom *= num_traits::pow(base.clone(), (i + 1) as usize) - 1u32;
    }
    debug_assert!((&numer % &denom).is_zero());
    Ok(numer / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(gauss_binom(5, 0, 7).unwrap(), BigUint::one());
        assert_eq!(gauss_binom(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(gauss_binom(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(gauss_binom(3, 1, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(gauss_binom(2, 3, 2).unwrap(), BigUint::zero());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(gauss_binom(3, 1, 4), Err(Error::NotPrime(4)));
        assert_eq!(gauss_binom_product(3, 1, 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn recurrence_step_matches() {
        let mut t = GaussianTable::new(2).unwrap();
        // [3,1]_2 = [2,1]_2 * 2 + [2,0]_2
        assert_eq!(t.get(3, 1), t.get(2, 1) * 2u32 + t.get(2, 0));
        assert_eq!(t.row_sum(3), BigUint::from(16u32));
    }
}
