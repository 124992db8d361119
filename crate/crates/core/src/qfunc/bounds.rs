use num_bigint::BigInt;
use num_rational::BigRational;

use super::sub_ceiling;
use crate::exact::{log2_enclosure, ratio, CertifiedReal, Factorization, Level};
use crate::Result;

/// Multiplicative constant of the main bound, also the bound on `c(2)`.
pub fn theorem_constant() -> BigRational {
    ratio(73722, 10000)
}

/// Additive constant in the exponent of the main bound.
pub fn alpha_constant() -> BigRational {
    ratio(18919, 10000)
}

/// `f(n) = n^(l-1) * prod S(p_i, c_i)` over the factorization
/// `n = prod p_i^c_i` with `l` distinct primes. `f(1) = 1`.
pub fn bound_f(n: &Factorization, level: Level) -> Result<CertifiedReal> {
    if n.value() == 1 {
        return Ok(CertifiedReal::from(1u64));
    }
    let ell = n.distinct_primes() as u32;
    let mut acc = CertifiedReal::from_integer(num_traits::pow(BigInt::from(n.value()), (ell - 1) as usize));
    for f in n.factors() {
        let s = sub_ceiling(f.prime, f.exponent, level)?;
        acc = &acc * &s.value;
    }
    Ok(if acc.is_exact() { acc } else { acc.rounded(level) })
}

/// `7.3722 * n^(log2(n)/4 + 1.8919)`.
pub fn bound_main(n: u64, level: Level) -> Result<CertifiedReal> {
    let constant = CertifiedReal::exact(theorem_constant());
    if n == 1 {
        return Ok(constant);
    }
    let log_n = log2_enclosure(&BigInt::from(n), level)?;
    let exponent = &(&log_n * &CertifiedReal::exact(ratio(1, 4))) + &CertifiedReal::exact(alpha_constant());
    // n^e = 2^(e * log2 n)
    let log_value = (&exponent * &log_n).rounded(level);
    Ok((&constant * &log_value.exp2(level)).rounded(level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factorize_u64;

    fn f(n: u64) -> CertifiedReal {
        bound_f(&factorize_u64(n).unwrap(), Level::ZERO).unwrap()
    }

    #[test]
    fn bound_f_small_values() {
        assert_eq!(f(1), CertifiedReal::from(1u64));
        assert_eq!(f(6), CertifiedReal::from(24u64));
        assert_eq!(f(4), CertifiedReal::from(5u64));
        assert_eq!(f(12), CertifiedReal::from(120u64));
        assert!(!f(64).is_exact());
    }

    #[test]
    fn bound_main_values() {
        assert_eq!(bound_main(1, Level::ZERO).unwrap(), CertifiedReal::exact(theorem_constant()));
        // 7.3722 * 2^2.1419 = 32.5366...
        let two = bound_main(2, Level::ZERO).unwrap();
        assert!(two.lo() > &ratio(3253, 100) && two.hi() < &ratio(3254, 100));
        // 7.3722 * 8^2.6419 = 1792.54...
        let eight = bound_main(8, Level::ZERO).unwrap();
        assert!(eight.lo() > &ratio(1792, 1) && eight.hi() < &ratio(1793, 1));
    }
}
