use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::fixed::{self, exp2_bound, log2_lower, log2_upper, nth_root_bounds};
use super::{format_directed, parse_rational, Level};
use crate::{Error, Result};

/// A closed interval `[lo, hi]` with exact rational endpoints that contains a
/// real number of interest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedReal {
    lo: BigRational,
    hi: BigRational,
    level: Level,
}

impl CertifiedReal {
    pub fn new(lo: BigRational, hi: BigRational, level: Level) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvertedEnclosure {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(CertifiedReal { lo, hi, level })
    }

    /// Degenerate enclosure of an exactly known value.
    pub fn exact(value: BigRational) -> Self {
        CertifiedReal {
            lo: value.clone(),
            hi: value,
            level: Level::ZERO,
        }
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self::exact(BigRational::from_integer(value.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &CertifiedReal) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Both enclosures contain the same value, so their intersection does too.
    pub fn intersect(&self, other: &CertifiedReal) -> Option<CertifiedReal> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then(|| CertifiedReal {
            lo,
            hi,
            level: self.level.max(other.level),
        })
    }

    pub fn with_level(mut self, level: Level) -> Self {
        self.level = self.level.max(level);
        self
    }

    /// Rounds both endpoints outward to the working precision of `level`,
    /// keeping rational sizes bounded in long computations.
    pub fn rounded(&self, level: Level) -> Self {
        let bits = level.working_bits();
        CertifiedReal {
            lo: fixed::round_down(&self.lo, bits),
            hi: fixed::round_up(&self.hi, bits),
            level: self.level.max(level),
        }
    }

    /// Midpoint as a float, for display and sorting only.
    pub fn approx(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn checked_div(&self, other: &CertifiedReal) -> Result<CertifiedReal> {
        if other.contains(&BigRational::zero()) {
            return Err(Error::DivisionByZero);
        }
        let recip = CertifiedReal {
            lo: other.hi.recip(),
            hi: other.lo.recip(),
            level: other.level,
        };
        Ok(self * &recip)
    }

    /// Non-negative integer power. Exact arithmetic, sign-aware.
    pub fn powi(&self, k: u32) -> CertifiedReal {
        let a = num_traits::pow(self.lo.clone(), k as usize);
        let b = num_traits::pow(self.hi.clone(), k as usize);
        let (mut lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if k.is_multiple_of(2) && self.contains(&BigRational::zero()) {
            lo = BigRational::zero();
        }
        CertifiedReal {
            lo,
            hi,
            level: self.level,
        }
    }

    /// Enclosure of `log2(x)` for every `x` in `self`.
    pub fn log2(&self, level: Level) -> Result<CertifiedReal> {
        if !self.lo.is_positive() {
            return Err(Error::NonPositiveLogarithm(self.lo.to_string()));
        }
        Ok(ladder(level, |k| CertifiedReal {
            lo: log2_lower(&self.lo, k.bits()),
            hi: log2_upper(&self.hi, k.bits()),
            level: k,
        })
        .with_level(self.level))
    }

    /// Enclosure of `2^x` for every `x` in `self`.
    pub fn exp2(&self, level: Level) -> CertifiedReal {
        ladder(level, |k| {
            let bits = k.working_bits();
            CertifiedReal {
                lo: fixed::round_down(&exp2_bound(&self.lo, bits, false), bits),
                hi: fixed::round_up(&exp2_bound(&self.hi, bits, true), bits),
                level: k,
            }
        })
        .with_level(self.level)
    }

    /// Enclosure of `self^exponent`; see [`pow_enclosure`].
    pub fn pow(&self, exponent: &CertifiedReal, level: Level) -> Result<CertifiedReal> {
        pow_enclosure(self, exponent, level)
    }

    pub(crate) fn display_with(&self, digits: usize) -> String {
        if self.is_exact() {
            format!("{} (exact)", format_directed(&self.lo, digits, false))
        } else {
            format!(
                "[{}, {}]",
                format_directed(&self.lo, digits, false),
                format_directed(&self.hi, digits, true)
            )
        }
    }
}

/// Runs `compute` at every level up to `level` and intersects the results, so
/// that refinement never widens an enclosure.
fn ladder(level: Level, compute: impl Fn(Level) -> CertifiedReal) -> CertifiedReal {
    let mut acc = compute(Level::ZERO);
    for k in 1..=level.0 {
        let next = compute(Level(k));
        acc = acc
            .intersect(&next)
            .expect("enclosures of the same value must overlap");
    }
    acc
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(10))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    lo: String,
    hi: String,
    level: Level,
    display: String,
}

impl Serialize for CertifiedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
            level: self.level,
            display: self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CertifiedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = Wire::deserialize(deserializer)?;
        let lo = parse_rational(&wire.lo).map_err(D::Error::custom)?;
        let hi = parse_rational(&wire.hi).map_err(D::Error::custom)?;
        CertifiedReal::new(lo, hi, wire.level).map_err(D::Error::custom)
    }
}

impl<'a> Add<&'a CertifiedReal> for &'a CertifiedReal {
    type Output = CertifiedReal;
    fn add(self, rhs: &CertifiedReal) -> CertifiedReal {
        CertifiedReal {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
            level: self.level.max(rhs.level),
        }
    }
}

impl<'a> Sub<&'a CertifiedReal> for &'a CertifiedReal {
    type Output = CertifiedReal;
    fn sub(self, rhs: &CertifiedReal) -> CertifiedReal {
        CertifiedReal {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
            level: self.level.max(rhs.level),
        }
    }
}

impl<'a> Mul<&'a CertifiedReal> for &'a CertifiedReal {
    type Output = CertifiedReal;
    fn mul(self, rhs: &CertifiedReal) -> CertifiedReal {
        let level = self.level.max(rhs.level);
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return CertifiedReal {
                lo: &self.lo * &rhs.lo,
                hi: &self.hi * &rhs.hi,
                level,
            };
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        CertifiedReal { lo, hi, level }
    }
}

impl Neg for &CertifiedReal {
    type Output = CertifiedReal;
    fn neg(self) -> CertifiedReal {
        CertifiedReal {
            lo: -&self.hi,
            hi: -&self.lo,
            level: self.level,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr<CertifiedReal> for CertifiedReal {
            type Output = CertifiedReal;
            fn $method(self, rhs: CertifiedReal) -> CertifiedReal {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CertifiedReal> for CertifiedReal {
            type Output = CertifiedReal;
            fn $method(self, rhs: &CertifiedReal) -> CertifiedReal {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for CertifiedReal {
    type Output = CertifiedReal;
    fn neg(self) -> CertifiedReal {
        -&self
    }
}

/// Enclosure of `log2(n)` for a positive integer `n`.
///
/// Degenerate (`[k, k]`) when `n = 2^k`; otherwise of width at most
/// `2^-(level.bits() - 1)`.
pub fn log2_enclosure(n: &BigInt, level: Level) -> Result<CertifiedReal> {
    if !n.is_positive() {
        return Err(Error::NotPositive(n.to_string()));
    }
    CertifiedReal::from_integer(n.clone()).log2(level)
}

/// Enclosure of `base^exponent` for a positive base.
///
/// Computed as `2^(exponent * log2(base))` with outward rounding. Exact
/// inputs with a non-negative integer exponent give an exact result.
pub fn pow_enclosure(base: &CertifiedReal, exponent: &CertifiedReal, level: Level) -> Result<CertifiedReal> {
    if !base.lo.is_positive() {
        return Err(Error::NonPositiveBase(base.lo.to_string()));
    }
    if exponent.is_exact() && exponent.lo.is_integer() && !exponent.lo.is_negative() {
        if let Some(k) = exponent.lo.to_integer().to_u32() {
            if base.is_exact() && k <= 4096 {
                return Ok(base.powi(k));
            }
        }
    }
    let log_base = base.log2(level)?;
    let product = (exponent * &log_base).rounded(level);
    Ok(product.exp2(level).with_level(base.level.max(exponent.level)))
}

/// Enclosure of the real `k`-th root of a non-negative integer.
pub fn root_enclosure(x: &BigUint, k: u32, level: Level) -> CertifiedReal {
    assert!(k >= 1, "root index must be positive");
    ladder(level, |lvl| {
        let (lo, hi) = nth_root_bounds(x, k, lvl.bits());
        CertifiedReal { lo, hi, level: lvl }
    })
}

impl Default for CertifiedReal {
    fn default() -> Self {
        CertifiedReal::exact(BigRational::zero())
    }
}

impl From<BigRational> for CertifiedReal {
    fn from(value: BigRational) -> Self {
        CertifiedReal::exact(value)
    }
}

impl From<u64> for CertifiedReal {
    fn from(value: u64) -> Self {
        CertifiedReal::from_integer(value)
    }
}

impl From<&BigUint> for CertifiedReal {
    fn from(value: &BigUint) -> Self {
        CertifiedReal::from_integer(BigInt::from(value.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn exact(n: i64, d: i64) -> CertifiedReal {
        CertifiedReal::exact(ratio(n, d))
    }

    #[test]
    fn rejects_inverted_endpoints() {
        assert!(CertifiedReal::new(ratio(2, 1), ratio(1, 1), Level::ZERO).is_err());
    }

    #[test]
    fn interval_arithmetic_signs() {
        let a = CertifiedReal::new(ratio(-1, 1), ratio(2, 1), Level::ZERO).unwrap();
        let b = CertifiedReal::new(ratio(-3, 1), ratio(1, 1), Level::ZERO).unwrap();
        let p = &a * &b;
        assert_eq!((p.lo().clone(), p.hi().clone()), (ratio(-6, 1), ratio(3, 1)));
        let s = &a - &b;
        assert_eq!((s.lo().clone(), s.hi().clone()), (ratio(-2, 1), ratio(5, 1)));
        assert_eq!(a.powi(2).lo(), &ratio(0, 1));
        assert!(a.checked_div(&b).is_err());
        let q = exact(1, 1).checked_div(&exact(4, 1)).unwrap();
        assert_eq!(q, exact(1, 4));
    }

    #[test]
    fn log2_of_power_of_two_is_exact() {
        let e = log2_enclosure(&BigInt::from(8), Level(3)).unwrap();
        assert_eq!(e, CertifiedReal::exact(ratio(3, 1)).with_level(Level(3)));
        assert!(log2_enclosure(&BigInt::from(0), Level::ZERO).is_err());
    }

    #[test]
    fn integer_and_half_powers() {
        let eight = pow_enclosure(&exact(2, 1), &exact(3, 1), Level::ZERO).unwrap();
        assert_eq!(eight.lo(), &ratio(8, 1));
        assert!(eight.is_exact());
        let root2 = pow_enclosure(&exact(2, 1), &exact(1, 2), Level::ZERO).unwrap();
        let two = ratio(2, 1);
        assert!(root2.lo() * root2.lo() <= two && root2.hi() * root2.hi() >= two);
        assert!(pow_enclosure(&exact(0, 1), &exact(1, 2), Level::ZERO).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let x = pow_enclosure(&exact(3, 1), &exact(1, 3), Level(1)).unwrap();
        let json = serde_json::to_string(&x).unwrap();
        let back: CertifiedReal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display_marks_exact_values() {
        assert_eq!(exact(73722, 10000).to_string(), "7.3722 (exact)");
        let x = CertifiedReal::new(ratio(1, 3), ratio(1, 2), Level::ZERO).unwrap();
        assert_eq!(x.to_string(), "[0.3333333333, 0.5]");
    }
}
