//! Exact integers, rationals and certified real enclosures.
//!
//! Every irrational quantity in the toolkit is carried as a [`CertifiedReal`]:
//! a closed interval with rational endpoints that provably contains the true
//! value. Enclosures are produced at a precision [`Level`]; level `k` aims for
//! a width of about `2^-(32 + 8k)` (relative, for values far from 1).
//! [`decide_leq`] compares two re-evaluable enclosures, escalating the level
//! until they separate or a cap is reached.

mod decide;
mod factor;
mod fixed;
mod real;

pub use decide::{decide_leq, Comparison, Decision};
pub use factor::{factorize, factorize_u64, is_prime, p_part, valuation, Factorization, PrimePower};
pub use fixed::{round_down, round_up};
pub use real::{log2_enclosure, pow_enclosure, root_enclosure, CertifiedReal};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Arbitrary-precision signed integer.
pub type BigInteger = BigInt;

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// A rung of the precision ladder.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Level(pub u32);

impl Level {
    pub const ZERO: Level = Level(0);
    /// Default escalation cap.
    pub const DEFAULT_CAP: Level = Level(16);

    /// Target width exponent: enclosures at this level aim for width `2^-bits`.
    pub fn bits(self) -> u64 {
        32 + 8 * u64::from(self.0)
    }

    /// Significant bits kept when rounding intermediate results outward.
    pub(crate) fn working_bits(self) -> u64 {
        self.bits() + 24
    }

    /// Next rung of the escalation schedule 0, 1, 2, 4, 8, 16, ...
    pub fn escalate(self) -> Level {
        Level(if self.0 == 0 { 1 } else { self.0 * 2 })
    }

    /// The levels visited by [`decide_leq`] when escalating up to `cap`.
    pub fn schedule(cap: Level) -> Vec<Level> {
        let mut out = vec![Level::ZERO];
        let mut cur = Level::ZERO;
        while cur < cap {
            cur = cur.escalate().min(cap);
            out.push(cur);
        }
        out
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `n / d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational written as an integer (`12`), a fraction (`-3/4`) or a
/// plain decimal (`1.8919`). Exponents and other float syntax are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    let s = text.trim();
    if s.is_empty() || s.len() > 1_000_000 {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = parse_integer(n.trim()).ok_or_else(bad)?;
        let d: BigInt = parse_integer(d.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Formats `x` with `digits` significant decimal digits, rounding toward
/// negative infinity (`up == false`) or positive infinity (`up == true`).
pub fn format_directed(x: &Rational, digits: usize, up: bool) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if x.is_negative() {
        let body = format_directed(&-x, digits, !up);
        return format!("-{body}");
    }
    let ten = BigInt::from(10);
    // decimal exponent e with 10^e <= x < 10^(e+1)
    let mut e = (x.numer().to_string().len() as i64) - (x.denom().to_string().len() as i64);
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > *x {
        e -= 1;
    }
    while pow10(e + 1) <= *x {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = x * pow10(shift);
    let mut q = scaled.floor().to_integer();
    if up && !scaled.is_integer() {
        q += 1;
    }
    let mut s = q.to_string();
    // rounding up may carry into a new digit
    let mut exp10 = e;
    if s.len() > digits {
        exp10 += 1;
        s.truncate(digits);
    }
    let mantissa = if s.len() > 1 {
        format!("{}.{}", &s[..1], s[1..].trim_end_matches('0'))
    } else {
        s.clone()
    };
    let mantissa = mantissa.trim_end_matches('.').to_string();
    if (-4..12).contains(&exp10) {
        // plain positional notation
        let point = exp10 + 1;
        let digits_str = s;
        let plain = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits_str)
        } else if point as usize >= digits_str.len() {
            format!("{}{}", digits_str, "0".repeat(point as usize - digits_str.len()))
        } else {
            format!("{}.{}", &digits_str[..point as usize], &digits_str[point as usize..])
        };
        if plain.contains('.') {
            plain.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            plain
        }
    } else {
        format!("{mantissa}e{exp10}")
    }
}
