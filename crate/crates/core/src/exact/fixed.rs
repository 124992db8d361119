//! Directed-rounding kernels on binary fixed-point integers.
//!
//! A fixed-point value `y` with `g` fractional bits represents `y / 2^g`.
//! Every routine here returns a rational that is a guaranteed lower (or upper)
//! bound of the real result; the outward rounding is done by hand with floor
//! and ceiling divisions on `BigInt`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Extra fractional bits carried by the kernels beyond the requested output.
const GUARD: u64 = 16;

/// Largest rational with at most `bits` significant binary digits that is `<= x`.
pub fn round_down(x: &BigRational, bits: u64) -> BigRational {
    if x.is_zero() {
        return x.clone();
    }
    if x.is_negative() {
        return -round_up(&-x, bits);
    }
    round_positive(x, bits, false)
}

/// Smallest rational with at most `bits` significant binary digits that is `>= x`.
pub fn round_up(x: &BigRational, bits: u64) -> BigRational {
    if x.is_zero() {
        return x.clone();
    }
    if x.is_negative() {
        return -round_down(&-x, bits);
    }
    round_positive(x, bits, true)
}

fn round_positive(x: &BigRational, bits: u64, up: bool) -> BigRational {
    let n = x.numer();
    let d = x.denom();
    if is_power_of_two(d) && n.bits() <= bits {
        return x.clone();
    }
    let e = n.bits() as i64 - d.bits() as i64;
    let shift = bits as i64 - e;
    if shift >= 0 {
        let scaled = n << shift as usize;
        let q = div_directed(&scaled, d, up);
        BigRational::new(q, BigInt::one() << shift as usize)
    } else {
        let q = div_directed(n, &(d << (-shift) as usize), up);
        BigRational::from_integer(q << (-shift) as usize)
    }
}

fn div_directed(n: &BigInt, d: &BigInt, up: bool) -> BigInt {
    if up {
        n.div_ceil(d)
    } else {
        n.div_floor(d)
    }
}

fn is_power_of_two(v: &BigInt) -> bool {
    v.sign() == Sign::Plus && v.magnitude().count_ones() == 1
}

/// `e` with `2^e <= x < 2^(e+1)` for positive `x`.
pub(crate) fn floor_log2(x: &BigRational) -> i64 {
    debug_assert!(x.is_positive());
    let n = x.numer();
    let d = x.denom();
    let e = n.bits() as i64 - d.bits() as i64;
    let at_least = if e >= 0 { *n >= (d << e as usize) } else { (n << (-e) as usize) >= *d };
    if at_least {
        e
    } else {
        e - 1
    }
}

/// Exact power of two `2^e` as a rational.
pub(crate) fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// If `x` is exactly `2^e`, returns `e`.
pub(crate) fn exact_log2(x: &BigRational) -> Option<i64> {
    let n = x.numer();
    let d = x.denom();
    if n.is_one() && is_power_of_two(d) {
        Some(-((d.bits() - 1) as i64))
    } else if d.is_one() && is_power_of_two(n) {
        Some((n.bits() - 1) as i64)
    } else {
        None
    }
}

/// Mantissa of positive `x / 2^e` as a `g`-bit fixed-point integer, rounded
/// down or up.
fn mantissa(x: &BigRational, e: i64, g: u64, up: bool) -> BigInt {
    let shift = g as i64 - e;
    if shift >= 0 {
        div_directed(&(x.numer() << shift as usize), x.denom(), up)
    } else {
        div_directed(x.numer(), &(x.denom() << (-shift) as usize), up)
    }
}

/// Lower bound of `log2(x)` for positive `x`, a multiple of `2^-frac_bits`.
///
/// Repeated squaring of the mantissa reads off binary digits of the
/// logarithm. Rounding every square down keeps each digit (and hence the sum)
/// a lower bound.
pub(crate) fn log2_lower(x: &BigRational, frac_bits: u64) -> BigRational {
    if let Some(e) = exact_log2(x) {
        return BigRational::from_integer(BigInt::from(e));
    }
    let e = floor_log2(x);
    let g = frac_bits + GUARD;
    let two = BigInt::one() << (g + 1) as usize;
    let mut y = mantissa(x, e, g, false);
    let mut digits = BigInt::zero();
    for _ in 0..frac_bits {
        let z = (&y * &y) >> g as usize;
        digits <<= 1;
        if z >= two {
            digits += 1;
            y = z >> 1;
        } else {
            y = z;
        }
    }
    BigRational::from_integer(BigInt::from(e)) + BigRational::new(digits, BigInt::one() << frac_bits as usize)
}

/// Upper bound of `log2(x)` for positive `x`, a multiple of `2^-frac_bits`.
pub(crate) fn log2_upper(x: &BigRational, frac_bits: u64) -> BigRational {
    if let Some(e) = exact_log2(x) {
        return BigRational::from_integer(BigInt::from(e));
    }
    let e = floor_log2(x);
    let g = frac_bits + GUARD;
    let unit = BigInt::one() << g as usize;
    let two = BigInt::one() << (g + 1) as usize;
    let mask = &unit - 1;
    let mut y = mantissa(x, e, g, true);
    let mut digits = BigInt::zero();
    for _ in 0..frac_bits {
        let z = (&y * &y + &mask) >> g as usize;
        digits <<= 1;
        if z >= two {
            digits += 1;
            y = (z + 1) >> 1;
        } else {
            y = z;
        }
    }
    // the untouched tail contributes at most 2^-frac_bits because y <= 2
    BigRational::from_integer(BigInt::from(e)) + BigRational::new(digits + 1, BigInt::one() << frac_bits as usize)
}

/// Lower (`up == false`) or upper bound of `2^q` for rational `q`.
///
/// The fractional part is truncated outward to `frac_bits` binary digits and
/// `2^f` is assembled as a product of the roots `2^(2^-j)`, each enclosed by
/// integer square roots with directed rounding.
pub(crate) fn exp2_bound(q: &BigRational, frac_bits: u64, up: bool) -> BigRational {
    let int_part = q.floor().to_integer();
    let frac = q - BigRational::from_integer(int_part.clone());
    let scaled = frac * BigRational::from_integer(BigInt::one() << frac_bits as usize);
    let mut digits = if up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
    let mut whole = int_part;
    if digits == (BigInt::one() << frac_bits as usize) {
        digits = BigInt::zero();
        whole += 1;
    }
    let whole: i64 = i64::try_from(&whole).expect("exponent of 2 out of i64 range");
    if digits.is_zero() {
        return pow2(whole);
    }
    let g = frac_bits + GUARD;
    let unit = BigInt::one() << g as usize;
    let mask = &unit - 1;
    let mut root = BigInt::from(2) << g as usize;
    let mut acc = unit.clone();
    let lowest = digits.trailing_zeros().unwrap_or(0);
    for j in 1..=frac_bits {
        root = sqrt_directed(&(&root << g as usize), up);
        if digits.bit(frac_bits - j) {
            acc = if up { (&acc * &root + &mask) >> g as usize } else { (&acc * &root) >> g as usize };
        }
        if frac_bits - j == lowest {
            break;
        }
    }
    BigRational::new(acc, unit) * pow2(whole)
}

fn sqrt_directed(v: &BigInt, up: bool) -> BigInt {
    let s = v.sqrt();
    if up && &s * &s != *v {
        s + 1
    } else {
        s
    }
}

/// Enclosure `[lo, hi]` of `x^(1/k)` with `hi - lo <= 2^-frac_bits`.
pub(crate) fn nth_root_bounds(x: &BigUint, k: u32, frac_bits: u64) -> (BigRational, BigRational) {
    let scaled = x << (u64::from(k) * frac_bits) as usize;
    let r = scaled.nth_root(k);
    let denom = BigInt::one() << frac_bits as usize;
    let exact = num_traits::pow(r.clone(), k as usize) == scaled;
    let lo = BigRational::new(BigInt::from(r.clone()), denom.clone());
    let hi = if exact { lo.clone() } else { BigRational::new(BigInt::from(r + 1u32), denom) };
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn rounding_is_directed_and_short() {
        let x = ratio(1, 3);
        let lo = round_down(&x, 10);
        let hi = round_up(&x, 10);
        assert!(lo <= x && x <= hi);
        assert!(lo.denom().bits() <= 13);
        assert_eq!(round_down(&ratio(-1, 3), 10), -hi.clone());
        let dyadic = ratio(5, 8);
        assert_eq!(round_down(&dyadic, 4), dyadic);
        let big = BigRational::from_integer(BigInt::from(1_000_003));
        let r = round_down(&big, 8);
        assert!(r <= big && r.is_integer());
        assert!(round_up(&big, 8) >= big);
    }

    #[test]
    fn floor_log2_brackets() {
        for (n, d, e) in [(1, 1, 0), (3, 1, 1), (4, 1, 2), (1, 3, -2), (1, 4, -2), (5, 4, 0)] {
            assert_eq!(floor_log2(&ratio(n, d)), e, "{n}/{d}");
        }
    }

    #[test]
    fn log2_of_three_brackets_reference() {
        // log2(3) = 1.5849625007211561814537389439478165...
        let x = ratio(3, 1);
        let lo = log2_lower(&x, 40);
        let hi = log2_upper(&x, 40);
        let reference = ratio(15849625007211562, 10_000_000_000_000_000);
        assert!(lo < reference && reference < hi);
        assert!(&hi - &lo <= BigRational::new(BigInt::from(2), BigInt::one() << 40));
    }

    #[test]
    fn exp2_of_half_is_sqrt2() {
        let half = ratio(1, 2);
        let lo = exp2_bound(&half, 40, false);
        let hi = exp2_bound(&half, 40, true);
        let two = ratio(2, 1);
        assert!(&lo * &lo <= two);
        assert!(&hi * &hi >= two);
        assert!(&hi - &lo < ratio(1, 1_000_000_000));
        assert_eq!(exp2_bound(&ratio(-3, 1), 40, false), ratio(1, 8));
    }

    #[test]
    fn nth_root_bounds_bracket() {
        let (lo, hi) = nth_root_bounds(&BigUint::from(3u32), 4, 30);
        let three = ratio(3, 1);
        assert!(num_traits::pow(lo.clone(), 4) <= three && num_traits::pow(hi.clone(), 4) >= three);
        let (lo, hi) = nth_root_bounds(&BigUint::from(16u32), 4, 30);
        assert_eq!(lo, ratio(2, 1));
        assert_eq!(hi, lo);
    }
}
