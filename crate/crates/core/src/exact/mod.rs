//! Exact scalars, combinatorial primitives and dense polynomials over ℚ.

mod complex;
pub mod matrix;
mod poly;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use complex::ComplexPoint;
pub use poly::{Degree, Polynomial};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `num / den`, reduced.
///
/// Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: u64) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient `C(a, b)`; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> Rational {
    if b > a {
        return Rational::zero();
    }
    let b = b.min(a - b);
    // each partial product C(a-b+i, i) is an integer, so the division is exact
    let mut acc = BigInt::one();
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    Rational::from_integer(acc)
}

/// Rising factorial `(c)_k = c (c+1) ... (c+k-1)`, with `(c)_0 = 1`.
pub fn pochhammer(c: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = c.clone();
    for _ in 0..k {
        if acc.is_zero() {
            break;
        }
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Bits of quotient kept before the final rounding to `f64`.
const WORKING_BITS: u64 = 130;

/// Converts a rational to the nearest `f64`.
///
/// The quotient is formed with at least 128 significant bits and a sticky bit
/// for any discarded remainder, then rounded once, so the result is correctly
/// rounded except in the subnormal range. Values beyond `f64::MAX` come back
/// as infinities.
pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num: BigUint = r.numer().magnitude().clone();
    let den: BigUint = r.denom().magnitude().clone();
    let shift = WORKING_BITS as i64 - (num.bits() as i64 - den.bits() as i64);
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num << shift as u64, den)
    } else {
        (num, den << (-shift) as u64)
    };
    let quotient = &scaled_num / &scaled_den;
    let inexact = !(&scaled_num % &scaled_den).is_zero();

    let bits = quotient.bits();
    let drop = bits.saturating_sub(64);
    let top = &quotient >> drop;
    let sticky = inexact || (&top << drop) != quotient;
    let mut mantissa = top.to_u64().unwrap_or(u64::MAX);
    if sticky {
        // 64 > 53 + 2, so or-ing into the lowest bit only breaks ties
        mantissa |= 1;
    }
    let exponent = drop as i64 - shift;
    let exponent = exponent.clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    let magnitude = libm::ldexp(mantissa as f64, exponent);
    if r.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(7, 0), int(1));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(3, 2), int(3));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(binomial(30, 15), int(155_117_520));
    }

    #[test]
    fn binomial_pascal_rule() {
        for a in 1..25u64 {
            for b in 1..=a {
                assert_eq!(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b));
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&frac(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(-3), 4), int(0));
        assert_eq!(pochhammer(&int(2), 3), int(24));
        assert_eq!(pochhammer(&frac(1, 2), 2), frac(3, 4));
        assert_eq!(pochhammer(&int(-2), 2), int(2));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(20), int(2_432_902_008_176_640_000));
    }

    #[test]
    fn float_conversion_is_correctly_rounded() {
        assert_eq!(to_f64(&int(0)), 0.0);
        assert_eq!(to_f64(&frac(1, 3)), 1.0 / 3.0);
        assert_eq!(to_f64(&frac(-2, 7)), -2.0 / 7.0);
        assert_eq!(to_f64(&frac(1, 10)), 0.1);
        assert_eq!(to_f64(&int(1 << 53)), 9_007_199_254_740_992.0);
        // 2^53 + 1 is a tie and rounds to even
        assert_eq!(to_f64(&int((1 << 53) + 1)), 9_007_199_254_740_992.0);
        // just above the tie rounds up
        let above = Rational::new(BigInt::from((1i64 << 54) + 3), BigInt::from(2));
        assert_eq!(to_f64(&above), 9_007_199_254_740_994.0);
        assert_eq!(to_f64(&factorial(20)), 2_432_902_008_176_640_000.0);
    }

    #[test]
    fn float_conversion_overflows_to_infinity() {
        let huge = Rational::from_integer(BigInt::one() << 2000u32);
        assert!(to_f64(&huge).is_infinite());
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 2000u32);
        assert_eq!(to_f64(&tiny), 0.0);
    }
}
