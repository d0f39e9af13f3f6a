//! Exact binomials and rational helpers for the admissibility probabilities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// `C(a, b)` with `C(a, 0) = 1` for every `a`, and zero when `b < 0`,
/// `b > a`, or `a < 0 < b`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b == 0 {
        return BigInt::one();
    }
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// `ceil(1 / p)` for `0 < p <= 1`.
pub fn reciprocal_ceil(p: &BigRational) -> u64 {
    assert!(p.numer() > &BigInt::zero(), "probability must be positive");
    let inv = p.recip();
    inv.ceil().to_integer().to_u64().expect("repetition count fits in u64")
}

pub fn to_f64(p: &BigRational) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 0), BigInt::one());
        assert_eq!(binomial(-1, 1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn ceil_of_reciprocal() {
        let p = BigRational::new(3.into(), 16.into());
        assert_eq!(reciprocal_ceil(&p), 6);
        assert_eq!(reciprocal_ceil(&BigRational::one()), 1);
    }
}
