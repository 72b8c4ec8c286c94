//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ground-field element: an arbitrary-precision rational, always stored
/// reduced with positive denominator.
pub type Scalar = BigRational;

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn from_int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn from_frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Renders as `p` or `p/q`, reduced.
pub fn to_string(s: &Scalar) -> String {
    s.to_string()
}

/// Integer value of an integer-valued scalar.
pub fn as_integer(s: &Scalar) -> Option<BigInt> {
    if s.denom().is_one() {
        Some(s.numer().clone())
    } else {
        None
    }
}

pub fn is_nonnegative_integer(s: &Scalar) -> bool {
    s.denom().is_one() && !s.numer().is_negative()
}

/// The value as a machine-size dimension, when it is one.
pub fn as_nonnegative_integer(s: &Scalar) -> Option<usize> {
    if is_nonnegative_integer(s) {
        usize::try_from(s.numer()).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let s = from_frac(4, -6);
        assert_eq!(to_string(&s), "-2/3");
        assert_eq!(to_string(&from_frac(6, 3)), "2");
    }

    #[test]
    fn integer_detection() {
        assert_eq!(as_integer(&from_frac(6, 3)), Some(BigInt::from(2)));
        assert_eq!(as_integer(&from_frac(1, 2)), None);
        assert!(is_nonnegative_integer(&zero()));
        assert!(!is_nonnegative_integer(&from_int(-1)));
    }
}
