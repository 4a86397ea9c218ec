//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Rational`]; nothing is ever rounded.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"` or `"num"`. Rejects zero denominators and non-canonical
/// spellings such as `"2/4"` or `"3/1"`.
pub fn parse_canonical(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, Some(d.parse::<BigInt>().ok()?)),
        None => (text.parse::<BigInt>().ok()?, None),
    };
    match den {
        None => Some(Rational::from_integer(num)),
        Some(d) => {
            if !d.is_positive() || d.is_one() {
                return None;
            }
            let value = Rational::new(num.clone(), d.clone());
            (value.numer() == &num && value.denom() == &d).then_some(value)
        }
    }
}

/// Canonical text form: `"num/den"`, with the denominator dropped when it is 1.
pub fn format(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Bit size used as the pivot weight in exact elimination.
pub fn bit_size(value: &Rational) -> u64 {
    value.numer().bits() + value.denom().bits()
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_parse_round_trip() {
        for text in ["0", "-3", "1/2", "-7/24", "123456789012345678901234567891/7"] {
            let value = parse_canonical(text).unwrap();
            assert_eq!(format(&value), text);
        }
    }

    #[test]
    fn rejects_non_canonical() {
        for text in ["2/4", "3/1", "1/0", "1/-2", "x", "", "1/2/3"] {
            assert!(parse_canonical(text).is_none(), "{text}");
        }
    }

    #[test]
    fn lowest_terms() {
        let r = rat(6, -4);
        assert_eq!(format(&r), "-3/2");
        assert_eq!(bit_size(&rat(1, 1)), 2);
    }
}
