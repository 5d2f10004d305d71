//! Exact rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coeff(BigRational);

impl Coeff {
    pub fn zero() -> Self {
        Coeff(BigRational::zero())
    }

    pub fn one() -> Self {
        Coeff(BigRational::one())
    }

    /// `num / den`. Panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        Coeff(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Coeff(self.0.recip()))
        }
    }

    /// The value as an `i128` when it is an integer that fits.
    pub fn to_i128(&self) -> Option<i128> {
        if self.is_integer() {
            self.0.numer().to_i128()
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<i32> for Coeff {
    fn from(v: i32) -> Self {
        Coeff::from(v as i64)
    }
}

impl From<u128> for Coeff {
    fn from(v: u128) -> Self {
        Coeff(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<BigInt> for Coeff {
    fn from(v: BigInt) -> Self {
        Coeff(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Coeff {
    fn from(v: BigRational) -> Self {
        Coeff(v)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coeff {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("invalid coefficient {s:?}: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err(format!("invalid coefficient {s:?}: zero denominator"));
                }
                Ok(Coeff(BigRational::new(parse(n)?, d)))
            }
            None => Ok(Coeff(BigRational::from_integer(parse(s)?))),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Coeff> for &Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                Coeff((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                Coeff(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                Coeff(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(-self.0)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_positive_denominator() {
        let c = Coeff::ratio(6, -4);
        assert_eq!(c.numer(), &BigInt::from(-3));
        assert_eq!(c.denom(), &BigInt::from(2));
        assert_eq!(c.to_string(), "-3/2");
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "-7", "1/2", "-5/3", "123456789012345678901234567890"] {
            let c: Coeff = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("1/0".parse::<Coeff>().is_err());
        assert!("x".parse::<Coeff>().is_err());
    }

    #[test]
    fn integrality() {
        assert!(Coeff::from(4).is_integer());
        assert!(!Coeff::ratio(1, 2).is_integer());
        assert_eq!((Coeff::ratio(1, 2) + Coeff::ratio(1, 2)).to_i128(), Some(1));
    }
}
