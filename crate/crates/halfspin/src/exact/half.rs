use core::fmt;
use core::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;

use super::{ratio, Rational};

/// An element of `(1/2)Z`, stored as twice its value so that integers and
/// strict half-integers share one exact representation.
///
/// The family `Q_m` is a polynomial, so it usually meets integer arguments;
/// half-integers appear when probing its cocycle property, where arguments
/// like `a + m` with `a + b + m + m' = -3/2` are forced off the integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: BigInt,
}

impl HalfInteger {
    /// The half-integer `twice / 2`.
    pub fn from_twice<T: Into<BigInt>>(twice: T) -> Self {
        HalfInteger {
            twice: twice.into(),
        }
    }

    /// Embeds an integer.
    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        HalfInteger {
            twice: n.into() * 2,
        }
    }

    /// Twice the value (always an integer).
    pub fn twice(&self) -> &BigInt {
        &self.twice
    }

    /// Whether the value lies in `Z` rather than `Z + 1/2`.
    pub fn is_integer(&self) -> bool {
        self.twice.is_even()
    }

    /// The exact rational value.
    pub fn to_rational(&self) -> Rational {
        ratio(self.twice.clone(), 2).expect("constant denominator 2")
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;

    fn add(self, rhs: HalfInteger) -> HalfInteger {
        HalfInteger {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Add<i64> for HalfInteger {
    type Output = HalfInteger;

    /// Integer shifts preserve the parity class.
    fn add(self, rhs: i64) -> HalfInteger {
        HalfInteger {
            twice: self.twice + 2 * rhs,
        }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", &self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl From<HalfInteger> for Rational {
    fn from(h: HalfInteger) -> Rational {
        h.to_rational()
    }
}

impl From<i64> for HalfInteger {
    fn from(n: i64) -> HalfInteger {
        HalfInteger::from_integer(n)
    }
}
