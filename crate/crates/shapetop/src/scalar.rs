//! Exact rational coordinates.
//!
//! Every coordinate in this crate is a [`Scalar`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. There is no
//! floating point anywhere, so collinearity, overlap and embedding tests
//! are exact decisions rather than epsilon judgements.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact rational number: the coordinate type of the crate.
///
/// ```
/// use shapetop::Scalar;
///
/// let half = Scalar::new(1, 2);
/// let third = Scalar::new(2, 6); // reduced to 1/3
/// assert_eq!(third.to_string(), "1/3");
/// assert_eq!((&half + &third).to_string(), "5/6");
/// ```
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    /// Builds `numer / denom` in lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Scalar {
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// The rational zero.
    pub fn zero() -> Scalar {
        Scalar(BigRational::zero())
    }

    /// The rational one.
    pub fn one() -> Scalar {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Numerator in lowest terms; carries the sign.
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator in lowest terms; always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// True when the value is a whole number.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub(crate) fn from_ratio(r: BigRational) -> Scalar {
        Scalar(r)
    }

    pub(crate) fn ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Scalar {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
// Division panics on a zero divisor.
scalar_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl fmt::Display for Scalar {
    /// Integers print bare (`3`, `-7`); other values print as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    // Debug through Display keeps test diffs readable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from parsing a scalar out of text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    text: String,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational '{}'", self.text)
    }
}

impl std::error::Error for ParseScalarError {}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `p` or `p/q` with `q > 0`, e.g. `-3`, `5/2`.
    fn from_str(s: &str) -> Result<Scalar, ParseScalarError> {
        let err = || ParseScalarError { text: s.to_string() };
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().map_err(|_| err())?;
                Ok(Scalar(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let n: BigInt = p.parse().map_err(|_| err())?;
                let d: BigInt = q.parse().map_err(|_| err())?;
                if d <= BigInt::zero() {
                    return Err(err());
                }
                Ok(Scalar(BigRational::new(n, d)))
            }
        }
    }
}
