use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ExactError, Rational, RationalFunction, TowerElement};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(q: &Rational) -> Sign {
        if Zero::is_zero(q) {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// Exact commutative ring element with owned and by-reference arithmetic.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&super::int(n))
    }

    /// `self / den` when the quotient exists in the ring.
    fn exact_div(&self, den: &Self) -> Option<Self>;
}

pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;

    fn div(&self, den: &Self) -> Result<Self, ExactError> {
        den.inv()
            .map(|d| self.clone() * d)
            .ok_or(ExactError::DivisionByZero)
    }
}

/// A field with a decidable total order.
pub trait OrderedField: Field {
    fn sign(&self) -> Sign;

    /// Display-only approximation.
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn exact_div(&self, den: &Self) -> Option<Self> {
        if Zero::is_zero(den) {
            None
        } else {
            Some(self / den)
        }
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl OrderedField for Rational {
    fn sign(&self) -> Sign {
        Sign::of_rational(self)
    }
    fn to_f64(&self) -> f64 {
        super::rational_to_f64(self)
    }
}

/// The number kinds that can appear in matrix files and reports.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactScalar {
    Rational(Rational),
    Tower(TowerElement),
    Function(RationalFunction),
}

impl ExactScalar {
    pub fn domain_tag(&self) -> &'static str {
        match self {
            ExactScalar::Rational(_) => "rational",
            ExactScalar::Tower(_) => "tower",
            ExactScalar::Function(_) => "function-of-t",
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(q) => write!(f, "{q}"),
            ExactScalar::Tower(x) => write!(f, "{x}"),
            ExactScalar::Function(r) => write!(f, "{r}"),
        }
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        ExactScalar::Rational(q)
    }
}

impl From<TowerElement> for ExactScalar {
    fn from(x: TowerElement) -> Self {
        ExactScalar::Tower(x)
    }
}

impl From<RationalFunction> for ExactScalar {
    fn from(r: RationalFunction) -> Self {
        ExactScalar::Function(r)
    }
}
