//! Exact arithmetic: rationals, univariate polynomials and rational functions,
//! the quadratic tower `Q(√2)(√(31+22√2))`, Sturm root counting and certified
//! sign determination.
//!
//! Every number that reaches a verdict flows through one of the [`Scalar`]
//! implementations here; nothing is decided in floating point.

mod interval;
mod poly;
mod ratfunc;
mod scalar;
mod sturm;
mod tower;

pub use interval::{cos_sq_pi_over, pi_enclosure, RationalInterval};
pub use poly::{Poly, Polynomial};
pub use ratfunc::RationalFunction;
pub use scalar::{ExactScalar, Field, OrderedField, Scalar, Sign};
pub use sturm::{
    nonvanishing_on, poly_positive_on, poly_positive_on_half_open, sturm_root_count,
    sturm_sequence, Endpoint, SignCertificate, DEFAULT_REFINEMENT_BUDGET,
};
pub use tower::{QuadSqrt2, TowerElement};

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("the zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
    #[error("window endpoint {0} is a root; perturb it rationally")]
    EndpointIsRoot(String),
    #[error("pole: denominator vanishes at {0}")]
    Pole(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("undecided after {0} refinements")]
    Undecided(u32),
    #[error("empty window: lo must be below hi")]
    EmptyWindow,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d == BigInt::from(0) {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Parses a decimal literal such as `0.0421` exactly.
pub fn parse_decimal(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches('-'), frac);
        let mut n: BigInt = digits.parse().map_err(|_| ExactError::Parse {
            what: "decimal",
            input: s.to_string(),
        })?;
        if neg {
            n = -n;
        }
        Ok(Rational::new(
            n,
            num_traits::pow(BigInt::from(10), frac.len()),
        ))
    } else {
        parse_rational(s)
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}
