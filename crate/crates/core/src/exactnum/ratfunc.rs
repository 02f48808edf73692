use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{
    nonvanishing_on, Endpoint, ExactError, Field, Polynomial, Rational, Scalar, Sign,
    SignCertificate,
};

/// Quotient of rational polynomials in `t`, kept with `gcd(num, den) = 1` and a
/// monic denominator so that equality is syntactic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Polynomial::zero()));
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g)?.0;
        let den = den.div_rem(&g)?.0;
        let lc = den.leading().expect("nonzero").clone();
        let lc_inv = Field::inv(&lc).expect("nonzero leading coefficient");
        Ok(RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::constant(super::int(1)),
        }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    /// Exact value at a point of any ring containing the rationals.
    pub fn eval<G: Field>(&self, at: &G) -> Result<G, ExactError> {
        let d = self.den.eval_at(at);
        if d.is_zero() {
            return Err(ExactError::Pole(at.to_string()));
        }
        self.num.eval_at(at).div(&d)
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative() * &self.den - self.num.clone() * &self.den.derivative();
        RationalFunction::new(n, self.den.clone() * &self.den).expect("nonzero denominator")
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Certifies that the function is defined and has one constant sign on
    /// `[lo, hi]`: numerator and denominator are each nonvanishing there.
    pub fn sign_on(
        &self,
        lo: &Endpoint,
        hi: &Rational,
        budget: u32,
    ) -> Result<(Sign, [SignCertificate; 2]), ExactError> {
        let n = nonvanishing_on(&self.num, lo, hi, budget)?;
        let d = nonvanishing_on(&self.den, lo, hi, budget)?;
        Ok((n.sign.times(d.sign), [n, d]))
    }

    pub fn pretty(&self) -> String {
        if self.den.degree() == Some(0) {
            self.num.pretty("t")
        } else {
            format!("({}) / ({})", self.num.pretty("t"), self.den.pretty("t"))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl std::str::FromStr for RationalFunction {
    type Err = ExactError;

    /// `[n0,n1,...]/[d0,d1,...]`, or a bare coefficient array for a polynomial.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.find("]/[") {
            Some(k) => {
                let num: Polynomial = s[..=k].parse()?;
                let den: Polynomial = s[k + 2..].parse()?;
                RationalFunction::new(num, den)
            }
            None => Ok(RationalFunction::from_poly(s.parse()?)),
        }
    }
}

impl Add<&RationalFunction> for RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::new(self.num + &o.num, self.den).expect("nonzero");
        }
        let num = self.num * &o.den + o.num.clone() * &self.den;
        RationalFunction::new(num, self.den * &o.den).expect("nonzero")
    }
}

impl Sub<&RationalFunction> for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o.clone())
    }
}

impl Mul<&RationalFunction> for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num * &o.num, self.den * &o.den).expect("nonzero")
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: RationalFunction) -> RationalFunction {
        self + &o
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: RationalFunction) -> RationalFunction {
        self - &o
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: RationalFunction) -> RationalFunction {
        self * &o
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        RationalFunction::from_poly(Polynomial::zero())
    }
    fn one() -> Self {
        RationalFunction::from_poly(Polynomial::constant(super::int(1)))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(q.clone()))
    }
    fn exact_div(&self, den: &Self) -> Option<Self> {
        den.inv().map(|d| self.clone() * d)
    }
}

impl Field for RationalFunction {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        RationalFunction::new(self.den.clone(), self.num.clone()).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn normalizes_on_construction() {
        // (2t - 2) / (4t^2 - 4) = (1/2) / (t + 1)
        let r = RationalFunction::new(
            Polynomial::from_ints(&[-2, 2]),
            Polynomial::from_ints(&[-4, 0, 4]),
        )
        .unwrap();
        assert_eq!(r.numer(), &Polynomial::new(vec![rat(1, 2)]));
        assert_eq!(r.denom(), &Polynomial::from_ints(&[1, 1]));
    }

    #[test]
    fn pole_is_reported() {
        let r = RationalFunction::t().inv().unwrap();
        assert!(matches!(r.eval(&int(0)), Err(ExactError::Pole(_))));
        assert_eq!(r.eval(&int(4)).unwrap(), rat(1, 4));
    }

    #[test]
    fn quotient_rule() {
        // d/dt (1/t) = -1/t^2
        let r = RationalFunction::t().inv().unwrap();
        let expected = -(RationalFunction::t().pow(2).inv().unwrap());
        assert_eq!(r.derivative(), expected);
    }

    #[test]
    fn parse_roundtrip() {
        let r: RationalFunction = "[1,2]/[0,1]".parse().unwrap();
        assert_eq!(r.to_string(), "[1,2]/[0,1]");
        let p: RationalFunction = "[3]".parse().unwrap();
        assert_eq!(p, RationalFunction::from_int(3));
    }
}
