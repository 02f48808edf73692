use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::{int, ExactError, Field, OrderedField, Rational, RationalInterval, Scalar, Sign};

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QuadSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QuadSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadSqrt2 { a, b }
    }

    pub fn sqrt2() -> Self {
        QuadSqrt2::new(int(0), int(1))
    }

    /// Norm down to Q: `a² − 2b²`.
    fn norm(&self) -> Rational {
        &self.a * &self.a - int(2) * &self.b * &self.b
    }

    fn conj(&self) -> Self {
        QuadSqrt2::new(self.a.clone(), -self.b.clone())
    }

    pub fn sign(&self) -> Sign {
        let sa = Sign::of_rational(&self.a);
        let sb = Sign::of_rational(&self.b);
        match (sa, sb) {
            (s, Sign::Zero) | (Sign::Zero, s) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² against 2b²
            (x, _) => x.times(Sign::of_rational(&self.norm())),
        }
    }
}

impl fmt::Display for QuadSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt2", self.a, self.b)
    }
}

impl Add<&QuadSqrt2> for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn add(self, o: &QuadSqrt2) -> QuadSqrt2 {
        QuadSqrt2::new(self.a + &o.a, self.b + &o.b)
    }
}

impl Sub<&QuadSqrt2> for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn sub(self, o: &QuadSqrt2) -> QuadSqrt2 {
        QuadSqrt2::new(self.a - &o.a, self.b - &o.b)
    }
}

impl Mul<&QuadSqrt2> for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn mul(self, o: &QuadSqrt2) -> QuadSqrt2 {
        let a = &self.a * &o.a + int(2) * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadSqrt2::new(a, b)
    }
}

impl Neg for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn neg(self) -> QuadSqrt2 {
        QuadSqrt2::new(-self.a, -self.b)
    }
}

impl Add for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn add(self, o: QuadSqrt2) -> QuadSqrt2 {
        self + &o
    }
}

impl Sub for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn sub(self, o: QuadSqrt2) -> QuadSqrt2 {
        self - &o
    }
}

impl Mul for QuadSqrt2 {
    type Output = QuadSqrt2;
    fn mul(self, o: QuadSqrt2) -> QuadSqrt2 {
        self * &o
    }
}

impl Scalar for QuadSqrt2 {
    fn zero() -> Self {
        QuadSqrt2::default()
    }
    fn one() -> Self {
        QuadSqrt2::new(int(1), int(0))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        QuadSqrt2::new(q.clone(), int(0))
    }
    fn exact_div(&self, den: &Self) -> Option<Self> {
        den.inv().map(|d| self.clone() * d)
    }
}

impl Field for QuadSqrt2 {
    fn inv(&self) -> Option<Self> {
        // √2 is irrational, so the norm vanishes only at zero.
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadSqrt2::new(c.a / &n, c.b / &n))
    }
}

/// Second-level radicand `D = 31 + 22√2`.
fn radicand() -> QuadSqrt2 {
    QuadSqrt2::new(int(31), int(22))
}

/// Element `x + y√D` of `Q(√2)(√D)`, `D = 31 + 22√2`.
///
/// Serialized as the rational coordinates in the basis `(1, √2, √D, √2·√D)`.
/// `D` is not a square in `Q(√2)`: `(u + v√2)² = D` forces `u⁴ − 31u² + 242 = 0`,
/// which has no real solution, so this is a field.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TowerElement {
    pub x: QuadSqrt2,
    pub y: QuadSqrt2,
}

impl TowerElement {
    pub fn new(x: QuadSqrt2, y: QuadSqrt2) -> Self {
        TowerElement { x, y }
    }

    /// From the four basis coordinates `(1, √2, √D, √2√D)`.
    pub fn from_coords(c: [Rational; 4]) -> Self {
        let [c0, c1, c2, c3] = c;
        TowerElement::new(QuadSqrt2::new(c0, c1), QuadSqrt2::new(c2, c3))
    }

    pub fn coords(&self) -> [Rational; 4] {
        [
            self.x.a.clone(),
            self.x.b.clone(),
            self.y.a.clone(),
            self.y.b.clone(),
        ]
    }

    pub fn sqrt2() -> Self {
        TowerElement::new(QuadSqrt2::sqrt2(), QuadSqrt2::zero())
    }

    /// `√D = √(31 + 22√2)`.
    pub fn sqrt_radicand() -> Self {
        TowerElement::new(QuadSqrt2::zero(), QuadSqrt2::one())
    }

    /// 0 for rationals, 1 for elements of `Q(√2)`, 2 otherwise.
    pub fn level(&self) -> u8 {
        if !self.y.is_zero() {
            2
        } else if !self.x.b.is_zero() {
            1
        } else {
            0
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.level() == 0).then(|| self.x.a.clone())
    }

    fn norm(&self) -> QuadSqrt2 {
        self.x.clone() * &self.x - self.y.clone() * &self.y * radicand()
    }

    /// Exact sign by radical elimination.
    ///
    /// With `x, y ∈ Q(√2)` and `√D > 0`: if `x` and `y√D` share a sign (or one
    /// vanishes) that is the answer; otherwise the sign is `sign(x)·sign(x² − y²D)`.
    pub fn tower_sign(&self) -> Sign {
        let sx = self.x.sign();
        let sy = self.y.sign();
        match (sx, sy) {
            (s, Sign::Zero) | (Sign::Zero, s) => s,
            (a, b) if a == b => a,
            (a, _) => a.times(self.norm().sign()),
        }
    }

    /// Rational interval of width at most `width` strictly containing `self`
    /// (degenerate when `self` is rational).
    pub fn enclose(&self, width: &Rational) -> RationalInterval {
        assert!(
            Sign::of_rational(width) == Sign::Positive,
            "enclosure width must be positive"
        );
        if let Some(q) = self.as_rational() {
            return RationalInterval::point(q);
        }
        // |√2| < 2, |√D| < 8, |√2√D| < 12
        let c = self.coords();
        let bound: Rational =
            c[0].abs() + int(2) * c[1].abs() + int(8) * c[2].abs() + int(12) * c[3].abs() + int(1);
        let mut lo = -bound.clone();
        let mut hi = bound;
        let two = int(2);
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / &two;
            match (self.clone() - TowerElement::from_rational(&mid)).tower_sign() {
                Sign::Positive => lo = mid,
                Sign::Negative => hi = mid,
                Sign::Zero => unreachable!("irrational element equals a rational"),
            }
        }
        RationalInterval::new(lo, hi).expect("bisection keeps lo < hi")
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coords();
        let s2 = std::f64::consts::SQRT_2;
        let sd = (31.0 + 22.0 * s2).sqrt();
        super::rational_to_f64(&c[0])
            + super::rational_to_f64(&c[1]) * s2
            + super::rational_to_f64(&c[2]) * sd
            + super::rational_to_f64(&c[3]) * s2 * sd
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coords();
        write!(f, "({a},{b},{c},{d})")
    }
}

impl std::str::FromStr for TowerElement {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExactError::Parse {
            what: "tower element",
            input: s.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let parts = inner
            .split(',')
            .map(super::parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        let c: [Rational; 4] = parts.try_into().map_err(|_| err())?;
        Ok(TowerElement::from_coords(c))
    }
}

impl Add<&TowerElement> for TowerElement {
    type Output = TowerElement;
    fn add(self, o: &TowerElement) -> TowerElement {
        TowerElement::new(self.x + &o.x, self.y + &o.y)
    }
}

impl Sub<&TowerElement> for TowerElement {
    type Output = TowerElement;
    fn sub(self, o: &TowerElement) -> TowerElement {
        TowerElement::new(self.x - &o.x, self.y - &o.y)
    }
}

impl Mul<&TowerElement> for TowerElement {
    type Output = TowerElement;
    fn mul(self, o: &TowerElement) -> TowerElement {
        let x = self.x.clone() * &o.x + self.y.clone() * &o.y * radicand();
        let y = self.x * &o.y + self.y * &o.x;
        TowerElement::new(x, y)
    }
}

impl Add for TowerElement {
    type Output = TowerElement;
    fn add(self, o: TowerElement) -> TowerElement {
        self + &o
    }
}

impl Sub for TowerElement {
    type Output = TowerElement;
    fn sub(self, o: TowerElement) -> TowerElement {
        self - &o
    }
}

impl Mul for TowerElement {
    type Output = TowerElement;
    fn mul(self, o: TowerElement) -> TowerElement {
        self * &o
    }
}

impl Neg for TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        TowerElement::new(-self.x, -self.y)
    }
}

impl Scalar for TowerElement {
    fn zero() -> Self {
        TowerElement::default()
    }
    fn one() -> Self {
        TowerElement::new(QuadSqrt2::one(), QuadSqrt2::zero())
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        TowerElement::new(QuadSqrt2::from_rational(q), QuadSqrt2::zero())
    }
    fn exact_div(&self, den: &Self) -> Option<Self> {
        den.inv().map(|d| self.clone() * d)
    }
}

impl Field for TowerElement {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let n_inv = n.inv()?;
        Some(TowerElement::new(
            self.x.clone() * &n_inv,
            -(self.y.clone() * &n_inv),
        ))
    }
}

impl OrderedField for TowerElement {
    fn sign(&self) -> Sign {
        self.tower_sign()
    }
    fn to_f64(&self) -> f64 {
        TowerElement::to_f64(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn sqrt_radicand_squares_to_radicand() {
        let s = TowerElement::sqrt_radicand();
        let d = s.clone() * &s;
        assert_eq!(d.coords(), [int(31), int(22), int(0), int(0)]);
        assert_eq!(s.level(), 2);
    }

    #[test]
    fn inverse_roundtrip() {
        let x = TowerElement::from_coords([rat(1, 2), int(-3), int(2), rat(5, 7)]);
        let y = x.inv().unwrap();
        assert_eq!(x * y, TowerElement::one());
    }

    #[test]
    fn sign_of_close_cancellation() {
        // 140/99 < √2 < 99/70
        let lo = TowerElement::sqrt2() - TowerElement::from_rational(&rat(140, 99));
        let hi = TowerElement::sqrt2() - TowerElement::from_rational(&rat(99, 70));
        assert_eq!(lo.tower_sign(), Sign::Positive);
        assert_eq!(hi.tower_sign(), Sign::Negative);
        assert_eq!(TowerElement::zero().tower_sign(), Sign::Zero);
    }

    #[test]
    fn enclose_sqrt2() {
        let iv = TowerElement::sqrt2().enclose(&rat(1, 1000));
        assert!(iv.width() <= rat(1, 1000));
        assert!(iv.lo() < &rat(14143, 10000) && iv.hi() > &rat(14142, 10000));
        let tight = TowerElement::sqrt2().enclose(&rat(1, 100_000));
        assert!(tight.lo() > &rat(14142, 10000) && tight.hi() < &rat(14143, 10000));
    }

    #[test]
    fn parse_roundtrip() {
        let x: TowerElement = "(11/2, 9/2, -3/2, 0)".parse().unwrap();
        assert_eq!(x.to_string(), "(11/2,9/2,-3/2,0)");
    }
}
