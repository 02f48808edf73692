use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactError, Field, Rational, Scalar};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

/// Polynomials in `t` over the rationals.
pub type Polynomial = Poly<Rational>;

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: F) -> Self {
        Poly::new(vec![-r, F::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::constant(F::one());
        for _ in 0..e {
            out = out * self;
        }
        out
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_int(k as i64))
                .collect(),
        )
    }

    /// Coefficient-wise image in another ring.
    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Human-readable form in the given variable name.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let cs = c.to_string();
            parts.push(if mono.is_empty() {
                cs
            } else if *c == F::one() {
                mono
            } else if *c == -F::one() {
                format!("-{mono}")
            } else {
                format!("({cs}){mono}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ExactError> {
        let dl = d.leading().ok_or(ExactError::DivisionByZero)?;
        let dl_inv = dl.inv().ok_or(ExactError::DivisionByZero)?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].clone() * &dl_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = r[idx].clone() - c.clone() * dc;
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn monic(&self) -> Self {
        match self.leading().and_then(Field::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).expect("gcd is nonzero").0
    }

    /// Multiplicity of `r` as a root, and the cofactor with the root removed.
    pub fn deflate(&self, r: &F) -> (u32, Self) {
        let lin = Poly::linear_root(r.clone());
        let mut cur = self.clone();
        let mut mult = 0;
        while !cur.is_zero() && cur.eval(r).is_zero() {
            cur = cur.div_rem(&lin).expect("linear divisor").0;
            mult += 1;
        }
        (mult, cur)
    }
}

impl Polynomial {
    /// Evaluates a rational polynomial at a point of any ring containing the rationals.
    pub fn eval_at<G: Scalar>(&self, x: &G) -> G {
        self.coeffs
            .iter()
            .rev()
            .fold(G::zero(), |acc, c| acc * x + G::from_rational(c))
    }
}

impl<F: Scalar> Scalar for Poly<F>
where
    F: Field,
{
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(F::from_rational(q))
    }
    fn exact_div(&self, den: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(den).ok()?;
        r.is_zero().then_some(q)
    }
}

fn add_coeffs<F: Scalar>(a: &[F], b: &[F], negate_b: bool) -> Vec<F> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(F::zero);
            match b.get(k) {
                Some(y) if negate_b => x - y,
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

fn mul_coeffs<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y;
        }
    }
    out
}

impl<F: Scalar> Add<&Poly<F>> for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::new(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl<F: Scalar> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        self + &rhs
    }
}

impl<F: Scalar> Sub<&Poly<F>> for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::new(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl<F: Scalar> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        self - &rhs
    }
}

impl<F: Scalar> Mul<&Poly<F>> for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::new(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl<F: Scalar> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        self * &rhs
    }
}

impl<F: Scalar> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

/// Serialization: coefficient array, low to high, e.g. `[-2,0,1]`.
impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl<F: Scalar> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{self}")
    }
}

impl std::str::FromStr for Polynomial {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| ExactError::Parse {
                what: "polynomial",
                input: s.to_string(),
            })?;
        if inner.trim().is_empty() {
            return Ok(Poly::zero());
        }
        let cs = inner
            .split(',')
            .map(super::parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(cs))
    }
}
