use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{int, ExactError, Rational};

/// Closed rational interval `[lo, hi]`, `lo ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        if lo > hi {
            return Err(ExactError::EmptyWindow);
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(q: Rational) -> Self {
        RationalInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// True when `self` lies in the open interval `(lo, hi)`.
    pub fn inside_open(&self, lo: &Rational, hi: &Rational) -> bool {
        lo < &self.lo && &self.hi < hi
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            super::rational_to_f64(&self.lo),
            super::rational_to_f64(&self.hi),
        )
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for RationalInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RationalInterval", 2)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(q: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    let n = (q.numer() * &scale).div_floor(q.denom());
    Rational::new(n, scale)
}

fn round_up(q: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    let n = (q.numer() * &scale).div_ceil(q.denom());
    Rational::new(n, scale)
}

/// Bracketing partial sums of `arctan(1/n)`.
fn arctan_inv(n: i64, bits: u32) -> (Rational, Rational) {
    let n = int(n);
    let n2 = &n * &n;
    let eps = Rational::new(BigInt::one(), pow2(bits + 8));
    let mut power = n.clone(); // n^(2k+1)
    let mut sum = Rational::zero();
    let mut k = 0i64;
    loop {
        let term = Rational::one() / (int(2 * k + 1) * &power);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &n2;
        let next = Rational::one() / (int(2 * k + 3) * &power);
        if next < eps {
            // alternating with decreasing terms: the limit lies between sum and sum ∓ next
            let other = if k % 2 == 0 {
                &sum - &next
            } else {
                &sum + &next
            };
            let (lo, hi) = if other < sum {
                (other, sum)
            } else {
                (sum, other)
            };
            return (lo, hi);
        }
        k += 1;
    }
}

/// Certified enclosure of π of width about `2^-bits` (Machin's formula with
/// alternating-series error bounds, rounded outward to dyadics).
pub fn pi_enclosure(bits: u32) -> RationalInterval {
    let (a5_lo, a5_hi) = arctan_inv(5, bits);
    let (a239_lo, a239_hi) = arctan_inv(239, bits);
    let lo = int(16) * a5_lo - int(4) * a239_hi;
    let hi = int(16) * a5_hi - int(4) * a239_lo;
    RationalInterval::new(round_down(&lo, bits), round_up(&hi, bits)).expect("ordered bounds")
}

/// Taylor enclosure of `cos x` for rational `x` with the Lagrange bound
/// `|R_n| ≤ |x|^(2n+2)/(2n+2)!`.
fn cos_enclosure(x: &Rational, bits: u32) -> (Rational, Rational) {
    let x2 = x * x;
    let eps = Rational::new(BigInt::one(), pow2(bits + 8));
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut k: i64 = 0;
    loop {
        let next = -(&term * &x2) / int((2 * k + 1) * (2 * k + 2));
        if next.abs() < eps {
            let r = next.abs();
            return (round_down(&(&sum - &r), bits), round_up(&(&sum + &r), bits));
        }
        sum += &next;
        term = next;
        k += 1;
    }
}

/// Certified enclosure of `cos²(π/p)` for `p ≥ 2`, width about `2^-bits`.
pub fn cos_sq_pi_over(p: u32, bits: u32) -> RationalInterval {
    assert!(p >= 2, "cos²(π/p) needs p ≥ 2");
    let pi = pi_enclosure(bits + 4);
    // 2π/p ∈ (0, π], where cos is decreasing
    let x_lo = int(2) * pi.lo() / int(p as i64);
    let x_hi = int(2) * pi.hi() / int(p as i64);
    let (c_lo, _) = cos_enclosure(&x_hi, bits + 4);
    let (_, c_hi) = cos_enclosure(&x_lo, bits + 4);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let lo = (Rational::one() + c_lo) * &half;
    let hi = (Rational::one() + c_hi) * &half;
    RationalInterval::new(round_down(&lo, bits), round_up(&hi, bits)).expect("ordered bounds")
}
