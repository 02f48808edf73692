use std::fmt;

use serde::Serialize;

use super::{
    int, ExactError, OrderedField, Polynomial, Rational, RationalInterval, Scalar, Sign,
    TowerElement,
};

/// Bisection budget before a sign question is reported undecided.
pub const DEFAULT_REFINEMENT_BUDGET: u32 = 64;

/// Left end of a certification window: a rational or an element of the tower.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    Rational(Rational),
    Tower(TowerElement),
}

impl Endpoint {
    fn sign_of(&self, p: &Polynomial) -> Sign {
        match self {
            Endpoint::Rational(q) => p.eval(q).sign(),
            Endpoint::Tower(x) => p.eval_at(x).tower_sign(),
        }
    }

    fn below(&self, hi: &Rational) -> bool {
        match self {
            Endpoint::Rational(q) => q < hi,
            Endpoint::Tower(x) => {
                (x.clone() - TowerElement::from_rational(hi)).tower_sign() == Sign::Negative
            }
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Rational(q) => write!(f, "{q}"),
            Endpoint::Tower(x) => write!(f, "{x}"),
        }
    }
}

impl From<Rational> for Endpoint {
    fn from(q: Rational) -> Self {
        Endpoint::Rational(q)
    }
}

impl From<TowerElement> for Endpoint {
    fn from(x: TowerElement) -> Self {
        Endpoint::Tower(x)
    }
}

/// Evidence that a polynomial keeps one sign on `[lo, hi]`.
///
/// `sign` is `Zero` when the polynomial does vanish somewhere in the window;
/// otherwise the exact endpoint signs agree and the Sturm count over the
/// rational `superinterval` is zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignCertificate {
    pub polynomial: String,
    pub lo: String,
    pub hi: String,
    pub sign: Sign,
    pub superinterval: Option<RationalInterval>,
    pub sturm_count: Option<usize>,
    pub refinements: u32,
}

/// Canonical Sturm chain of the square-free part of `p`.
pub fn sturm_sequence(p: &Polynomial) -> Result<Vec<Polynomial>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let p0 = p.square_free();
    let mut seq = vec![p0.clone(), p0.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    Ok(seq)
}

fn sign_changes(seq: &[Polynomial], x: &Rational) -> usize {
    let signs: Vec<Sign> = seq
        .iter()
        .map(|q| q.eval(x).sign())
        .filter(|s| *s != Sign::Zero)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the open window `(lo, hi)`.
pub fn sturm_root_count(p: &Polynomial, window: &RationalInterval) -> Result<usize, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    for e in [window.lo(), window.hi()] {
        if p.eval(e).is_zero() {
            return Err(ExactError::EndpointIsRoot(e.to_string()));
        }
    }
    let seq = sturm_sequence(p)?;
    Ok(sign_changes(&seq, window.lo()) - sign_changes(&seq, window.hi()))
}

/// Decides whether `p` keeps a constant nonzero sign on `[lo, hi]`.
///
/// The endpoint signs are exact. A tower left endpoint is replaced by a
/// rational `l < lo` from a shrinking enclosure until the Sturm count on
/// `(l, hi)` is zero or a root is located inside `[lo, hi]`.
pub fn nonvanishing_on(
    p: &Polynomial,
    lo: &Endpoint,
    hi: &Rational,
    budget: u32,
) -> Result<SignCertificate, ExactError> {
    if !lo.below(hi) {
        return Err(ExactError::EmptyWindow);
    }
    let mut cert = SignCertificate {
        polynomial: p.to_string(),
        lo: lo.to_string(),
        hi: hi.to_string(),
        sign: Sign::Zero,
        superinterval: None,
        sturm_count: None,
        refinements: 0,
    };
    if p.is_zero() {
        return Ok(cert);
    }
    let s_hi = p.eval(hi).sign();
    let s_lo = lo.sign_of(p);
    if s_hi == Sign::Zero || s_lo != s_hi {
        return Ok(cert);
    }
    match lo {
        Endpoint::Rational(l) => {
            let window = RationalInterval::new(l.clone(), hi.clone())?;
            let count = sturm_root_count(p, &window)?;
            cert.superinterval = Some(window);
            cert.sturm_count = Some(count);
            if count == 0 {
                cert.sign = s_hi;
            }
            Ok(cert)
        }
        Endpoint::Tower(x) => {
            let seq = sturm_sequence(p)?;
            let mut width = int(1) / int(16);
            for round in 0..=budget {
                cert.refinements = round;
                let iv = x.enclose(&width);
                width /= int(2);
                let (l, u) = (iv.lo().clone(), iv.hi().clone());
                if p.eval(&l).is_zero() || p.eval(&u).is_zero() || &u >= hi {
                    continue;
                }
                let all = sign_changes(&seq, &l) - sign_changes(&seq, hi);
                if all == 0 {
                    cert.superinterval = Some(RationalInterval::new(l, hi.clone())?);
                    cert.sturm_count = Some(0);
                    cert.sign = s_hi;
                    return Ok(cert);
                }
                let upper = sign_changes(&seq, &u) - sign_changes(&seq, hi);
                if upper > 0 {
                    // a root in (u, hi), strictly inside the window
                    cert.superinterval = Some(RationalInterval::new(u, hi.clone())?);
                    cert.sturm_count = Some(upper);
                    return Ok(cert);
                }
            }
            Err(ExactError::Undecided(budget))
        }
    }
}

/// `p > 0` on all of `[lo, hi]`.
pub fn poly_positive_on(p: &Polynomial, lo: &Endpoint, hi: &Rational) -> Result<bool, ExactError> {
    Ok(nonvanishing_on(p, lo, hi, DEFAULT_REFINEMENT_BUDGET)?.sign == Sign::Positive)
}

/// Certifies `p > 0` on the half-open `[lo, hi)`: the root of multiplicity
/// `k` at `hi` is divided out and `(−1)^k · p/(t − hi)^k` is certified on the
/// closed window.
pub fn poly_positive_on_half_open(
    p: &Polynomial,
    lo: &Endpoint,
    hi: &Rational,
) -> Result<(bool, u32, SignCertificate), ExactError> {
    let (mult, rest) = p.deflate(hi);
    let cofactor = if mult % 2 == 1 { -rest } else { rest };
    let cert = nonvanishing_on(&cofactor, lo, hi, DEFAULT_REFINEMENT_BUDGET)?;
    Ok((cert.sign == Sign::Positive, mult, cert))
}
