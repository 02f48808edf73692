//! The one-parameter family `C_t` of 10×10 Cartan matrices on the facets
//! `1′..5′, 1..5`, its coefficient functions, the endpoint `t₃`, and
//! certificates for the rank, monotonicity and positivity statements that
//! the rest of the pipeline relies on.

use std::fmt;

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::cartan::{CartanError, CartanMatrix};
use crate::exactnum::{
    cos_sq_pi_over, int, nonvanishing_on, poly_positive_on_half_open, rat, Endpoint, ExactError,
    Field, OrderedField, Polynomial, Rational, RationalFunction, RationalInterval, Scalar, Sign,
    SignCertificate, TowerElement, DEFAULT_REFINEMENT_BUDGET,
};
use crate::matrix::Matrix;
use crate::par::Exec;

/// Number of facets; indices `0..5` are `1′..5′`, `5..10` are `1..5`.
pub const N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("t = {0} lies outside [t3, 1]")]
    OutOfDomain(String),
    #[error("p must be at least 3, got {0}")]
    PTooSmall(u32),
    #[error("inconsistent angle data: {0}")]
    InconsistentAngles(String),
    #[error("no 5x5 minor certifies constant rank on [t3, 1]")]
    NoCertifyingMinor,
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Index of facet `i′` (`i` in `1..=5`).
pub fn primed(i: usize) -> usize {
    debug_assert!((1..=5).contains(&i));
    i - 1
}

/// Index of facet `i` (`i` in `1..=5`).
pub fn unprimed(i: usize) -> usize {
    debug_assert!((1..=5).contains(&i));
    i + 4
}

pub fn is_primed(idx: usize) -> bool {
    idx < 5
}

/// The facet number `1..=5` behind an index.
pub fn facet_number(idx: usize) -> usize {
    idx % 5 + 1
}

pub fn labels() -> Vec<String> {
    (0..N)
        .map(|k| {
            if is_primed(k) {
                format!("{}'", facet_number(k))
            } else {
                facet_number(k).to_string()
            }
        })
        .collect()
}

/// The coefficient functions of `C_t`.
#[derive(Clone, Debug)]
pub struct Coefficients {
    pub f: RationalFunction,
    pub h: RationalFunction,
    pub g: [RationalFunction; 4],
    pub gbar: [RationalFunction; 4],
}

fn poly(cs: &[i64]) -> Polynomial {
    Polynomial::from_ints(cs)
}

fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `t² + t + 1` and `t² + 7t + 1`.
fn quadratics() -> (Polynomial, Polynomial) {
    (poly(&[1, 1, 1]), poly(&[1, 7, 1]))
}

pub fn coefficients() -> Coefficients {
    let t = Polynomial::x();
    let t2 = poly(&[2, 1]);
    let two_t1 = poly(&[1, 2]);
    let (q1, q7) = quadratics();
    let f = rf(t.clone() * t2.pow(3) * two_t1.pow(3), q1.pow(2) * q7.pow(2));
    let h = RationalFunction::from_int(2)
        + RationalFunction::t().inv().expect("t is nonzero")
        + rf(t.clone() * t2.pow(4), q1.clone() * &q7);
    let g: [RationalFunction; 4] = std::array::from_fn(|p| {
        let p = p as u32;
        rf(
            poly(&[2]) * t.pow(p) * t2.pow(p) * two_t1.pow(3 - p),
            q1.clone() * &q7,
        )
    });
    let four_f = RationalFunction::from_int(4) * &f;
    let gbar = std::array::from_fn(|p| four_f.clone() * g[p].inv().expect("nonzero"));
    Coefficients { f, h, g, gbar }
}

/// `f′` in factored form:
/// `−2(t−1)(t+1)(t+2)²(2t+1)²(t⁴+2t³+21t²+2t+1) / ((t²+t+1)³(t²+7t+1)³)`.
pub fn f_prime_factored() -> (Vec<Polynomial>, Vec<Polynomial>) {
    let (q1, q7) = quadratics();
    let num = vec![
        poly(&[2, -2]), // −2(t − 1)
        poly(&[1, 1]),
        poly(&[2, 1]).pow(2),
        poly(&[1, 2]).pow(2),
        poly(&[1, 2, 21, 2, 1]),
    ];
    (num, vec![q1.pow(3), q7.pow(3)])
}

/// `t₃ = ½(11 + 9√2 − 3√(31 + 22√2))`, the point where `f = ¼`.
pub fn t_three() -> TowerElement {
    TowerElement::from_coords([rat(11, 2), rat(9, 2), rat(-3, 2), int(0)])
}

/// Points at which the family can be evaluated and ordered against `t₃`.
pub trait FamilyScalar: OrderedField {
    fn to_tower(&self) -> TowerElement;
}

impl FamilyScalar for Rational {
    fn to_tower(&self) -> TowerElement {
        TowerElement::from_rational(self)
    }
}

impl FamilyScalar for TowerElement {
    fn to_tower(&self) -> TowerElement {
        self.clone()
    }
}

/// True when `t₃ ≤ t ≤ 1`.
pub fn in_domain<F: FamilyScalar>(t: &F) -> bool {
    let x = t.to_tower();
    (x.clone() - t_three()).tower_sign() != Sign::Negative
        && (TowerElement::one() - x).tower_sign() != Sign::Negative
}

fn assemble<F: Scalar>(g: &[F; 4], gbar: &[F; 4], h: &F, t: &F, tinv: &F) -> Matrix<F> {
    Matrix::from_fn(N, N, |r, c| {
        if r == c {
            return F::from_int(2);
        }
        let (i, j) = (facet_number(r) as i64, facet_number(c) as i64);
        match (is_primed(r), is_primed(c)) {
            (true, true) if j > i => -gbar[(j - i - 1) as usize].clone(),
            (true, true) => -g[(i - j - 1) as usize].clone(),
            (true, false) if i == j => -h.clone(),
            (false, true) if i == j => F::from_int(-2),
            (false, false) if j > i => -tinv.clone(),
            (false, false) => -t.clone(),
            _ => F::zero(),
        }
    })
}

/// `C_t` over the function field `Q(t)`.
pub fn cartan_symbolic() -> CartanMatrix<RationalFunction> {
    let c = coefficients();
    let t = RationalFunction::t();
    let tinv = t.inv().expect("t is nonzero");
    CartanMatrix::unchecked_signs(assemble(&c.g, &c.gbar, &c.h, &t, &tinv), labels())
        .expect("shape is fixed")
}

/// `C_t` at a point of `[t₃, 1]`, with all Cartan invariants validated.
pub fn cartan_at<F: FamilyScalar>(t: &F) -> Result<CartanMatrix<F>, FamilyError> {
    if !in_domain(t) {
        return Err(FamilyError::OutOfDomain(t.to_string()));
    }
    let c = coefficients();
    let ev = |r: &RationalFunction| r.eval(t);
    let g = [ev(&c.g[0])?, ev(&c.g[1])?, ev(&c.g[2])?, ev(&c.g[3])?];
    let gbar = [
        ev(&c.gbar[0])?,
        ev(&c.gbar[1])?,
        ev(&c.gbar[2])?,
        ev(&c.gbar[3])?,
    ];
    let h = ev(&c.h)?;
    let tinv = t.inv().ok_or(ExactError::DivisionByZero)?;
    Ok(CartanMatrix::new(
        assemble(&g, &gbar, &h, t, &tinv),
        Some(labels()),
    )?)
}

/// The order-5 relabeling `i′ → (i+1)′, i → i+1`, as an index permutation.
pub fn rotation() -> Vec<usize> {
    (0..N)
        .map(|k| {
            let next = facet_number(k) % 5 + 1;
            if is_primed(k) {
                primed(next)
            } else {
                unprimed(next)
            }
        })
        .collect()
}

/// Where `t` sits for a given Coxeter label `p`.
#[derive(Clone, Debug, PartialEq)]
pub enum TValue {
    Exact(TowerElement),
    Enclosure(RationalInterval),
}

/// A parameter value together with the angle it realizes.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyPoint {
    pub p: Option<u32>,
    pub t: TValue,
    /// `cos²α = f(t)`: a point when exact, otherwise the certified enclosure
    /// of `cos²(π/p)` the bisection was run against.
    pub cos_sq_alpha: RationalInterval,
}

impl FamilyPoint {
    /// A rational inside the enclosure (its midpoint), or `None` at `t₃`.
    pub fn rational_sample(&self) -> Option<Rational> {
        match &self.t {
            TValue::Exact(x) => x.as_rational(),
            TValue::Enclosure(iv) => Some(iv.midpoint()),
        }
    }

    pub fn describe_t(&self) -> String {
        match &self.t {
            TValue::Exact(x) => x.to_string(),
            TValue::Enclosure(iv) => iv.to_string(),
        }
    }
}

/// Locates `t ∈ [t₃, 1)` with `f(t) = cos²(π/p)`.
///
/// `p = 3` returns `t₃` exactly. Otherwise `f` is bisected against a
/// certified enclosure of `cos²(π/p)` (exact for `p = 4, 6`), refining the
/// enclosure whenever a midpoint value lands inside it. The result lies in
/// `(t₃, 1)` and has width at most `width`.
pub fn solve_t_for_p(p: u32, width: &Rational) -> Result<FamilyPoint, FamilyError> {
    if p < 3 {
        return Err(FamilyError::PTooSmall(p));
    }
    if p == 3 {
        return Ok(FamilyPoint {
            p: Some(3),
            t: TValue::Exact(t_three()),
            cos_sq_alpha: RationalInterval::point(rat(1, 4)),
        });
    }
    let exact_target = match p {
        4 => Some(rat(1, 2)),
        6 => Some(rat(3, 4)),
        _ => None,
    };
    let mut bits = 64;
    let mut target = match &exact_target {
        Some(q) => RationalInterval::point(q.clone()),
        None => cos_sq_pi_over(p, bits),
    };
    let f = coefficients().f;
    let t3 = t_three();
    let above_t3 =
        |q: &Rational| (TowerElement::from_rational(q) - &t3).tower_sign() == Sign::Positive;
    // f is increasing on (0, 1] and f(1/25) < f(t₃) = ¼ < cos²(π/p)
    let mut lo = rat(1, 25);
    let mut hi = int(1);
    loop {
        if &(&hi - &lo) <= width && above_t3(&lo) {
            break;
        }
        let mid = (&lo + &hi) / int(2);
        let fm = f.eval(&mid)?;
        if &fm < target.lo() {
            lo = mid;
        } else if &fm > target.hi() {
            hi = mid;
        } else if exact_target.is_some() {
            lo = mid.clone();
            hi = mid;
            break;
        } else {
            bits *= 2;
            if bits > 1 << 14 {
                return Err(ExactError::Undecided(bits).into());
            }
            target = cos_sq_pi_over(p, bits);
        }
    }
    Ok(FamilyPoint {
        p: Some(p),
        t: TValue::Enclosure(RationalInterval::new(lo, hi)?),
        cos_sq_alpha: target,
    })
}

/// Evidence that `C_t` has rank exactly 5 on all of `[t₃, 1]`.
#[derive(Clone, Debug, Serialize)]
pub struct GenericRankCertificate {
    /// Rank over `Q(t)`: every 6×6 minor is the zero function.
    pub generic_rank: usize,
    pub minor_rows: Vec<String>,
    pub minor: String,
    pub minor_sign: Sign,
    pub numerator: SignCertificate,
    pub denominator: SignCertificate,
    /// Number of principal minors tried before one certified.
    pub minors_tried: usize,
    pub rank_at_half: usize,
    pub holds: bool,
}

/// Default principal minor: rows and columns `{1′, 2′, 3′, 4′, 1}`.
pub const DEFAULT_MINOR: [usize; 5] = [0, 1, 2, 3, 5];

fn certify_minor(
    sym: &CartanMatrix<RationalFunction>,
    idx: &[usize],
) -> Result<Option<(RationalFunction, Sign, SignCertificate, SignCertificate)>, FamilyError> {
    let det = sym.matrix().principal(idx).det_fraction_free();
    if det.is_zero() {
        return Ok(None);
    }
    let lo = Endpoint::Tower(t_three());
    let one = int(1);
    let num = nonvanishing_on(det.numer(), &lo, &one, DEFAULT_REFINEMENT_BUDGET)?;
    let den = nonvanishing_on(det.denom(), &lo, &one, DEFAULT_REFINEMENT_BUDGET)?;
    if num.sign == Sign::Zero || den.sign == Sign::Zero {
        return Ok(None);
    }
    Ok(Some((det, num.sign.times(den.sign), num, den)))
}

fn five_subsets() -> Vec<Vec<usize>> {
    (0u32..1 << N)
        .filter(|m| m.count_ones() == 5)
        .map(|m| (0..N).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

pub fn verify_generic_rank(exec: Exec) -> Result<GenericRankCertificate, FamilyError> {
    let sym = cartan_symbolic();
    let generic_rank = sym.generic_rank();
    let mut tried = 1;
    let mut found = certify_minor(&sym, &DEFAULT_MINOR)?.map(|c| (DEFAULT_MINOR.to_vec(), c));
    if found.is_none() {
        let candidates = five_subsets();
        tried += candidates.len();
        let results = exec.map(&candidates, |idx| certify_minor(&sym, idx));
        for (idx, r) in candidates.into_iter().zip(results) {
            if let Some(c) = r? {
                found = Some((idx, c));
                break;
            }
        }
    }
    let (idx, (det, sign, numerator, denominator)) = found.ok_or(FamilyError::NoCertifyingMinor)?;
    let rank_at_half = cartan_at(&rat(1, 2))?.rank();
    let names = labels();
    Ok(GenericRankCertificate {
        generic_rank,
        minor_rows: idx.iter().map(|&i| names[i].clone()).collect(),
        minor: det.to_string(),
        minor_sign: sign,
        numerator,
        denominator,
        minors_tried: tried,
        rank_at_half,
        holds: generic_rank == 5 && rank_at_half == 5,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorCertificate {
    pub factor: String,
    /// Whether the window was closed at 1 (`false`: `[t₃, 1)`).
    pub closed_at_one: bool,
    pub positive: bool,
    pub certificate: SignCertificate,
}

/// Evidence that `f` increases strictly from `¼` at `t₃` to `1` at `1`.
#[derive(Clone, Debug, Serialize)]
pub struct MonotoneCertificate {
    pub derivative: String,
    pub identity_holds: bool,
    pub factors: Vec<FactorCertificate>,
    pub f_at_t3: String,
    pub f_at_one: String,
    pub holds: bool,
}

pub fn verify_monotone_f() -> Result<MonotoneCertificate, FamilyError> {
    let f = coefficients().f;
    let (num, den) = f_prime_factored();
    let product = |ps: &[Polynomial]| ps.iter().fold(poly(&[1]), |acc, p| acc * p);
    let factored = RationalFunction::new(product(&num), product(&den))?;
    let derivative = f.derivative();
    let identity_holds = derivative == factored;

    let lo = Endpoint::Tower(t_three());
    let one = int(1);
    let mut factors = Vec::new();
    for (k, p) in num.iter().chain(den.iter()).enumerate() {
        // the first factor, 2(1 − t), vanishes at 1 and is only positive on [t₃, 1)
        let (positive, certificate, closed) = if k == 0 {
            let (ok, _, cert) = poly_positive_on_half_open(p, &lo, &one)?;
            (ok, cert, false)
        } else {
            let cert = nonvanishing_on(p, &lo, &one, DEFAULT_REFINEMENT_BUDGET)?;
            (cert.sign == Sign::Positive, cert, true)
        };
        factors.push(FactorCertificate {
            factor: p.pretty("t"),
            closed_at_one: closed,
            positive,
            certificate,
        });
    }
    let f_t3 = f.eval(&t_three())?;
    let f_1 = f.eval(&one)?;
    let holds = identity_holds
        && factors.iter().all(|c| c.positive)
        && f_t3 == TowerElement::from_rational(&rat(1, 4))
        && f_1 == one;
    Ok(MonotoneCertificate {
        derivative: derivative.pretty(),
        identity_holds,
        factors,
        f_at_t3: f_t3.to_string(),
        f_at_one: f_1.to_string(),
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityEntry {
    pub name: String,
    pub positive: bool,
    pub numerator: SignCertificate,
    pub denominator: SignCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityCertificate {
    pub entries: Vec<PositivityEntry>,
    pub holds: bool,
}

/// The named functions whose positivity on `[t₃, 1]` is certified; `h − 2`
/// is included because `2h > 4` makes the matched pairs `i′, i` parallel.
pub fn positivity_targets() -> Vec<(String, RationalFunction)> {
    let c = coefficients();
    let mut out = vec![
        ("f".to_string(), c.f.clone()),
        ("h".to_string(), c.h.clone()),
        (
            "h - 2".to_string(),
            c.h.clone() - RationalFunction::from_int(2),
        ),
    ];
    for p in 0..4 {
        out.push((format!("g_{p}"), c.g[p].clone()));
        out.push((format!("gbar_{p}"), c.gbar[p].clone()));
    }
    out
}

pub fn verify_positive_coefficients(exec: Exec) -> Result<PositivityCertificate, FamilyError> {
    let targets = positivity_targets();
    let lo = Endpoint::Tower(t_three());
    let one = int(1);
    let results = exec.map(&targets, |(name, r)| {
        r.sign_on(&lo, &one, DEFAULT_REFINEMENT_BUDGET)
            .map(|(sign, [numerator, denominator])| PositivityEntry {
                name: name.clone(),
                positive: sign == Sign::Positive,
                numerator,
                denominator,
            })
    });
    let entries = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let holds = entries.iter().all(|e| e.positive);
    Ok(PositivityCertificate { entries, holds })
}

/// Any subset of the angle data; all given fields must agree.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AngleInput {
    /// `α / π`.
    pub alpha: Option<Rational>,
    /// `θ / π`.
    pub theta: Option<Rational>,
    pub m: Option<u64>,
    pub p: Option<u64>,
}

/// `α` (filling dihedral angle), `θ = 6α` (cone angle), and the integers
/// with `θ = 2π/m`, `α = π/p`, `p = 3m` when they exist. Angles are stored
/// as rational multiples of `π`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleDictionary {
    #[serde(serialize_with = "ser_display")]
    pub alpha_over_pi: Rational,
    #[serde(serialize_with = "ser_display")]
    pub theta_over_pi: Rational,
    pub m: Option<u64>,
    pub p: Option<u64>,
}

fn ser_display<S: serde::Serializer, T: fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn integer_of(q: &Rational) -> Option<u64> {
    use num_traits::ToPrimitive;
    q.is_integer().then(|| q.to_integer().to_u64()).flatten()
}

pub fn angle_dictionary(input: &AngleInput) -> Result<AngleDictionary, FamilyError> {
    let bad = |why: String| FamilyError::InconsistentAngles(why);
    let mut candidates: Vec<(&str, Rational)> = Vec::new();
    if let Some(a) = &input.alpha {
        candidates.push(("alpha", a.clone()));
    }
    if let Some(th) = &input.theta {
        candidates.push(("theta", th / int(6)));
    }
    if let Some(m) = input.m {
        if m == 0 {
            return Err(bad("m must be positive".into()));
        }
        candidates.push(("m", Rational::new(1.into(), (3 * m).into())));
    }
    if let Some(p) = input.p {
        if p == 0 {
            return Err(bad("p must be positive".into()));
        }
        candidates.push(("p", Rational::new(1.into(), p.into())));
    }
    let Some((_, alpha)) = candidates.first().cloned() else {
        return Err(bad("no angle data given".into()));
    };
    if !alpha.is_positive() {
        return Err(bad("the angle must be positive".into()));
    }
    if let Some((name, other)) = candidates.iter().find(|(_, a)| *a != alpha) {
        return Err(bad(format!(
            "{name} gives alpha = {other}pi but {} gives {alpha}pi",
            candidates[0].0
        )));
    }
    let theta = &alpha * int(6);
    Ok(AngleDictionary {
        m: integer_of(&(int(2) / &theta)),
        p: integer_of(&alpha.recip()),
        alpha_over_pi: alpha,
        theta_over_pi: theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_decimal;

    #[test]
    fn coefficient_values_at_one() {
        let c = coefficients();
        let one = int(1);
        assert_eq!(c.g[0].eval(&one).unwrap(), int(2));
        assert_eq!(c.gbar[3].eval(&one).unwrap(), int(2));
        assert_eq!(c.h.eval(&one).unwrap(), int(6));
        assert_eq!(c.f.eval(&one).unwrap(), int(1));
        assert_eq!(c.f.eval(&rat(1, 2)).unwrap(), rat(16000, 17689));
    }

    #[test]
    fn g_times_gbar_is_four_f() {
        let c = coefficients();
        let four_f = RationalFunction::from_int(4) * &c.f;
        for p in 0..4 {
            assert_eq!(c.g[p].clone() * &c.gbar[p], four_f);
        }
    }

    #[test]
    fn t_three_facts() {
        let t3 = t_three();
        assert_eq!(t3.tower_sign(), Sign::Positive);
        let f = coefficients().f;
        assert_eq!(
            f.eval(&t3).unwrap(),
            TowerElement::from_rational(&rat(1, 4))
        );
        let iv = t3.enclose(&rat(1, 10_000));
        assert!(iv.inside_open(
            &parse_decimal("0.0421").unwrap(),
            &parse_decimal("0.0423").unwrap()
        ));
        assert_eq!(
            (t3 - TowerElement::from_rational(&rat(1, 20))).tower_sign(),
            Sign::Negative
        );
    }

    #[test]
    fn cartan_entries_at_one() {
        let c = cartan_at(&int(1)).unwrap();
        assert_eq!(c.entry(primed(1), unprimed(1)), &int(-6));
        assert_eq!(c.entry(unprimed(1), primed(1)), &int(-2));
        assert_eq!(c.entry(unprimed(1), unprimed(2)), &int(-1));
        assert_eq!(c.entry(primed(1), unprimed(3)), &int(0));
        assert_eq!(c.labels()[0], "1'");
        assert_eq!(c.labels()[9], "5");
    }

    #[test]
    fn symbolic_cross_entry_is_minus_h() {
        let sym = cartan_symbolic();
        assert_eq!(sym.entry(primed(1), unprimed(1)), &-coefficients().h);
    }

    #[test]
    fn products_at_t_three() {
        let c = cartan_at(&t_three()).unwrap();
        let one = TowerElement::one();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(c.entry(i, j).clone() * c.entry(j, i), one);
                }
            }
        }
    }

    #[test]
    fn domain_is_enforced() {
        assert!(matches!(
            cartan_at(&rat(1, 100)),
            Err(FamilyError::OutOfDomain(_))
        ));
        assert!(matches!(
            cartan_at(&rat(3, 2)),
            Err(FamilyError::OutOfDomain(_))
        ));
        assert!(cartan_at(&rat(1, 10)).is_ok());
    }

    #[test]
    fn rotation_has_order_five() {
        let r = rotation();
        let mut x: Vec<usize> = (0..N).collect();
        for k in 1..=5 {
            x = x.iter().map(|&i| r[i]).collect();
            assert_eq!(x == (0..N).collect::<Vec<_>>(), k == 5);
        }
    }

    #[test]
    fn solve_for_exact_targets() {
        let w = rat(1, 1 << 20);
        let p3 = solve_t_for_p(3, &w).unwrap();
        assert_eq!(p3.t, TValue::Exact(t_three()));
        let f = coefficients().f;
        for (p, target) in [(4, rat(1, 2)), (6, rat(3, 4))] {
            let sol = solve_t_for_p(p, &w).unwrap();
            let TValue::Enclosure(iv) = &sol.t else {
                panic!()
            };
            assert!(iv.width() <= w);
            // bisection oracle: f − target changes sign across the enclosure
            assert!(f.eval(iv.lo()).unwrap() <= target && f.eval(iv.hi()).unwrap() >= target);
            assert!(in_domain(iv.lo()) && iv.hi() < &int(1));
        }
        assert_eq!(solve_t_for_p(2, &w), Err(FamilyError::PTooSmall(2)));
    }

    #[test]
    fn solve_for_irrational_target() {
        let sol = solve_t_for_p(5, &rat(1, 1 << 30)).unwrap();
        let t = crate::exactnum::rational_to_f64(&sol.rational_sample().unwrap());
        let f = |t: f64| {
            t * (t + 2.0).powi(3) * (2.0 * t + 1.0).powi(3)
                / ((t * t + t + 1.0).powi(2) * (t * t + 7.0 * t + 1.0).powi(2))
        };
        let c = (std::f64::consts::PI / 5.0).cos();
        assert!((f(t) - c * c).abs() < 1e-8);
    }

    #[test]
    fn angle_dictionary_examples() {
        let m1 = angle_dictionary(&AngleInput {
            m: Some(1),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(m1.theta_over_pi, int(2));
        assert_eq!(m1.alpha_over_pi, rat(1, 3));
        assert_eq!(m1.p, Some(3));
        let a = angle_dictionary(&AngleInput {
            alpha: Some(rat(1, 3)),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(a.theta_over_pi, int(2));
        let m2 = angle_dictionary(&AngleInput {
            m: Some(2),
            ..Default::default()
        })
        .unwrap();
        assert_eq!((m2.theta_over_pi.clone(), m2.p), (int(1), Some(6)));
        let p4 = angle_dictionary(&AngleInput {
            p: Some(4),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(p4.m, None);
        assert!(angle_dictionary(&AngleInput {
            m: Some(2),
            p: Some(5),
            ..Default::default()
        })
        .is_err());
        assert!(angle_dictionary(&AngleInput::default()).is_err());
    }
}
