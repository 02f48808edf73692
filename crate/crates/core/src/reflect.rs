//! Projective reflections `σ_s = Id − b_s ⊗ α_s` realizing a rank-5 Cartan
//! matrix, and exact checks of the relations between them.

use serde::Serialize;
use thiserror::Error;

use crate::cartan::CartanMatrix;
use crate::exactnum::{Field, OrderedField, Poly, Sign};
use crate::family::{self, FamilyError, FamilyScalar};
use crate::matrix::Matrix;
use crate::par::Exec;

/// Dimension of the vector space the reflections act on.
pub const DIM: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReflectError {
    #[error("Cartan matrix has rank {0}, expected {DIM}")]
    Rank(usize),
    #[error("factorization check failed at ({0}, {1})")]
    Factorization(usize, usize),
    #[error("a pair needs two distinct generators, got {0} twice")]
    SamePair(usize),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Which rank factorization `A = F·G` fixes the gauge `α_s ↦ λ_s α_s`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Gauge {
    /// `F` = pivot columns of `A`, `G` = nonzero rows of its reduced echelon form.
    #[default]
    PivotColumns,
    /// `G` = pivot rows of `A`, `F` from the echelon form of `Aᵀ`.
    PivotRows,
}

/// Covectors `α_s` and vectors `b_s` with `α_s(b_t) = A_st`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionSystem<F> {
    alpha: Vec<Vec<F>>,
    b: Vec<Vec<F>>,
}

/// Rank factorization of `A`, validated entrywise.
pub fn realize<F: Field>(
    a: &CartanMatrix<F>,
    gauge: Gauge,
) -> Result<ReflectionSystem<F>, ReflectError> {
    let m = a.matrix();
    let n = a.size();
    let (alpha, b) = match gauge {
        Gauge::PivotColumns => {
            let (r, pivots) = m.rref();
            if pivots.len() != DIM {
                return Err(ReflectError::Rank(pivots.len()));
            }
            let alpha = (0..n)
                .map(|s| pivots.iter().map(|&p| m[(s, p)].clone()).collect())
                .collect();
            let b = (0..n)
                .map(|t| (0..DIM).map(|k| r[(k, t)].clone()).collect())
                .collect();
            (alpha, b)
        }
        Gauge::PivotRows => {
            let (r, pivots) = m.transpose().rref();
            if pivots.len() != DIM {
                return Err(ReflectError::Rank(pivots.len()));
            }
            let alpha = (0..n)
                .map(|s| (0..DIM).map(|k| r[(k, s)].clone()).collect())
                .collect();
            let b = (0..n)
                .map(|t| pivots.iter().map(|&p| m[(p, t)].clone()).collect())
                .collect();
            (alpha, b)
        }
    };
    let sys = ReflectionSystem { alpha, b };
    for s in 0..n {
        for t in 0..n {
            if sys.pairing(s, t) != *a.entry(s, t) {
                return Err(ReflectError::Factorization(s, t));
            }
        }
    }
    Ok(sys)
}

impl<F: Field> ReflectionSystem<F> {
    pub fn size(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self, s: usize) -> &[F] {
        &self.alpha[s]
    }

    pub fn b(&self, s: usize) -> &[F] {
        &self.b[s]
    }

    /// `α_s(b_t)`.
    pub fn pairing(&self, s: usize, t: usize) -> F {
        self.alpha[s]
            .iter()
            .zip(&self.b[t])
            .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y)
    }

    /// `v ↦ v − α_s(v) b_s` as a matrix.
    pub fn reflection(&self, s: usize) -> Matrix<F> {
        Matrix::from_fn(DIM, DIM, |i, j| {
            let delta = if i == j { F::one() } else { F::zero() };
            delta - self.b[s][i].clone() * &self.alpha[s][j]
        })
    }

    pub fn product(&self, s: usize, t: usize) -> Matrix<F> {
        self.reflection(s).mul(&self.reflection(t))
    }

    pub fn product_charpoly(&self, s: usize, t: usize) -> Result<Poly<F>, ReflectError> {
        if s == t {
            return Err(ReflectError::SamePair(s));
        }
        Ok(self.product(s, t).charpoly())
    }
}

/// `(λ−1)³(λ² − cλ + 1)`.
pub fn rotation_charpoly<F: Field>(c: &F) -> Poly<F> {
    let lin = Poly::new(vec![-F::one(), F::one()]);
    let quad = Poly::new(vec![F::one(), -c.clone(), F::one()]);
    lin.pow(3) * &quad
}

/// Expected characteristic polynomial of `σ_sσ_t` given `A_st A_ts`:
/// the rotation part has trace `2cos2θ = A_st A_ts − 2`.
pub fn expected_product_charpoly<F: Field>(product: &F) -> Poly<F> {
    rotation_charpoly(&(product.clone() - F::from_int(2)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub generators: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCertificate {
    pub t: String,
    pub checks: Vec<RelationCheck>,
    pub holds: bool,
}

impl RelationCertificate {
    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Checks the relations of the reflections realizing `C_t`:
///
/// * every `σ_s` is an involution with determinant −1 and trace 3;
/// * every product has determinant 1, trace `3 + (A_st A_ts − 2)` and the
///   rotation characteristic polynomial;
/// * `(σ_iσ_j)³ = Id` for unprimed pairs, `(σ_{i′}σ_j)² = Id` for mixed
///   pairs with `i ≠ j`;
/// * `A_{i′i} A_{ii′} = 2h(t) > 4` for matched pairs;
/// * `(σ_{i′}σ_{j′})³ = Id` when `f(t) = ¼`.
pub fn verify_relations<F: FamilyScalar>(
    t: &F,
    exec: Exec,
) -> Result<RelationCertificate, ReflectError> {
    let a = family::cartan_at(t)?;
    let sys = realize(&a, Gauge::default())?;
    let names = family::labels();
    let coeffs = family::coefficients();
    let two_h = F::from_int(2) * coeffs.h.eval(t).map_err(FamilyError::from)?;
    let f = coeffs.f.eval(t).map_err(FamilyError::from)?;
    let at_pi_over_3 = f == F::from_rational(&crate::exactnum::rat(1, 4));
    let id = Matrix::<F>::identity(DIM);

    let singles = exec.map_range(0..family::N, |s| {
        let r = sys.reflection(s);
        RelationCheck {
            relation: "involution, det -1, trace 3".into(),
            generators: vec![names[s].clone()],
            holds: r.mul(&r).is_identity() && r.det() == -F::one() && r.trace() == F::from_int(3),
        }
    });

    let pairs: Vec<(usize, usize)> = (0..family::N)
        .flat_map(|s| (s + 1..family::N).map(move |u| (s, u)))
        .collect();
    let pair_checks = exec.map(&pairs, |&(s, u)| {
        let mut out = Vec::new();
        let prod = sys.product(s, u);
        let p = a.entry(s, u).clone() * a.entry(u, s);
        let gens = vec![names[s].clone(), names[u].clone()];
        let mut push = |relation: &str, holds: bool| {
            out.push(RelationCheck {
                relation: relation.into(),
                generators: gens.clone(),
                holds,
            })
        };
        push(
            "rotation: det 1, trace and charpoly",
            prod.det() == F::one()
                && prod.trace() == F::from_int(3) + (p.clone() - F::from_int(2))
                && prod.charpoly() == expected_product_charpoly(&p),
        );
        let (ps, pu) = (family::is_primed(s), family::is_primed(u));
        let same = family::facet_number(s) == family::facet_number(u);
        match (ps, pu) {
            (false, false) => push("order 3", prod.pow(3).is_identity()),
            (true, false) | (false, true) if !same => push("order 2", prod.pow(2).is_identity()),
            (true, false) | (false, true) => push(
                "product 2h(t) > 4",
                p == two_h && (p.clone() - F::from_int(4)).sign() == Sign::Positive,
            ),
            (true, true) if at_pi_over_3 => push("order 3", prod.pow(3) == id),
            (true, true) => push("product 4f(t)", p == F::from_int(4) * &f),
        }
        out
    });

    let checks: Vec<RelationCheck> = singles
        .into_iter()
        .chain(pair_checks.into_iter().flatten())
        .collect();
    let holds = checks.iter().all(|c| c.holds);
    Ok(RelationCertificate {
        t: t.to_string(),
        checks,
        holds,
    })
}

/// The cube of a product of two reflections and its rotation data.
#[derive(Clone, Debug, PartialEq)]
pub struct Meridian<F> {
    pub cube: Matrix<F>,
    /// `c = cos 2α = A_st A_ts / 2 − 1`.
    pub cos_two_alpha: F,
    /// `cos 6α = 4c³ − 3c`.
    pub cos_six_alpha: F,
    pub charpoly_matches: bool,
    pub is_identity: bool,
}

/// `(σ_sσ_t)³`, checked against the Chebyshev prediction of its rotation.
pub fn meridian_holonomy<F: OrderedField>(
    sys: &ReflectionSystem<F>,
    s: usize,
    t: usize,
) -> Result<Meridian<F>, ReflectError> {
    if s == t {
        return Err(ReflectError::SamePair(s));
    }
    let p = sys.pairing(s, t) * sys.pairing(t, s);
    let c = p.div(&F::from_int(2)).expect("two is invertible") - F::one();
    let cos6 = F::from_int(4) * c.clone() * c.clone() * c.clone() - F::from_int(3) * c.clone();
    let cube = sys.product(s, t).pow(3);
    let charpoly_matches = cube.charpoly() == rotation_charpoly(&(F::from_int(2) * cos6.clone()));
    let is_identity = cube.is_identity();
    Ok(Meridian {
        cube,
        cos_two_alpha: c,
        cos_six_alpha: cos6,
        charpoly_matches,
        is_identity,
    })
}
