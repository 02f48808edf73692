//! Generators and floating-point oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use projfill::cartan::CartanMatrix;
use projfill::exactnum::{rat, rational_to_f64, Rational};
use projfill::matrix::Matrix;
use rand::seq::SliceRandom;
use rand::Rng;

const OFF_DIAGONAL: [(i64, i64); 7] = [
    (-1, 4),
    (-1, 2),
    (-1, 1),
    (-3, 2),
    (-2, 1),
    (-3, 1),
    (-1, 3),
];

/// A random irreducible rational Cartan matrix of size `2..=6`.
pub fn random_cartan(rng: &mut impl Rng) -> CartanMatrix<Rational> {
    let n = rng.gen_range(2..=6);
    let mut entries = vec![vec![rat(0, 1); n]; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for k in 1..n {
        edges.push((order[k], order[rng.gen_range(0..k)]));
    }
    for i in 0..n {
        for j in 0..i {
            if !edges.contains(&(i, j)) && !edges.contains(&(j, i)) && rng.gen_bool(0.3) {
                edges.push((i, j));
            }
        }
    }
    for &(i, j) in &edges {
        let (p, q) = OFF_DIAGONAL[rng.gen_range(0..OFF_DIAGONAL.len())];
        let (r, s) = OFF_DIAGONAL[rng.gen_range(0..OFF_DIAGONAL.len())];
        entries[i][j] = rat(p, q);
        entries[j][i] = rat(r, s);
    }
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] = rat(2, 1);
    }
    CartanMatrix::new(Matrix::from_rows(entries), None).expect("valid Cartan matrix")
}

/// Cycle, star and path diagrams whose Perron root is exactly 2.
pub fn affine_examples() -> Vec<CartanMatrix<Rational>> {
    let build = |n: usize, edges: &[(usize, usize, i64, i64)]| {
        let mut m = vec![vec![rat(0, 1); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = rat(2, 1);
        }
        for &(i, j, a, b) in edges {
            m[i][j] = rat(-a, 1);
            m[j][i] = rat(-b, 1);
        }
        CartanMatrix::new(Matrix::from_rows(m), None).unwrap()
    };
    let mut out = vec![build(2, &[(0, 1, 2, 2)]), build(2, &[(0, 1, 1, 4)])];
    for n in 3..=6 {
        let cycle: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1, 1)).collect();
        out.push(build(n, &cycle));
    }
    out.push(build(
        5,
        &[(0, 4, 1, 1), (1, 4, 1, 1), (2, 4, 1, 1), (3, 4, 1, 1)],
    ));
    out.push(build(3, &[(0, 1, 2, 1), (1, 2, 1, 2)]));
    out
}

pub fn to_float(m: &Matrix<Rational>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| rational_to_f64(&m[(i, j)]))
}

/// Collatz–Wielandt bracket `lo ≤ ρ(2I − A) ≤ hi` from power iteration on
/// the primitive matrix `3I − A`.
pub fn perron_bracket(a: &CartanMatrix<Rational>) -> (f64, f64) {
    let n = a.size();
    let m = DMatrix::<f64>::identity(n, n) * 3.0 - to_float(a.matrix());
    let mut x = nalgebra::DVector::<f64>::from_element(n, 1.0);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for _ in 0..200_000 {
        let y = &m * &x;
        let ratios = y.iter().zip(x.iter()).map(|(p, q)| p / q);
        lo = lo.max(ratios.clone().fold(f64::INFINITY, f64::min) - 1.0);
        hi = hi.min(ratios.fold(f64::NEG_INFINITY, f64::max) - 1.0);
        if hi - lo < 1e-12 {
            break;
        }
        x = &y / y.max();
    }
    (lo, hi)
}

/// Perron root of the nonnegative matrix `2I − A`, in floating point.
pub fn perron_root(a: &CartanMatrix<Rational>) -> f64 {
    let (lo, hi) = perron_bracket(a);
    0.5 * (lo + hi)
}

/// Eigenvalue sign counts `(n₊, n₋, n₀)` of a symmetric rational matrix.
pub fn float_inertia(s: &Matrix<Rational>, tol: f64) -> (usize, usize, usize) {
    let eig = to_float(s).symmetric_eigenvalues();
    let pos = eig.iter().filter(|&&x| x > tol).count();
    let neg = eig.iter().filter(|&&x| x < -tol).count();
    (pos, neg, eig.len() - pos - neg)
}

/// `D A D⁻¹` for a positive diagonal `D`.
pub fn conjugate(a: &CartanMatrix<Rational>, d: &[Rational]) -> CartanMatrix<Rational> {
    let n = a.size();
    let m = Matrix::from_fn(n, n, |i, j| &d[i] * &a.matrix()[(i, j)] / &d[j]);
    CartanMatrix::new(m, None).unwrap()
}

pub fn random_diagonal(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| rat(rng.gen_range(1..20), rng.gen_range(1..20)))
        .collect()
}
