//! Dense matrices over exact scalars.
//!
//! Determinants and ranks use Bareiss fraction-free elimination, so they work
//! over integral domains (polynomial rings) as well as fields; everything that
//! needs division by arbitrary elements is restricted to [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::exactnum::{Field, Poly, Polynomial, RationalFunction, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![F::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Rows `rs` and columns `cs`, in the given order.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Self {
        Matrix::from_fn(rs.len(), cs.len(), |i, j| self[(rs[i], cs[j])].clone())
    }

    pub fn principal(&self, idx: &[usize]) -> Self {
        self.submatrix(idx, idx)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.rows)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(F::zero(), |acc, k| {
                if self[(i, k)].is_zero() {
                    acc
                } else {
                    acc + self[(i, k)].clone() * &other[(k, j)]
                }
            })
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - &other[(i, j)]
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Determinant by Bareiss elimination with row pivoting.
    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return F::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = F::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return F::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].clone() * &a[(k, k)] - a[(i, k)].clone() * &a[(k, j)];
                    a[(i, j)] = v.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// `det` of the top-left `k × k` block for `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<F> {
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.principal(&idx).det()
            })
            .collect()
    }

    /// Rank by fraction-free echelon reduction with full column search.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            for i in r + 1..a.rows {
                for j in c + 1..a.cols {
                    let v = a[(i, j)].clone() * &a[(r, c)] - a[(i, c)].clone() * &a[(r, j)];
                    a[(i, j)] = v.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[(i, c)] = F::zero();
            }
            prev = a[(r, c)].clone();
            r += 1;
            if r == a.rows {
                break;
            }
        }
        r
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].inv().expect("pivot is nonzero");
            for j in 0..a.cols {
                a[(r, j)] = a[(r, j)].clone() * &inv;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let factor = a[(i, c)].clone();
                for j in 0..a.cols {
                    let v = a[(i, j)].clone() - factor.clone() * &a[(r, j)];
                    a[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Characteristic polynomial `det(λI − A)` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Poly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I
            m = self.mul(&m);
            for i in 0..n {
                m[(i, i)] = m[(i, i)].clone() + &coeffs[n - k + 1];
            }
            let tr = self.mul(&m).trace();
            let kf = F::from_int(k as i64);
            coeffs[n - k] = -(tr.div(&kf).expect("k is invertible"));
        }
        Poly::new(coeffs)
    }
}

impl Matrix<RationalFunction> {
    /// Scales each row by the lcm of its denominators.
    ///
    /// Returns the polynomial matrix and the row multipliers; Bareiss over
    /// `Q[t]` on the result avoids the gcd normalization that every
    /// rational-function operation would otherwise pay.
    pub fn clear_denominators(&self) -> (Matrix<Polynomial>, Vec<Polynomial>) {
        let mut multipliers = Vec::with_capacity(self.rows);
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let lcm = row.iter().fold(Polynomial::one(), |acc, x| {
                let g = acc.gcd(x.denom());
                (acc * x.denom()).div_rem(&g).expect("gcd is nonzero").0
            });
            for x in row {
                let cofactor = lcm.div_rem(x.denom()).expect("denominator divides lcm").0;
                data.push(x.numer().clone() * &cofactor);
            }
            multipliers.push(lcm);
        }
        (Matrix::new(self.rows, self.cols, data), multipliers)
    }

    /// Rank over `Q(t)`, computed on the denominator-free polynomial matrix.
    pub fn generic_rank(&self) -> usize {
        self.clear_denominators().0.rank()
    }

    /// Determinant over `Q(t)` via the polynomial matrix.
    pub fn det_fraction_free(&self) -> RationalFunction {
        let (m, mult) = self.clear_denominators();
        let scale = mult.iter().fold(Polynomial::one(), |acc, p| acc * p);
        RationalFunction::new(m.det(), scale).expect("multipliers are nonzero")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[F]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        f.debug_struct("Matrix").field("rows", &rows).finish()
    }
}
