//! Cartan matrices: components, the positive/zero/negative trichotomy, rank,
//! diagonal equivalence, symmetrization and exact inertia.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{
    ExactError, Field, OrderedField, Rational, RationalFunction, Scalar, Sign, TowerElement,
};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CartanError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} labels for a matrix of size {1}")]
    LabelCount(usize, usize),
    #[error("diagonal entry {0} is {1}, expected 2")]
    Diagonal(usize, String),
    #[error("entry ({0},{1}) is positive")]
    PositiveEntry(usize, usize),
    #[error("zero pattern is not symmetric at ({0},{1})")]
    ZeroPattern(usize, usize),
    #[error("matrix is reducible with {0} components; classify each component")]
    Reducible(usize),
    #[error("not symmetrizable: cycle products differ around {0:?}")]
    NotSymmetrizable(Vec<usize>),
    #[error("matrices have different sizes")]
    SizeMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A square matrix with 2 on the diagonal, nonpositive off-diagonal entries
/// and a symmetric zero pattern, together with names for its indices.
#[derive(Clone, PartialEq)]
pub struct CartanMatrix<F> {
    matrix: Matrix<F>,
    labels: Vec<String>,
}

/// Which of the three Vinberg types an irreducible Cartan matrix has.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CartanType {
    Positive,
    Zero,
    Negative,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CartanType::Positive => "positive",
            CartanType::Zero => "zero",
            CartanType::Negative => "negative",
        })
    }
}

/// A type decision together with the leading principal minors it rests on.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeVerdict<F> {
    pub kind: CartanType,
    pub leading_minors: Vec<F>,
}

/// Result of a diagonal-equivalence test `A = D B D⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalence<F> {
    pub equivalent: bool,
    pub witness: Option<Vec<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Symmetrization<F> {
    /// `S = A·Δ⁻¹`, symmetric.
    pub symmetric: Matrix<F>,
    /// The diagonal of `Δ`.
    pub delta: Vec<F>,
}

/// Inertia `(n₊, n₋, n₀)` of a symmetric matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl<F: Scalar> CartanMatrix<F> {
    fn check_shape(matrix: &Matrix<F>, labels: &[String]) -> Result<(), CartanError> {
        if !matrix.is_square() {
            return Err(CartanError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let n = matrix.rows();
        if labels.len() != n {
            return Err(CartanError::LabelCount(labels.len(), n));
        }
        let two = F::from_int(2);
        for i in 0..n {
            if matrix[(i, i)] != two {
                return Err(CartanError::Diagonal(i, matrix[(i, i)].to_string()));
            }
            for j in 0..i {
                if matrix[(i, j)].is_zero() != matrix[(j, i)].is_zero() {
                    return Err(CartanError::ZeroPattern(i, j));
                }
            }
        }
        Ok(())
    }

    /// Builds a matrix whose off-diagonal signs are not decidable pointwise
    /// (rational functions); only the diagonal and zero pattern are checked.
    /// Sign conditions on a parameter interval are the caller's certificate.
    pub fn unchecked_signs(matrix: Matrix<F>, labels: Vec<String>) -> Result<Self, CartanError> {
        Self::check_shape(&matrix, &labels)?;
        Ok(CartanMatrix { matrix, labels })
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.matrix[(i, j)]
    }

    /// Principal submatrix on `idx`, keeping labels.
    pub fn restrict(&self, idx: &[usize]) -> CartanMatrix<F> {
        CartanMatrix {
            matrix: self.matrix.principal(idx),
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    /// Principal submatrix on the indices set in `mask`.
    pub fn restrict_mask(&self, mask: u32) -> CartanMatrix<F> {
        let idx: Vec<usize> = (0..self.size()).filter(|i| mask >> i & 1 == 1).collect();
        self.restrict(&idx)
    }

    /// Connected components of the graph with an edge wherever `A_ij ≠ 0`,
    /// each sorted, ordered by smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if !seen[j] && !self.matrix[(i, j)].is_zero() {
                        seen[j] = true;
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.size() > 0 && self.components().len() == 1
    }

    /// Exact rank (generic rank over the function field for rational-function entries).
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Conjugates by the index permutation `perm` (new index `perm[i]` holds old `i`).
    pub fn permuted(&self, perm: &[usize]) -> CartanMatrix<F> {
        let n = self.size();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut labels = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
        }
        CartanMatrix {
            matrix: Matrix::from_fn(n, n, |i, j| self.matrix[(inv[i], inv[j])].clone()),
            labels,
        }
    }
}

impl<F: Field> CartanMatrix<F> {
    /// Decides `self = D·other·D⁻¹` for a diagonal `D` by propagating `D`
    /// along a spanning forest and checking every entry.
    ///
    /// For ordered scalars the witness is positive automatically: each
    /// propagation step multiplies by a ratio of two negative entries.
    pub fn equivalent(&self, other: &CartanMatrix<F>) -> Equivalence<F> {
        let no = Equivalence {
            equivalent: false,
            witness: None,
        };
        let n = self.size();
        if other.size() != n {
            return no;
        }
        let (a, b) = (&self.matrix, &other.matrix);
        for i in 0..n {
            for j in 0..n {
                if a[(i, j)].is_zero() != b[(i, j)].is_zero() || (i == j && a[(i, i)] != b[(i, i)])
                {
                    return no;
                }
            }
        }
        // A_ij = d_i B_ij / d_j  ⇒  d_j = d_i B_ij / A_ij
        let mut d: Vec<Option<F>> = vec![None; n];
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            d[root] = Some(F::one());
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                let di = d[i].clone().expect("visited");
                for j in 0..n {
                    if d[j].is_none() && !a[(i, j)].is_zero() {
                        let dj = (di.clone() * &b[(i, j)])
                            .div(&a[(i, j)])
                            .expect("nonzero entry");
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                }
            }
        }
        let d: Vec<F> = d.into_iter().map(|x| x.expect("all visited")).collect();
        for i in 0..n {
            for j in 0..n {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let rhs = (d[i].clone() * &b[(i, j)]).div(&d[j]).expect("nonzero");
                if a[(i, j)] != rhs {
                    return no;
                }
            }
        }
        Equivalence {
            equivalent: true,
            witness: Some(d),
        }
    }

    /// Finds `Δ` with `A·Δ⁻¹` symmetric, propagating from the last index of
    /// each component (`Δ_root = 1`).
    pub fn symmetrize(&self) -> Result<Symmetrization<F>, CartanError> {
        let n = self.size();
        let a = &self.matrix;
        // S_ij = A_ij/Δ_j = A_ji/Δ_i  ⇒  Δ_j = Δ_i A_ij / A_ji
        let mut delta: Vec<Option<F>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        for root in (0..n).rev() {
            if delta[root].is_some() {
                continue;
            }
            delta[root] = Some(F::one());
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                let di = delta[i].clone().expect("visited");
                for j in 0..n {
                    if delta[j].is_none() && !a[(i, j)].is_zero() {
                        delta[j] = Some(
                            (di.clone() * &a[(i, j)])
                                .div(&a[(j, i)])
                                .expect("symmetric zero pattern"),
                        );
                        parent[j] = i;
                        queue.push_back(j);
                    }
                }
            }
        }
        let delta: Vec<F> = delta.into_iter().map(|x| x.expect("all visited")).collect();
        let inv: Vec<F> = delta.iter().map(|x| x.inv().expect("nonzero")).collect();
        let s = Matrix::from_fn(n, n, |i, j| a[(i, j)].clone() * &inv[j]);
        for i in 0..n {
            for j in 0..i {
                if s[(i, j)] != s[(j, i)] {
                    return Err(CartanError::NotSymmetrizable(tree_cycle(&parent, i, j)));
                }
            }
        }
        Ok(Symmetrization {
            symmetric: s,
            delta,
        })
    }
}

/// The cycle closed by the non-tree edge `(i, j)`.
fn tree_cycle(parent: &[usize], i: usize, j: usize) -> Vec<usize> {
    let path = |mut v: usize| {
        let mut p = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let (pi, pj) = (path(i), path(j));
    let common = pi.iter().find(|v| pj.contains(v)).copied();
    let mut cycle: Vec<usize> = pi
        .iter()
        .copied()
        .take_while(|&v| Some(v) != common)
        .collect();
    cycle.extend(common);
    let back: Vec<usize> = pj
        .iter()
        .copied()
        .take_while(|&v| Some(v) != common)
        .collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

impl<F: OrderedField> CartanMatrix<F> {
    /// Builds a pointwise Cartan matrix, checking all invariants.
    pub fn new(matrix: Matrix<F>, labels: Option<Vec<String>>) -> Result<Self, CartanError> {
        let labels = labels.unwrap_or_else(|| default_labels(matrix.rows()));
        Self::check_shape(&matrix, &labels)?;
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                if i != j && matrix[(i, j)].sign() == Sign::Positive {
                    return Err(CartanError::PositiveEntry(i, j));
                }
            }
        }
        Ok(CartanMatrix { matrix, labels })
    }

    /// Vinberg type of an irreducible matrix.
    ///
    /// Positive iff all leading principal minors are positive. Zero iff the
    /// minors of orders `1..N-1` are positive and the determinant vanishes:
    /// then `2I − A` is irreducible and nonnegative, its leading block has
    /// spectral radius below 2 and 2 is an eigenvalue, so the Perron root is
    /// exactly 2. Negative otherwise.
    pub fn classify(&self) -> Result<TypeVerdict<F>, CartanError> {
        let comps = self.components().len();
        if comps != 1 {
            return Err(CartanError::Reducible(comps));
        }
        let minors = self.matrix.leading_principal_minors();
        let n = minors.len();
        let proper_positive = minors[..n - 1].iter().all(|m| m.sign() == Sign::Positive);
        let kind = match (proper_positive, minors[n - 1].sign()) {
            (true, Sign::Positive) => CartanType::Positive,
            (true, Sign::Zero) => CartanType::Zero,
            _ => CartanType::Negative,
        };
        Ok(TypeVerdict {
            kind,
            leading_minors: minors,
        })
    }

    /// Type of every component, in [`CartanMatrix::components`] order.
    pub fn component_types(&self) -> Vec<(Vec<usize>, CartanType)> {
        self.components()
            .into_iter()
            .map(|c| {
                let kind = self
                    .restrict(&c)
                    .classify()
                    .expect("components are irreducible")
                    .kind;
                (c, kind)
            })
            .collect()
    }
}

/// Inertia of a symmetric matrix by congruence diagonalization.
///
/// A nonzero diagonal pivot is eliminated directly. When the remaining
/// diagonal vanishes but some `s_ij ≠ 0`, the block `[[0, b], [b, 0]]`
/// contributes one positive and one negative direction and is eliminated
/// as a 2×2 pivot.
pub fn signature<F: OrderedField>(s: &Matrix<F>) -> Inertia {
    assert!(s.is_symmetric(), "signature needs a symmetric matrix");
    let mut a = s.clone();
    let mut live: Vec<usize> = (0..a.rows()).collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&i| !a[(i, i)].is_zero()) {
            let p = live.swap_remove(pos);
            let piv = a[(p, p)].clone();
            match piv.sign() {
                Sign::Positive => out.positive += 1,
                _ => out.negative += 1,
            }
            let inv = piv.inv().expect("nonzero pivot");
            for &i in &live {
                let f = a[(i, p)].clone() * &inv;
                if f.is_zero() {
                    continue;
                }
                for &j in &live {
                    let v = a[(i, j)].clone() - f.clone() * &a[(p, j)];
                    a[(i, j)] = v;
                }
            }
            continue;
        }
        let pair = live
            .iter()
            .enumerate()
            .flat_map(|(x, &i)| live[x + 1..].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| !a[(i, j)].is_zero());
        let Some((p, q)) = pair else {
            out.zero += live.len();
            break;
        };
        live.retain(|&k| k != p && k != q);
        out.positive += 1;
        out.negative += 1;
        // Schur complement of [[0,b],[b,0]]: S_kl -= (a_kp a_ql + a_kq a_pl)/b
        let binv = a[(p, q)].inv().expect("nonzero");
        let snapshot = a.clone();
        for &k in &live {
            for &l in &live {
                let corr = (snapshot[(k, p)].clone() * &snapshot[(q, l)]
                    + snapshot[(k, q)].clone() * &snapshot[(p, l)])
                    * &binv;
                a[(k, l)] = snapshot[(k, l)].clone() - corr;
            }
        }
    }
    out
}

impl CartanMatrix<RationalFunction> {
    /// Rank over the function field, without rational-function arithmetic.
    pub fn generic_rank(&self) -> usize {
        self.matrix.generic_rank()
    }
}

/// A matrix read from the text format, in its declared domain.
#[derive(Clone, Debug)]
pub enum ParsedMatrix {
    Rational(CartanMatrix<Rational>),
    Tower(CartanMatrix<TowerElement>),
    Function(CartanMatrix<RationalFunction>),
}

impl ParsedMatrix {
    pub fn domain(&self) -> &'static str {
        match self {
            ParsedMatrix::Rational(_) => "rational",
            ParsedMatrix::Tower(_) => "tower",
            ParsedMatrix::Function(_) => "function-of-t",
        }
    }
}

/// Parses the matrix text format:
///
/// ```text
/// # comment
/// size 2
/// domain rational        # rational | tower | function-of-t
/// labels a b             # optional
/// 2 -1
/// -1 2
/// ```
///
/// Entries are whitespace-separated and use the exact serializations
/// (`p/q`, `(a,b,c,d)`, `[n0,n1]/[d0,d1]`).
pub fn parse_matrix(text: &str) -> Result<ParsedMatrix, CartanError> {
    let mut size = None;
    let mut domain = None;
    let mut labels = None;
    let mut entries: Vec<(usize, String)> = Vec::new();
    let perr = |line: usize, message: String| CartanError::Parse { line, message };
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("size") => {
                let v = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| perr(line_no, "size needs a positive integer".into()))?;
                size = Some(v);
            }
            Some("domain") => {
                let d = words
                    .next()
                    .ok_or_else(|| perr(line_no, "domain needs a value".into()))?;
                if !["rational", "tower", "function-of-t"].contains(&d) {
                    return Err(perr(line_no, format!("unknown domain {d:?}")));
                }
                domain = Some(d.to_string());
            }
            Some("labels") => labels = Some(words.map(str::to_string).collect::<Vec<_>>()),
            Some(_) => entries.extend(line.split_whitespace().map(|w| (line_no, w.to_string()))),
            None => {}
        }
    }
    let n = size.ok_or_else(|| perr(0, "missing size line".into()))?;
    let domain = domain.ok_or_else(|| perr(0, "missing domain line".into()))?;
    if entries.len() != n * n {
        let line = entries.last().map_or(0, |e| e.0);
        return Err(perr(
            line,
            format!("expected {} entries, found {}", n * n, entries.len()),
        ));
    }
    fn parse_all<T>(
        entries: &[(usize, String)],
        f: impl Fn(&str) -> Result<T, ExactError>,
    ) -> Result<Vec<T>, CartanError> {
        entries
            .iter()
            .map(|(line, w)| {
                f(w).map_err(|e| CartanError::Parse {
                    line: *line,
                    message: e.to_string(),
                })
            })
            .collect()
    }
    Ok(match domain.as_str() {
        "rational" => ParsedMatrix::Rational(CartanMatrix::new(
            Matrix::new(n, n, parse_all(&entries, crate::exactnum::parse_rational)?),
            labels,
        )?),
        "tower" => ParsedMatrix::Tower(CartanMatrix::new(
            Matrix::new(n, n, parse_all(&entries, str::parse::<TowerElement>)?),
            labels,
        )?),
        _ => ParsedMatrix::Function(CartanMatrix::unchecked_signs(
            Matrix::new(n, n, parse_all(&entries, str::parse::<RationalFunction>)?),
            labels.unwrap_or_else(|| default_labels(n)),
        )?),
    })
}

/// Writes a pointwise or symbolic matrix in the text format.
pub fn write_matrix<F: Scalar>(a: &CartanMatrix<F>, domain: &str) -> String {
    let mut out = format!(
        "size {}\ndomain {domain}\nlabels {}\n",
        a.size(),
        a.labels().join(" ")
    );
    for i in 0..a.size() {
        let row: Vec<String> = a.matrix().row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

impl<F: fmt::Debug> fmt::Debug for CartanMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartanMatrix {:?} {:?}", self.labels, self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn cm(rows: &[&[i64]]) -> CartanMatrix<Rational> {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        );
        CartanMatrix::new(m, None).unwrap()
    }

    #[test]
    fn invariants_are_enforced() {
        let bad = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(2)]]);
        assert_eq!(
            CartanMatrix::new(bad, None).unwrap_err(),
            CartanError::PositiveEntry(0, 1)
        );
        let pattern = Matrix::from_rows(vec![vec![int(2), int(-1)], vec![int(0), int(2)]]);
        assert!(matches!(
            CartanMatrix::new(pattern, None),
            Err(CartanError::ZeroPattern(..))
        ));
        let diag = Matrix::from_rows(vec![vec![int(3)]]);
        assert!(matches!(
            CartanMatrix::new(diag, None),
            Err(CartanError::Diagonal(0, _))
        ));
    }

    #[test]
    fn components_examples() {
        assert_eq!(cm(&[&[2, 0], &[0, 2]]).components(), vec![vec![0], vec![1]]);
        let a2a2 = cm(&[
            &[2, -1, 0, 0],
            &[-1, 2, 0, 0],
            &[0, 0, 2, -1],
            &[0, 0, -1, 2],
        ]);
        assert_eq!(a2a2.components().len(), 2);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            cm(&[&[2, -1], &[-1, 2]]).classify().unwrap().kind,
            CartanType::Positive
        );
        assert_eq!(
            cm(&[&[2, -2], &[-2, 2]]).classify().unwrap().kind,
            CartanType::Zero
        );
        assert_eq!(
            cm(&[&[2, -3], &[-3, 2]]).classify().unwrap().kind,
            CartanType::Negative
        );
        // affine triangle
        let tri = cm(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(tri.classify().unwrap().kind, CartanType::Zero);
        assert_eq!(tri.rank(), 2);
        assert_eq!(
            cm(&[&[2, 0], &[0, 2]]).classify().unwrap_err(),
            CartanError::Reducible(2)
        );
    }

    #[test]
    fn rank_of_diagonal_pattern() {
        assert_eq!(cm(&[&[2, 0], &[0, 2]]).rank(), 2);
    }

    #[test]
    fn equivalence_examples() {
        let a = cm(&[&[2, -1], &[-1, 2]]);
        let e = a.equivalent(&a);
        assert!(e.equivalent);
        assert_eq!(e.witness.unwrap(), vec![int(1), int(1)]);
        assert!(!a.equivalent(&cm(&[&[2, -2], &[-2, 2]])).equivalent);
        // [[2,-4],[-1/4... ]] style: D = diag(1, 2)
        let b = CartanMatrix::new(
            Matrix::from_rows(vec![vec![int(2), rat(-1, 2)], vec![int(-2), int(2)]]),
            None,
        )
        .unwrap();
        assert!(a.equivalent(&b).equivalent);
    }

    #[test]
    fn symmetrize_examples() {
        let sym = cm(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let s = sym.symmetrize().unwrap();
        assert_eq!(&s.symmetric, sym.matrix());
        assert!(s.delta.iter().all(|d| *d == int(1)));
        // 3-cycle with products 1·1·1 ≠ 2·1·1
        let bad = cm(&[&[2, -1, -1], &[-2, 2, -1], &[-1, -1, 2]]);
        assert!(matches!(
            bad.symmetrize(),
            Err(CartanError::NotSymmetrizable(_))
        ));
        let b2 = cm(&[&[2, -2], &[-1, 2]]);
        let s = b2.symmetrize().unwrap();
        assert!(s.symmetric.is_symmetric());
    }

    #[test]
    fn signature_examples() {
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(
            signature(&id),
            Inertia {
                positive: 3,
                negative: 0,
                zero: 0
            }
        );
        let d = Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(-1), int(0)],
            vec![int(0), int(0), int(0)],
        ]);
        assert_eq!(
            signature(&d),
            Inertia {
                positive: 1,
                negative: 1,
                zero: 1
            }
        );
        // zero diagonal forces the 2x2 block step
        let h = Matrix::from_rows(vec![
            vec![int(0), int(1), int(2)],
            vec![int(1), int(0), int(3)],
            vec![int(2), int(3), int(0)],
        ]);
        // det = 12 > 0 with trace 0: one positive, two negative
        assert_eq!(
            signature(&h),
            Inertia {
                positive: 1,
                negative: 2,
                zero: 0
            }
        );
    }

    #[test]
    fn parse_and_write_roundtrip() {
        let text = "# A2\nsize 2\ndomain rational\n2 -1\n-1 2\n";
        let ParsedMatrix::Rational(a) = parse_matrix(text).unwrap() else {
            panic!("wrong domain");
        };
        assert_eq!(a, cm(&[&[2, -1], &[-1, 2]]));
        let again = parse_matrix(&write_matrix(&a, "rational")).unwrap();
        assert!(matches!(again, ParsedMatrix::Rational(b) if b == a));
        let err = parse_matrix("size 2\ndomain rational\n2 -1\n-1 x\n").unwrap_err();
        assert!(matches!(err, CartanError::Parse { line: 4, .. }));
        let f = parse_matrix("size 1\ndomain function-of-t\n[2]\n").unwrap();
        assert_eq!(f.domain(), "function-of-t");
    }
}
