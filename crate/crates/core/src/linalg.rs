//! Dense matrices, vectors and elimination over exact rationals.
//!
//! Everything here is plain Gauss-Jordan at desk scale: reduced row
//! echelon form, rank, linear solves with an explicit null-space basis,
//! and column-independence tests. Empty shapes (zero rows or zero
//! columns) are legal and behave vacuously, which the certification
//! layers rely on for empty index sets.

use crate::rational::{format_rational, Rational};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// A vector of exact rationals.
pub type Vector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("column index {index} out of range for {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },
}

/// Row-major dense matrix over [`Rational`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    expected: ncols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::rational::rat(v)).collect())
            .collect();
        Matrix::from_rows(rows).expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Matrix, LinalgError> {
        for &c in indices {
            if c >= self.cols {
                return Err(LinalgError::ColumnOutOfRange {
                    index: c,
                    cols: self.cols,
                });
            }
        }
        let mut m = Matrix::zeros(self.rows, indices.len());
        for r in 0..self.rows {
            for (k, &c) in indices.iter().enumerate() {
                m.set(r, k, self.get(r, c).clone());
            }
        }
        Ok(m)
    }

    pub fn mul_vector(&self, v: &[Rational]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect())
    }

    /// `[self | v]` as one extra trailing column.
    pub fn augment_column(&self, v: &[Rational]) -> Result<Matrix, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::LengthMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut m = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            m.set(r, self.cols, v[r].clone());
        }
        Ok(m)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact dot product.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Reduced row echelon form together with the pivot columns in
/// increasing order.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).clone();
        for j in c..a.cols {
            let v = a.get(r, j) / &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..a.cols {
                let v = a.get(i, j) - &factor * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Number of pivot columns of `rref(m)`.
pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Outcome of an exact linear solve `M x = q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolveOutcome {
    /// The system has exactly one solution.
    Unique(Vector),
    /// The system is consistent with free variables; any solution is
    /// `particular + combination of null_basis`.
    WithFreeVariables {
        particular: Vector,
        null_basis: Vec<Vector>,
    },
    NoSolution,
}

/// Solves `M x = q` exactly by elimination on the augmented matrix.
pub fn solve_linear(m: &Matrix, q: &[Rational]) -> Result<LinearSolveOutcome, LinalgError> {
    let aug = m.augment_column(q)?;
    let (red, pivots) = rref(&aug);
    if pivots.contains(&m.cols) {
        return Ok(LinearSolveOutcome::NoSolution);
    }
    let mut particular = vec![Rational::zero(); m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = red.get(row, m.cols).clone();
    }
    if pivots.len() == m.cols {
        return Ok(LinearSolveOutcome::Unique(particular));
    }
    let null_basis = nullspace_from_rref(&red, &pivots, m.cols);
    Ok(LinearSolveOutcome::WithFreeVariables {
        particular,
        null_basis,
    })
}

fn nullspace_from_rref(red: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -red.get(row, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// A basis of `{v : M v = 0}`; empty when the columns are independent.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vector> {
    let (red, pivots) = rref(m);
    nullspace_from_rref(&red, &pivots, m.cols())
}

/// Whether the selected columns are linearly independent. The empty
/// selection is vacuously independent.
pub fn columns_independent(m: &Matrix, indices: &[usize]) -> Result<bool, LinalgError> {
    if indices.is_empty() {
        return Ok(true);
    }
    let sub = m.select_columns(indices)?;
    Ok(rank(&sub) == indices.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    pub(crate) fn example_34() -> Matrix {
        Matrix::from_i64(&[&[1, 0, -2, 5], &[0, 1, 4, -9], &[1, 0, -2, 5]])
    }

    pub(crate) fn example_46() -> Matrix {
        Matrix::from_i64(&[&[6, -4, 3, 4, -2], &[6, -4, -1, 4, 0], &[0, 2, 3, -1, -3]])
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let id = Matrix::identity(2);
        let (r, pivots) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_detects_duplicate_row() {
        // rows 0 and 2 coincide, so the echelon form has rank 2
        let (r, pivots) = rref(&example_34());
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.row(2), &[rat(0), rat(0), rat(0), rat(0)][..]);
        // echelon form exposes a3 = -2 a1 + 4 a2 and a4 = 5 a1 - 9 a2
        assert_eq!(r.get(0, 2), &rat(-2));
        assert_eq!(r.get(0, 3), &rat(5));
        assert_eq!(r.get(1, 2), &rat(4));
        assert_eq!(r.get(1, 3), &rat(-9));
    }

    #[test]
    fn rref_zero_matrix() {
        let z = Matrix::zeros(2, 3);
        let (r, pivots) = rref(&z);
        assert_eq!(r, z);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&example_34()), 2);
        assert_eq!(rank(&example_46()), 3);
        assert_eq!(rank(&Matrix::zeros(1, 1)), 0);
    }

    #[test]
    fn solve_unique_on_support_columns() {
        let a = example_34();
        let sub = a.select_columns(&[0, 1]).unwrap();
        let b = vec![rat(1), rat(-1), rat(1)];
        let got = solve_linear(&sub, &b).unwrap();
        assert_eq!(got, LinearSolveOutcome::Unique(vec![rat(1), rat(-1)]));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let q = vec![frac(3, 7), rat(-2)];
        let got = solve_linear(&Matrix::identity(2), &q).unwrap();
        assert_eq!(got, LinearSolveOutcome::Unique(q));
    }

    #[test]
    fn solve_single_row_has_free_variables() {
        let m = Matrix::from_i64(&[&[1, 1]]);
        match solve_linear(&m, &[rat(1)]).unwrap() {
            LinearSolveOutcome::WithFreeVariables {
                particular,
                null_basis,
            } => {
                assert_eq!(m.mul_vector(&particular).unwrap(), vec![rat(1)]);
                assert_eq!(null_basis.len(), 1);
                let v = &null_basis[0];
                assert_eq!(m.mul_vector(v).unwrap(), vec![rat(0)]);
                // proportional to (1, -1)
                assert_eq!(&v[0] + &v[1], rat(0));
                assert!(!v[0].is_zero());
            }
            other => panic!("expected free variables, got {other:?}"),
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        let got = solve_linear(&m, &[rat(0), rat(1)]).unwrap();
        assert_eq!(got, LinearSolveOutcome::NoSolution);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&Matrix::identity(3)).is_empty());
        assert_eq!(nullspace_basis(&example_34()).len(), 2);
        let one_row = Matrix::from_i64(&[&[1, 1]]);
        let basis = nullspace_basis(&one_row);
        assert_eq!(basis.len(), 1);
        assert_eq!(one_row.mul_vector(&basis[0]).unwrap(), vec![rat(0)]);
    }

    #[test]
    fn column_independence_examples() {
        let a = example_34();
        assert!(columns_independent(&a, &[]).unwrap());
        assert!(columns_independent(&a, &[0, 1]).unwrap());
        // a3 = -2 a1 + 4 a2
        assert!(!columns_independent(&a, &[0, 1, 2]).unwrap());
        assert!(matches!(
            columns_independent(&a, &[4]),
            Err(LinalgError::ColumnOutOfRange { index: 4, cols: 4 })
        ));
    }

    #[test]
    fn zero_column_shapes_are_legal() {
        let empty = Matrix::zeros(3, 0);
        assert_eq!(rank(&empty), 0);
        match solve_linear(&empty, &[rat(0), rat(0), rat(0)]).unwrap() {
            LinearSolveOutcome::Unique(v) => assert!(v.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            solve_linear(&empty, &[rat(0), rat(1), rat(0)]).unwrap(),
            LinearSolveOutcome::NoSolution
        );
    }
}
