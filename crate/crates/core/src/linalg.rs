//! Dense exact linear algebra over ℚ(i).
//!
//! Two independent eliminations are provided: a fraction-free (Bareiss)
//! forward elimination and a textbook Gauss–Jordan reduction. The oracle
//! uses the first and cross-checks it with the second.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{HoloformError, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(HoloformError::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Inverse of a square matrix, `SingularLinearPart` if singular.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(HoloformError::DimensionMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (rref, pivots) = gauss_jordan(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(HoloformError::SingularLinearPart);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = rref[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form by Gauss–Jordan with pivot normalization.
/// Returns the reduced matrix and its pivot columns.
pub fn gauss_jordan(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].inverse().expect("pivot is nonzero");
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..a.cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let delta = &factor * &a[(r, j)];
                a[(i, j)] -= &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Fraction-free (Bareiss) forward elimination. Returns the echelon form
/// and pivot columns. Every update is
/// `a_ij ← (a_rc·a_ij − a_ic·a_rj) / previous_pivot`, an exact division.
pub fn bareiss_echelon(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut prev = Scalar::one();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let pivot = a[(r, c)].clone();
        for i in (r + 1)..a.rows {
            let lead = a[(i, c)].clone();
            for j in (c + 1)..a.cols {
                let num = &(&pivot * &a[(i, j)]) - &(&lead * &a[(r, j)]);
                a[(i, j)] = num.checked_div(&prev).expect("previous pivot nonzero");
            }
            a[(i, c)] = Scalar::zero();
        }
        // rows above the pivot row in columns < c are untouched; columns
        // skipped without a pivot keep their (zero below r) entries
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank and nullspace basis computed from the Bareiss echelon form by back
/// substitution. Basis vectors have a `1` in their free column.
pub fn nullspace_fraction_free(m: &Matrix) -> (usize, Vec<Vec<Scalar>>) {
    let (ech, pivots) = bareiss_echelon(m);
    let rank = pivots.len();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![Scalar::zero(); m.cols];
        x[f] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Scalar::zero();
            for j in (pc + 1)..m.cols {
                if !x[j].is_zero() && !ech[(r, j)].is_zero() {
                    acc += &(&ech[(r, j)] * &x[j]);
                }
            }
            x[pc] = (-acc).checked_div(&ech[(r, pc)]).expect("pivot nonzero");
        }
        basis.push(x);
    }
    (rank, basis)
}

/// Rank and nullspace from the Gauss–Jordan reduced form.
pub fn nullspace_naive(m: &Matrix) -> (usize, Vec<Vec<Scalar>>) {
    let (rref, pivots) = gauss_jordan(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); m.cols];
            x[f] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -&rref[(r, f)];
            }
            x
        })
        .collect();
    (pivots.len(), basis)
}

pub fn rank(m: &Matrix) -> usize {
    bareiss_echelon(m).1.len()
}

/// Solves `A x = b` for one particular solution, `None` if inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows, b.len());
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let (rref, pivots) = gauss_jordan(&aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rref[(r, a.cols)].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&m(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])), 2);
    }

    #[test]
    fn nullspaces_agree_and_annihilate() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let (r1, n1) = nullspace_fraction_free(&a);
        let (r2, n2) = nullspace_naive(&a);
        assert_eq!(r1, 2);
        assert_eq!(r1, r2);
        assert_eq!(n1, n2);
        for v in n1 {
            assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn gaussian_entries() {
        let a = Matrix::from_rows(vec![
            vec![Scalar::i(), s(1)],
            vec![s(1), -Scalar::i()],
        ]);
        // second row = -i * first row
        assert_eq!(rank(&a), 1);
        assert!(a.inverse().is_err());
        let b = Matrix::from_rows(vec![vec![Scalar::gaussian(1, 1), s(0)], vec![s(2), s(1)]]);
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[s(2), s(0)]), Some(vec![s(1), s(1)]));
        let b = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&b, &[s(1), s(3)]), None);
    }
}
