//! Dense matrices with exact determinant, rank and kernel.

use std::fmt;

use num_traits::Zero;

use super::scalar::{ExactDiv, Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("matrix is {rows}x{cols}, expected a square matrix")]
pub struct NotSquare {
    pub rows: usize,
    pub cols: usize,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc = acc.add_ref(&a.mul_ref(&rhs[(k, j)]));
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: ExactDiv> Matrix<T> {
    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<T, NotSquare> {
        if self.rows != self.cols {
            return Err(NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.to_rows();
        let mut prev = T::one();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(T::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                    a[i][j] = v.div_exact(&prev);
                }
                a[i][k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg_ref() } else { d })
    }

    /// Rank by Bareiss elimination with row and column search for pivots.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut prev = T::one();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            for i in r + 1..m {
                for j in c + 1..n {
                    let v = a[i][j].mul_ref(&a[r][c]).sub_ref(&a[i][c].mul_ref(&a[r][j]));
                    a[i][j] = v.div_exact(&prev);
                }
                a[i][c] = T::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].inv();
            for j in c..n {
                a[r][j] = a[r][j].mul_ref(&inv);
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..n {
                        let v = a[i][j].sub_ref(&f.mul_ref(&a[r][j]));
                        a[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::from_rows_sized(a, m, n), pivots)
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (e, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = e[(r, f)].neg_ref();
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (e, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| e[(i, n + j)].clone()))
    }
}

impl<T> Matrix<T> {
    fn from_rows_sized(rows: Vec<Vec<T>>, m: usize, n: usize) -> Self {
        Matrix {
            rows: m,
            cols: n,
            data: rows.into_iter().flatten().collect(),
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{int, Rational};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    fn cofactor_det(m: &Matrix<Rational>) -> Rational {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = int(0);
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let t = &m[(0, j)] * cofactor_det(&m.select(&rows, &cols));
            acc = if j % 2 == 0 { acc + t } else { acc - t };
        }
        acc
    }

    #[test]
    fn small_determinants() {
        assert_eq!(Matrix::<Rational>::identity(2).det().unwrap(), int(1));
        let m = qm(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(m.det().unwrap(), int(0));
        assert!(qm(&[&[1, 2]]).det().is_err());
        let p = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.det().unwrap(), int(-1));
    }

    #[test]
    fn toric_rows_are_dependent() {
        // second and third rows of the first two toric cameras
        let m = qm(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(m.det().unwrap(), int(0));
        assert_eq!(cofactor_det(&m), int(0));
    }

    #[test]
    fn kernel_and_rank() {
        let a = qm(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(a.kernel(), vec![vec![int(1), int(0), int(0), int(0)]]);
        assert!(qm(&[&[2, 1, 0], &[0, 1, 0], &[1, 1, 1]]).kernel().is_empty());
        assert_eq!(Matrix::<Rational>::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn integer_bareiss_agrees() {
        let m = Matrix::from_rows(vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(-1), BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(0), BigInt::from(-1), BigInt::from(2)],
        ]);
        assert_eq!(m.det().unwrap(), BigInt::from(4));
    }

    fn small_matrix(n: usize, m: usize) -> impl Strategy<Value = Matrix<Rational>> {
        proptest::collection::vec(-3i64..=3, n * m).prop_map(move |v| {
            Matrix::from_fn(n, m, |i, j| int(v[i * m + j]))
        })
    }

    proptest! {
        #[test]
        fn det_matches_cofactor(m in small_matrix(4, 4)) {
            prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
        }

        #[test]
        fn det_is_alternating_and_linear(m in small_matrix(3, 3), k in -4i64..=4) {
            let mut swapped = m.to_rows();
            swapped.swap(0, 2);
            let swapped = Matrix::from_rows(swapped);
            prop_assert_eq!(swapped.det().unwrap(), -m.det().unwrap());
            let mut scaled = m.to_rows();
            for v in scaled[1].iter_mut() {
                *v = &*v * int(k);
            }
            prop_assert_eq!(Matrix::from_rows(scaled).det().unwrap(), m.det().unwrap() * int(k));
        }

        #[test]
        fn rank_nullity(m in small_matrix(3, 5)) {
            let ker = m.kernel();
            prop_assert_eq!(m.rank() + ker.len(), 5);
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }
}
