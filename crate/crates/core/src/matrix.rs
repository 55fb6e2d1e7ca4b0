//! Dense matrices over a [`Ring`] and exact elimination over a
//! [`DivisionRing`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{DivisionRing, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self { rows: n, cols: m, data: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.into_iter().enumerate() {
            m[(i, i)] = x;
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix product; entries are multiplied in order `self[i,k] · rhs[k,j]`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].checked_add(&a.checked_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.checked_add(b)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.checked_sub(b)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// `c · self` with the scalar on the left of every entry.
    pub fn scale_left(&self, c: &T) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Matrix<T>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("column length".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect())
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

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

/// Reduced row echelon form computed with left row operations.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: DivisionRing> Matrix<T> {
    /// Pivot choice: largest [`DivisionRing::pivot_weight`], ties broken by
    /// lowest row index (so exact arithmetic always takes the first nonzero
    /// entry).
    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in from..self.rows {
            let w = self.get(r, col).pivot_weight();
            if w > 0.0 && best.is_none_or(|(_, bw)| w > bw) {
                best = Some((r, w));
            }
        }
        best.map(|(r, _)| r)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn echelon(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.pivot_row(c, r) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).try_inv().expect("pivot is invertible");
            for j in 0..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = inv.clone() * m.data[idx].clone();
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let sub = f.clone() * m.get(r, j).clone();
                    let idx = i * m.cols + j;
                    m.data[idx] = m.data[idx].clone() - sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column, with a 1 in
    /// that column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let Echelon { reduced, pivots } = self.echelon();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse by Gauss-Jordan elimination on `[self | I]`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self.get(i, j).clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::NotInvertible("singular matrix".into()));
        }
        Ok(Self::from_fn(n, n, |i, j| reduced.get(i, n + j).clone()))
    }

    /// Solves `self · x = b`, returning `None` if the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let n = self.cols;
        let aug = Self::from_fn(self.rows, n + 1, |i, j| if j < n { self.get(i, j).clone() } else { b[i].clone() });
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![T::zero(); n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(row, n).clone();
        }
        Ok(Some(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Scalar> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Scalar::from).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(&Matrix::identity(2) * &a, a);
        assert_eq!(&a * &Matrix::identity(2), a);
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(3));
        assert!(m(vec![vec![1, 2], vec![2, 4]]).inverse().is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(vec![vec![1, 1], vec![1, -1]]);
        let x = a.solve(&[Scalar::from(3), Scalar::from(1)]).unwrap().unwrap();
        assert_eq!(x, vec![Scalar::from(2), Scalar::from(1)]);
        let b = m(vec![vec![1, 1], vec![2, 2]]);
        assert!(b.solve(&[Scalar::from(1), Scalar::from(3)]).unwrap().is_none());
    }

    #[test]
    fn dimension_errors() {
        let a = m(vec![vec![1, 2]]);
        assert!(a.try_mul(&a).is_err());
        assert!(a.try_add(&m(vec![vec![1]])).is_err());
    }
}
