use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::{self, Overflow, Scalar};

/// Dense row-major integer matrix.
///
/// Products follow the diagrammatic convention used throughout the crate:
/// rows index the source and `(f * g)[r][c] = sum_k f[r][k] * g[k][c]` is
/// "apply `f`, then `g`". For plain matrices this is the ordinary product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row-major data.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length does not match shape");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from a list of rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn map<F: FnMut(usize, usize, &T) -> T>(&self, mut f: F) -> Self {
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = f(r, c, &self[(r, c)]);
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let prod = scalar::mul(a, &rhs[(k, c)])?;
                    out[(r, c)] = scalar::add(&out[(r, c)], &prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| scalar::add(a, b)).collect::<Result<_, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| scalar::sub(a, b)).collect::<Result<_, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        self.map(|_, _, a| -a.clone())
    }

    /// Block-diagonal sum `[[self, 0], [0, other]]`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vcat column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reorders rows: row `i` of `self` becomes row `perm[i]` of the result.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, &to) in perm.iter().enumerate() {
            for c in 0..self.cols {
                out[(to, c)] = self[(i, c)].clone();
            }
        }
        out
    }

    /// Reorders columns: column `j` of `self` becomes column `perm[j]` of the result.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        let mut out = Self::zeros(self.rows, self.cols);
        for (j, &to) in perm.iter().enumerate() {
            for r in 0..self.rows {
                out[(r, to)] = self[(r, j)].clone();
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[target] -= q * row[source]`.
    pub fn row_sub_mul(&mut self, target: usize, q: &T, source: usize) -> Result<(), Overflow> {
        for c in 0..self.cols {
            let v = scalar::sub_mul(&self[(target, c)], q, &self[(source, c)])?;
            self[(target, c)] = v;
        }
        Ok(())
    }

    /// `col[target] -= q * col[source]`.
    pub fn col_sub_mul(&mut self, target: usize, q: &T, source: usize) -> Result<(), Overflow> {
        for r in 0..self.rows {
            let v = scalar::sub_mul(&self[(r, target)], q, &self[(r, source)])?;
            self[(r, target)] = v;
        }
        Ok(())
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self[(r, c)].clone();
            self[(r, c)] = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T, Overflow> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lhs = scalar::mul(&a[(i, j)], &a[(k, k)])?;
                    let rhs = scalar::mul(&a[(i, k)], &a[(k, j)])?;
                    a[(i, j)] = scalar::sub(&lhs, &rhs)? / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        scalar::mul(&sign, &a[(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> Result<bool, Overflow> {
        Ok(self.rows == self.cols && self.determinant()?.abs().is_one())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_diagrammatic() {
        let f = Matrix::from_rows(vec![vec![1i64, 4]]);
        let g = Matrix::from_rows(vec![vec![-4i64], vec![1]]);
        assert!(f.checked_mul(&g).unwrap().is_zero());
        assert_eq!(g.checked_mul(&f).unwrap(), Matrix::from_rows(vec![vec![-4, -16], vec![1, 4]]));
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_rows(vec![vec![4i64, 6], vec![2, 2]]);
        assert_eq!(m.determinant().unwrap(), -4);
        let m = Matrix::from_rows(vec![vec![0i64, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(m.determinant().unwrap(), -2);
        assert_eq!(Matrix::<i64>::identity(0).determinant().unwrap(), 1);
    }

    #[test]
    fn permutations_move_rows_and_cols() {
        let m = Matrix::from_rows(vec![vec![1i64, 2], vec![3, 4]]);
        assert_eq!(m.permute_rows(&[1, 0]), Matrix::from_rows(vec![vec![3, 4], vec![1, 2]]));
        assert_eq!(m.permute_cols(&[1, 0]), Matrix::from_rows(vec![vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn overflow_is_reported() {
        let m = Matrix::from_rows(vec![vec![i64::MAX]]);
        assert_eq!(m.checked_mul(&Matrix::from_rows(vec![vec![2]])), Err(Overflow));
    }
}
