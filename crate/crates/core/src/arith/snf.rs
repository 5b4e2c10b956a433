use super::matrix::Matrix;
use super::scalar::{Overflow, Scalar};

/// Smith normal form `U * M * V = D` with unimodular `U`, `V`.
///
/// `D` has the shape of `M`, nonnegative diagonal entries `d_0 | d_1 | ...`
/// (trailing zeros allowed) and zeros elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult<T: Scalar> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Scalar> SnfResult<T> {
    pub fn diagonal(&self) -> Vec<T> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Position of the nonzero entry of least absolute value in the lower-right
/// block starting at `(t, t)`; ties go to the first entry in row-major order.
fn smallest_entry<T: Scalar>(m: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..m.rows() {
        for c in t..m.cols() {
            let e = &m[(r, c)];
            if e.is_zero() {
                continue;
            }
            match best {
                Some(b) if m[b].abs() <= e.abs() => {}
                _ => best = Some((r, c)),
            }
        }
    }
    best
}

/// `a / b` rounded to the nearest integer, so the remainder is at most
/// `|b| / 2`; this keeps the transforms small.
fn nearest_quotient<T: Scalar>(a: &T, b: &T) -> T {
    let q = a.clone() / b.clone();
    let r = a.clone() - q.clone() * b.clone();
    if r.abs() > b.abs() - r.abs() {
        q + r.signum() * b.signum()
    } else {
        q
    }
}

/// Computes the Smith normal form with transformation matrices.
///
/// Pivoting is deterministic: at each stage the entry of smallest absolute
/// value is moved to the pivot (row-major tiebreak), then its row and column
/// are cleared by Euclidean steps.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> Result<SnfResult<T>, Overflow> {
    let (rows, cols) = m.shape();
    let mut d = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = smallest_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let piv = d[(t, t)].clone();
            for r in t + 1..rows {
                if !d[(r, t)].is_zero() {
                    let q = nearest_quotient(&d[(r, t)], &piv);
                    d.row_sub_mul(r, &q, t)?;
                    u.row_sub_mul(r, &q, t)?;
                }
            }
            for c in t + 1..cols {
                if !d[(t, c)].is_zero() {
                    let q = nearest_quotient(&d[(t, c)], &piv);
                    d.col_sub_mul(c, &q, t)?;
                    v.col_sub_mul(c, &q, t)?;
                }
            }

            // Remainders smaller than the pivot: bring the smallest one in.
            let mut smaller: Option<(usize, usize)> = None;
            for r in t + 1..rows {
                if !d[(r, t)].is_zero() && smaller.is_none_or(|s| d[(r, t)].abs() < d[s].abs()) {
                    smaller = Some((r, t));
                }
            }
            for c in t + 1..cols {
                if !d[(t, c)].is_zero() && smaller.is_none_or(|s| d[(t, c)].abs() < d[s].abs()) {
                    smaller = Some((t, c));
                }
            }
            if let Some((r, c)) = smaller {
                if c == t {
                    d.swap_rows(t, r);
                    u.swap_rows(t, r);
                } else {
                    d.swap_cols(t, c);
                    v.swap_cols(t, c);
                }
                continue;
            }

            // Row and column are clear; enforce divisibility of the rest.
            let piv = d[(t, t)].clone();
            let offender = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !d[(r, c)].is_multiple_of(&piv)));
            match offender {
                Some(r) => {
                    let minus_one = -T::one();
                    d.row_sub_mul(t, &minus_one, r)?;
                    u.row_sub_mul(t, &minus_one, r)?;
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    Ok(SnfResult { u, d, v })
}
