use super::matrix::Matrix;
use super::scalar::{self, mod_inverse, Scalar};
use super::snf::smith_normal_form;
use crate::error::{contract, Result};

/// Finds `x` with `sum_j a[i][j] * x[j] ≡ b[i] (mod moduli[i])` for every row `i`.
///
/// Rows are scaled to the common modulus `L = lcm(moduli)`, the system is
/// diagonalised by Smith normal form and each diagonal congruence is solved
/// separately. Returns `None` iff the system has no solution; a returned
/// solution has entries in `[0, L)`.
pub fn solve_linear_congruences<T: Scalar>(a: &Matrix<T>, b: &[T], moduli: &[T]) -> Result<Option<Vec<T>>> {
    let (rows, cols) = a.shape();
    if b.len() != rows || moduli.len() != rows {
        return contract(format!(
            "congruence system has {rows} rows but {} right-hand sides and {} moduli",
            b.len(),
            moduli.len()
        ));
    }
    if moduli.iter().any(|m| *m < T::one()) {
        return contract("congruence moduli must be positive");
    }
    let lcm = moduli.iter().fold(T::one(), |acc, m| acc.lcm(m));
    if lcm.is_one() {
        return Ok(Some(vec![T::zero(); cols]));
    }

    let mut scaled = a.clone();
    let mut rhs = Vec::with_capacity(rows);
    for i in 0..rows {
        let f = lcm.clone() / moduli[i].clone();
        for j in 0..cols {
            scaled[(i, j)] = scalar::mul(&a[(i, j)].mod_floor(&moduli[i]), &f)?;
        }
        rhs.push(scalar::mul(&b[i].mod_floor(&moduli[i]), &f)?);
    }

    let snf = smith_normal_form(&scaled)?;
    // c = U * rhs (mod L)
    let mut c = vec![T::zero(); rows];
    for (i, ci) in c.iter_mut().enumerate() {
        for (k, rk) in rhs.iter().enumerate() {
            let term = scalar::mul(&snf.u[(i, k)].mod_floor(&lcm), rk)?;
            *ci = scalar::add(ci, &term)?.mod_floor(&lcm);
        }
    }

    let mut y = vec![T::zero(); cols];
    for i in 0..rows {
        let d = if i < cols { snf.d[(i, i)].clone() } else { T::zero() };
        let g = d.gcd(&lcm);
        if !c[i].is_multiple_of(&g) {
            return Ok(None);
        }
        if i < cols && !d.is_zero() {
            let reduced = lcm.clone() / g.clone();
            let inv = mod_inverse(&(d / g.clone()), &reduced).expect("coprime after dividing by gcd");
            y[i] = scalar::mul(&(c[i].clone() / g), &inv)?.mod_floor(&reduced);
        }
    }

    let mut x = vec![T::zero(); cols];
    for (j, xj) in x.iter_mut().enumerate() {
        for (k, yk) in y.iter().enumerate() {
            let term = scalar::mul(&snf.v[(j, k)].mod_floor(&lcm), yk)?;
            *xj = scalar::add(xj, &term)?.mod_floor(&lcm);
        }
    }
    Ok(Some(x))
}

/// Finds `X` with `A * X ≡ B`, where column `c` of the congruence is taken
/// modulo `moduli[c]`. Returns `None` iff some column has no solution.
pub fn solve_matrix_congruence<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, moduli: &[T]) -> Result<Option<Matrix<T>>> {
    if a.rows() != b.rows() || moduli.len() != b.cols() {
        return contract(format!(
            "cannot solve A*X = B with A {}x{}, B {}x{} and {} moduli",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            moduli.len()
        ));
    }
    let mut x = Matrix::zeros(a.cols(), b.cols());
    for c in 0..b.cols() {
        let column = b.column(c);
        let mods = vec![moduli[c].clone(); a.rows()];
        let Some(sol) = solve_linear_congruences(a, &column, &mods)? else {
            return Ok(None);
        };
        for (r, v) in sol.into_iter().enumerate() {
            x[(r, c)] = v;
        }
    }
    Ok(Some(x))
}
