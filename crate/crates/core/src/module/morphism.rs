use std::fmt;

use super::context::Context;
use super::object::FpObject;
use crate::arith::Matrix;
use crate::error::{contract, Result};
use crate::IntMatrix;

/// A homomorphism between two [`FpObject`]s.
///
/// Rows index source summands, columns index target summands. Entry `(r, c)`
/// is the integer `a` of `Z/p^{e_r} -> Z/p^{f_c}, x -> a x`, kept reduced in
/// `[0, p^{f_c})` and divisible by `p^{max(0, f_c - e_r)}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EMorphism {
    ctx: Context,
    source: FpObject,
    target: FpObject,
    matrix: IntMatrix,
}

impl EMorphism {
    /// Validates and reduces a matrix into a morphism.
    pub fn new(ctx: &Context, source: &FpObject, target: &FpObject, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (source.len(), target.len()) {
            return contract(format!(
                "matrix is {}x{} but {} -> {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                source,
                target,
                source.len(),
                target.len()
            ));
        }
        if source.m() != ctx.m() || target.m() != ctx.m() {
            return contract("object built for a different context");
        }
        let mut matrix = matrix;
        for (r, &e) in source.exponents().iter().enumerate() {
            for (c, &f) in target.exponents().iter().enumerate() {
                let a = matrix[(r, c)].rem_euclid(ctx.pow(f));
                if f > e && a % ctx.pow(f - e) != 0 {
                    return contract(format!(
                        "entry ({r},{c}) = {} of Z/p^{e} -> Z/p^{f} is not divisible by p^{}",
                        matrix[(r, c)],
                        f - e
                    ));
                }
                matrix[(r, c)] = a;
            }
        }
        Ok(EMorphism { ctx: *ctx, source: source.clone(), target: target.clone(), matrix })
    }

    /// Convenience constructor from nested rows.
    pub fn from_rows(ctx: &Context, source: &FpObject, target: &FpObject, rows: Vec<Vec<i64>>) -> Result<Self> {
        let matrix = if rows.is_empty() { Matrix::zeros(0, target.len()) } else { Matrix::from_rows(rows) };
        Self::new(ctx, source, target, matrix)
    }

    /// Trusted constructor for matrices known to be reduced and well defined.
    pub(crate) fn from_parts(ctx: Context, source: FpObject, target: FpObject, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (source.len(), target.len()));
        EMorphism { ctx, source, target, matrix }
    }

    pub fn identity(ctx: &Context, x: &FpObject) -> Self {
        let mut matrix = Matrix::identity(x.len());
        for (i, &e) in x.exponents().iter().enumerate() {
            if e == 0 {
                matrix[(i, i)] = 0;
            }
        }
        EMorphism::from_parts(*ctx, x.clone(), x.clone(), matrix)
    }

    pub fn zero(ctx: &Context, source: &FpObject, target: &FpObject) -> Self {
        EMorphism::from_parts(*ctx, source.clone(), target.clone(), Matrix::zeros(source.len(), target.len()))
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn source(&self) -> &FpObject {
        &self.source
    }

    pub fn target(&self) -> &FpObject {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.matrix[(r, c)]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Diagrammatic composite "`self`, then `g`".
    pub fn compose(&self, g: &EMorphism) -> Result<EMorphism> {
        if self.target != g.source {
            return contract(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, g.source, g.target
            ));
        }
        let (rows, mid, cols) = (self.source.len(), self.target.len(), g.target.len());
        let mut out = Matrix::zeros(rows, cols);
        for (c, &f) in g.target.exponents().iter().enumerate() {
            let q = self.ctx.pow(f) as i128;
            for r in 0..rows {
                let mut acc: i128 = 0;
                for k in 0..mid {
                    acc += self.matrix[(r, k)] as i128 * g.matrix[(k, c)] as i128;
                }
                out[(r, c)] = acc.rem_euclid(q) as i64;
            }
        }
        Ok(EMorphism::from_parts(self.ctx, self.source.clone(), g.target.clone(), out))
    }

    fn same_ends(&self, other: &EMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return contract(format!(
                "morphisms {} -> {} and {} -> {} are not parallel",
                self.source, self.target, other.source, other.target
            ));
        }
        Ok(())
    }

    fn combine(&self, other: &EMorphism, sign: i64) -> Result<EMorphism> {
        self.same_ends(other)?;
        let matrix = self.matrix.map(|r, c, a| {
            let q = self.ctx.pow(self.target.exponents()[c]);
            (a + sign * other.matrix[(r, c)]).rem_euclid(q)
        });
        Ok(EMorphism::from_parts(self.ctx, self.source.clone(), self.target.clone(), matrix))
    }

    pub fn add(&self, other: &EMorphism) -> Result<EMorphism> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &EMorphism) -> Result<EMorphism> {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> EMorphism {
        let matrix = self.matrix.map(|_, c, a| (-a).rem_euclid(self.ctx.pow(self.target.exponents()[c])));
        EMorphism::from_parts(self.ctx, self.source.clone(), self.target.clone(), matrix)
    }

    /// Multiplies every entry by the integer `k`.
    pub fn scale(&self, k: i64) -> EMorphism {
        let matrix = self.matrix.map(|_, c, a| {
            let q = self.ctx.pow(self.target.exponents()[c]) as i128;
            (*a as i128 * k as i128).rem_euclid(q) as i64
        });
        EMorphism::from_parts(self.ctx, self.source.clone(), self.target.clone(), matrix)
    }

    /// `f ⊕ g : A ⊕ C -> B ⊕ D`, in canonical summand order.
    pub fn direct_sum(&self, g: &EMorphism) -> EMorphism {
        let (source, sp) = self.source.direct_sum(&g.source);
        let (target, tp) = self.target.direct_sum(&g.target);
        let matrix = self.matrix.block_diag(&g.matrix).permute_rows(&sp).permute_cols(&tp);
        EMorphism::from_parts(self.ctx, source, target, matrix)
    }

    /// `(f, g) : A -> B ⊕ C` from `f : A -> B` and `g : A -> C`.
    pub fn pair(f: &EMorphism, g: &EMorphism) -> Result<EMorphism> {
        if f.source != g.source {
            return contract("pair of morphisms with different sources");
        }
        let (target, tp) = f.target.direct_sum(&g.target);
        let matrix = f.matrix.hcat(&g.matrix).permute_cols(&tp);
        Ok(EMorphism::from_parts(f.ctx, f.source.clone(), target, matrix))
    }

    /// `(f; g) : A ⊕ B -> C` from `f : A -> C` and `g : B -> C`.
    pub fn copair(f: &EMorphism, g: &EMorphism) -> Result<EMorphism> {
        if f.target != g.target {
            return contract("copair of morphisms with different targets");
        }
        let (source, sp) = f.source.direct_sum(&g.source);
        let matrix = f.matrix.vcat(&g.matrix).permute_rows(&sp);
        Ok(EMorphism::from_parts(f.ctx, source, f.target.clone(), matrix))
    }

    /// Inclusion of the first or second summand into `a ⊕ b`.
    pub fn inclusion(ctx: &Context, a: &FpObject, b: &FpObject, second: bool) -> EMorphism {
        let (sum, perm) = a.direct_sum(b);
        let (part, offset) = if second { (b, a.len()) } else { (a, 0) };
        let mut matrix = Matrix::zeros(part.len(), sum.len());
        for (i, &e) in part.exponents().iter().enumerate() {
            if e > 0 {
                matrix[(i, perm[offset + i])] = 1;
            }
        }
        EMorphism::from_parts(*ctx, part.clone(), sum, matrix)
    }

    /// Projection of `a ⊕ b` onto its first or second summand.
    pub fn projection(ctx: &Context, a: &FpObject, b: &FpObject, second: bool) -> EMorphism {
        let (sum, perm) = a.direct_sum(b);
        let (part, offset) = if second { (b, a.len()) } else { (a, 0) };
        let mut matrix = Matrix::zeros(sum.len(), part.len());
        for (i, &e) in part.exponents().iter().enumerate() {
            if e > 0 {
                matrix[(perm[offset + i], i)] = 1;
            }
        }
        EMorphism::from_parts(*ctx, sum, part.clone(), matrix)
    }
}

impl fmt::Display for EMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -{}-> {}", self.source, self.matrix, self.target)
    }
}

impl fmt::Debug for EMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EMorphism({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(2, 6).unwrap()
    }

    fn obj(e: &[u32]) -> FpObject {
        FpObject::from_exponents(&ctx(), e).unwrap()
    }

    #[test]
    fn rejects_ill_defined_entries() {
        let c = ctx();
        assert!(EMorphism::from_rows(&c, &obj(&[1]), &obj(&[3]), vec![vec![2]]).is_err());
        let f = EMorphism::from_rows(&c, &obj(&[1]), &obj(&[3]), vec![vec![-4]]).unwrap();
        assert_eq!(f.entry(0, 0), 4);
    }

    #[test]
    fn triangle_legs_compose_to_zero() {
        let c = ctx();
        let f = EMorphism::from_rows(&c, &obj(&[3]), &obj(&[1, 5]), vec![vec![1, 4]]).unwrap();
        let g = EMorphism::from_rows(&c, &obj(&[1, 5]), &obj(&[3]), vec![vec![-4], vec![1]]).unwrap();
        assert!(f.compose(&g).unwrap().is_zero());
        assert_eq!(f.compose(&EMorphism::identity(&c, &obj(&[1, 5]))).unwrap(), f);
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let c = ctx();
        let f = EMorphism::identity(&c, &obj(&[1]));
        let g = EMorphism::from_rows(&c, &obj(&[4]), &obj(&[5]), vec![vec![2]]).unwrap();
        let s = f.direct_sum(&g);
        assert_eq!(s.matrix(), &Matrix::from_rows(vec![vec![1, 0], vec![0, 2]]));
        assert_eq!(s.source(), &obj(&[1, 4]));
        assert_eq!(s.target(), &obj(&[1, 5]));
    }

    #[test]
    fn pair_and_copair_follow_canonical_order() {
        let c = ctx();
        let x = obj(&[3]);
        let f = EMorphism::from_rows(&c, &x, &obj(&[6]), vec![vec![8]]).unwrap();
        let g = EMorphism::from_rows(&c, &x, &obj(&[3]), vec![vec![-2]]).unwrap();
        let p = EMorphism::pair(&f, &g).unwrap();
        assert_eq!(p.target(), &obj(&[3, 6]));
        assert_eq!(p.matrix(), &Matrix::from_rows(vec![vec![6, 8]]));
        let i = EMorphism::inclusion(&c, &obj(&[6]), &x, true);
        let q = EMorphism::projection(&c, &obj(&[6]), &x, true);
        assert_eq!(i.compose(&q).unwrap(), EMorphism::identity(&c, &x));
    }
}
