use std::collections::HashSet;

use super::context::Context;
use super::hom::EntryGrid;
use super::morphism::EMorphism;
use super::object::FpObject;
use crate::arith::{smith_normal_form, Matrix, SnfResult};
use crate::error::{contract, Result};

/// Element sets larger than this are never enumerated by the oracle path,
/// whatever the configured enumeration cap.
const ORACLE_LIMIT: u128 = 1 << 20;

/// Relations presenting `coker f` on the generators of the target: the rows
/// of `f` followed by `diag(p^{f_c})`.
fn relations(f: &EMorphism) -> Matrix<i128> {
    let ctx = f.ctx();
    let k = f.target().len();
    let mut rel = Matrix::zeros(f.source().len() + k, k);
    for r in 0..f.source().len() {
        for c in 0..k {
            rel[(r, c)] = f.entry(r, c) as i128;
        }
    }
    for (c, &e) in f.target().exponents().iter().enumerate() {
        rel[(f.source().len() + c, c)] = ctx.pow(e) as i128;
    }
    rel
}

fn log_p(ctx: &Context, mut d: i128) -> u32 {
    let p = ctx.p() as i128;
    let mut v = 0;
    while d % p == 0 {
        d /= p;
        v += 1;
    }
    debug_assert_eq!(d, 1, "elementary divisor of a p-group presentation is a power of p");
    v
}

fn cokernel_snf(f: &EMorphism) -> Result<SnfResult<i128>> {
    Ok(smith_normal_form(&relations(f))?)
}

/// `log_p` of the image of a homomorphism `prod Z/p^{a_r} -> prod Z/p^{b_c}`
/// given by `matrix` (rows = source generators), target order as listed.
pub(crate) fn image_log_order_raw(ctx: &Context, target: &[u32], matrix: &Matrix<i64>) -> Result<u32> {
    let k = target.len();
    let mut rel = Matrix::zeros(matrix.rows() + k, k);
    for r in 0..matrix.rows() {
        for c in 0..k {
            rel[(r, c)] = matrix[(r, c)] as i128;
        }
    }
    for (c, &e) in target.iter().enumerate() {
        rel[(matrix.rows() + c, c)] = ctx.pow(e) as i128;
    }
    let snf = smith_normal_form(&rel)?;
    let coker: u32 = snf.diagonal().into_iter().map(|d| log_p(ctx, d)).sum();
    Ok(target.iter().sum::<u32>() - coker)
}

/// `log_p |im f|`, through Smith normal form.
pub fn image_log_order(f: &EMorphism) -> Result<u32> {
    let snf = cokernel_snf(f)?;
    let coker: u32 = snf.diagonal().into_iter().map(|d| log_p(f.ctx(), d)).sum();
    Ok(f.target().log_order() - coker)
}

/// `log_p |ker f|`, through Smith normal form.
pub fn kernel_log_order(f: &EMorphism) -> Result<u32> {
    Ok(f.source().log_order() - image_log_order(f)?)
}

/// `|ker f|`, saturating.
pub fn kernel_size(f: &EMorphism) -> Result<u128> {
    Ok((f.ctx().p() as u128).saturating_pow(kernel_log_order(f)?))
}

/// `|im f|`, saturating.
pub fn image_size(f: &EMorphism) -> Result<u128> {
    Ok((f.ctx().p() as u128).saturating_pow(image_log_order(f)?))
}

/// `(log_p |ker f|, log_p |im f|)` by enumerating the elements of the source,
/// or `None` when the source is too large to enumerate.
pub fn element_oracle(f: &EMorphism) -> Option<(u32, u32)> {
    let ctx = f.ctx();
    let x = f.source();
    let grid = EntryGrid::new(1, x.len(), vec![1; x.len()], x.exponents().iter().map(|&e| ctx.pow(e)).collect());
    if grid.size() > ORACLE_LIMIT.min(ctx.enum_cap()) {
        return None;
    }
    let mods: Vec<i64> = f.target().exponents().iter().map(|&e| ctx.pow(e)).collect();
    let mut kernel: u128 = 0;
    let mut image = HashSet::new();
    for v in grid.iter() {
        let y: Vec<i64> = (0..mods.len())
            .map(|c| {
                let s: i128 = (0..x.len()).map(|r| v[(0, r)] as i128 * f.entry(r, c) as i128).sum();
                s.rem_euclid(mods[c] as i128) as i64
            })
            .collect();
        if y.iter().all(|&a| a == 0) {
            kernel += 1;
        }
        image.insert(y);
    }
    let log = |n: u128| log_p(ctx, n as i128);
    Some((log(kernel), log(image.len() as u128)))
}

/// Kernel and image orders, cross-checked between the two paths when the
/// oracle applies. Disagreement is an internal bug and panics.
fn checked_sizes(f: &EMorphism) -> Result<(u32, u32)> {
    let im = image_log_order(f)?;
    let ker = f.source().log_order() - im;
    if let Some(oracle) = element_oracle(f) {
        assert_eq!(oracle, (ker, im), "SNF and element enumeration disagree on {f}");
    }
    Ok((ker, im))
}

pub fn is_injective(f: &EMorphism) -> Result<bool> {
    Ok(checked_sizes(f)?.0 == 0)
}

pub fn is_surjective(f: &EMorphism) -> Result<bool> {
    Ok(checked_sizes(f)?.1 == f.target().log_order())
}

/// Whether `X -f-> Y -g-> Z` is short exact.
pub fn is_exact(f: &EMorphism, g: &EMorphism) -> Result<bool> {
    if f.target() != g.source() {
        return contract(format!("{} and {} are not composable", f, g));
    }
    if !f.compose(g)?.is_zero() {
        return Ok(false);
    }
    let (ker_f, im_f) = checked_sizes(f)?;
    let (ker_g, im_g) = checked_sizes(g)?;
    Ok(ker_f == 0 && im_g == g.target().log_order() && im_f == ker_g)
}

/// Cokernel of `f` with its projection, the quotient in canonical form.
pub fn cokernel(f: &EMorphism) -> Result<(FpObject, EMorphism)> {
    let ctx = *f.ctx();
    let snf = cokernel_snf(f)?;
    let mut kept: Vec<(u32, usize)> =
        snf.diagonal().into_iter().enumerate().map(|(i, d)| (log_p(&ctx, d), i)).filter(|&(v, _)| v > 0).collect();
    kept.sort_by_key(|&(v, _)| v);
    let exps: Vec<u32> = kept.iter().map(|&(v, _)| v).collect();
    let q = FpObject::from_exponents(&ctx, &exps)?;
    let y = f.target();
    let mut proj = Matrix::zeros(y.len(), kept.len());
    for c in 0..y.len() {
        for (j, &(v, i)) in kept.iter().enumerate() {
            proj[(c, j)] = snf.v[(c, i)].rem_euclid(ctx.pow(v) as i128) as i64;
        }
    }
    let proj = EMorphism::new(&ctx, y, &q, proj)?;
    Ok((q, proj))
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

    fn mor(s: &[u32], t: &[u32], rows: Vec<Vec<i64>>) -> EMorphism {
        EMorphism::from_rows(&ctx(), &obj(s), &obj(t), rows).unwrap()
    }

    #[test]
    fn exactness_examples() {
        assert!(is_exact(&mor(&[3], &[6], vec![vec![8]]), &mor(&[6], &[3], vec![vec![1]])).unwrap());
        assert!(!is_exact(&mor(&[1], &[1], vec![vec![0]]), &mor(&[1], &[1], vec![vec![1]])).unwrap());
        let f = mor(&[3], &[1, 5], vec![vec![1, 4]]);
        let g = mor(&[1, 5], &[3], vec![vec![-4], vec![1]]);
        assert!(is_exact(&f, &g).unwrap());
    }

    #[test]
    fn cokernel_examples() {
        let (q, proj) = cokernel(&mor(&[3], &[3, 6], vec![vec![-2, 8]])).unwrap();
        assert_eq!(q, obj(&[1, 5]));
        assert!(is_surjective(&proj).unwrap());
        let x = obj(&[2, 5]);
        let (q, _) = cokernel(&EMorphism::identity(&ctx(), &x)).unwrap();
        assert!(q.is_empty());
        let (q, proj) = cokernel(&EMorphism::zero(&ctx(), &obj(&[1]), &x)).unwrap();
        assert_eq!(q, x);
        assert_eq!(proj, EMorphism::identity(&ctx(), &x));
    }

    #[test]
    fn kernel_and_image_orders() {
        let f = mor(&[3, 4], &[2, 6], vec![vec![2, 8], vec![1, 4]]);
        let (ker, im) = element_oracle(&f).unwrap();
        assert_eq!(kernel_log_order(&f).unwrap(), ker);
        assert_eq!(image_log_order(&f).unwrap(), im);
        assert_eq!(ker + im, 7);
    }
}
