use std::collections::HashSet;

use crate::arith::Matrix;
use crate::error::Result;
use crate::module::{image_log_order_raw, Context, FpObject, Quadrangle};
use crate::stable::{stable_hom_enumerate, StableMorphism};

/// Cyclic decomposition of the stable hom-group between `T = Z/p^t` and an
/// object: one cyclic factor per summand.
struct HomCoords {
    /// Entry of the generator of each factor.
    generator: Vec<i64>,
    /// `log_p` of each factor's order.
    order: Vec<u32>,
}

impl HomCoords {
    /// Coordinates of stable `Hom(T, X)` (`covariant`) or `Hom(X, T)`.
    fn new(ctx: &Context, t: u32, x: &FpObject, covariant: bool) -> Self {
        let m = ctx.m();
        let mut generator = Vec::with_capacity(x.len());
        let mut order = Vec::with_capacity(x.len());
        for &e in x.exponents() {
            let (from, to) = if covariant { (t, e) } else { (e, t) };
            generator.push(ctx.pow(to.saturating_sub(from)));
            order.push(from.min(to).min(m - from).min(m - to));
        }
        HomCoords { generator, order }
    }
}

/// Matrix of `phi -> phi · u` on `Hom(T, S) -> Hom(T, U)` for `u : S -> U`.
fn push_forward(ctx: &Context, t: u32, u: &StableMorphism) -> Matrix<i64> {
    let src = HomCoords::new(ctx, t, u.source(), true);
    let dst = HomCoords::new(ctx, t, u.target(), true);
    let mut out = Matrix::zeros(u.source().len(), u.target().len());
    for j in 0..u.source().len() {
        for (l, &f) in u.target().exponents().iter().enumerate() {
            let entry = (src.generator[j] as i128 * u.entry(j, l) as i128).rem_euclid(ctx.pow(f) as i128);
            let coeff = entry / dst.generator[l] as i128;
            out[(j, l)] = coeff.rem_euclid(ctx.pow(dst.order[l]) as i128) as i64;
        }
    }
    out
}

/// Matrix of `phi -> u · phi` on `Hom(U, T) -> Hom(S, T)` for `u : S -> U`.
fn pull_back(ctx: &Context, t: u32, u: &StableMorphism) -> Matrix<i64> {
    let src = HomCoords::new(ctx, t, u.target(), false);
    let dst = HomCoords::new(ctx, t, u.source(), false);
    let mut out = Matrix::zeros(u.target().len(), u.source().len());
    for l in 0..u.target().len() {
        for j in 0..u.source().len() {
            let entry = (u.entry(j, l) as i128 * src.generator[l] as i128).rem_euclid(ctx.pow(t) as i128);
            let coeff = entry / dst.generator[j] as i128;
            out[(l, j)] = coeff.rem_euclid(ctx.pow(dst.order[j]) as i128) as i64;
        }
    }
    out
}

/// `[x | y]` with the second block negated when `negate_second`.
fn side_by_side(x: &Matrix<i64>, y: &Matrix<i64>, negate_second: bool) -> Matrix<i64> {
    x.hcat(&if negate_second { y.neg() } else { y.clone() })
}

/// Which half of the weak-square condition failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakSquareFailure {
    NotCommutative,
    /// A map `Z/p^t -> B ⊕ C` killed by `(d; -e)` does not factor through `(b, c)`.
    WeakKernel {
        t: u32,
    },
    /// A map `B ⊕ C -> Z/p^t` killed by `(b, c)` does not factor through `(d; -e)`.
    WeakCokernel {
        t: u32,
    },
}

/// Checks that a quadrangle of stable maps is a weak square: it commutes,
/// and for every indecomposable test object `T = Z/p^t`, `0 < t < m`, the
/// sequences
///
/// `Hom(T, A) -> Hom(T, B) ⊕ Hom(T, C) -> Hom(T, D)` and
/// `Hom(D, T) -> Hom(B, T) ⊕ Hom(C, T) -> Hom(A, T)`
///
/// are exact in the middle. Exactness is decided by comparing the orders of
/// image and kernel, computed through Smith normal form.
pub fn check_weak_square(q: &Quadrangle<StableMorphism>) -> Result<Option<WeakSquareFailure>> {
    if q.b.compose(&q.d)? != q.c.compose(&q.e)? {
        return Ok(Some(WeakSquareFailure::NotCommutative));
    }
    let ctx = *q.b.ctx();
    for t in 1..ctx.m() {
        let cov = |x: &FpObject| HomCoords::new(&ctx, t, x, true).order;
        let con = |x: &FpObject| HomCoords::new(&ctx, t, x, false).order;

        // Hom(T, A) -(b, c)-> Hom(T, B) ⊕ Hom(T, C) -(d; -e)-> Hom(T, D)
        let middle: Vec<u32> = cov(q.b_obj()).into_iter().chain(cov(q.c_obj())).collect();
        let into = side_by_side(&push_forward(&ctx, t, &q.b), &push_forward(&ctx, t, &q.c), false);
        let out = push_forward(&ctx, t, &q.d).vcat(&push_forward(&ctx, t, &q.e).neg());
        let image = image_log_order_raw(&ctx, &middle, &into)?;
        let kernel = middle.iter().sum::<u32>() - image_log_order_raw(&ctx, &cov(q.d_obj()), &out)?;
        if image != kernel {
            return Ok(Some(WeakSquareFailure::WeakKernel { t }));
        }

        // Hom(D, T) -(d, -e)-> Hom(B, T) ⊕ Hom(C, T) -(b; c)-> Hom(A, T)
        let middle: Vec<u32> = con(q.b_obj()).into_iter().chain(con(q.c_obj())).collect();
        let into = side_by_side(&pull_back(&ctx, t, &q.d), &pull_back(&ctx, t, &q.e), true);
        let out = pull_back(&ctx, t, &q.b).vcat(&pull_back(&ctx, t, &q.c));
        let image = image_log_order_raw(&ctx, &middle, &into)?;
        let kernel = middle.iter().sum::<u32>() - image_log_order_raw(&ctx, &con(q.a()), &out)?;
        if image != kernel {
            return Ok(Some(WeakSquareFailure::WeakCokernel { t }));
        }
    }
    Ok(None)
}

pub fn is_weak_square(q: &Quadrangle<StableMorphism>) -> Result<bool> {
    Ok(check_weak_square(q)?.is_none())
}

/// The same test by listing hom-sets element by element; only for small
/// objects.
pub fn is_weak_square_by_enumeration(q: &Quadrangle<StableMorphism>) -> Result<bool> {
    if q.b.compose(&q.d)? != q.c.compose(&q.e)? {
        return Ok(false);
    }
    let ctx = *q.b.ctx();
    for t in 1..ctx.m() {
        let tt = FpObject::cyclic(&ctx, t)?;

        let mut image = HashSet::new();
        for psi in stable_hom_enumerate(&ctx, &tt, q.a())? {
            image.insert((psi.compose(&q.b)?, psi.compose(&q.c)?));
        }
        for phi_b in stable_hom_enumerate(&ctx, &tt, q.b_obj())? {
            let via_d = phi_b.compose(&q.d)?;
            for phi_c in stable_hom_enumerate(&ctx, &tt, q.c_obj())? {
                if via_d == phi_c.compose(&q.e)? && !image.contains(&(phi_b.clone(), phi_c)) {
                    return Ok(false);
                }
            }
        }

        let mut image = HashSet::new();
        for psi in stable_hom_enumerate(&ctx, q.d_obj(), &tt)? {
            image.insert((q.d.compose(&psi)?, q.e.compose(&psi)?.neg()));
        }
        for phi_b in stable_hom_enumerate(&ctx, q.b_obj(), &tt)? {
            let via_b = q.b.compose(&phi_b)?;
            for phi_c in stable_hom_enumerate(&ctx, q.c_obj(), &tt)? {
                if via_b.add(&q.c.compose(&phi_c)?)?.is_zero() && !image.contains(&(phi_b.clone(), phi_c)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
