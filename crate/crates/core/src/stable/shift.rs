use super::morphism::StableMorphism;
use crate::arith::Matrix;
use crate::module::{EMorphism, FpObject};

pub fn shift_object(x: &FpObject) -> FpObject {
    x.shift()
}

/// Shift of a representative: summand order reversed on both sides, entry
/// `a : Z/p^e -> Z/p^f` becomes `p^{e-f} a : Z/p^{m-e} -> Z/p^{m-f}`.
pub fn shift_representative(f: &EMorphism) -> EMorphism {
    let ctx = *f.ctx();
    let m = ctx.m();
    let (s, t) = (f.source(), f.target());
    let (rows, cols) = (s.len(), t.len());
    let mut out = Matrix::zeros(rows, cols);
    for (r, &e) in s.exponents().iter().enumerate() {
        for (c, &g) in t.exponents().iter().enumerate() {
            let a = f.entry(r, c);
            let v = if e >= g {
                (a as i128 * ctx.pow(e - g) as i128) as i64
            } else {
                debug_assert_eq!(a % ctx.pow(g - e), 0);
                a / ctx.pow(g - e)
            };
            out[(rows - 1 - r, cols - 1 - c)] = v.rem_euclid(ctx.pow(m - g));
        }
    }
    EMorphism::from_parts(ctx, s.shift(), t.shift(), out)
}

/// Shift of a stable morphism. Under these conventions the shift is a strict
/// involution on canonical forms.
pub fn shift_morphism(f: &StableMorphism) -> StableMorphism {
    StableMorphism::new(&shift_representative(f.representative()))
}

/// Inverse shift; equal to [`shift_morphism`] since the shift is involutive.
pub fn unshift_morphism(f: &StableMorphism) -> StableMorphism {
    shift_morphism(f)
}

/// `k`-fold shift for any integer `k`.
pub fn shift_by(f: &StableMorphism, k: i64) -> StableMorphism {
    if k.rem_euclid(2) == 0 {
        f.clone()
    } else {
        shift_morphism(f)
    }
}

pub fn shift_object_by(x: &FpObject, k: i64) -> FpObject {
    if k.rem_euclid(2) == 0 {
        x.clone()
    } else {
        x.shift()
    }
}
