use super::morphism::{stable_hom_for_each, StableMorphism};
use crate::error::Result;
use crate::module::{solve_right_factor, Level};

/// Decides invertibility by searching the stable hom-set `Y -> X` for a
/// two-sided inverse, stopping at the first hit.
pub fn is_stable_iso(f: &StableMorphism) -> Result<bool> {
    let ctx = *f.ctx();
    let id_x = StableMorphism::identity(&ctx, f.source());
    let id_y = StableMorphism::identity(&ctx, f.target());
    let mut found = false;
    let mut failure = None;
    stable_hom_for_each(&ctx, f.target(), f.source(), |g| {
        match (f.compose(&g), g.compose(f)) {
            (Ok(fg), Ok(gf)) => found = fg == id_x && gf == id_y,
            (Err(e), _) | (_, Err(e)) => failure = Some(e),
        }
        !found && failure.is_none()
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Computes the stable inverse by solving for a right inverse and checking
/// that it is also a left inverse (a right inverse of an isomorphism is
/// unique, so this decides invertibility).
pub fn stable_inverse(f: &StableMorphism) -> Result<Option<StableMorphism>> {
    let ctx = *f.ctx();
    let id_x = StableMorphism::identity(&ctx, f.source());
    let Some(g) = solve_right_factor(f.representative(), id_x.representative(), Level::Stable)? else {
        return Ok(None);
    };
    let g = StableMorphism::new(&g);
    let id_y = StableMorphism::identity(&ctx, f.target());
    Ok((g.compose(f)? == id_y).then_some(g))
}

/// Invertibility through residues: for every exponent `0 < i < m` both ends
/// must have the same number of `Z/p^i` summands and the block of `f`
/// between them must be invertible modulo `p`. Maps between summands of
/// different exponents lie in the radical and do not matter.
pub fn is_stable_iso_by_residues(f: &StableMorphism) -> bool {
    let ctx = f.ctx();
    let (s, t) = (f.source(), f.target());
    let m = ctx.m();
    for i in 1..m {
        let rows: Vec<usize> = (0..s.len()).filter(|&r| s.exponents()[r] == i).collect();
        let cols: Vec<usize> = (0..t.len()).filter(|&c| t.exponents()[c] == i).collect();
        if rows.len() != cols.len() {
            return false;
        }
        if rows.is_empty() {
            continue;
        }
        if !invertible_mod_p(ctx.p(), rows.iter().map(|&r| cols.iter().map(|&c| f.entry(r, c)).collect()).collect()) {
            return false;
        }
    }
    true
}

/// Gaussian elimination over F_p.
pub(crate) fn invertible_mod_p(p: i64, mut a: Vec<Vec<i64>>) -> bool {
    let n = a.len();
    for row in a.iter_mut() {
        for v in row.iter_mut() {
            *v = v.rem_euclid(p);
        }
    }
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return false;
        };
        a.swap(col, piv);
        let inv = crate::arith::mod_inverse(&a[col][col], &p).expect("nonzero mod prime");
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let factor = a[r][col] * inv % p;
                let pivot = a[col].clone();
                for (x, y) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                    *x = (*x - factor * y).rem_euclid(p);
                }
            }
        }
    }
    true
}
