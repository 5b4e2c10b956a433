use std::fmt;

use crate::arith::Matrix;
use crate::error::{contract, Result};
use crate::module::{Arrow, Context, EMorphism, EntryGrid, FpObject};

/// Modulus of entry `Z/p^e -> Z/p^f` in the stable category: `p^{min(m-e, f)}`.
pub fn stable_modulus(ctx: &Context, e: u32, f: u32) -> i64 {
    ctx.pow(f.min(ctx.m() - e))
}

/// A morphism of the stable category, held by its canonical representative
/// (entry `(r, c)` reduced modulo `p^{min(m - e_r, f_c)}`). Equality of
/// stable morphisms is equality of canonical representatives.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StableMorphism {
    rep: EMorphism,
}

impl StableMorphism {
    pub fn new(f: &EMorphism) -> Self {
        let ctx = *f.ctx();
        let (s, t) = (f.source(), f.target());
        let matrix = f.matrix().map(|r, c, &a| a % stable_modulus(&ctx, s.exponents()[r], t.exponents()[c]));
        StableMorphism { rep: EMorphism::from_parts(ctx, s.clone(), t.clone(), matrix) }
    }

    pub fn from_rows(ctx: &Context, source: &FpObject, target: &FpObject, rows: Vec<Vec<i64>>) -> Result<Self> {
        Ok(Self::new(&EMorphism::from_rows(ctx, source, target, rows)?))
    }

    pub fn from_matrix(ctx: &Context, source: &FpObject, target: &FpObject, matrix: Matrix<i64>) -> Result<Self> {
        Ok(Self::new(&EMorphism::new(ctx, source, target, matrix)?))
    }

    /// Trusted constructor from an already canonical matrix.
    pub(crate) fn from_canonical(ctx: Context, source: FpObject, target: FpObject, matrix: Matrix<i64>) -> Self {
        StableMorphism { rep: EMorphism::from_parts(ctx, source, target, matrix) }
    }

    pub fn identity(ctx: &Context, x: &FpObject) -> Self {
        Self::new(&EMorphism::identity(ctx, x))
    }

    pub fn zero(ctx: &Context, source: &FpObject, target: &FpObject) -> Self {
        StableMorphism { rep: EMorphism::zero(ctx, source, target) }
    }

    /// The canonical representative.
    pub fn representative(&self) -> &EMorphism {
        &self.rep
    }

    pub fn ctx(&self) -> &Context {
        self.rep.ctx()
    }

    pub fn source(&self) -> &FpObject {
        self.rep.source()
    }

    pub fn target(&self) -> &FpObject {
        self.rep.target()
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        self.rep.matrix()
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.rep.entry(r, c)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Diagrammatic composite "`self`, then `g`".
    pub fn compose(&self, g: &StableMorphism) -> Result<StableMorphism> {
        if self.target() != g.source() {
            return contract(format!(
                "cannot compose stable maps {} -> {} and {} -> {}",
                self.source(),
                self.target(),
                g.source(),
                g.target()
            ));
        }
        let ctx = *self.ctx();
        let (s, mid, t) = (self.source(), self.target().len(), g.target());
        let mut out = Matrix::zeros(s.len(), t.len());
        for (r, &e) in s.exponents().iter().enumerate() {
            for (c, &f) in t.exponents().iter().enumerate() {
                let q = stable_modulus(&ctx, e, f) as i128;
                let mut acc: i128 = 0;
                for k in 0..mid {
                    acc += self.entry(r, k) as i128 * g.entry(k, c) as i128;
                }
                out[(r, c)] = acc.rem_euclid(q) as i64;
            }
        }
        Ok(StableMorphism::from_canonical(ctx, s.clone(), t.clone(), out))
    }

    pub fn add(&self, other: &StableMorphism) -> Result<StableMorphism> {
        Ok(Self::new(&self.rep.add(&other.rep)?))
    }

    pub fn sub(&self, other: &StableMorphism) -> Result<StableMorphism> {
        Ok(Self::new(&self.rep.sub(&other.rep)?))
    }

    pub fn neg(&self) -> StableMorphism {
        Self::new(&self.rep.neg())
    }

    pub fn direct_sum(&self, g: &StableMorphism) -> StableMorphism {
        Self::new(&self.rep.direct_sum(&g.rep))
    }

    pub fn pair(f: &StableMorphism, g: &StableMorphism) -> Result<StableMorphism> {
        Ok(Self::new(&EMorphism::pair(&f.rep, &g.rep)?))
    }

    pub fn copair(f: &StableMorphism, g: &StableMorphism) -> Result<StableMorphism> {
        Ok(Self::new(&EMorphism::copair(&f.rep, &g.rep)?))
    }
}

impl Arrow for StableMorphism {
    fn source(&self) -> &FpObject {
        StableMorphism::source(self)
    }

    fn target(&self) -> &FpObject {
        StableMorphism::target(self)
    }
}

impl fmt::Display for StableMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Debug for StableMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StableMorphism({})", self.rep)
    }
}

pub fn canonical_form(f: &EMorphism) -> StableMorphism {
    StableMorphism::new(f)
}

/// Entrywise test `p^{min(m-e, f)} | a`.
pub fn is_stably_zero(f: &EMorphism) -> bool {
    StableMorphism::new(f).is_zero()
}

pub fn stable_equal(f: &EMorphism, g: &EMorphism) -> Result<bool> {
    Ok(is_stably_zero(&f.sub(g)?))
}

fn stable_hom_grid(ctx: &Context, x: &FpObject, y: &FpObject) -> EntryGrid {
    let m = ctx.m();
    let mut steps = Vec::with_capacity(x.len() * y.len());
    let mut counts = Vec::with_capacity(x.len() * y.len());
    for &e in x.exponents() {
        for &f in y.exponents() {
            steps.push(ctx.pow(f.saturating_sub(e)));
            counts.push(ctx.pow(e.min(f).min(m - e).min(m - f)));
        }
    }
    EntryGrid::new(x.len(), y.len(), steps, counts)
}

/// Size of the stable hom-set, `prod p^{min(e, f, m-e, m-f)}`, saturating.
pub fn stable_hom_count(ctx: &Context, x: &FpObject, y: &FpObject) -> u128 {
    stable_hom_grid(ctx, x, y).size()
}

/// Every stable morphism `X -> Y`, as canonical representatives.
pub fn stable_hom_enumerate(ctx: &Context, x: &FpObject, y: &FpObject) -> Result<Vec<StableMorphism>> {
    let mut out = Vec::new();
    stable_hom_for_each(ctx, x, y, |f| {
        out.push(f);
        true
    })?;
    Ok(out)
}

/// Calls `visit` on every stable morphism `X -> Y` until it returns `false`.
pub fn stable_hom_for_each(
    ctx: &Context,
    x: &FpObject,
    y: &FpObject,
    mut visit: impl FnMut(StableMorphism) -> bool,
) -> Result<()> {
    let grid = stable_hom_grid(ctx, x, y);
    grid.check_cap(ctx, || format!("stable Hom({x}, {y})"))?;
    for m in grid.iter() {
        if !visit(StableMorphism::from_canonical(*ctx, x.clone(), y.clone(), m)) {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ctx() -> Context {
        Context::new(2, 6).unwrap()
    }

    fn mor(s: &[u32], t: &[u32], rows: Vec<Vec<i64>>) -> EMorphism {
        let c = ctx();
        EMorphism::from_rows(
            &c,
            &FpObject::from_exponents(&c, s).unwrap(),
            &FpObject::from_exponents(&c, t).unwrap(),
            rows,
        )
        .unwrap()
    }

    #[test]
    fn stable_zero_examples() {
        assert!(is_stably_zero(&mor(&[3], &[3], vec![vec![8]])));
        assert!(!is_stably_zero(&mor(&[5], &[1], vec![vec![1]])));
        assert!(is_stably_zero(&mor(&[2, 4], &[1, 5], vec![vec![0, 0], vec![0, 0]])));
        assert!(is_stably_zero(&mor(&[6], &[6], vec![vec![1]])));
    }

    #[test]
    fn enumeration_lists_distinct_canonical_forms() {
        let c = ctx();
        let x = FpObject::from_exponents(&c, &[1, 5]).unwrap();
        let y = FpObject::from_exponents(&c, &[2, 3]).unwrap();
        let all = stable_hom_enumerate(&c, &x, &y).unwrap();
        assert_eq!(all.len() as u128, stable_hom_count(&c, &x, &y));
        assert_eq!(all.len(), 2 * 2 * 2 * 2);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
        assert!(all.iter().all(|f| StableMorphism::new(f.representative()) == *f));
    }
}
