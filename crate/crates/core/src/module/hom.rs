use super::context::Context;
use super::morphism::EMorphism;
use super::object::FpObject;
use crate::arith::Matrix;
use crate::error::{OctaError, Result};

/// Per-entry value ranges `{step * j : 0 <= j < count}` of a matrix family.
#[derive(Debug, Clone)]
pub(crate) struct EntryGrid {
    rows: usize,
    cols: usize,
    steps: Vec<i64>,
    counts: Vec<i64>,
}

impl EntryGrid {
    pub(crate) fn new(rows: usize, cols: usize, steps: Vec<i64>, counts: Vec<i64>) -> Self {
        debug_assert_eq!(steps.len(), rows * cols);
        debug_assert_eq!(counts.len(), rows * cols);
        EntryGrid { rows, cols, steps, counts }
    }

    /// Number of matrices, saturating at `u128::MAX`.
    pub(crate) fn size(&self) -> u128 {
        self.counts.iter().fold(1u128, |acc, &k| acc.saturating_mul(k as u128))
    }

    pub(crate) fn check_cap(&self, ctx: &Context, what: impl FnOnce() -> String) -> Result<()> {
        let size = self.size();
        if size > ctx.enum_cap() {
            return Err(OctaError::EnumerationTooLarge { what: what(), size, cap: ctx.enum_cap() });
        }
        Ok(())
    }

    pub(crate) fn iter(&self) -> GridIter<'_> {
        GridIter { grid: self, digits: vec![0; self.steps.len()], done: false }
    }
}

pub(crate) struct GridIter<'a> {
    grid: &'a EntryGrid,
    digits: Vec<i64>,
    done: bool,
}

impl Iterator for GridIter<'_> {
    type Item = Matrix<i64>;

    fn next(&mut self) -> Option<Matrix<i64>> {
        if self.done {
            return None;
        }
        let data = self.digits.iter().zip(&self.grid.steps).map(|(d, s)| d * s).collect();
        let out = Matrix::from_vec(self.grid.rows, self.grid.cols, data);
        // Advance the odometer, last entry fastest.
        self.done = true;
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.grid.counts[i] {
                self.done = false;
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

pub(crate) fn hom_grid(ctx: &Context, x: &FpObject, y: &FpObject) -> EntryGrid {
    let mut steps = Vec::with_capacity(x.len() * y.len());
    let mut counts = Vec::with_capacity(x.len() * y.len());
    for &e in x.exponents() {
        for &f in y.exponents() {
            steps.push(ctx.pow(f.saturating_sub(e)));
            counts.push(ctx.pow(e.min(f)));
        }
    }
    EntryGrid::new(x.len(), y.len(), steps, counts)
}

/// `|Hom(X, Y)| = prod p^{min(e_r, f_c)}`, saturating.
pub fn hom_count(ctx: &Context, x: &FpObject, y: &FpObject) -> u128 {
    hom_grid(ctx, x, y).size()
}

/// Every morphism `X -> Y`, each exactly once.
pub fn hom_enumerate(ctx: &Context, x: &FpObject, y: &FpObject) -> Result<Vec<EMorphism>> {
    let grid = hom_grid(ctx, x, y);
    grid.check_cap(ctx, || format!("Hom({x}, {y})"))?;
    Ok(grid.iter().map(|m| EMorphism::from_parts(*ctx, x.clone(), y.clone(), m)).collect())
}

/// Calls `visit` on every morphism `X -> Y` until it returns `false`.
pub fn hom_for_each(ctx: &Context, x: &FpObject, y: &FpObject, mut visit: impl FnMut(EMorphism) -> bool) -> Result<()> {
    let grid = hom_grid(ctx, x, y);
    grid.check_cap(ctx, || format!("Hom({x}, {y})"))?;
    for m in grid.iter() {
        if !visit(EMorphism::from_parts(*ctx, x.clone(), y.clone(), m)) {
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

    #[test]
    fn counts_match_enumeration() {
        let c = ctx();
        let z1 = FpObject::cyclic(&c, 1).unwrap();
        assert_eq!(hom_enumerate(&c, &z1, &z1).unwrap().len(), 2);
        let x = FpObject::from_exponents(&c, &[1, 5]).unwrap();
        let all = hom_enumerate(&c, &x, &x).unwrap();
        assert_eq!(all.len(), 256);
        assert_eq!(hom_count(&c, &x, &x), 256);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 256);
        assert_eq!(hom_enumerate(&c, &FpObject::zero(&c), &x).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let c = ctx().with_enum_cap(100);
        let x = FpObject::from_exponents(&c, &[1, 5]).unwrap();
        match hom_enumerate(&c, &x, &x) {
            Err(OctaError::EnumerationTooLarge { size, cap, .. }) => {
                assert_eq!((size, cap), (256, 100))
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }
}
