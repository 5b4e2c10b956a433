use super::exact::is_exact;
use super::morphism::EMorphism;
use super::object::FpObject;
use crate::error::{contract, Result};

/// Anything with a source and a target object.
pub trait Arrow {
    fn source(&self) -> &FpObject;
    fn target(&self) -> &FpObject;
}

impl Arrow for EMorphism {
    fn source(&self) -> &FpObject {
        EMorphism::source(self)
    }

    fn target(&self) -> &FpObject {
        EMorphism::target(self)
    }
}

/// A square
///
/// ```text
///   B --d--> D
///   ^        ^
///   b        e
///   |        |
///   A --c--> C
/// ```
/// with `b : A -> B`, `c : A -> C`, `d : B -> D`, `e : C -> D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadrangle<M> {
    pub b: M,
    pub c: M,
    pub d: M,
    pub e: M,
}

impl<M: Arrow> Quadrangle<M> {
    /// Checks that the four maps fit together.
    pub fn new(b: M, c: M, d: M, e: M) -> Result<Self> {
        if b.source() != c.source() || b.target() != d.source() || c.target() != e.source() || d.target() != e.target()
        {
            return contract("quadrangle maps do not share corners");
        }
        Ok(Quadrangle { b, c, d, e })
    }

    pub fn a(&self) -> &FpObject {
        self.b.source()
    }

    pub fn b_obj(&self) -> &FpObject {
        self.b.target()
    }

    pub fn c_obj(&self) -> &FpObject {
        self.c.target()
    }

    pub fn d_obj(&self) -> &FpObject {
        self.d.target()
    }
}

/// Whether a commuting square has short exact diagonal
/// `A -(b, c)-> B ⊕ C -(d; -e)-> D`.
pub fn is_pure_square(q: &Quadrangle<EMorphism>) -> Result<bool> {
    if q.b.compose(&q.d)? != q.c.compose(&q.e)? {
        return contract("square does not commute");
    }
    let into = EMorphism::pair(&q.b, &q.c)?;
    let out = EMorphism::copair(&q.d, &q.e.neg())?;
    is_exact(&into, &out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::Context;

    #[test]
    fn pure_square_examples() {
        let ctx = Context::new(2, 6).unwrap();
        let o = |e: &[u32]| FpObject::from_exponents(&ctx, e).unwrap();
        let mor = |s: &[u32], t: &[u32], v: i64| EMorphism::from_rows(&ctx, &o(s), &o(t), vec![vec![v]]).unwrap();

        let q =
            Quadrangle::new(mor(&[4], &[5], 2), mor(&[4], &[3], 1), mor(&[5], &[4], 1), mor(&[3], &[4], 2)).unwrap();
        assert!(is_pure_square(&q).unwrap());

        let z = FpObject::zero(&ctx);
        let zm = EMorphism::zero(&ctx, &z, &z);
        assert!(is_pure_square(&Quadrangle::new(zm.clone(), zm.clone(), zm.clone(), zm).unwrap()).unwrap());

        // Z/p -(1,1)-> Z/p + Z/p -(1,-1)-> Z/p is short exact.
        let id = mor(&[1], &[1], 1);
        let q = Quadrangle::new(id.clone(), id.clone(), id.clone(), id).unwrap();
        assert!(is_pure_square(&q).unwrap());

        let zero = mor(&[1], &[1], 0);
        let q = Quadrangle::new(zero.clone(), zero.clone(), zero.clone(), zero).unwrap();
        assert!(!is_pure_square(&q).unwrap());

        let bad =
            Quadrangle::new(mor(&[1], &[1], 1), mor(&[1], &[1], 0), mor(&[1], &[1], 1), mor(&[1], &[1], 1)).unwrap();
        assert!(is_pure_square(&bad).is_err());
    }
}
