use super::context::Context;
use super::morphism::EMorphism;
use super::object::FpObject;
use crate::arith::Matrix;

/// The chosen short exact sequence `X -mono-> B -epi-> X^{+1}` with `B`
/// bijective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishedSes {
    pub mono: EMorphism,
    pub middle: FpObject,
    pub epi: EMorphism,
    pub shifted: FpObject,
}

/// `mono` is diagonal with entries `p^{m - e}`; `epi` is the antidiagonal of
/// ones, which reverses summand order (blocks and copies within blocks).
pub fn distinguished_ses(ctx: &Context, x: &FpObject) -> DistinguishedSes {
    let n = x.len();
    let middle = FpObject::free(ctx, n as u32);
    let shifted = x.shift();
    let mut mono = Matrix::zeros(n, n);
    let mut epi = Matrix::zeros(n, n);
    for (r, &e) in x.exponents().iter().enumerate() {
        mono[(r, r)] = ctx.pow(ctx.m() - e) % ctx.pow(ctx.m());
        epi[(r, n - 1 - r)] = if e == ctx.m() { 0 } else { 1 };
    }
    DistinguishedSes {
        mono: EMorphism::from_parts(*ctx, x.clone(), middle.clone(), mono),
        epi: EMorphism::from_parts(*ctx, middle.clone(), shifted.clone(), epi),
        middle,
        shifted,
    }
}
