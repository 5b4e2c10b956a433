use std::fmt;

use super::morphism::StableMorphism;
use super::shift::shift_morphism;
use crate::error::{contract, OctaError, Result};
use crate::module::{cokernel, distinguished_ses, solve_right_factor, EMorphism, FpObject, Level};

/// A candidate triangle `X -f-> Y -g-> Z -h-> X^{+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub f: StableMorphism,
    pub g: StableMorphism,
    pub h: StableMorphism,
}

impl Triangle {
    pub fn new(f: StableMorphism, g: StableMorphism, h: StableMorphism) -> Result<Self> {
        if f.target() != g.source() || g.target() != h.source() || *h.target() != f.source().shift() {
            return contract(format!(
                "maps {} -> {}, {} -> {}, {} -> {} do not form a triangle",
                f.source(),
                f.target(),
                g.source(),
                g.target(),
                h.source(),
                h.target()
            ));
        }
        Ok(Triangle { f, g, h })
    }

    pub fn x(&self) -> &FpObject {
        self.f.source()
    }

    pub fn y(&self) -> &FpObject {
        self.g.source()
    }

    pub fn z(&self) -> &FpObject {
        self.h.source()
    }

    /// The three consecutive composites `f·g`, `g·h`, `h·f^{+1}`.
    pub fn composites(&self) -> Result<[StableMorphism; 3]> {
        Ok([self.f.compose(&self.g)?, self.g.compose(&self.h)?, self.h.compose(&shift_morphism(&self.f))?])
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -{}-> {} -{}-> {} -{}-> {}",
            self.x(),
            self.f.matrix(),
            self.y(),
            self.g.matrix(),
            self.z(),
            self.h.matrix(),
            self.h.target()
        )
    }
}

/// Standard triangle on `f : X -> Y`: `Z` is the pushout of the
/// distinguished sequence `X -> B -> X^{+1}` along `f`, realised as the
/// cokernel of `(mono, -f) : X -> B ⊕ Y`.
pub fn cone(f: &StableMorphism) -> Result<Triangle> {
    let ctx = *f.ctx();
    let (x, y) = (f.source(), f.target());
    let ses = distinguished_ses(&ctx, x);
    let into = EMorphism::pair(&ses.mono, &f.representative().neg())?;
    let (_, proj) = cokernel(&into)?;
    let g = EMorphism::inclusion(&ctx, &ses.middle, y, true).compose(&proj)?;
    let q = EMorphism::copair(&ses.epi, &EMorphism::zero(&ctx, y, &ses.shifted))?;
    let h = solve_right_factor(&proj, &q, Level::Exact)?
        .ok_or_else(|| OctaError::Internal(format!("connecting map of the cone on {f} does not exist")))?;
    Triangle::new(f.clone(), StableMorphism::new(&g), StableMorphism::new(&h))
}

/// Blockwise direct sum of two triangles, in canonical summand order.
pub fn triangle_direct_sum(t1: &Triangle, t2: &Triangle) -> Result<Triangle> {
    let f = t1.f.direct_sum(&t2.f);
    let g = t1.g.direct_sum(&t2.g);
    // The target of h1 ⊕ h2 is X1^{+1} ⊕ X2^{+1}, whose canonical order
    // differs from that of (X1 ⊕ X2)^{+1}; both list summands by exponent,
    // so rebuild h column by column against the shifted sum.
    let h_cat = t1.h.representative().matrix().block_diag(t2.h.representative().matrix());
    let (x_sum, x_perm) = t1.x().direct_sum(t2.x());
    let n = x_sum.len();
    let n1 = t1.x().len();
    let n2 = t2.x().len();
    // concatenated column of X1^{+1} ++ X2^{+1} -> summand of X_i -> canonical
    // index in X1 ⊕ X2 -> reversed index in its shift
    let mut col_map = Vec::with_capacity(n);
    for c in 0..n1 {
        col_map.push(n - 1 - x_perm[n1 - 1 - c]);
    }
    for c in 0..n2 {
        col_map.push(n - 1 - x_perm[n1 + n2 - 1 - c]);
    }
    let (_, z_perm) = t1.z().direct_sum(t2.z());
    let h_matrix = h_cat.permute_rows(&z_perm).permute_cols(&col_map);
    let ctx = *t1.f.ctx();
    let h = StableMorphism::from_matrix(&ctx, g.target(), &x_sum.shift(), h_matrix)?;
    Triangle::new(f, g, h)
}
