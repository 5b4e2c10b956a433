use super::morphism::{stable_modulus, StableMorphism};
use crate::arith::Matrix;
use crate::error::{contract, Result};
use crate::module::{solve_congruences, Context, FpObject};

/// A linear condition on an unknown stable morphism `w : S -> T`.
#[derive(Debug, Clone, Copy)]
pub enum Constraint<'a> {
    /// `a · w ≡ b` for `a : P -> S`, `b : P -> T`.
    Left(&'a StableMorphism, &'a StableMorphism),
    /// `w · c ≡ d` for `c : T -> Q`, `d : S -> Q`.
    Right(&'a StableMorphism, &'a StableMorphism),
}

/// Finds some stable `w : S -> T` meeting every constraint, or `None`.
pub fn solve_stable(
    ctx: &Context,
    s: &FpObject,
    t: &FpObject,
    constraints: &[Constraint<'_>],
) -> Result<Option<StableMorphism>> {
    let (ns, nt) = (s.len(), t.len());
    let m = ctx.m();
    // w[i][j] = p^{step[i][j]} z[i * nt + j]
    let step = |i: usize, j: usize| ctx.pow(t.exponents()[j].saturating_sub(s.exponents()[i])) as i128;
    let unknowns = ns * nt;
    let mut rows: Vec<Vec<i128>> = Vec::new();
    let mut target = Vec::new();
    let mut moduli = Vec::new();
    for con in constraints {
        match *con {
            Constraint::Left(a, b) => {
                if a.target() != s || b.target() != t || a.source() != b.source() {
                    return contract("left constraint does not fit the unknown");
                }
                for (y, &ey) in a.source().exponents().iter().enumerate() {
                    for (j, &fj) in t.exponents().iter().enumerate() {
                        let mut row = vec![0i128; unknowns];
                        for i in 0..ns {
                            row[i * nt + j] = a.entry(y, i) as i128 * step(i, j);
                        }
                        rows.push(row);
                        target.push(b.entry(y, j) as i128);
                        moduli.push(ctx.pow(fj.min(m - ey)) as i128);
                    }
                }
            }
            Constraint::Right(c, d) => {
                if c.source() != t || d.source() != s || c.target() != d.target() {
                    return contract("right constraint does not fit the unknown");
                }
                for (i, &ei) in s.exponents().iter().enumerate() {
                    for (q, &gq) in c.target().exponents().iter().enumerate() {
                        let mut row = vec![0i128; unknowns];
                        for j in 0..nt {
                            row[i * nt + j] = step(i, j) * c.entry(j, q) as i128;
                        }
                        rows.push(row);
                        target.push(d.entry(i, q) as i128);
                        moduli.push(ctx.pow(gq.min(m - ei)) as i128);
                    }
                }
            }
        }
    }
    let coeff = Matrix::from_vec(rows.len(), unknowns, rows.into_iter().flatten().collect());
    let Some(z) = solve_congruences(&coeff, &target, &moduli)? else {
        return Ok(None);
    };
    let mut w = Matrix::zeros(ns, nt);
    for i in 0..ns {
        for j in 0..nt {
            let q = stable_modulus(ctx, s.exponents()[i], t.exponents()[j]) as i128;
            w[(i, j)] = (z[i * nt + j] * step(i, j)).rem_euclid(q) as i64;
        }
    }
    Ok(Some(StableMorphism::from_canonical(*ctx, s.clone(), t.clone(), w)))
}
