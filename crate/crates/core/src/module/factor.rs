use super::exact::is_injective;
use super::morphism::EMorphism;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{solve_linear_congruences, Matrix};
use crate::error::{contract, OctaError, Result};

/// Solves a congruence system in i128, redoing it with big integers when
/// the Smith form transforms outgrow i128.
pub(crate) fn solve_congruences(coeff: &Matrix<i128>, target: &[i128], moduli: &[i128]) -> Result<Option<Vec<i128>>> {
    match solve_linear_congruences(coeff, target, moduli) {
        Err(OctaError::Overflow(_)) => {}
        other => return other,
    }
    let big = |v: &i128| BigInt::from(*v);
    let coeff = Matrix::from_vec(coeff.rows(), coeff.cols(), coeff.data().iter().map(big).collect());
    let target: Vec<BigInt> = target.iter().map(big).collect();
    let moduli: Vec<BigInt> = moduli.iter().map(big).collect();
    let sol = solve_linear_congruences(&coeff, &target, &moduli)?;
    Ok(sol.map(|x| x.iter().map(|v| v.to_i128().expect("solution is reduced below the modulus")).collect()))
}

/// Equality level for factorization problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Equality of homomorphisms.
    Exact,
    /// Equality modulo maps factoring through bijective objects.
    Stable,
}

/// Finds `g : B -> C` with `left · g = rhs`, where `left : A -> B` and
/// `rhs : A -> C`, at the requested level.
pub fn solve_right_factor(left: &EMorphism, rhs: &EMorphism, level: Level) -> Result<Option<EMorphism>> {
    if left.source() != rhs.source() {
        return contract(format!("right factor: {left} and {rhs} have different sources"));
    }
    let ctx = *left.ctx();
    let m = ctx.m();
    let (a_obj, b_obj, c_obj) = (left.source(), left.target(), rhs.target());
    let mut g = Matrix::zeros(b_obj.len(), c_obj.len());
    for (c, &f) in c_obj.exponents().iter().enumerate() {
        let steps: Vec<i128> = b_obj.exponents().iter().map(|&e| ctx.pow(f.saturating_sub(e)) as i128).collect();
        let mut coeff = Matrix::zeros(a_obj.len(), b_obj.len());
        let mut target = Vec::with_capacity(a_obj.len());
        let mut moduli = Vec::with_capacity(a_obj.len());
        for (a, &ea) in a_obj.exponents().iter().enumerate() {
            for k in 0..b_obj.len() {
                coeff[(a, k)] = left.entry(a, k) as i128 * steps[k];
            }
            target.push(rhs.entry(a, c) as i128);
            let modulus = match level {
                Level::Exact => f,
                Level::Stable => f.min(m - ea),
            };
            moduli.push(ctx.pow(modulus) as i128);
        }
        let Some(z) = solve_congruences(&coeff, &target, &moduli)? else {
            return Ok(None);
        };
        for k in 0..b_obj.len() {
            g[(k, c)] = ((z[k] * steps[k]) % ctx.pow(f) as i128) as i64;
        }
    }
    EMorphism::new(&ctx, b_obj, c_obj, g).map(Some)
}

/// Finds `h : A -> B` with `h · right = rhs`, where `right : B -> C` and
/// `rhs : A -> C`, at the requested level.
pub fn solve_left_factor(right: &EMorphism, rhs: &EMorphism, level: Level) -> Result<Option<EMorphism>> {
    if right.target() != rhs.target() {
        return contract(format!("left factor: {right} and {rhs} have different targets"));
    }
    let ctx = *right.ctx();
    let m = ctx.m();
    let (a_obj, b_obj, c_obj) = (rhs.source(), right.source(), right.target());
    let mut h = Matrix::zeros(a_obj.len(), b_obj.len());
    for (a, &ea) in a_obj.exponents().iter().enumerate() {
        let steps: Vec<i128> = b_obj.exponents().iter().map(|&e| ctx.pow(e.saturating_sub(ea)) as i128).collect();
        let mut coeff = Matrix::zeros(c_obj.len(), b_obj.len());
        let mut target = Vec::with_capacity(c_obj.len());
        let mut moduli = Vec::with_capacity(c_obj.len());
        for (c, &f) in c_obj.exponents().iter().enumerate() {
            for k in 0..b_obj.len() {
                coeff[(c, k)] = right.entry(k, c) as i128 * steps[k];
            }
            target.push(rhs.entry(a, c) as i128);
            let modulus = match level {
                Level::Exact => f,
                Level::Stable => f.min(m - ea),
            };
            moduli.push(ctx.pow(modulus) as i128);
        }
        let Some(z) = solve_congruences(&coeff, &target, &moduli)? else {
            return Ok(None);
        };
        for (k, &e) in b_obj.exponents().iter().enumerate() {
            h[(a, k)] = ((z[k] * steps[k]) % ctx.pow(e) as i128) as i64;
        }
    }
    EMorphism::new(&ctx, a_obj, b_obj, h).map(Some)
}

/// Extends `f : A -> B` along a monomorphism `mono : A -> C` into a
/// bijective `B`, returning `g : C -> B` with `mono · g = f`.
pub fn extend_along_mono(mono: &EMorphism, f: &EMorphism) -> Result<EMorphism> {
    if !f.target().is_bijective() {
        return contract(format!("extension target {} is not bijective", f.target()));
    }
    if !is_injective(mono)? {
        return contract(format!("{mono} is not a monomorphism"));
    }
    solve_right_factor(mono, f, Level::Exact)?
        .ok_or_else(|| OctaError::Internal(format!("no extension of {f} along {mono}")))
}
