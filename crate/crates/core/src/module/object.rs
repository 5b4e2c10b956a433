use std::fmt;

use super::context::Context;
use crate::error::{contract, Result};

/// Finite direct sum of cyclic groups `Z/p^i`, `0 <= i <= m`.
///
/// Stored as multiplicities `a_0..a_m`. Summands are ordered canonically by
/// ascending exponent; summands of equal exponent are distinguished by copy
/// index. Summands `Z/p^0` are allowed and contribute empty rows/columns.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpObject {
    mult: Vec<u32>,
    exps: Vec<u32>,
}

impl FpObject {
    pub fn new(ctx: &Context, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != ctx.m() as usize + 1 {
            return contract(format!("multiplicity vector has length {}, expected {}", mult.len(), ctx.m() + 1));
        }
        let exps = mult.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat_n(i as u32, a as usize)).collect();
        Ok(FpObject { mult, exps })
    }

    /// Object with the given summand exponents, in any order.
    pub fn from_exponents(ctx: &Context, exps: &[u32]) -> Result<Self> {
        let mut mult = vec![0; ctx.m() as usize + 1];
        for &e in exps {
            if e > ctx.m() {
                return contract(format!("summand Z/p^{e} exceeds m = {}", ctx.m()));
            }
            mult[e as usize] += 1;
        }
        Self::new(ctx, mult)
    }

    pub fn zero(ctx: &Context) -> Self {
        Self::new(ctx, vec![0; ctx.m() as usize + 1]).expect("valid length")
    }

    pub fn cyclic(ctx: &Context, e: u32) -> Result<Self> {
        Self::from_exponents(ctx, &[e])
    }

    /// `(Z/p^m)^k`.
    pub fn free(ctx: &Context, k: u32) -> Self {
        let mut mult = vec![0; ctx.m() as usize + 1];
        mult[ctx.m() as usize] = k;
        Self::new(ctx, mult).expect("valid length")
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Summand exponents in canonical order.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    /// True when the object has no summands at all.
    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// True when the object is the zero group (only `Z/p^0` summands).
    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn m(&self) -> u32 {
        self.mult.len() as u32 - 1
    }

    /// `log_p` of the group order.
    pub fn log_order(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Projective-injective: only exponents `0` and `m` occur.
    pub fn is_bijective(&self) -> bool {
        let m = self.m() as usize;
        m == 0 || self.mult[1..m].iter().all(|&a| a == 0)
    }

    /// True when the object is zero in the stable category.
    pub fn is_stably_zero(&self) -> bool {
        self.is_bijective()
    }

    /// Shifted object, with multiplicities `a'_i = a_{m-i}`.
    pub fn shift(&self) -> Self {
        let mut mult = self.mult.clone();
        mult.reverse();
        let mut exps: Vec<u32> = self.exps.iter().rev().map(|&e| self.m() - e).collect();
        debug_assert!(exps.windows(2).all(|w| w[0] <= w[1]));
        exps.shrink_to_fit();
        FpObject { mult, exps }
    }

    /// Canonical direct sum, with the map from concatenated summand index
    /// (`self` first, then `other`) to canonical index.
    pub fn direct_sum(&self, other: &Self) -> (Self, Vec<usize>) {
        assert_eq!(self.m(), other.m(), "direct sum across different contexts");
        let concat: Vec<u32> = self.exps.iter().chain(&other.exps).copied().collect();
        let mut order: Vec<usize> = (0..concat.len()).collect();
        order.sort_by_key(|&i| concat[i]);
        let mut perm = vec![0; concat.len()];
        for (canonical, &i) in order.iter().enumerate() {
            perm[i] = canonical;
        }
        let mult = self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect();
        let exps = order.iter().map(|&i| concat[i]).collect();
        (FpObject { mult, exps }, perm)
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.direct_sum(other).0
    }
}

impl fmt::Display for FpObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "0");
        }
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "Z/p^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FpObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpObject({self})")
    }
}
