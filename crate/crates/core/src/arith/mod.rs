//! Exact integer arithmetic: valuations, matrices, Smith normal form and
//! linear congruence solving. Everything here is generic over [`Scalar`].

mod congruence;
mod matrix;
mod scalar;
mod snf;

pub use congruence::{solve_linear_congruences, solve_matrix_congruence};
pub use matrix::Matrix;
pub use scalar::{mod_inverse, Overflow, Scalar};
pub use snf::{smith_normal_form, SnfResult};

use std::fmt;

/// p-adic valuation of an integer; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    /// `min(self, cap)` as a plain exponent.
    pub fn capped(self, cap: u32) -> u32 {
        match self {
            Valuation::Finite(v) => v.min(cap),
            Valuation::Infinity => cap,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// Largest `v` with `p^v | a`. `p` must be at least 2.
pub fn valuation<T: Scalar>(a: &T, p: &T) -> Valuation {
    assert!(*p > T::one(), "valuation base must be at least 2");
    if a.is_zero() {
        return Valuation::Infinity;
    }
    let mut a = a.clone();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        a = q;
        v += 1;
    }
}

/// `base^exp` with overflow checking.
pub fn checked_pow<T: Scalar>(base: &T, exp: u32) -> Result<T, Overflow> {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or(Overflow)?;
    }
    Ok(acc)
}
