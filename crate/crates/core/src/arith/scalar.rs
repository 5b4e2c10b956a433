use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};

/// Exact integer scalar usable as a matrix entry.
///
/// Implemented for every signed integer type that offers checked arithmetic,
/// which covers the machine integers as well as `num_bigint::BigInt`.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive
{
}

/// Overflow in checked integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("arithmetic overflow in exact integer computation")]
pub struct Overflow;

pub(crate) fn add<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

pub(crate) fn sub<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_sub(b).ok_or(Overflow)
}

pub(crate) fn mul<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}

/// `a - q * b`, checked.
pub(crate) fn sub_mul<T: Scalar>(a: &T, q: &T, b: &T) -> Result<T, Overflow> {
    sub(a, &mul(q, b)?)
}

/// Modular inverse of `a` modulo `m` (`m >= 1`), if `gcd(a, m) == 1`.
pub fn mod_inverse<T: Scalar>(a: &T, m: &T) -> Option<T> {
    let a = a.mod_floor(m);
    let eg = a.extended_gcd(m);
    if !eg.gcd.is_one() {
        return None;
    }
    Some(eg.x.mod_floor(m))
}
