use std::sync::OnceLock;

use crate::error::{contract, Result};

/// Default cap on the size of any enumerated hom-set or element set.
pub const DEFAULT_ENUM_CAP: u128 = 10_000_000;

/// Largest supported modulus `p^m`.
pub const MAX_MODULUS: i64 = 1 << 31;

fn env_enum_cap() -> u128 {
    static CAP: OnceLock<u128> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("OCTA_MAX_ENUM").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_ENUM_CAP)
    })
}

/// The ring `Z/p^m`, plus the enumeration cap applied to every search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Context {
    p: i64,
    m: u32,
    enum_cap: u128,
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Context {
    /// Builds a context, reading the enumeration cap from `OCTA_MAX_ENUM`.
    pub fn new(p: i64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return contract(format!("{p} is not a prime"));
        }
        let fits = (p as i128).checked_pow(m).is_some_and(|q| q <= MAX_MODULUS as i128);
        if !fits {
            return contract(format!("{p}^{m} exceeds the supported modulus 2^31"));
        }
        Ok(Context { p, m, enum_cap: env_enum_cap() })
    }

    pub fn with_enum_cap(self, enum_cap: u128) -> Self {
        Context { enum_cap, ..self }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn enum_cap(&self) -> u128 {
        self.enum_cap
    }

    /// `p^e`; `e` must not exceed `m`.
    pub fn pow(&self, e: u32) -> i64 {
        debug_assert!(e <= self.m, "exponent {e} above m = {}", self.m);
        self.p.pow(e)
    }

    /// `p^m`.
    pub fn modulus(&self) -> i64 {
        self.pow(self.m)
    }

    /// Exponent of `p` in `a`, capped at `cap`.
    pub fn val_capped(&self, a: i64, cap: u32) -> u32 {
        if a == 0 {
            return cap;
        }
        let mut a = a;
        let mut v = 0;
        while v < cap && a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_huge_moduli() {
        assert!(Context::new(4, 2).is_err());
        assert!(Context::new(1, 2).is_err());
        assert!(Context::new(2, 31).is_ok());
        assert!(Context::new(2, 32).is_err());
        assert!(Context::new(3, 19).is_ok());
        assert!(Context::new(3, 20).is_err());
    }

    #[test]
    fn powers_and_valuations() {
        let ctx = Context::new(3, 8).unwrap();
        assert_eq!(ctx.modulus(), 6561);
        assert_eq!(ctx.val_capped(18, 8), 2);
        assert_eq!(ctx.val_capped(0, 5), 5);
        assert_eq!(ctx.val_capped(-27, 2), 2);
    }
}
