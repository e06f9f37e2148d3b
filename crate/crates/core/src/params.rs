use serde::Serialize;

use crate::error::{domain, Result};

/// Parameters `(s, k, u, ℓ)` of the decomposition bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BoundParams {
    pub s: usize,
    pub k: usize,
    pub u: usize,
    pub ell: usize,
}

impl BoundParams {
    /// Checks `s ≥ 1`, `1 ≤ u ≤ s` and `2 ≤ ℓ < k`.
    pub fn new(s: usize, k: usize, u: usize, ell: usize) -> Result<Self> {
        let p = Self { s, k, u, ell };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { s, k, u, ell } = *self;
        if s == 0 {
            return Err(domain("s must be at least 1"));
        }
        if u == 0 || u > s {
            return Err(domain(format!("u={u} must satisfy 1 <= u <= s={s}")));
        }
        if ell < 2 || ell >= k {
            return Err(domain(format!("ell={ell} must satisfy 2 <= ell < k={k}")));
        }
        Ok(())
    }
}

pub(crate) fn check_u(u: usize, s: usize) -> Result<()> {
    if u == 0 || u > s {
        return Err(domain(format!("u={u} must satisfy 1 <= u <= s={s}")));
    }
    Ok(())
}

pub(crate) fn check_arity(name: &str, k: usize) -> Result<()> {
    if k < 2 {
        return Err(domain(format!("{name}={k} must be at least 2")));
    }
    Ok(())
}
