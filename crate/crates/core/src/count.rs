//! Exact counting over a generic unsigned integer type.
//!
//! Every routine here is written against a small numeric trait so the same
//! code runs on machine words (`u64`, `u128`) and on arbitrary precision
//! integers. Overflow is always reported, never wrapped.

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive};

use crate::error::{Error, Result};

/// Unsigned integer types usable for exact combinatorial counts.
pub trait CountScalar: Clone + Integer + CheckedMul + CheckedAdd + FromPrimitive {}

impl<T> CountScalar for T where T: Clone + Integer + CheckedMul + CheckedAdd + FromPrimitive {}

fn lift<T: CountScalar>(v: u64) -> Result<T> {
    T::from_u64(v).ok_or_else(|| Error::Overflow(format!("{v} does not fit the count type")))
}

/// `C(s, u)`, exact; zero when `u > s`.
///
/// Each step multiplies by `(s - i)` and divides by `(i + 1)` after cancelling
/// their common factor with the running value, so an overflow error means the
/// result itself (or a partial product that divides it) does not fit `T`.
pub fn binomial<T: CountScalar>(s: u64, u: u64) -> Result<T> {
    if u > s {
        return Ok(T::zero());
    }
    let u = u.min(s - u);
    let mut acc = T::one();
    for i in 0..u {
        let num: T = lift(s - i)?;
        let den: T = lift(i + 1)?;
        let g = acc.gcd(&den);
        let reduced = acc / g.clone();
        let den = den / g;
        // den divides num now since gcd(reduced, den) = 1 and den | reduced * num
        let factor = num / den;
        acc = reduced
            .checked_mul(&factor)
            .ok_or_else(|| Error::Overflow(format!("C({s},{u})")))?;
    }
    Ok(acc)
}

/// `⌈num / den⌉` for positive `den`.
pub fn div_ceil<T: CountScalar>(num: T, den: T) -> T {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        q
    } else {
        q + T::one()
    }
}
