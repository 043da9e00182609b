//! Reliability polynomials of synthetic erasure channels.
//!
//! A channel with capacity `x` splits into a worse channel with capacity `x^2`
//! (bit 0) and a better one with capacity `2x - x^2` (bit 1). The string
//! `a_1 a_2 … a_l` applies the splits left to right, so the polynomial of the
//! string is `I_{a_l} ∘ … ∘ I_{a_1}`.

use num_rational::BigRational;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default bound on string length for polynomial construction (degree 4096).
pub const DEFAULT_MAX_LEN: usize = 12;

/// Reliability polynomial of `alpha`, with the default length limit.
pub fn reliability_poly(alpha: &BitString) -> Result<Poly> {
    reliability_poly_with_limit(alpha, DEFAULT_MAX_LEN)
}

pub fn reliability_poly_with_limit(alpha: &BitString, max_len: usize) -> Result<Poly> {
    if alpha.len() > max_len {
        return Err(Error::Capacity { len: alpha.len(), limit: max_len });
    }
    let mut p = Poly::x();
    for &bit in alpha.bits() {
        p = apply_split(&p, bit);
    }
    Ok(p)
}

/// `x^2` composed after `p` for bit 0, `2x - x^2` composed after `p` for bit 1.
pub fn apply_split(p: &Poly, bit: bool) -> Poly {
    let sq = p.square();
    if bit {
        &(p + p) - &sq
    } else {
        sq
    }
}

/// Exact integral of the reliability polynomial over `[0, 1]`.
pub fn average(alpha: &BitString) -> Result<BigRational> {
    Ok(reliability_poly(alpha)?.integrate_unit())
}
