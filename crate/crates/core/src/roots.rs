//! Square-free decomposition and Sturm root counting over the integers.

use num_bigint::Sign;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::{require_nonzero, Poly};

/// Yun's square-free decomposition: returns `(f_i, i)` with `p = c * prod f_i^i`,
/// each `f_i` primitive, square-free, nonconstant and with positive leading coefficient.
pub fn square_free_decomposition(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    require_nonzero(p, "square-free decomposition")?;
    let f = p.primitive_part();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = Poly::gcd(&f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut mult = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = Poly::gcd(&b, &d);
        let b_next = b.div_exact(&a).expect("gcd divides b");
        let c_next = d.div_exact(&a).expect("gcd divides d");
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, mult));
        }
        d = &c_next - &b_next.derivative();
        b = b_next;
        mult += 1;
    }
    Ok(out)
}

/// Product of the square-free factors of `p` that occur with odd multiplicity.
///
/// The result is primitive and its leading coefficient has the sign of `p`'s,
/// so wherever `p` is nonzero the two share a sign. Real sign changes of `p`
/// happen exactly at the real roots of the result.
pub fn square_free_odd_part(p: &Poly) -> Result<Poly> {
    let factors = square_free_decomposition(p)?;
    let mut odd = factors
        .iter()
        .filter(|(_, m)| m % 2 == 1)
        .fold(Poly::one(), |acc, (f, _)| &acc * f);
    if p.leading_coeff().is_some_and(Signed::is_negative) {
        odd = -&odd;
    }
    Ok(odd)
}

/// The Sturm sequence of `p`, every member scaled by a positive constant to stay integral.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    Poly::negated_remainder_sequence(p, &p.derivative())
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<Sign> = seq
        .iter()
        .map(|q| q.sign_at(x.numer(), x.denom()))
        .filter(|s| *s != Sign::NoSign)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn sturm_root_count(p: &Poly, a: &BigRational, b: &BigRational) -> Result<usize> {
    require_nonzero(p, "root count")?;
    if a >= b {
        return Err(Error::Interval(format!("{a} is not below {b}")));
    }
    for end in [a, b] {
        if p.sign_at(end.numer(), end.denom()) == Sign::NoSign {
            return Err(Error::EndpointRoot(end.to_string()));
        }
    }
    let seq = sturm_sequence(p);
    Ok(sign_changes(&seq, a) - sign_changes(&seq, b))
}

/// Root count with a precomputed Sturm sequence; endpoints must not be roots.
pub fn sturm_count_with(seq: &[Poly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}
