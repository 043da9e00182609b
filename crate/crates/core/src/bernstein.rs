//! Bernstein expansions, the coefficient-wise order and exponent/mantissa data.
//!
//! Everything here works on the integer N-form: for a polynomial written as
//! `sum_i B_i C(n,i) x^i (1-x)^(n-i)` the N-form is `N_i = B_i C(n,i)`.
//! `N_i` and `B_i` always share a sign, so sign questions never need rationals.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::poly::{require_nonzero, Poly};
use crate::reliability::reliability_poly;

/// Degree-`n` Bernstein expansion of a polynomial, stored as its N-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernExpansion {
    nform: Vec<BigInt>,
}

impl BernExpansion {
    pub fn degree(&self) -> usize {
        self.nform.len() - 1
    }

    pub fn n_form(&self) -> &[BigInt] {
        &self.nform
    }

    pub fn into_n_form(self) -> Vec<BigInt> {
        self.nform
    }

    /// Bernstein coefficient `B_i = N_i / C(n, i)`.
    pub fn coefficient(&self, i: usize) -> BigRational {
        BigRational::new(self.nform[i].clone(), binomial(self.degree(), i))
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..=self.degree()).map(|i| self.coefficient(i)).collect()
    }

    /// Power-basis polynomial `sum_i N_i x^i (1-x)^(n-i)`.
    pub fn reconstruct(&self) -> Poly {
        // Same Horner trick as the forward map, with y = x / (1 - x) inverted:
        // sum_i N_i x^i (1-x)^(n-i) = sum_j a_j x^j with a_j = sum_{i<=j} (-1)^(j-i) C(n-i, j-i) N_i.
        let mut signed: Vec<BigInt> = self.nform.clone();
        n_form_recurrence(&mut signed, true);
        Poly::from_coeffs(signed)
    }

    /// The same polynomial in the degree `n + 1` basis.
    pub fn elevate(&self) -> BernExpansion {
        let n = self.nform.len();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, c) in self.nform.iter().enumerate() {
            out[i] += c;
            out[i + 1] += c;
        }
        BernExpansion { nform: out }
    }

    /// Sign of every N-form entry: `Plus` if all are `>= 0` with one positive,
    /// `Minus` symmetrically, `NoSign` if mixed or all zero.
    pub fn uniform_sign(&self) -> Sign {
        uniform_sign(&self.nform)
    }
}

pub(crate) fn uniform_sign(nform: &[BigInt]) -> Sign {
    let mut pos = false;
    let mut neg = false;
    for c in nform {
        match c.sign() {
            Sign::Plus => pos = true,
            Sign::Minus => neg = true,
            Sign::NoSign => {}
        }
        if pos && neg {
            return Sign::NoSign;
        }
    }
    match (pos, neg) {
        (true, false) => Sign::Plus,
        (false, true) => Sign::Minus,
        _ => Sign::NoSign,
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// In place: `v_i <- sum_{j<=i} (+-1)^(i-j) C(n-j, i-j) v_j` where `n = v.len() - 1`.
///
/// Evaluates `sum_j v_j y^j (1 +- y)^(n-j)` by the recurrence
/// `Q_k = (1 +- y) Q_{k-1} + v_k y^k`, which costs only additions.
pub(crate) fn n_form_recurrence(v: &mut [BigInt], alternate: bool) {
    let n = v.len();
    for k in 1..n {
        // Q_{k-1} occupies v[0..k]; multiply it by (1 +- y) in place, top down.
        // The new top term v[k] gets the old v[k-1] added to its own coefficient.
        for i in (1..=k).rev() {
            let (lo, hi) = v.split_at_mut(i);
            if alternate {
                hi[0] -= &lo[i - 1];
            } else {
                hi[0] += &lo[i - 1];
            }
        }
    }
}

/// N-form of the power-basis coefficients `coeffs` in the degree-`n` basis.
pub(crate) fn n_form_of(coeffs: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n + 1];
    v[..coeffs.len()].clone_from_slice(coeffs);
    n_form_recurrence(&mut v, false);
    v
}

/// Expansion of `p` in the Bernstein basis of degree `n`.
pub fn to_bernstein(p: &Poly, n: usize) -> Result<BernExpansion> {
    let required = p.degree().unwrap_or(0);
    if n < required {
        return Err(Error::Degree { requested: n, required });
    }
    Ok(BernExpansion { nform: n_form_of(p.coeffs(), n) })
}

/// Splits an N-form on `[0, 1]` at `1/2`. Both halves come back scaled by `2^n`.
pub(crate) fn split_half(nform: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    (left_half(nform), {
        let mut rev: Vec<BigInt> = nform.iter().rev().cloned().collect();
        rev = left_half(&rev);
        rev.reverse();
        rev
    })
}

// N-form of f(t/2) times 2^n: L_j = 2^(n-j) sum_{i<=j} C(n-i, j-i) N_i.
fn left_half(nform: &[BigInt]) -> Vec<BigInt> {
    let n = nform.len() - 1;
    let mut v = nform.to_vec();
    n_form_recurrence(&mut v, false);
    for (j, c) in v.iter_mut().enumerate() {
        *c <<= n - j;
    }
    v
}

/// Divides out the largest common power of two.
pub(crate) fn reduce_twos(v: &mut [BigInt]) {
    let shift = v.iter().filter_map(|c| c.trailing_zeros()).min().unwrap_or(0);
    if shift > 0 {
        for c in v.iter_mut() {
            *c >>= shift;
        }
    }
}

/// Outcome of the coefficient-wise comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BerOutcome {
    /// All N-form entries of `I_alpha - I_gamma` are nonnegative.
    Holds,
    /// All entries are nonpositive.
    HoldsReversed,
    Neither,
    /// The difference vanishes.
    Equal,
}

/// Classifies a difference N-form.
pub fn ber_outcome_of(nform: &[BigInt]) -> BerOutcome {
    match uniform_sign(nform) {
        Sign::Plus => BerOutcome::Holds,
        Sign::Minus => BerOutcome::HoldsReversed,
        Sign::NoSign if nform.iter().all(Zero::is_zero) => BerOutcome::Equal,
        Sign::NoSign => BerOutcome::Neither,
    }
}

/// Coefficient-wise order at Bernstein degree `n`.
pub fn ber_order(alpha: &BitString, gamma: &BitString, n: usize) -> Result<BerOutcome> {
    let required = 1usize << alpha.len().max(gamma.len());
    if n < required {
        return Err(Error::Degree { requested: n, required });
    }
    let diff = &reliability_poly(alpha)? - &reliability_poly(gamma)?;
    Ok(ber_outcome_of(to_bernstein(&diff, n)?.n_form()))
}

/// Lowest power with a nonzero coefficient, and that coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpMant {
    pub exponent: usize,
    #[serde(serialize_with = "crate::serde_util::bigint_string")]
    pub mantissa: BigInt,
}

/// Exponent and mantissa read off the polynomial itself.
///
/// The N-form entry at the exponent equals the power coefficient there, so the
/// Bernstein degree does not matter.
pub fn exp_mant_direct(p: &Poly) -> Result<ExpMant> {
    require_nonzero(p, "exponent")?;
    let (exponent, mantissa) = p.lowest_term().expect("nonzero");
    Ok(ExpMant { exponent, mantissa: mantissa.clone() })
}

/// Exponent and base-2 logarithm of the mantissa, from the string alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpMantFormula {
    /// `2^z` where `z` counts the zeros.
    pub exponent: u64,
    /// Sum over the ones of `2^(zeros to the right of that one)`.
    pub log2_mantissa: u64,
}

impl ExpMantFormula {
    pub fn mantissa(&self) -> BigInt {
        BigInt::one() << self.log2_mantissa
    }
}

pub fn exp_mant_formula(alpha: &BitString) -> ExpMantFormula {
    assert!(alpha.len() < 64, "formula evaluated only below 64 bits");
    let z = alpha.zeros() as u32;
    let mut zeros_right = 0u32;
    let mut log2 = 0u64;
    for &bit in alpha.bits().iter().rev() {
        if bit {
            log2 += 1u64 << zeros_right;
        } else {
            zeros_right += 1;
        }
    }
    ExpMantFormula { exponent: 1u64 << z, log2_mantissa: log2 }
}

/// `true` when `values` never decreases.
pub fn is_non_decreasing(values: &[BigRational]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| c.into()).collect()
    }

    fn rp(s: &str) -> Poly {
        reliability_poly(&bs(s)).unwrap()
    }

    /// Straight from the definition: N_i = sum_{j<=i} C(n-j, i-j) a_j.
    fn n_form_oracle(p: &Poly, n: usize) -> Vec<BigInt> {
        (0..=n)
            .map(|i| (0..=i).map(|j| binomial(n - j, i - j) * p.coeff(j)).sum())
            .collect()
    }

    #[test]
    fn identity_in_degree_two() {
        let e = to_bernstein(&Poly::x(), 2).unwrap();
        assert_eq!(e.n_form(), ints(&[0, 1, 1]).as_slice());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(e.coefficients(), vec![BigRational::zero(), half, BigRational::one()]);
    }

    #[test]
    fn rsb_difference_n_form() {
        let d = &rp("10") - &rp("01");
        assert_eq!(to_bernstein(&d, 4).unwrap().n_form(), ints(&[0, 0, 2, 0, 0]).as_slice());
    }

    #[test]
    fn partition_of_unity() {
        for n in 0..8 {
            let e = to_bernstein(&Poly::one(), n).unwrap();
            for i in 0..=n {
                assert_eq!(e.n_form()[i], binomial(n, i));
                assert!(e.coefficient(i).is_one());
            }
        }
    }

    #[test]
    fn degree_too_small() {
        assert!(matches!(to_bernstein(&rp("10"), 3), Err(Error::Degree { requested: 3, required: 4 })));
        assert!(ber_order(&bs("10"), &bs("01"), 3).is_err());
    }

    #[test]
    fn ber_order_examples() {
        assert_eq!(ber_order(&bs("10"), &bs("01"), 4).unwrap(), BerOutcome::Holds);
        assert_eq!(ber_order(&bs("01"), &bs("10"), 4).unwrap(), BerOutcome::HoldsReversed);
        assert_eq!(ber_order(&bs("101"), &bs("101"), 8).unwrap(), BerOutcome::Equal);
    }

    #[test]
    fn n_form_matches_definition_and_reconstructs() {
        for alpha in BitString::all_up_to(4) {
            let p = rp(&alpha.to_string());
            for extra in [0, 1, 5] {
                let n = (1 << alpha.len()) + extra;
                let e = to_bernstein(&p, n).unwrap();
                assert_eq!(e.n_form(), n_form_oracle(&p, n).as_slice());
                assert_eq!(e.reconstruct(), p);
                assert_eq!(e.n_form()[0], p.coeff(0));
                assert_eq!(e.n_form()[n], p.coeff_sum());
            }
        }
    }

    #[test]
    fn elevation_matches_direct_expansion() {
        let p = &rp("0110") - &rp("1001");
        let e16 = to_bernstein(&p, 16).unwrap();
        assert_eq!(e16.elevate(), to_bernstein(&p, 17).unwrap());
    }

    #[test]
    fn halves_match_substitution() {
        let p = &rp("011") - &rp("10");
        let n = 8;
        let (l, r) = split_half(to_bernstein(&p, n).unwrap().n_form());
        // 2^n f(t/2) has power coefficients a_j 2^(n-j).
        let lp = Poly::from_coeffs((0..=n).map(|j| p.coeff(j) << (n - j)).collect());
        assert_eq!(l, n_form_of(lp.coeffs(), n));
        // 2^n f((1+t)/2) = sum_j a_j 2^(n-j) (1+t)^j.
        let rp_ = (0..=n).fold(Poly::zero(), |acc, j| {
            let pow = (0..j).fold(Poly::one(), |t, _| &t * &Poly::from_i64(&[1, 1]));
            &acc + &pow.scale(&(p.coeff(j) << (n - j)))
        });
        assert_eq!(r, n_form_of(rp_.coeffs(), n));
        assert_eq!(l[n], r[0]);
    }

    #[test]
    fn exponent_mantissa_direct() {
        assert_eq!(exp_mant_direct(&rp("10")).unwrap(), ExpMant { exponent: 2, mantissa: 4.into() });
        assert_eq!(exp_mant_direct(&rp("01")).unwrap(), ExpMant { exponent: 2, mantissa: 2.into() });
        assert_eq!(exp_mant_direct(&Poly::x()).unwrap(), ExpMant { exponent: 1, mantissa: 1.into() });
        assert!(exp_mant_direct(&Poly::zero()).is_err());
        let d = &rp("0") - &rp("1");
        assert_eq!(exp_mant_direct(&d).unwrap().mantissa, BigInt::from(-2));
    }

    #[test]
    fn exponent_mantissa_formula() {
        assert_eq!(exp_mant_formula(&bs("10")), ExpMantFormula { exponent: 2, log2_mantissa: 2 });
        assert_eq!(exp_mant_formula(&bs("01")), ExpMantFormula { exponent: 2, log2_mantissa: 1 });
        assert_eq!(exp_mant_formula(&bs("1")), ExpMantFormula { exponent: 1, log2_mantissa: 1 });
        assert_eq!(exp_mant_formula(&bs("")), ExpMantFormula { exponent: 1, log2_mantissa: 0 });
    }

    #[test]
    fn formula_agrees_with_direct_up_to_eight() {
        for alpha in BitString::all_up_to(8) {
            let direct = exp_mant_direct(&rp(&alpha.to_string())).unwrap();
            let formula = exp_mant_formula(&alpha);
            assert_eq!(direct.exponent as u64, formula.exponent, "{alpha}");
            assert_eq!(direct.mantissa, formula.mantissa(), "{alpha}");
        }
    }

    #[test]
    fn bernstein_coefficients_non_decreasing() {
        for alpha in BitString::all_up_to(6) {
            let p = rp(&alpha.to_string());
            let e = to_bernstein(&p, 1 << alpha.len()).unwrap();
            assert!(is_non_decreasing(&e.coefficients()), "{alpha}");
        }
    }
}
