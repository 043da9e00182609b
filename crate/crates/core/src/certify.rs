//! Exact sign certification on `[0, 1]` and the standard order it decides.
//!
//! A difference `I_alpha - I_gamma` always vanishes at both endpoints. After
//! dividing out `x^e (1-x)^f` the remaining factor is subdivided at dyadic
//! midpoints until every piece has Bernstein coefficients of one sign, or two
//! exact points with opposite signs turn up. Tangential interior roots never
//! settle that way; for those the factor is replaced by the product of its
//! odd-multiplicity square-free factors, which has the same sign pattern, and
//! subdivision resumes. Sturm sequences back up the last step.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bernstein::{ber_outcome_of, n_form_of, split_half, to_bernstein, uniform_sign, BerOutcome, BernExpansion};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::poly::{require_nonzero, Poly};
use crate::reliability::reliability_poly;
use crate::roots::{square_free_odd_part, sturm_count_with, sturm_sequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Subdivision depth tried on the interior factor before reducing to its odd part.
    pub fast_depth: u32,
    /// Depth at which subdivision of the odd part gives way to Sturm sequences.
    pub max_depth: u32,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self { fast_depth: 24, max_depth: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    NonnegativeOn01,
    NonpositiveOn01,
    SignChange,
}

/// Which polynomial the division points and witness refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifiedFactor {
    /// `p / (x^e (1-x)^f)`.
    Interior,
    /// Odd-multiplicity square-free part of the interior factor (same sign pattern).
    OddPart,
    /// Odd part, decided by a Sturm sequence; division points are just `0, 1`.
    Sturm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    /// Multiplicities of the roots at `0` and at `1` divided out first.
    pub endpoint_orders: (usize, usize),
    pub factor: CertifiedFactor,
    /// `0 = d_0 < … < d_k = 1`; empty for sign changes.
    #[serde(serialize_with = "crate::serde_util::rational_list")]
    pub division_points: Vec<BigRational>,
    /// `(a, b)` with the certified factor taking opposite signs at `a` and `b`.
    #[serde(serialize_with = "crate::serde_util::rational_pair")]
    pub witness: Option<(BigRational, BigRational)>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    /// Re-checks the certificate against `p` by a separate route: restrictions
    /// are recomputed in the power basis rather than by repeated halving.
    pub fn verify(&self, p: &Poly) -> Result<bool> {
        let (e, stripped) = p.strip_x_power();
        let (f, interior) = stripped.strip_one_minus_x_power();
        if (e, f) != self.endpoint_orders {
            return Ok(false);
        }
        let target = match self.factor {
            CertifiedFactor::Interior => interior,
            CertifiedFactor::OddPart | CertifiedFactor::Sturm => square_free_odd_part(&interior)?,
        };
        match self.verdict {
            Verdict::SignChange => {
                let Some((a, b)) = &self.witness else { return Ok(false) };
                let (sa, sb) = (target.sign_at(a.numer(), a.denom()), target.sign_at(b.numer(), b.denom()));
                Ok(a < b && sa != Sign::NoSign && sb != Sign::NoSign && sa != sb)
            }
            Verdict::NonnegativeOn01 | Verdict::NonpositiveOn01 => {
                let want = if self.verdict == Verdict::NonnegativeOn01 { Sign::Plus } else { Sign::Minus };
                let pts = &self.division_points;
                if pts.first() != Some(&BigRational::zero()) || pts.last() != Some(&BigRational::one()) {
                    return Ok(false);
                }
                if self.factor == CertifiedFactor::Sturm {
                    let seq = sturm_sequence(&target);
                    let (zero, one) = (BigRational::zero(), BigRational::one());
                    let half = BigRational::new(1.into(), 2.into());
                    return Ok(target.degree() == Some(0) && target.coeff(0).sign() == want
                        || sturm_count_with(&seq, &zero, &one) == 0
                            && target.sign_at(half.numer(), half.denom()) == want);
                }
                for w in pts.windows(2) {
                    if w[0] >= w[1] || uniform_sign(&restricted_n_form(&target, &w[0], &w[1])) != want {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (e, g) = self.endpoint_orders;
        write!(f, "{:?} (x^{e} (1-x)^{g} removed, {:?} factor)", self.verdict, self.factor)?;
        if let Some((a, b)) = &self.witness {
            write!(f, "; opposite signs at {a} and {b}")?;
        } else {
            let pts: Vec<String> = self.division_points.iter().map(ToString::to_string).collect();
            write!(f, "; division points [{}]", pts.join(", "))?;
        }
        Ok(())
    }
}

/// N-form of `p` restricted to `[a, b]`, reparametrized over `[0, 1]` and scaled by a positive constant.
fn restricted_n_form(p: &Poly, a: &BigRational, b: &BigRational) -> Vec<BigInt> {
    let n = p.degree().unwrap_or(0);
    let den = a.denom() * b.denom();
    let lo = a.numer() * b.denom();
    let hi = b.numer() * a.denom();
    // den^n p((lo + (hi - lo) t) / den) = sum_i c_i (lo + (hi - lo) t)^i den^(n-i)
    let line = Poly::from_coeffs(vec![lo.clone(), &hi - &lo]);
    let mut acc = Poly::zero();
    let mut den_pow = BigInt::one();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &line) + &Poly::constant(c * &den_pow);
        den_pow *= &den;
    }
    n_form_of(acc.coeffs(), n)
}

/// Decides the sign behaviour of `p` on `[0, 1]`.
pub fn certify_nonneg(p: &Poly) -> Result<Certificate> {
    certify_with(p, &CertifyConfig::default())
}

pub fn certify_with(p: &Poly, config: &CertifyConfig) -> Result<Certificate> {
    require_nonzero(p, "sign certificate")?;
    let nform = n_form_of(p.coeffs(), p.degree().unwrap());
    certify_n_form(&nform, || p.clone(), config)
}

/// Certification from an N-form of any degree. `power` supplies the same
/// polynomial in the power basis and is only called for tangential cases.
pub(crate) fn certify_n_form(
    nform: &[BigInt],
    power: impl FnOnce() -> Poly,
    config: &CertifyConfig,
) -> Result<Certificate> {
    let e = nform.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPolynomial("sign certificate"))?;
    let f = nform.iter().rev().position(|c| !c.is_zero()).unwrap();
    let interior = &nform[e..nform.len() - f];

    if let Some(cert) = settle(interior, config.fast_depth, (e, f), CertifiedFactor::Interior) {
        return Ok(cert);
    }

    let (e2, stripped) = power().strip_x_power();
    let (f2, h) = stripped.strip_one_minus_x_power();
    if (e2, f2) != (e, f) {
        return Err(Error::Inconsistent(format!(
            "endpoint orders ({e}, {f}) from the N-form but ({e2}, {f2}) from the coefficients"
        )));
    }
    let odd = square_free_odd_part(&h)?;
    let odd_nform = n_form_of(odd.coeffs(), odd.degree().unwrap());
    if let Some(cert) = settle(&odd_nform, config.max_depth, (e, f), CertifiedFactor::OddPart) {
        return Ok(cert);
    }
    Ok(sturm_certificate(&odd, (e, f)))
}

fn settle(nform: &[BigInt], max_depth: u32, orders: (usize, usize), factor: CertifiedFactor) -> Option<Certificate> {
    let cert = |verdict, division_points, witness| Certificate {
        verdict,
        endpoint_orders: orders,
        factor,
        division_points,
        witness,
    };
    match subdivide(nform, max_depth) {
        Subdivision::Settled { sign, points } => {
            let verdict = if sign == Sign::Plus { Verdict::NonnegativeOn01 } else { Verdict::NonpositiveOn01 };
            Some(cert(verdict, points, None))
        }
        Subdivision::Witness(a, b) => Some(cert(Verdict::SignChange, Vec::new(), Some((a, b)))),
        Subdivision::Unresolved => None,
    }
}

enum Subdivision {
    Settled { sign: Sign, points: Vec<BigRational> },
    Witness(BigRational, BigRational),
    Unresolved,
}

/// Dyadic interval `[k / 2^depth, (k + 1) / 2^depth]`.
#[derive(Clone, Copy)]
struct Cell {
    k: u128,
    depth: u32,
}

impl Cell {
    fn point(num: u128, depth: u32) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::one() << depth)
    }
    fn lower(self) -> BigRational {
        Self::point(self.k, self.depth)
    }
    fn upper(self) -> BigRational {
        Self::point(self.k + 1, self.depth)
    }
    fn mid(self) -> BigRational {
        Self::point(2 * self.k + 1, self.depth + 1)
    }
}

fn subdivide(nform: &[BigInt], max_depth: u32) -> Subdivision {
    let mut stack = vec![(Cell { k: 0, depth: 0 }, nform.to_vec())];
    let mut points = vec![BigRational::zero()];
    let mut settled_sign: Option<(Sign, Cell)> = None;
    while let Some((cell, coeffs)) = stack.pop() {
        let sign = uniform_sign(&coeffs);
        if sign != Sign::NoSign {
            match settled_sign {
                None => settled_sign = Some((sign, cell)),
                Some((s, earlier)) if s != sign => {
                    // Interior points of settled pieces are strictly signed.
                    return Subdivision::Witness(earlier.mid(), cell.mid());
                }
                Some(_) => {}
            }
            points.push(cell.upper());
            continue;
        }
        let first = coeffs[0].sign();
        let last = coeffs[coeffs.len() - 1].sign();
        if first != Sign::NoSign && last != Sign::NoSign && first != last {
            return Subdivision::Witness(cell.lower(), cell.upper());
        }
        if cell.depth >= max_depth {
            return Subdivision::Unresolved;
        }
        let (mut left, mut right) = split_half(&coeffs);
        crate::bernstein::reduce_twos(&mut left);
        crate::bernstein::reduce_twos(&mut right);
        let depth = cell.depth + 1;
        stack.push((Cell { k: 2 * cell.k + 1, depth }, right));
        stack.push((Cell { k: 2 * cell.k, depth }, left));
    }
    let (sign, _) = settled_sign.expect("a nonzero polynomial settles somewhere");
    Subdivision::Settled { sign, points }
}

fn sturm_certificate(odd: &Poly, orders: (usize, usize)) -> Certificate {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let seq = sturm_sequence(odd);
    let roots = if odd.degree() == Some(0) { 0 } else { sturm_count_with(&seq, &zero, &one) };
    let (verdict, division_points, witness) = if roots == 0 {
        let half = BigRational::new(1.into(), 2.into());
        let verdict = match odd.sign_at(half.numer(), half.denom()) {
            Sign::Minus => Verdict::NonpositiveOn01,
            _ => Verdict::NonnegativeOn01,
        };
        (verdict, vec![zero, one], None)
    } else {
        (Verdict::SignChange, Vec::new(), Some(isolate_sign_change(odd, &seq, zero, one)))
    };
    Certificate { verdict, endpoint_orders: orders, factor: CertifiedFactor::Sturm, division_points, witness }
}

/// Narrows `(lo, hi)`, which holds a root of the square-free `p` and has
/// nonroot endpoints, until the endpoint signs differ.
fn isolate_sign_change(p: &Poly, seq: &[Poly], mut lo: BigRational, mut hi: BigRational) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(2.into());
    let is_root = |x: &BigRational| p.sign_at(x.numer(), x.denom()) == Sign::NoSign;
    loop {
        if sturm_count_with(seq, &lo, &hi) % 2 == 1 {
            return (lo, hi);
        }
        let mid = (&lo + &hi) / &two;
        if is_root(&mid) {
            let mut delta = (&hi - &lo) / BigRational::from_integer(4.into());
            loop {
                let (a, b) = (&mid - &delta, &mid + &delta);
                if !is_root(&a) && !is_root(&b) && sturm_count_with(seq, &a, &b) == 1 {
                    return (a, b);
                }
                delta /= &two;
            }
        }
        if sturm_count_with(seq, &lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Result of comparing two strings under a partial order or preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderOutcome {
    Greater,
    Less,
    /// Identical strings.
    Equal,
    /// Distinct strings related both ways by a preorder.
    Equivalent,
    Incomparable,
}

impl OrderOutcome {
    pub fn reversed(self) -> Self {
        match self {
            Self::Greater => Self::Less,
            Self::Less => Self::Greater,
            other => other,
        }
    }

    /// Row outperforms (or matches) column.
    pub fn is_at_least(self) -> bool {
        matches!(self, Self::Greater | Self::Equal | Self::Equivalent)
    }

    pub fn is_comparable(self) -> bool {
        self != Self::Incomparable
    }
}

impl fmt::Display for OrderOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn outcome_of(verdict: Verdict) -> OrderOutcome {
    match verdict {
        Verdict::NonnegativeOn01 => OrderOutcome::Greater,
        Verdict::NonpositiveOn01 => OrderOutcome::Less,
        Verdict::SignChange => OrderOutcome::Incomparable,
    }
}

/// Exact decision of `I_alpha >= I_gamma` on `[0, 1]`.
pub fn std_compare(alpha: &BitString, gamma: &BitString) -> Result<OrderOutcome> {
    Ok(std_compare_certified(alpha, gamma)?.0)
}

/// Like [`std_compare`], also returning the certificate for distinct strings.
pub fn std_compare_certified(alpha: &BitString, gamma: &BitString) -> Result<(OrderOutcome, Option<Certificate>)> {
    if alpha == gamma {
        return Ok((OrderOutcome::Equal, None));
    }
    let diff = &reliability_poly(alpha)? - &reliability_poly(gamma)?;
    let cert = certify_nonneg(&diff)?;
    Ok((outcome_of(cert.verdict), Some(cert)))
}

/// Cached reliability polynomials and N-forms for repeated comparisons
/// within a fixed set of strings. All N-forms share one degree, so a
/// difference is a coefficient-wise subtraction.
pub struct Comparer {
    strings: Vec<BitString>,
    polys: Vec<Poly>,
    nforms: Vec<Vec<BigInt>>,
    config: CertifyConfig,
}

impl Comparer {
    /// Prepares `strings` at Bernstein degree `2^(max length)`.
    pub fn new(strings: Vec<BitString>) -> Result<Self> {
        let max_len = strings.iter().map(BitString::len).max().unwrap_or(0);
        Self::with_degree(strings, 1usize << max_len)
    }

    /// Prepares `strings` at Bernstein degree `n`.
    pub fn with_degree(strings: Vec<BitString>, n: usize) -> Result<Self> {
        let polys = strings.iter().map(reliability_poly).collect::<Result<Vec<_>>>()?;
        let nforms = polys.iter().map(|p| to_bernstein(p, n).map(BernExpansion::into_n_form)).collect::<Result<_>>()?;
        Ok(Self { strings, polys, nforms, config: CertifyConfig::default() })
    }

    pub fn strings(&self) -> &[BitString] {
        &self.strings
    }

    pub fn degree(&self) -> usize {
        self.nforms.first().map_or(0, |v| v.len() - 1)
    }

    fn diff_n_form(&self, i: usize, j: usize) -> Vec<BigInt> {
        self.nforms[i].iter().zip(&self.nforms[j]).map(|(a, b)| a - b).collect()
    }

    /// Coefficient-wise order of entries `i` and `j` at the cached degree.
    pub fn ber(&self, i: usize, j: usize) -> BerOutcome {
        ber_outcome_of(&self.diff_n_form(i, j))
    }

    /// Standard order of entries `i` and `j`.
    pub fn std(&self, i: usize, j: usize) -> Result<OrderOutcome> {
        Ok(self.std_certified(i, j)?.0)
    }

    pub fn std_certified(&self, i: usize, j: usize) -> Result<(OrderOutcome, Option<Certificate>)> {
        if self.strings[i] == self.strings[j] {
            return Ok((OrderOutcome::Equal, None));
        }
        let nform = self.diff_n_form(i, j);
        let cert = certify_n_form(&nform, || &self.polys[i] - &self.polys[j], &self.config)?;
        Ok((outcome_of(cert.verdict), Some(cert)))
    }
}

/// Sign decision by Sturm sequences alone, independent of any Bernstein machinery.
pub fn sturm_decide(p: &Poly) -> Result<Verdict> {
    require_nonzero(p, "sign decision")?;
    let (_, stripped) = p.strip_x_power();
    let (_, h) = stripped.strip_one_minus_x_power();
    let constant_sign = |q: &Poly| match q.sign_at(&BigInt::one(), &BigInt::from(2)) {
        Sign::Minus => Verdict::NonpositiveOn01,
        _ => Verdict::NonnegativeOn01,
    };
    if h.degree() == Some(0) {
        return Ok(constant_sign(&h));
    }
    // Distinct roots first; only a repeated root needs the odd part.
    let seq = sturm_sequence(&h);
    let (zero, one) = (BigRational::zero(), BigRational::one());
    if sturm_count_with(&seq, &zero, &one) == 0 {
        return Ok(constant_sign(&h));
    }
    if seq.last().unwrap().degree() == Some(0) {
        return Ok(Verdict::SignChange);
    }
    let odd = square_free_odd_part(&h)?;
    if odd.degree() == Some(0) {
        return Ok(constant_sign(&odd));
    }
    if sturm_count_with(&sturm_sequence(&odd), &zero, &one) > 0 {
        return Ok(Verdict::SignChange);
    }
    Ok(constant_sign(&odd))
}

/// [`std_compare`] computed through Sturm sequences.
pub fn sturm_compare(alpha: &BitString, gamma: &BitString) -> Result<OrderOutcome> {
    if alpha == gamma {
        return Ok(OrderOutcome::Equal);
    }
    let diff = &reliability_poly(alpha)? - &reliability_poly(gamma)?;
    Ok(outcome_of(sturm_decide(&diff)?))
}

/// Runs both deciders and fails loudly if they disagree.
pub fn std_compare_checked(alpha: &BitString, gamma: &BitString) -> Result<OrderOutcome> {
    let fast = std_compare(alpha, gamma)?;
    let slow = sturm_compare(alpha, gamma)?;
    if fast != slow {
        return Err(Error::Inconsistent(format!("{alpha} vs {gamma}: subdivision {fast}, Sturm {slow}")));
    }
    Ok(fast)
}
