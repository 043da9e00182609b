//! Strings read as numbers in base `beta`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{pow2_fraction, DyadicInterval};
use super::{TotalDecision, TotalOutcome, SCALE_CAP, START_SCALE};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// The base of the expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaParam {
    /// A positive rational base, evaluated exactly.
    Exact(BigRational),
    /// `2^(1/q)` for a positive rational `q`.
    RootOfTwo(BigRational),
}

/// Parses `3/2`, `1.25`, `7` or `-0.5` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigRational = parse_rational(n)?;
        let d: BigRational = parse_rational(d)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let value = BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
    Ok(if negative { -value } else { value })
}

impl FromStr for BetaParam {
    type Err = Error;

    /// Accepts `2^(1/q)`, `2^{1/q}` or a rational literal.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace(' ', "");
        let inner = t
            .strip_prefix("2^(1/")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("2^{1/").and_then(|r| r.strip_suffix('}')));
        let param = match inner {
            Some(q) => BetaParam::RootOfTwo(parse_rational(q)?),
            None => BetaParam::Exact(parse_rational(&t)?),
        };
        let positive = match &param {
            BetaParam::Exact(b) | BetaParam::RootOfTwo(b) => b.is_positive(),
        };
        if !positive {
            return Err(Error::Parse(format!("beta must be positive: {s:?}")));
        }
        Ok(param)
    }
}

impl fmt::Display for BetaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaParam::Exact(b) => write!(f, "{b}"),
            BetaParam::RootOfTwo(q) => {
                if q.is_integer() {
                    write!(f, "2^(1/{q})")
                } else {
                    let d = q.to_f64().unwrap_or(f64::NAN);
                    write!(f, "2^(1/{d})")
                }
            }
        }
    }
}

/// `alpha` as a polynomial in `beta`: `sum_i a_i beta^(l - i)`.
pub fn beta_poly(alpha: &BitString) -> Poly {
    let l = alpha.len();
    Poly::from_coeffs(
        (0..l)
            .map(|k| BigInt::from(u8::from(alpha.bits()[l - 1 - k])))
            .collect(),
    )
}

/// Exact value for a rational base.
pub fn beta_exact(alpha: &BitString, beta: &BigRational) -> BigRational {
    alpha.bits().iter().fold(BigRational::zero(), |acc, &bit| {
        acc * beta + if bit { BigRational::one() } else { BigRational::zero() }
    })
}

/// Evaluates expansions in one base, caching enclosures of the base itself.
pub struct BetaEvaluator {
    param: BetaParam,
    bases: [OnceLock<DyadicInterval>; 5],
}

fn cache_slot(scale: u32) -> Option<usize> {
    (0..5).find(|&i| START_SCALE << i == scale)
}

impl BetaEvaluator {
    pub fn new(param: BetaParam) -> Self {
        Self { param, bases: Default::default() }
    }

    pub fn param(&self) -> &BetaParam {
        &self.param
    }

    fn base(&self, scale: u32) -> DyadicInterval {
        let compute = || match &self.param {
            BetaParam::Exact(b) => DyadicInterval::from_rational(b, scale),
            BetaParam::RootOfTwo(q) => {
                // 2^(1/q) = 2^(den/num).
                let num = q.numer().to_u32().expect("q numerator fits in 32 bits");
                let den = q.denom().to_u64().expect("q denominator fits in 64 bits");
                pow2_fraction(den, num, scale)
            }
        };
        match cache_slot(scale) {
            Some(i) => self.bases[i].get_or_init(compute).clone(),
            None => compute(),
        }
    }

    /// Enclosure of the expansion of `alpha` with `scale` working bits.
    pub fn enclose(&self, alpha: &BitString, scale: u32) -> DyadicInterval {
        if let BetaParam::Exact(b) = &self.param {
            return DyadicInterval::from_rational(&beta_exact(alpha, b), scale);
        }
        let beta = self.base(scale);
        let mut acc = DyadicInterval::point(&BigInt::zero(), scale);
        for &bit in alpha.bits() {
            acc = acc.mul_nonneg(&beta).add_int(i64::from(bit));
        }
        acc
    }

    /// Enclosure of width at most `2^-precision`.
    pub fn value(&self, alpha: &BitString, precision: u32) -> DyadicInterval {
        let mut scale = precision + 16 + alpha.len() as u32;
        loop {
            let v = self.enclose(alpha, scale);
            if v.is_within(precision) {
                return v;
            }
            scale *= 2;
        }
    }

    /// `alpha >=_beta gamma`, with exact ties detected up front.
    pub fn compare(&self, alpha: &BitString, gamma: &BitString) -> TotalDecision {
        if alpha.strip_leading_zeros() == gamma.strip_leading_zeros() {
            return TotalDecision::exact(TotalOutcome::Equivalent);
        }
        if let BetaParam::Exact(b) = &self.param {
            let ord = beta_exact(alpha, b).cmp(&beta_exact(gamma, b));
            return TotalDecision::exact(TotalOutcome::from_ordering(ord));
        }
        let mut scale = START_SCALE;
        while scale <= SCALE_CAP {
            if let Some(ord) = self.enclose(alpha, scale).certain_cmp(&self.enclose(gamma, scale)) {
                return TotalDecision::exact(TotalOutcome::from_ordering(ord));
            }
            scale *= 2;
        }
        TotalDecision::at_cap()
    }

    /// Compares using enclosures the caller already holds, escalating only on overlap.
    pub(crate) fn compare_with(
        &self,
        alpha: &BitString,
        a: &DyadicInterval,
        gamma: &BitString,
        g: &DyadicInterval,
    ) -> Ordering {
        match a.certain_cmp(g) {
            Some(ord) if ord != Ordering::Equal || alpha.strip_leading_zeros() == gamma.strip_leading_zeros() => ord,
            _ => self.compare(alpha, gamma).outcome.as_ordering(),
        }
    }
}

/// Enclosure of the expansion of `alpha` at width `2^-precision`.
pub fn beta_value(alpha: &BitString, beta: &BetaParam, precision: u32) -> DyadicInterval {
    BetaEvaluator::new(beta.clone()).value(alpha, precision)
}

/// `alpha >=_beta gamma`.
pub fn beta_compare(alpha: &BitString, gamma: &BitString, beta: &BetaParam) -> TotalDecision {
    BetaEvaluator::new(beta.clone()).compare(alpha, gamma)
}
