//! Machine checks of the identities and orderings the library relies on.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bernstein::{exp_mant_direct, exp_mant_formula, is_non_decreasing, to_bernstein, BerOutcome};
use crate::bits::{dual_string, thue_morse_prefix, BitString};
use crate::certify::{certify_nonneg, std_compare, Comparer, OrderOutcome, Verdict};
use crate::error::{Error, Result};
use crate::orders::beta::{beta_exact, beta_poly};
use crate::poly::{dual_poly, Poly};
use crate::reliability::{average, reliability_poly, reliability_poly_with_limit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    RsELemma,
    RsFIdentity,
    Martingale,
    BetaIdentities,
    RsDBeta,
    Duality,
    Composition,
    Injectivity,
    ExpMant,
    Monotone,
    BernsteinMonotone,
    BerGap,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::RsELemma,
        Suite::RsFIdentity,
        Suite::Martingale,
        Suite::BetaIdentities,
        Suite::RsDBeta,
        Suite::Duality,
        Suite::Composition,
        Suite::Injectivity,
        Suite::ExpMant,
        Suite::Monotone,
        Suite::BernsteinMonotone,
        Suite::BerGap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RsELemma => "rsE-lemma",
            Suite::RsFIdentity => "rsF-identity",
            Suite::Martingale => "martingale",
            Suite::BetaIdentities => "beta-identities",
            Suite::RsDBeta => "rsD-beta",
            Suite::Duality => "duality",
            Suite::Composition => "composition",
            Suite::Injectivity => "injectivity",
            Suite::ExpMant => "exp-mant",
            Suite::Monotone => "monotone",
            Suite::BernsteinMonotone => "bernstein-monotone",
            Suite::BerGap => "ber-gap",
        }
    }

    /// Length bound used when none is given.
    pub fn default_len(self) -> usize {
        match self {
            Suite::Injectivity => 6,
            Suite::ExpMant => 10,
            Suite::BernsteinMonotone => 8,
            Suite::RsDBeta => 6,
            _ => 8,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}; known: {}", suite_names().join(", "))))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn suite_names() -> Vec<&'static str> {
    Suite::ALL.iter().map(|s| s.name()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported finding that does not decide the suite.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        let status = if passed { Status::Pass } else { Status::Fail };
        Self { name: name.into(), status, detail: detail.into() }
    }

    fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status: Status::Info, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            writeln!(f, "{tag} {} {}: {}", self.suite, c.name, c.detail)?;
        }
        write!(f, "{} {}", self.suite, if self.passed() { "passed" } else { "FAILED" })
    }
}

/// Runs `suite` with length bound `max_len` (the suite default when `None`).
pub fn run_suite(suite: Suite, max_len: Option<usize>) -> Result<VerifyReport> {
    let len = max_len.unwrap_or(suite.default_len());
    let checks = match suite {
        Suite::RsELemma => rse_lemma()?,
        Suite::RsFIdentity => rsf_identity()?,
        Suite::Martingale => martingale(len)?,
        Suite::BetaIdentities => beta_identities(),
        Suite::RsDBeta => rsd_beta(len),
        Suite::Duality => duality(len)?,
        Suite::Composition => composition(len)?,
        Suite::Injectivity => injectivity(len)?,
        Suite::ExpMant => exp_mant(len)?,
        Suite::Monotone => monotone(len)?,
        Suite::BernsteinMonotone => bernstein_monotone(len)?,
        Suite::BerGap => vec![ber_gap(len)?],
    };
    Ok(VerifyReport { suite: suite.name().to_string(), checks })
}

fn bs(s: &str) -> BitString {
    s.parse().expect("literal bit string")
}

fn rse_lemma() -> Result<Vec<Check>> {
    let (o, i) = (bs("0110"), bs("1001"));
    let pairs = [(o.clone(), i.clone()), (o.concat(&i), i.concat(&o)), (o.concat(&i).concat(&i), i.concat(&o).concat(&o))];
    pairs
        .iter()
        .map(|(lo, hi)| {
            let outcome = std_compare(lo, hi)?;
            Ok(Check::new(format!("{lo} <= {hi}"), outcome == OrderOutcome::Less, format!("std order: {outcome}")))
        })
        .collect()
}

/// `x^3 (x - 1)^2 (4 + x - 2x^2 - x^3)`.
pub fn rsf_factored() -> Poly {
    let x3 = Poly::monomial(BigInt::one(), 3);
    let xm1 = Poly::from_i64(&[-1, 1]);
    &(&x3 * &xm1.square()) * &Poly::from_i64(&[4, 1, -2, -1])
}

fn rsf_identity() -> Result<Vec<Check>> {
    let (hi, lo) = (bs("011"), bs("10"));
    let diff = &reliability_poly(&hi)? - &reliability_poly(&lo)?;
    let factored = rsf_factored();
    let verdict = certify_nonneg(&diff)?.verdict;
    Ok(vec![
        Check::new("I_011 - I_10 = x^3 (x-1)^2 (4 + x - 2x^2 - x^3)", diff == factored, format!("difference {diff}")),
        Check::new("011 >= 10", verdict == Verdict::NonnegativeOn01, format!("certificate verdict {verdict:?}")),
    ])
}

fn martingale(len: usize) -> Result<Vec<Check>> {
    let mut failures = Vec::new();
    let mut count = 0;
    for alpha in BitString::all_up_to(len) {
        let lhs = average(&alpha.pushed(false))? + average(&alpha.pushed(true))?;
        let rhs = average(&alpha)? * BigRational::from_integer(2.into());
        count += 1;
        if lhs != rhs {
            failures.push(alpha.to_string());
        }
    }
    Ok(vec![Check::new(
        format!("avg(a0) + avg(a1) = 2 avg(a) for |a| <= {len}"),
        failures.is_empty(),
        format!("{count} strings, failures: {failures:?}"),
    )])
}

/// `(beta - 1)(beta^(k+2) - 1)` and the Thue-Morse product.
fn beta_identities() -> Vec<Check> {
    let mut checks = Vec::new();
    let beta_minus_one = Poly::from_i64(&[-1, 1]);
    let mut ok = true;
    for k in 0..=8 {
        let z = "0".repeat(k);
        let diff = &beta_poly(&bs(&format!("10{z}01"))) - &beta_poly(&bs(&format!("01{z}10")));
        let expected = &beta_minus_one * &(&Poly::monomial(BigInt::one(), k + 2) - &Poly::one());
        ok &= diff == expected;
    }
    checks.push(Check::new("(10 0^k 01) - (01 0^k 10) = (b-1)(b^(k+2)-1), k = 0..8", ok, "exact polynomials in beta"));
    let mut ok = true;
    for k in 1..=6 {
        let tau = thue_morse_prefix(1 << k);
        let diff = &beta_poly(&tau.complement()) - &beta_poly(&tau);
        let expected = (0..k).fold(Poly::one(), |acc, j| &acc * &(&Poly::monomial(BigInt::one(), 1 << j) - &Poly::one()));
        ok &= diff == expected;
    }
    checks.push(Check::new("complement(tau) - tau = prod (b^(2^j) - 1), k = 1..6", ok, "exact polynomials in beta"));
    checks
}

/// Tests `0^k 1^(2^k) >=_beta 1^k 0^(2^k)` on a grid of rational bases against
/// the bound `beta^k <= 2` and against the bound `beta^k <= 1/2`.
fn rsd_beta(max_k: usize) -> Vec<Check> {
    let grid: Vec<BigRational> = (1..=192).map(|i| BigRational::new(BigInt::from(i), BigInt::from(64))).collect();
    let two = BigRational::from_integer(2.into());
    let half = BigRational::new(1.into(), 2.into());
    let mut upper_violations = Vec::new();
    let mut lower_violations = Vec::new();
    for k in 1..=max_k {
        let hi = BitString::repeat(false, k).concat(&BitString::repeat(true, 1 << k));
        let lo = BitString::repeat(true, k).concat(&BitString::repeat(false, 1 << k));
        for b in &grid {
            if beta_exact(&hi, b) >= beta_exact(&lo, b) {
                let bk = num_traits::pow(b.clone(), k);
                if bk > two {
                    upper_violations.push(format!("k={k} beta={b}"));
                }
                if bk > half {
                    lower_violations.push(format!("k={k} beta={b}"));
                }
            }
        }
    }
    let sample = |v: &[String]| v.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
    vec![
        Check::new(
            format!("implied bound beta <= 2^(1/k), k = 1..{max_k}"),
            upper_violations.is_empty(),
            format!("{} violations on the grid i/64, i = 1..192", upper_violations.len()),
        ),
        Check::info(
            format!("implied bound beta <= 2^(-1/k), k = 1..{max_k}"),
            format!("{} violations, e.g. {}", lower_violations.len(), sample(&lower_violations)),
        ),
    ]
}

fn duality(len: usize) -> Result<Vec<Check>> {
    let mut failures = Vec::new();
    for alpha in BitString::all_up_to(len) {
        if reliability_poly_with_limit(&dual_string(&alpha), len)? != dual_poly(&reliability_poly_with_limit(&alpha, len)?) {
            failures.push(alpha.to_string());
        }
    }
    Ok(vec![Check::new(format!("I of the complement = 1 - I(1 - x), |a| <= {len}"), failures.is_empty(), format!("failures: {failures:?}"))])
}

fn composition(len: usize) -> Result<Vec<Check>> {
    let mut failures = Vec::new();
    let mut count = 0;
    for total in 0..=len {
        for joined in BitString::all_of_length(total) {
            let whole = reliability_poly_with_limit(&joined, len)?;
            for cut in 0..=total {
                let a = BitString::from_bits(joined.bits()[..cut].to_vec());
                let k = BitString::from_bits(joined.bits()[cut..].to_vec());
                count += 1;
                let composed = reliability_poly_with_limit(&k, len)?.compose(&reliability_poly_with_limit(&a, len)?);
                if composed != whole {
                    failures.push(format!("{a}|{k}"));
                }
            }
        }
    }
    Ok(vec![Check::new(format!("I_(ak) = I_k o I_a, |ak| <= {len}"), failures.is_empty(), format!("{count} splits, failures: {failures:?}"))])
}

fn injectivity(len: usize) -> Result<Vec<Check>> {
    let mut seen = std::collections::HashMap::new();
    let mut clashes = Vec::new();
    for alpha in BitString::all_up_to(len) {
        let p = reliability_poly_with_limit(&alpha, len)?;
        if let Some(prev) = seen.insert(p, alpha.clone()) {
            clashes.push(format!("{prev} ~ {alpha}"));
        }
    }
    Ok(vec![Check::new(format!("distinct polynomials for |a| <= {len}"), clashes.is_empty(), format!("{} strings, clashes: {clashes:?}", seen.len()))])
}

/// Exponents must match; mantissa mismatches are reported without failing.
fn exp_mant(len: usize) -> Result<Vec<Check>> {
    let mut exponent_mismatch = Vec::new();
    let mut mantissa_mismatch = Vec::new();
    let mut count = 0;
    for alpha in BitString::all_up_to(len).filter(|a| !a.is_empty()) {
        let direct = exp_mant_direct(&reliability_poly_with_limit(&alpha, len)?)?;
        let formula = exp_mant_formula(&alpha);
        count += 1;
        if direct.exponent as u64 != formula.exponent {
            exponent_mismatch.push(alpha.to_string());
        }
        if direct.mantissa != formula.mantissa() {
            mantissa_mismatch.push(format!("{alpha}: direct {} formula 2^{}", direct.mantissa, formula.log2_mantissa));
        }
    }
    Ok(vec![
        Check::new(format!("exponent 2^z, |a| <= {len}"), exponent_mismatch.is_empty(), format!("{count} strings, mismatches: {exponent_mismatch:?}")),
        Check::info(
            format!("mantissa 2^(sum over ones of 2^(zeros to the right)), |a| <= {len}"),
            format!("{} discrepancies of {count}{}", mantissa_mismatch.len(), if mantissa_mismatch.is_empty() { String::new() } else { format!(": {:?}", &mantissa_mismatch[..mantissa_mismatch.len().min(5)]) }),
        ),
    ])
}

fn monotone(len: usize) -> Result<Vec<Check>> {
    let mut failures = Vec::new();
    let mut ends = Vec::new();
    for alpha in BitString::all_up_to(len) {
        let p = reliability_poly_with_limit(&alpha, len)?;
        if !p.coeff(0).is_zero() || p.coeff_sum() != BigInt::one() {
            ends.push(alpha.to_string());
        }
        let d = p.derivative();
        if !d.is_zero() && certify_nonneg(&d)?.verdict != Verdict::NonnegativeOn01 {
            failures.push(alpha.to_string());
        }
    }
    Ok(vec![
        Check::new(format!("I(0) = 0 and I(1) = 1, |a| <= {len}"), ends.is_empty(), format!("failures: {ends:?}")),
        Check::new(format!("I' >= 0 on [0, 1], |a| <= {len}"), failures.is_empty(), format!("failures: {failures:?}")),
    ])
}

fn bernstein_monotone(len: usize) -> Result<Vec<Check>> {
    let mut failures = Vec::new();
    for alpha in BitString::all_up_to(len) {
        let p = reliability_poly_with_limit(&alpha, len)?;
        if !is_non_decreasing(&to_bernstein(&p, 1 << alpha.len())?.coefficients()) {
            failures.push(alpha.to_string());
        }
    }
    Ok(vec![Check::new(format!("Bernstein coefficients non-decreasing, |a| <= {len}"), failures.is_empty(), format!("failures: {failures:?}"))])
}

/// Ordered pairs of `{0,1}^m` that the exact order compares but degree `2^m`
/// Bernstein coefficients do not.
pub fn ber_gap_pairs(m: usize) -> Result<Vec<(BitString, BitString)>> {
    let cmp = Comparer::new(BitString::all_of_length(m).collect())?;
    let n = cmp.strings().len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if cmp.ber(i, j) == BerOutcome::Neither {
                let o = cmp.std(i, j)?;
                if o.is_comparable() {
                    let (a, g) = (cmp.strings()[i].clone(), cmp.strings()[j].clone());
                    out.push((a.clone(), g.clone()));
                    out.push((g, a));
                }
            }
        }
    }
    Ok(out)
}

fn ber_gap(m: usize) -> Result<Check> {
    let pairs = ber_gap_pairs(m)?;
    let passed = m != 8 || pairs.len() == 16;
    let expect = if m == 8 { " (expected 16)" } else { "" };
    Ok(Check::new(format!("pairs comparable but not Bernstein-ordered at m = {m}"), passed, format!("{}{expect}", pairs.len())))
}
