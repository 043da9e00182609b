//! Total preorders that approximate the standard order, and the tools built on them.
//!
//! `@0` and `@1` look at the lowest-order behaviour of `I_alpha` near capacity
//! 0 and 1, `avg` integrates it, `hlf` finds where it crosses 1/2, and `beta`
//! reads the string as a number. `fst` intersects `@0`, `@1` and `hlf`.

pub mod beta;
pub mod interval;
pub mod rank;

use std::cmp::Ordering;
use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::bernstein::{exp_mant_direct, ExpMant};
use crate::bits::{dual_string, BitString};
use crate::certify::OrderOutcome;
use crate::error::Result;
use crate::reliability::{average, reliability_poly};

pub use beta::{beta_compare, beta_value, BetaEvaluator, BetaParam};
pub use interval::DyadicInterval;
pub use rank::{default_methods, kendall_tau, rank_strings, rank_universe, KendallReport, RankMethod, Ranking};

/// Working precision of the first interval attempt, in fractional bits.
pub const START_SCALE: u32 = 64;
/// Precision at which interval comparisons give up and report a tie.
pub const SCALE_CAP: u32 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TotalOutcome {
    Greater,
    Equivalent,
    Less,
}

impl TotalOutcome {
    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Greater => Self::Greater,
            Ordering::Equal => Self::Equivalent,
            Ordering::Less => Self::Less,
        }
    }

    pub fn as_ordering(self) -> Ordering {
        match self {
            Self::Greater => Ordering::Greater,
            Self::Equivalent => Ordering::Equal,
            Self::Less => Ordering::Less,
        }
    }

    pub fn reversed(self) -> Self {
        Self::from_ordering(self.as_ordering().reverse())
    }

    pub fn is_at_least(self) -> bool {
        self != Self::Less
    }
}

impl fmt::Display for TotalOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A total-preorder outcome plus whether it is a tie declared at the precision cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TotalDecision {
    pub outcome: TotalOutcome,
    pub at_cap: bool,
}

impl TotalDecision {
    pub fn exact(outcome: TotalOutcome) -> Self {
        Self { outcome, at_cap: false }
    }

    pub fn at_cap() -> Self {
        Self { outcome: TotalOutcome::Equivalent, at_cap: true }
    }
}

/// Exponent and mantissa of `I_alpha`.
pub fn exp_mant_at0(alpha: &BitString) -> Result<ExpMant> {
    exp_mant_direct(&reliability_poly(alpha)?)
}

/// Smaller exponent wins; equal exponents fall to the larger mantissa.
fn at0_order(a: &ExpMant, g: &ExpMant) -> TotalOutcome {
    let ord = g.exponent.cmp(&a.exponent).then_with(|| a.mantissa.cmp(&g.mantissa));
    TotalOutcome::from_ordering(ord)
}

/// `@0`: behaviour near capacity 0.
pub fn at0_compare(alpha: &BitString, gamma: &BitString) -> Result<TotalOutcome> {
    Ok(at0_order(&exp_mant_at0(alpha)?, &exp_mant_at0(gamma)?))
}

/// `I_alpha - I_gamma` is zero or has a positive mantissa.
pub fn at0_geq_diff(alpha: &BitString, gamma: &BitString) -> Result<bool> {
    let diff = &reliability_poly(alpha)? - &reliability_poly(gamma)?;
    Ok(diff.is_zero() || exp_mant_direct(&diff)?.mantissa.is_positive())
}

/// `@1`: behaviour near capacity 1, through the complements.
pub fn at1_compare(alpha: &BitString, gamma: &BitString) -> Result<TotalOutcome> {
    Ok(at0_compare(&dual_string(alpha), &dual_string(gamma))?.reversed())
}

/// The difference form of `@1`: the complements satisfy `gamma' >=_@0 alpha'`.
pub fn at1_geq_diff(alpha: &BitString, gamma: &BitString) -> Result<bool> {
    at0_geq_diff(&dual_string(gamma), &dual_string(alpha))
}

/// Larger integral wins.
pub fn avg_compare(alpha: &BitString, gamma: &BitString) -> Result<TotalOutcome> {
    Ok(TotalOutcome::from_ordering(average(alpha)?.cmp(&average(gamma)?)))
}

/// Enclosure of `I_alpha^-1(1/2)` computed at `scale` working bits.
///
/// Inverts the splits from the last bit back to the first:
/// `I_0^-1(y) = sqrt(y)` and `I_1^-1(y) = 1 - sqrt(1 - y)`.
pub fn hlf_at_scale(alpha: &BitString, scale: u32) -> DyadicInterval {
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let mut y = DyadicInterval::from_rational(&half, scale);
    for &bit in alpha.bits().iter().rev() {
        y = if bit { y.one_minus().sqrt().one_minus() } else { y.sqrt() };
    }
    y
}

/// Enclosure of the halfway point with width at most `2^-precision`.
pub fn hlf(alpha: &BitString, precision: u32) -> DyadicInterval {
    let mut scale = precision + 16 + 2 * alpha.len() as u32;
    loop {
        let y = hlf_at_scale(alpha, scale);
        if y.is_within(precision) {
            return y;
        }
        scale *= 2;
    }
}

/// Smaller halfway point wins.
pub fn hlf_compare(alpha: &BitString, gamma: &BitString) -> TotalDecision {
    if alpha == gamma {
        return TotalDecision::exact(TotalOutcome::Equivalent);
    }
    let mut scale = START_SCALE;
    while scale <= SCALE_CAP {
        if let Some(ord) = hlf_at_scale(alpha, scale).certain_cmp(&hlf_at_scale(gamma, scale)) {
            return TotalDecision::exact(TotalOutcome::from_ordering(ord.reverse()));
        }
        scale *= 2;
    }
    TotalDecision::at_cap()
}

/// Drop in halfway point caused by the last bit: `hlf(alpha 0) - hlf(alpha 1)`.
pub fn influence(alpha: &BitString, precision: u32) -> DyadicInterval {
    let mut scale = precision + 16 + 2 * alpha.len() as u32;
    loop {
        let d = hlf_at_scale(&alpha.pushed(false), scale).sub(&hlf_at_scale(&alpha.pushed(true), scale));
        if d.is_within(precision) {
            return d;
        }
        scale *= 2;
    }
}

/// Influence of every string up to a level, with per-level means and the
/// least-squares slope of `log2(mean)` against the level.
#[derive(Clone, Debug, Serialize)]
pub struct InfluenceTable {
    pub rows: Vec<InfluenceRow>,
    pub means: Vec<LevelMean>,
    /// Levels used by the fit, inclusive.
    pub fit_levels: (usize, usize),
    pub slope: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfluenceRow {
    pub level: usize,
    pub string: BitString,
    pub influence: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelMean {
    pub level: usize,
    pub mean: f64,
    pub log2_mean: f64,
}

/// Builds the table for levels `0..=max_level`; the fit starts at `fit_from`.
pub fn influence_table(max_level: usize, fit_from: usize, precision: u32) -> InfluenceTable {
    let mut rows = Vec::new();
    let mut means = Vec::new();
    for level in 0..=max_level {
        let mut lo = num_rational::BigRational::from_integer(0.into());
        let mut hi = lo.clone();
        for alpha in BitString::all_of_length(level) {
            let d = influence(&alpha, precision);
            lo += d.lower();
            hi += d.upper();
            rows.push(InfluenceRow { level, string: alpha, influence: d.to_decimal(precision as usize * 3 / 10) });
        }
        let count = num_rational::BigRational::from_integer((1u64 << level).into());
        let mean = DyadicInterval::from_rational(&((lo + hi) / (count * num_rational::BigRational::from_integer(2.into()))), precision)
            .midpoint_f64();
        means.push(LevelMean { level, mean, log2_mean: mean.log2() });
    }
    let fit: Vec<(f64, f64)> = means.iter().filter(|m| m.level >= fit_from).map(|m| (m.level as f64, m.log2_mean)).collect();
    InfluenceTable { rows, means, fit_levels: (fit_from, max_level), slope: least_squares_slope(&fit) }
}

/// Slope of the least-squares line through `points`; NaN with fewer than two.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return f64::NAN;
    }
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Everything `fst` needs about one string.
#[derive(Clone, Debug)]
pub struct FstProfile {
    string: BitString,
    at0: ExpMant,
    at1: ExpMant,
    hlf: DyadicInterval,
}

impl FstProfile {
    pub fn new(alpha: &BitString) -> Result<Self> {
        Ok(Self {
            string: alpha.clone(),
            at0: exp_mant_at0(alpha)?,
            at1: exp_mant_at0(&dual_string(alpha))?,
            hlf: hlf_at_scale(alpha, START_SCALE),
        })
    }

    fn hlf_outcome(&self, other: &Self) -> TotalOutcome {
        match self.hlf.certain_cmp(&other.hlf) {
            Some(ord) if ord != Ordering::Equal => TotalOutcome::from_ordering(ord.reverse()),
            _ => hlf_compare(&self.string, &other.string).outcome,
        }
    }

    /// The `fst` partial order between two profiled strings.
    pub fn compare(&self, other: &Self) -> OrderOutcome {
        if self.string == other.string {
            return OrderOutcome::Equal;
        }
        let parts = [
            at0_order(&self.at0, &other.at0),
            at0_order(&other.at1, &self.at1),
            self.hlf_outcome(other),
        ];
        let ge = parts.iter().all(|o| o.is_at_least());
        let le = parts.iter().all(|o| o.reversed().is_at_least());
        match (ge, le) {
            (true, true) => OrderOutcome::Equivalent,
            (true, false) => OrderOutcome::Greater,
            (false, true) => OrderOutcome::Less,
            (false, false) => OrderOutcome::Incomparable,
        }
    }
}

/// `fst`: `@0`, `@1` and `hlf` all agree.
pub fn fst_compare(alpha: &BitString, gamma: &BitString) -> Result<OrderOutcome> {
    Ok(FstProfile::new(alpha)?.compare(&FstProfile::new(gamma)?))
}

/// One string has both more ones and more zeros than the other, which rules out comparability.
pub fn more01_incomparable(alpha: &BitString, gamma: &BitString) -> bool {
    let dominates = |a: &BitString, g: &BitString| a.ones() > g.ones() && a.zeros() > g.zeros();
    dominates(alpha, gamma) || dominates(gamma, alpha)
}
