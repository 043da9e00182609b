//! Total rankings of a universe and the Kendall tau distance between them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use super::beta::{BetaEvaluator, BetaParam};
use super::interval::{decimal_string, DyadicInterval};
use super::{hlf_at_scale, hlf_compare, START_SCALE};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::reliability::average;

/// Digits printed for values that are not rational.
const VALUE_DIGITS: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankMethod {
    Beta(BetaParam),
    Avg,
    Hlf,
}

impl FromStr for RankMethod {
    type Err = Error;

    /// `avg`, `hlf`, or `beta:<base>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "avg" => Ok(Self::Avg),
            "hlf" => Ok(Self::Hlf),
            other => match other.strip_prefix("beta:") {
                Some(b) => Ok(Self::Beta(b.parse()?)),
                None => Err(Error::Parse(format!("unknown ranking method {other:?}"))),
            },
        }
    }
}

impl fmt::Display for RankMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Beta(b) => write!(f, "beta:{b}"),
            Self::Avg => f.write_str("avg"),
            Self::Hlf => f.write_str("hlf"),
        }
    }
}

/// A universe listed best first. Ties keep lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ranking {
    pub method: String,
    pub items: Vec<BitString>,
    /// Ranking key of each item, as an exact fraction or a truncated decimal.
    pub values: Vec<String>,
    /// Neighbouring pairs declared tied only because the precision cap was reached.
    pub capped_ties: usize,
}

#[derive(Serialize)]
struct RankRow<'a> {
    rank: usize,
    bitstring: &'a BitString,
    label: String,
    value: &'a str,
}

impl Ranking {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// CSV with columns `rank,bitstring,label,value`; ranks start at 1.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for (i, (item, value)) in self.items.iter().zip(&self.values).enumerate() {
            w.serialize(RankRow { rank: i + 1, bitstring: item, label: item.short_label(), value })?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Ranks all strings of length `m`.
pub fn rank_universe(m: usize, method: &RankMethod) -> Result<Ranking> {
    rank_strings(BitString::all_of_length(m).collect(), method)
}

/// Ranks `items` best first under `method`.
pub fn rank_strings(mut items: Vec<BitString>, method: &RankMethod) -> Result<Ranking> {
    items.sort();
    let beta_eval = match method {
        RankMethod::Beta(param) => Some(BetaEvaluator::new(param.clone())),
        _ => None,
    };
    let order = match method {
        RankMethod::Avg => {
            let keys = items.iter().map(average).collect::<Result<Vec<BigRational>>>()?;
            let order = sorted_indices(items.len(), |i, j| keys[j].cmp(&keys[i]));
            let values = order.iter().map(|&i| keys[i].to_string()).collect();
            (order, values)
        }
        RankMethod::Hlf => {
            let keys: Vec<DyadicInterval> = items.iter().map(|a| hlf_at_scale(a, START_SCALE)).collect();
            let order = sorted_indices(items.len(), |i, j| match keys[i].certain_cmp(&keys[j]) {
                Some(ord) if ord != Ordering::Equal => ord,
                _ => hlf_compare(&items[i], &items[j]).outcome.as_ordering().reverse(),
            });
            let values = order.iter().map(|&i| decimal_string(&keys[i].lower(), VALUE_DIGITS)).collect();
            (order, values)
        }
        RankMethod::Beta(param) => {
            let eval = beta_eval.as_ref().expect("beta evaluator");
            let keys: Vec<DyadicInterval> = items.iter().map(|a| eval.enclose(a, START_SCALE)).collect();
            let order = sorted_indices(items.len(), |i, j| {
                eval.compare_with(&items[j], &keys[j], &items[i], &keys[i])
            });
            let values = order
                .iter()
                .map(|&i| match param {
                    BetaParam::Exact(b) => super::beta::beta_exact(&items[i], b).to_string(),
                    BetaParam::RootOfTwo(_) => decimal_string(&keys[i].lower(), VALUE_DIGITS),
                })
                .collect();
            (order, values)
        }
    };
    let (order, values) = order;
    let sorted: Vec<BitString> = order.iter().map(|&i| items[i].clone()).collect();
    let capped_ties = sorted
        .windows(2)
        .filter(|w| match method {
            RankMethod::Avg => false,
            RankMethod::Hlf => hlf_compare(&w[0], &w[1]).at_cap,
            RankMethod::Beta(_) => beta_eval.as_ref().is_some_and(|e| e.compare(&w[0], &w[1]).at_cap),
        })
        .count();
    Ok(Ranking { method: method.to_string(), items: sorted, values, capped_ties })
}

/// The four methods compared by default.
pub fn default_methods() -> Vec<RankMethod> {
    ["beta:2^(1/4)", "beta:2^(1/3.627)", "avg", "hlf"].iter().map(|s| s.parse().expect("built-in method")).collect()
}

/// Rankings of `{0,1}^m` under several methods with every pairwise distance.
#[derive(Clone, Debug, Serialize)]
pub struct KendallReport {
    pub m: usize,
    pub rankings: Vec<LabelledRanking>,
    pub distances: Vec<PairDistance>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledRanking {
    pub method: String,
    /// Short labels, best first.
    pub labels: Vec<String>,
    pub values: Vec<String>,
    pub capped_ties: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairDistance {
    pub first: String,
    pub second: String,
    pub distance: u64,
}

impl KendallReport {
    pub fn build(m: usize, methods: &[RankMethod]) -> Result<Self> {
        let rankings = methods.iter().map(|method| rank_universe(m, method)).collect::<Result<Vec<_>>>()?;
        let mut distances = Vec::new();
        for (i, a) in rankings.iter().enumerate() {
            for b in &rankings[i + 1..] {
                distances.push(PairDistance {
                    first: a.method.clone(),
                    second: b.method.clone(),
                    distance: kendall_tau(a, b)?,
                });
            }
        }
        let rankings = rankings
            .into_iter()
            .map(|r| LabelledRanking {
                labels: r.items.iter().map(BitString::short_label).collect(),
                method: r.method,
                values: r.values,
                capped_ties: r.capped_ties,
            })
            .collect();
        Ok(Self { m, rankings, distances })
    }

    /// Distance between two methods by display name, in either order.
    pub fn distance(&self, a: &str, b: &str) -> Option<u64> {
        self.distances
            .iter()
            .find(|d| (d.first == a && d.second == b) || (d.first == b && d.second == a))
            .map(|d| d.distance)
    }
}

impl fmt::Display for KendallReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.distances.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "d({}, {}) = {}", d.first, d.second, d.distance)?;
        }
        Ok(())
    }
}

/// Stable sort of `0..n`, so equal keys keep their incoming (lexicographic) order.
fn sorted_indices(n: usize, cmp: impl Fn(usize, usize) -> Ordering) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| cmp(i, j));
    idx
}

/// Number of pairs the two rankings put in opposite order.
pub fn kendall_tau(r1: &Ranking, r2: &Ranking) -> Result<u64> {
    if r1.len() != r2.len() {
        return Err(Error::UniverseMismatch);
    }
    let position: HashMap<&BitString, usize> = r2.items.iter().enumerate().map(|(i, s)| (s, i)).collect();
    if position.len() != r2.len() {
        return Err(Error::UniverseMismatch);
    }
    let mut seq = r1
        .items
        .iter()
        .map(|s| position.get(s).copied().ok_or(Error::UniverseMismatch))
        .collect::<Result<Vec<usize>>>()?;
    let mut seen = vec![false; seq.len()];
    for &p in &seq {
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::UniverseMismatch);
        }
    }
    Ok(count_inversions(&mut seq))
}

fn count_inversions(v: &mut [usize]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = count_inversions(&mut v[..mid]) + count_inversions(&mut v[mid..]);
    let mut merged = Vec::with_capacity(n);
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if v[i] <= v[j] {
            merged.push(v[i]);
            i += 1;
        } else {
            merged.push(v[j]);
            count += (mid - i) as u64;
            j += 1;
        }
    }
    merged.extend_from_slice(&v[i..mid]);
    merged.extend_from_slice(&v[j..]);
    v.copy_from_slice(&merged);
    count
}
