//! Reference computations written without the library's algorithms.
#![allow(dead_code)]

use becrank::bits::BitString;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn bs(s: &str) -> BitString {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_string(rng: &mut impl rand::Rng, len: usize) -> BitString {
    BitString::from_bits((0..len).map(|_| rng.gen()).collect())
}

/// Dense coefficients, lowest degree first.
pub type Dense = Vec<BigInt>;

pub fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn from_i64(c: &[i64]) -> Dense {
    trim(c.iter().map(|&v| BigInt::from(v)).collect())
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn sub(a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    let get = |p: &Dense, i: usize| p.get(i).cloned().unwrap_or_default();
    trim((0..n).map(|i| get(a, i) - get(b, i)).collect())
}

/// One polarization step: `p^2` for a 0 and `2p - p^2` for a 1.
pub fn step(p: &Dense, bit: bool) -> Dense {
    let sq = mul(p, p);
    if bit {
        let two_p: Dense = p.iter().map(|c| c * 2).collect();
        sub(&two_p, &sq)
    } else {
        sq
    }
}

pub fn reliability(alpha: &BitString) -> Dense {
    alpha.bits().iter().fold(from_i64(&[0, 1]), |p, &b| step(&p, b))
}

/// Polynomials of every string of length `m`, in lexicographic order, built by a tree walk.
pub fn reliability_level(m: usize) -> Vec<Dense> {
    let mut level = vec![from_i64(&[0, 1])];
    for _ in 0..m {
        level = level.iter().flat_map(|p| [step(p, false), step(p, true)]).collect();
    }
    level
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Scaled Bernstein coefficients `N_i = sum_k C(n-k, i-k) a_k` at degree `n`.
pub fn n_form(p: &Dense, n: usize) -> Dense {
    (0..=n)
        .map(|i| (0..=i.min(p.len().saturating_sub(1))).map(|k| binomial(n - k, i - k) * &p[k]).sum())
        .collect()
}

pub fn has_negative(v: &Dense) -> bool {
    v.iter().any(Signed::is_negative)
}

pub fn integral(p: &Dense) -> BigRational {
    p.iter().enumerate().map(|(k, c)| BigRational::new(c.clone(), BigInt::from(k + 1))).sum()
}

pub fn eval_f64(alpha: &BitString, x: f64) -> f64 {
    alpha.bits().iter().fold(x, |y, &b| if b { 2.0 * y - y * y } else { y * y })
}

/// `I^-1(1/2)` in floating point.
pub fn hlf_f64(alpha: &BitString) -> f64 {
    alpha.bits().iter().rev().fold(0.5, |y, &b| if b { 1.0 - (1.0 - y).sqrt() } else { y.sqrt() })
}

pub fn beta_f64(alpha: &BitString, beta: f64) -> f64 {
    alpha.bits().iter().fold(0.0, |acc, &b| acc * beta + if b { 1.0 } else { 0.0 })
}

/// Coefficients in `beta`, lowest power first: the bit at position `i` of an
/// `l`-bit string weighs `beta^(l-1-i)`.
pub fn beta_dense(alpha: &BitString) -> Dense {
    trim(alpha.bits().iter().rev().map(|&b| BigInt::from(b as u8)).collect())
}

/// Pairs ordered oppositely by two rankings, counted pair by pair.
pub fn crossings<T: PartialEq>(a: &[T], b: &[T]) -> u64 {
    let pos: Vec<usize> = a.iter().map(|x| b.iter().position(|y| y == x).expect("same universe")).collect();
    let mut count = 0;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                count += 1;
            }
        }
    }
    count
}

/// Least-squares slope through `(x, y)` points.
pub fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}
