//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored in the power basis, index `i` holding the
//! coefficient of `x^i`. The representation is canonical: no trailing zero
//! coefficients are kept, and the zero polynomial has no coefficients at all.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Operand length above which multiplication packs both operands into single
/// big integers (Kronecker substitution) instead of the schoolbook loop.
const KRONECKER_THRESHOLD: usize = 48;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `1 - x`
    pub fn one_minus_x() -> Self {
        Self::from_i64(&[1, -1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest power with a nonzero coefficient, together with that coefficient.
    pub fn lowest_term(&self) -> Option<(usize, &BigInt)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    /// Sum of the coefficients, i.e. the value at `x = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn square(&self) -> Poly {
        self * self
    }

    /// `self(inner(x))` by Horner's scheme.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self(1 - x)`
    pub fn reflect(&self) -> Poly {
        // Horner with the linear map; each step is O(n) additions.
        let mut acc: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (1 - x) + c
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] += a;
                next[i + 1] -= a;
            }
            next[0] += c;
            acc = next;
        }
        Poly::from_coeffs(acc)
    }

    /// Exact value at a rational point by Horner's scheme.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let (num, den) = self.eval_homogeneous(x.numer(), x.denom());
        BigRational::new(num, den)
    }

    /// Sign of the value at `num / den` (`den > 0`), without forming the rational.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Sign {
        self.eval_homogeneous(num, den).0.sign()
    }

    /// Returns `(sum c_i num^i den^(d-i), den^d)` where `d` is the degree.
    fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> (BigInt, BigInt) {
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        // den_pow ends as den^(d+1); undo one factor.
        let den_total = if self.coeffs.is_empty() { BigInt::one() } else { den_pow / den };
        (acc, den_total)
    }

    /// Exact integral over `[0, 1]`.
    pub fn integrate_unit(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| BigRational::new(c.clone(), BigInt::from(i + 1)))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    /// Greatest common divisor of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// The polynomial divided by its content, sign preserved.
    pub fn primitive_part(&self) -> Poly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Primitive part scaled so the leading coefficient is positive.
    pub fn normalized(&self) -> Poly {
        let p = self.primitive_part();
        match p.leading_coeff() {
            Some(lc) if lc.is_negative() => -&p,
            _ => p,
        }
    }

    /// Removes the largest power of `x` dividing the polynomial.
    pub fn strip_x_power(&self) -> (usize, Poly) {
        match self.lowest_term() {
            None => (0, Poly::zero()),
            Some((e, _)) => (e, Poly::from_coeffs(self.coeffs[e..].to_vec())),
        }
    }

    /// Removes the largest power of `1 - x` dividing the (nonzero) polynomial.
    pub fn strip_one_minus_x_power(&self) -> (usize, Poly) {
        if self.is_zero() {
            return (0, Poly::zero());
        }
        let mut p = self.clone();
        let mut f = 0;
        while p.degree().unwrap_or(0) > 0 && p.coeff_sum().is_zero() {
            p = p.divide_by_one_minus_x();
            f += 1;
        }
        (f, p)
    }

    /// Synthetic division by `1 - x`, assuming the value at 1 vanishes.
    fn divide_by_one_minus_x(&self) -> Poly {
        // p(x) = (x - 1) q(x); q has coefficients q_{k-1} = sum_{j >= k} p_j.
        let n = self.coeffs.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut acc = BigInt::zero();
        for k in (1..n).rev() {
            acc += &self.coeffs[k];
            q[k - 1] = acc.clone();
        }
        // (x - 1) q = p, so (1 - x)(-q) = p.
        -&Poly::from_coeffs(q)
    }

    /// Pseudo-remainder scaled by a positive factor, so its sign pattern matches
    /// the true remainder: `|lc(b)|^(deg a - deg b + 1) * a = q * b + r` with `deg r < deg b`.
    pub fn signed_pseudo_rem(a: &Poly, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let lcb = b.leading_coeff().unwrap();
        let lcb_abs = lcb.abs();
        let negate = lcb.is_negative();
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return a.clone();
        }
        for dr in (db..r.len()).rev() {
            let lead = if negate { -&r[dr] } else { r[dr].clone() };
            for c in r[..dr].iter_mut() {
                *c *= &lcb_abs;
            }
            if !lead.is_zero() {
                let shift = dr - db;
                for (i, bc) in b.coeffs[..db].iter().enumerate() {
                    r[i + shift] -= &lead * bc;
                }
            }
            r[dr] = BigInt::zero();
        }
        Poly::from_coeffs(r)
    }

    /// Subresultant remainder sequence of `a` and `b` (`deg a >= deg b`) with
    /// each remainder negated, so it is a Sturm-style sequence up to positive
    /// factors. Coefficients stay small without any content extraction.
    pub fn negated_remainder_sequence(a: &Poly, b: &Poly) -> Vec<Poly> {
        let mut seq = vec![a.clone(), b.clone()];
        if b.is_zero() {
            seq.pop();
            return seq;
        }
        let mut psi = BigInt::one();
        let mut prev_delta: Option<usize> = None;
        loop {
            let n = seq.len();
            let (p, q) = (&seq[n - 2], &seq[n - 1]);
            let delta = p.degree().unwrap() - q.degree().unwrap();
            let beta = match prev_delta {
                None => BigInt::one(),
                Some(d) => {
                    let lc = p.leading_coeff().unwrap().abs();
                    if d > 0 {
                        psi = num_traits::pow(lc.clone(), d) / num_traits::pow(psi, d - 1);
                    }
                    lc * num_traits::pow(psi.clone(), delta)
                }
            };
            let r = Poly::signed_pseudo_rem(p, q);
            if r.is_zero() {
                return seq;
            }
            let r = if beta.is_one() {
                r
            } else {
                Poly::from_coeffs(r.coeffs.iter().map(|c| {
                    let (quot, rem) = c.div_rem(&beta);
                    debug_assert!(rem.is_zero(), "subresultant division is exact");
                    quot
                }).collect())
            };
            seq.push(-&r);
            prev_delta = Some(delta);
        }
    }

    /// Exact division over the integers; `None` when `b` does not divide `self` in `Z[x]`.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let db = b.degree()?;
        let lcb = b.leading_coeff().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return if r.is_empty() { Some(Poly::zero()) } else { None };
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let (quot, rem) = r[dr].div_rem(lcb);
            if !rem.is_zero() {
                return None;
            }
            let shift = dr - db;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + shift] -= &quot * bc;
            }
            q[shift] = quot;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        r.is_empty().then(|| Poly::from_coeffs(q))
    }

    /// Greatest common divisor in `Z[x]`, normalized to a positive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (a, b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
        if a.is_zero() {
            return Poly::zero();
        }
        let seq = Poly::negated_remainder_sequence(&a.primitive_part(), &b.primitive_part());
        let g = seq.last().unwrap();
        if g.degree() == Some(0) {
            return Poly::one();
        }
        g.normalized()
    }

    fn schoolbook_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let max_bits = |v: &[BigInt]| v.iter().map(BigInt::bits).max().unwrap_or(0);
        let terms = a.len().min(b.len()) as u64;
        // |product coefficient| < 2^(bits_a + bits_b + log2(terms)); one more bit for sign room.
        let need = max_bits(a) + max_bits(b) + (64 - terms.leading_zeros() as u64) + 2;
        let slot = need.div_ceil(32) as usize;
        let pa = pack(a, slot);
        let pb = pack(b, slot);
        let prod = pa * pb;
        unpack(&prod, slot, a.len() + b.len() - 1)
    }
}

fn pack(coeffs: &[BigInt], slot: usize) -> BigInt {
    let mut pos = vec![0u32; coeffs.len() * slot];
    let mut neg = vec![0u32; coeffs.len() * slot];
    for (i, c) in coeffs.iter().enumerate() {
        let digits = c.magnitude().to_u32_digits();
        let target = if c.is_negative() { &mut neg } else { &mut pos };
        target[i * slot..i * slot + digits.len()].copy_from_slice(&digits);
    }
    BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
}

fn unpack(value: &BigInt, slot: usize, count: usize) -> Vec<BigInt> {
    if value.is_negative() {
        return unpack(&-value, slot, count).into_iter().map(|c| -c).collect();
    }
    let digits = value.magnitude().to_u32_digits();
    let half = BigInt::one() << (slot * 32 - 1);
    let full = BigInt::one() << (slot * 32);
    let mut carry = BigInt::zero();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let lo = (i * slot).min(digits.len());
        let hi = ((i + 1) * slot).min(digits.len());
        let mut d = BigInt::from(BigUint::from_slice(&digits[lo..hi])) + &carry;
        if d >= half {
            d -= &full;
            carry = BigInt::one();
        } else {
            carry = BigInt::zero();
        }
        out.push(d);
    }
    debug_assert!(carry.is_zero() || count * slot >= digits.len());
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        Poly::from_coeffs(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let coeffs = if self.coeffs.len().min(rhs.coeffs.len()) > KRONECKER_THRESHOLD {
            Poly::kronecker_mul(&self.coeffs, &rhs.coeffs)
        } else {
            Poly::schoolbook_mul(&self.coeffs, &rhs.coeffs)
        };
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `1 - p(1 - x)`, the polynomial of the complementary channel.
pub fn dual_poly(p: &Poly) -> Poly {
    &Poly::one() - &p.reflect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Serialized as a JSON list of decimal coefficient strings, lowest power first.
impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Poly::from_coeffs)
    }
}

/// Rejects the zero polynomial where an operation has nothing to say about it.
pub(crate) fn require_nonzero(p: &Poly, what: &'static str) -> Result<()> {
    if p.is_zero() {
        Err(Error::ZeroPolynomial(what))
    } else {
        Ok(())
    }
}
