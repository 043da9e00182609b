//! Outward-rounded intervals with dyadic endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// `[lo / 2^scale, hi / 2^scale]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

fn ceil_root(v: &BigInt, n: u32) -> BigInt {
    let r = v.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) < *v {
        r + 1
    } else {
        r
    }
}

impl DyadicInterval {
    pub fn point(value: &BigInt, scale: u32) -> Self {
        Self { lo: value << scale, hi: value << scale, scale }
    }

    /// Tightest enclosure of `value` at `scale` fractional bits.
    pub fn from_rational(value: &BigRational, scale: u32) -> Self {
        let shifted = value.numer() << scale;
        let (lo, rem) = shifted.div_mod_floor(value.denom());
        let hi = if rem.is_zero() { lo.clone() } else { &lo + 1 };
        Self { lo, hi, scale }
    }

    /// Endpoints given as numerators over `2^scale`.
    pub fn from_bounds(lo: BigInt, hi: BigInt, scale: u32) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Self { lo, hi, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.scale)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.scale)
    }

    /// Width as a numerator over `2^scale`.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// `true` when the width is at most `2^-bits`.
    pub fn is_within(&self, bits: u32) -> bool {
        bits > self.scale || self.width_ulps() <= BigInt::one() << (self.scale - bits)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn midpoint_f64(&self) -> f64 {
        let sum = &self.lo + &self.hi;
        let r = BigRational::new(sum, BigInt::one() << (self.scale + 1));
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// `sqrt` of a nonnegative interval.
    pub fn sqrt(&self) -> Self {
        assert!(!self.lo.is_negative(), "square root of a negative interval");
        Self {
            lo: (&self.lo << self.scale).sqrt(),
            hi: ceil_root(&(&self.hi << self.scale), 2),
            scale: self.scale,
        }
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Self {
        let one = BigInt::one() << self.scale;
        Self { lo: &one - &self.hi, hi: one - &self.lo, scale: self.scale }
    }

    /// Product of two nonnegative intervals.
    pub fn mul_nonneg(&self, other: &Self) -> Self {
        assert_eq!(self.scale, other.scale);
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        let lo = (&self.lo * &other.lo) >> self.scale;
        let hi_exact = &self.hi * &other.hi;
        let mask = (BigInt::one() << self.scale) - 1;
        let hi = if (&hi_exact & &mask).is_zero() { hi_exact >> self.scale } else { (hi_exact >> self.scale) + 1 };
        Self { lo, hi, scale: self.scale }
    }

    pub fn add_int(&self, k: i64) -> Self {
        let shift = BigInt::from(k) << self.scale;
        Self { lo: &self.lo + &shift, hi: &self.hi + shift, scale: self.scale }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.scale, other.scale);
        Self { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo, scale: self.scale }
    }

    /// The order of the enclosed values when the intervals settle it.
    pub fn certain_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b) = self.common_scale(other);
        if a.hi < b.lo {
            Some(Ordering::Less)
        } else if a.lo > b.hi {
            Some(Ordering::Greater)
        } else if a.lo == a.hi && b.lo == b.hi && a.lo == b.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    fn common_scale(&self, other: &Self) -> (Self, Self) {
        let s = self.scale.max(other.scale);
        let lift = |x: &Self| Self { lo: &x.lo << (s - x.scale), hi: &x.hi << (s - x.scale), scale: s };
        (lift(self), lift(other))
    }

    /// Decimal digits of the lower endpoint, truncated.
    pub fn to_decimal(&self, digits: usize) -> String {
        decimal_string(&self.lower(), digits)
    }
}

/// `value` truncated toward negative infinity to `digits` decimals.
pub fn decimal_string(value: &BigRational, digits: usize) -> String {
    let scaled = (value * BigRational::from_integer(num_traits::pow(BigInt::from(10), digits))).floor().to_integer();
    let negative = scaled.is_negative();
    let s = scaled.abs().to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", decimal_string(&self.lower(), 12), decimal_string(&self.upper(), 12))
    }
}

impl Serialize for DyadicInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DyadicInterval", 3)?;
        st.serialize_field("lower", &self.lower().to_string())?;
        st.serialize_field("upper", &self.upper().to_string())?;
        st.serialize_field("scale", &self.scale)?;
        st.end()
    }
}

/// Enclosure of `2^(num / den)` at `scale` fractional bits, for `num >= 0`, `den > 0`.
pub fn pow2_fraction(num: u64, den: u32, scale: u32) -> DyadicInterval {
    // 2^(num/den) * 2^scale is the den-th root of 2^(num + den * scale).
    let radicand = BigInt::one() << (num as usize + den as usize * scale as usize);
    let lo = floor_root_from_above(&radicand, den, pow2_fraction_guess(num, den, scale));
    let hi = if num_traits::pow(lo.clone(), den as usize) == radicand { lo.clone() } else { &lo + 1 };
    DyadicInterval { lo, hi, scale }
}

/// An integer above `2^(num/den + scale)`, from a float estimate.
fn pow2_fraction_guess(num: u64, den: u32, scale: u32) -> BigInt {
    let e = num as f64 / den as f64;
    let whole = e.floor() as u32;
    let frac = 2f64.powf(e - e.floor());
    let mantissa = BigInt::from((frac * (1u64 << 52) as f64) as u64 + (1 << 20));
    let shift = whole + scale;
    if shift >= 52 {
        mantissa << (shift - 52)
    } else {
        (mantissa >> (52 - shift)) + 1
    }
}

/// `floor(c^(1/n))` by integer Newton steps, which decrease monotonically
/// from any start at or above the root.
fn floor_root_from_above(c: &BigInt, n: u32, start: BigInt) -> BigInt {
    let n_big = BigInt::from(n);
    let mut x = start;
    if num_traits::pow(x.clone(), n as usize) <= *c {
        return c.nth_root(n);
    }
    loop {
        let next = ((&n_big - 1) * &x + c / num_traits::pow(x.clone(), n as usize - 1)) / &n_big;
        if next >= x {
            return x;
        }
        x = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn sqrt_encloses() {
        let iv = DyadicInterval::from_rational(&half(), 64).sqrt();
        let v = iv.midpoint_f64();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
        let lo = iv.lower();
        let hi = iv.upper();
        assert!(&lo * &lo <= half() && half() <= &hi * &hi);
        assert!(iv.is_within(62));
    }

    #[test]
    fn rational_enclosure_is_tight() {
        let third = BigRational::new(1.into(), 3.into());
        let iv = DyadicInterval::from_rational(&third, 10);
        assert!(iv.contains(&third));
        assert_eq!(iv.width_ulps(), BigInt::one());
        let exact = DyadicInterval::from_rational(&half(), 10);
        assert_eq!(exact.width_ulps(), BigInt::zero());
    }

    #[test]
    fn comparisons() {
        let a = DyadicInterval::from_rational(&half(), 20);
        let b = DyadicInterval::from_rational(&BigRational::new(2.into(), 3.into()), 20);
        assert_eq!(a.certain_cmp(&b), Some(Ordering::Less));
        assert_eq!(b.certain_cmp(&a), Some(Ordering::Greater));
        assert_eq!(a.certain_cmp(&a.clone()), Some(Ordering::Equal));
        assert_eq!(b.certain_cmp(&b.clone()), None);
    }

    #[test]
    fn fourth_root_of_two() {
        let iv = pow2_fraction(1, 4, 64);
        assert!((iv.midpoint_f64() - 2f64.powf(0.25)).abs() < 1e-15);
        let lo4 = num_traits::pow(iv.lower(), 4);
        let hi4 = num_traits::pow(iv.upper(), 4);
        let two = BigRational::from_integer(2.into());
        assert!(lo4 <= two && two <= hi4);
    }

    #[test]
    fn fractional_powers_match_library_roots() {
        for (num, den) in [(1u64, 1u32), (1, 3), (3, 2), (1000, 3627), (5, 7)] {
            let iv = pow2_fraction(num, den, 70);
            let radicand = BigInt::one() << (num as usize + den as usize * 70);
            let floor = radicand.nth_root(den);
            assert_eq!(iv.lower(), BigRational::new(floor, BigInt::one() << 70), "{num}/{den}");
            assert!(iv.width_ulps() <= BigInt::one());
        }
        let iv = pow2_fraction(1000, 3627, 64);
        assert!((iv.midpoint_f64() - 2f64.powf(1.0 / 3.627)).abs() < 1e-15);
    }

    #[test]
    fn products_round_outward() {
        let third = DyadicInterval::from_rational(&BigRational::new(1.into(), 3.into()), 16);
        let sq = third.mul_nonneg(&third);
        assert!(sq.contains(&BigRational::new(1.into(), 9.into())));
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&BigRational::new(1.into(), 3.into()), 4), "0.3333");
        assert_eq!(decimal_string(&BigRational::new((-1).into(), 8.into()), 2), "-0.13");
        assert_eq!(decimal_string(&BigRational::from_integer(5.into()), 0), "5");
    }
}
