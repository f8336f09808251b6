//! Dyadic rationals `m / 2^e` and closed intervals with dyadic endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `mantissa / 2^exponent`, kept with an odd mantissa unless the exponent is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: u32) -> Self {
        if mantissa.is_zero() {
            return Dyadic { mantissa, exponent: 0 };
        }
        let twos = mantissa.trailing_zeros().unwrap_or(0).min(exponent as u64) as u32;
        Dyadic { mantissa: mantissa >> twos, exponent: exponent - twos }
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic { mantissa: n.into(), exponent: 0 }
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | 1 << 52, raw_exp - 1075) };
        let m = BigInt::from(m) * sign;
        Some(if e >= 0 { Dyadic::new(m << e as u64, 0) } else { Dyadic::new(m, (-e) as u32) })
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.mantissa.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        (
            &self.mantissa << (e - self.exponent) as u64,
            &other.mantissa << (e - other.exponent) as u64,
            e,
        )
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e + 1)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Dyadic::new(&self.mantissa * k, self.exponent)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.exponent as u64)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mantissa.bits();
        let drop = bits.saturating_sub(60);
        let m = (&self.mantissa >> drop).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(drop as i32 - self.exponent as i32)
    }

    /// `self <= 10^(-places)`
    pub fn at_most_pow10_neg(&self, places: u32) -> bool {
        &self.mantissa * BigInt::from(10).pow(places) <= BigInt::one() << self.exponent as u64
    }

    fn scaled(&self, places: u32) -> (BigInt, BigInt) {
        (&self.mantissa * BigInt::from(10).pow(places), BigInt::one() << self.exponent as u64)
    }

    /// Largest `places`-digit decimal not above the value.
    pub fn floor_decimal(&self, places: u32) -> String {
        let (num, den) = self.scaled(places);
        format_scaled(&num.div_floor(&den), places)
    }

    /// Smallest `places`-digit decimal not below the value.
    pub fn ceil_decimal(&self, places: u32) -> String {
        let (num, den) = self.scaled(places);
        format_scaled(&-(-num).div_floor(&den), places)
    }
}

fn format_scaled(value: &BigInt, places: u32) -> String {
    let digits = value.abs().to_string();
    let places = places as usize;
    let padded = if digits.len() <= places { format!("{}{}", "0".repeat(places + 1 - digits.len()), digits) } else { digits };
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let sign = if value.is_negative() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Self) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Self) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo:?} > {hi:?}");
        DyadicInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        DyadicInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Closed intervals share at least one point.
    pub fn overlaps(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Tight enclosure of `{|x| : x in self}`.
    pub fn abs(&self) -> DyadicInterval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            DyadicInterval { lo: self.hi.abs(), hi: self.lo.abs() }
        } else {
            DyadicInterval { lo: Dyadic::zero(), hi: self.lo.abs().max(self.hi.clone()) }
        }
    }

    pub fn scale(&self, k: u64) -> DyadicInterval {
        let k = BigInt::from(k);
        DyadicInterval { lo: self.lo.mul_int(&k), hi: self.hi.mul_int(&k) }
    }

    /// Gap between two intervals, zero when they overlap.
    pub fn distance(&self, other: &DyadicInterval) -> Dyadic {
        if self.overlaps(other) {
            Dyadic::zero()
        } else if self.hi < other.lo {
            &other.lo - &self.hi
        } else {
            &self.lo - &other.hi
        }
    }
}

impl Add for &DyadicInterval {
    type Output = DyadicInterval;

    fn add(self, rhs: Self) -> DyadicInterval {
        DyadicInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}
