//! Exact nonnegative time quantities.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A nonnegative exact rational amount of time.
///
/// Subtraction is deliberately absent from the operator set; use
/// [`TimeValue::checked_sub`] where a difference is known to be nonnegative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TimeValue(BigRational);

impl TimeValue {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::NegativeTime(format_rational(&value)));
        }
        Ok(TimeValue(value))
    }

    pub fn zero() -> Self {
        TimeValue(BigRational::zero())
    }

    pub fn one() -> Self {
        TimeValue(BigRational::one())
    }

    pub fn from_integer(n: u64) -> Self {
        TimeValue(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`; panics when `denom == 0`.
    pub fn from_ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        TimeValue(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self - rhs`, or `None` if the result would be negative.
    pub fn checked_sub(&self, rhs: &TimeValue) -> Option<TimeValue> {
        let d = &self.0 - &rhs.0;
        (!d.is_negative()).then_some(TimeValue(d))
    }

    /// Multiply by a nonnegative rational factor.
    pub fn scale(&self, factor: &BigRational) -> Result<TimeValue> {
        TimeValue::new(&self.0 * factor)
    }

    /// Nearest-f64 rendering; presentation only.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0)
    }
}

impl FromStr for TimeValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TimeValue::new(parse_rational(s)?)
    }
}

impl fmt::Display for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TimeValue({})", format_rational(&self.0))
    }
}

impl Add for TimeValue {
    type Output = TimeValue;
    fn add(self, rhs: TimeValue) -> TimeValue {
        TimeValue(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a TimeValue> for &'a TimeValue {
    type Output = TimeValue;
    fn add(self, rhs: &'a TimeValue) -> TimeValue {
        TimeValue(&self.0 + &rhs.0)
    }
}

impl<'a> Add<&'a TimeValue> for TimeValue {
    type Output = TimeValue;
    fn add(self, rhs: &'a TimeValue) -> TimeValue {
        TimeValue(self.0 + &rhs.0)
    }
}

impl AddAssign<&TimeValue> for TimeValue {
    fn add_assign(&mut self, rhs: &TimeValue) {
        self.0 += &rhs.0;
    }
}

impl Mul for &TimeValue {
    type Output = TimeValue;
    fn mul(self, rhs: &TimeValue) -> TimeValue {
        TimeValue(&self.0 * &rhs.0)
    }
}

impl Sum for TimeValue {
    fn sum<I: Iterator<Item = TimeValue>>(iter: I) -> TimeValue {
        iter.fold(TimeValue::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a TimeValue> for TimeValue {
    fn sum<I: Iterator<Item = &'a TimeValue>>(iter: I) -> TimeValue {
        iter.fold(TimeValue::zero(), |acc, x| acc + x)
    }
}

impl From<u64> for TimeValue {
    fn from(n: u64) -> Self {
        TimeValue::from_integer(n)
    }
}

/// Parse `"p/q"` or an integer literal into an exact rational. Signs are
/// accepted here; callers that need nonnegativity go through [`TimeValue`].
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Render in lowest terms as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact decimal rendering with `digits` significant digits (round half up
/// on the magnitude).
pub fn format_significant(r: &BigRational, digits: u32) -> String {
    assert!(digits >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigRational::from_integer(BigInt::from(10));
    let lo = BigRational::from_integer(BigInt::from(10).pow(digits - 1));
    let hi = BigRational::from_integer(BigInt::from(10).pow(digits));

    // Find k with lo <= a * 10^k < hi.
    let mut k: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= hi {
        scaled = scaled / &ten;
        k -= 1;
    }
    while scaled < lo {
        scaled = scaled * &ten;
        k += 1;
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut m = (scaled + half).floor().to_integer();
    if m == BigInt::from(10).pow(digits) {
        m /= 10;
        k -= 1;
    }
    let digits_str = m.to_string();
    let body = if k <= 0 {
        let zeros = "0".repeat((-k) as usize);
        format!("{digits_str}{zeros}")
    } else {
        let k = k as usize;
        if k >= digits_str.len() {
            format!("0.{}{}", "0".repeat(k - digits_str.len()), digits_str)
        } else {
            let split = digits_str.len() - k;
            format!("{}.{}", &digits_str[..split], &digits_str[split..])
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
