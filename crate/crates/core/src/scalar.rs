//! Scalar abstraction shared by the lattice, heart and chamber code.
//!
//! Everything that touches a central charge or a period vector is written
//! against [`Scalar`]. The exact instantiation ([`Rational`]) is what the
//! rest of the crate, the CLI and the acceptance suite use; `f64`/`f32`
//! instantiations run the same algorithms with rounding, which is handy for
//! quick exploration but makes equality tests (walls, ties) approximate.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, the default exact scalar.
pub type Rational = BigRational;

/// An ordered field element usable by the generic algorithms.
pub trait Scalar:
    Clone + Num + Signed + PartialOrd + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn of_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 is representable")
    }

    /// Best conversion from an exact rational.
    fn from_rational(r: &Rational) -> Self;

    /// Exact rational value of `self` (floats convert their binary value).
    fn to_rational(&self) -> Option<Rational>;

    fn to_f64_lossy(&self) -> f64;

    fn is_integral(&self) -> bool {
        self.to_rational().map(|r| r.is_integer()).unwrap_or(false)
    }

    fn floor_to_i64(&self) -> Option<i64> {
        self.to_rational().and_then(|r| r.floor().to_integer().to_i64())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        let n = r.numer().to_i64().expect("numerator fits i64");
        let d = r.denom().to_i64().expect("denominator fits i64");
        Rational64::new(n, d)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(BigRational::new(
            BigInt::from(*self.numer()),
            BigInt::from(*self.denom()),
        ))
    }

    fn to_f64_lossy(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn to_rational(&self) -> Option<Rational> {
        BigRational::from_float(*self)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r) as f32
    }

    fn to_rational(&self) -> Option<Rational> {
        BigRational::from_float(*self)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }
}

/// Correctly scaled conversion that survives huge numerators/denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    let num = r.numer().clone();
    let den = r.denom().clone();
    let (num, den) = if shift > 60 {
        (num, den << (shift as usize - 60))
    } else if shift < -60 {
        (num << ((-shift) as usize - 60), den)
    } else {
        (num, den)
    };
    let q = BigRational::new(num, den);
    let approx = q.numer().to_f64().unwrap_or(0.0) / q.denom().to_f64().unwrap_or(1.0);
    let scale = if shift > 60 {
        shift - 60
    } else if shift < -60 {
        shift + 60
    } else {
        0
    };
    approx * 2f64.powi(scale as i32)
}

/// Parses `"p/q"`, `"p"` or a JSON number into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("{s:?}: zero denominator")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Ok(i) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(i));
    }
    // decimal literal such as "0.25"
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let n = BigInt::from_str(&digits).map_err(|e| Error::Parse(e.to_string()))?;
            let d = num_traits::pow(BigInt::from(10), frac.len());
            let r = BigRational::new(n, d);
            return Ok(if neg { -r } else { r });
        }
    }
    Err(Error::Parse(format!("not a rational: {s:?}")))
}

/// Formats a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_scalar<T: Scalar>(x: &T) -> String {
    match x.to_rational() {
        Some(r) if T::EXACT => format_rational(&r),
        _ => format!("~{}", x.to_f64_lossy()),
    }
}

/// Smallest non-negative integer `b` with `b*b >= r`.
pub fn ceil_sqrt(r: &Rational) -> BigInt {
    if !r.is_positive() {
        return BigInt::zero();
    }
    let c = r.ceil().to_integer();
    let mut b = c.sqrt();
    while &b * &b < c {
        b += BigInt::one();
    }
    b
}

/// `sqrt(r)` when `r` is the square of a rational.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Integer parts of a rational as (floor, fractional part in [0,1)).
pub fn split_floor(r: &Rational) -> (BigInt, Rational) {
    let f = r.floor();
    (f.to_integer(), r - f)
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}
