//! Stability functions on the type-A heart and exact phases.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::interval::{Interval, IntervalObject, TypeAHeart};
use crate::error::{Error, Result};
use crate::scalar::{format_scalar, parse_rational, split_floor, Rational, Scalar};

/// `true` when `z` lies in `{ m exp(i pi phi) : m > 0, 0 < phi <= 1 }`.
pub fn in_semi_closed_upper_half_plane<T: Scalar>(z: &Complex<T>) -> bool {
    z.im.is_positive() || (z.im.is_zero() && z.re.is_negative())
}

/// `im(conj(z) w)`: positive iff `w` is strictly counter-clockwise from `z`.
fn cross<T: Scalar>(z: &Complex<T>, w: &Complex<T>) -> T {
    z.re.clone() * w.im.clone() - z.im.clone() * w.re.clone()
}

/// An exact phase `shift + arg(ray)/pi` with `ray` in the semi-closed upper
/// half plane, so the fractional part lies in `(0, 1]`.
///
/// Phases are ordered by cross-multiplication; they are never evaluated as
/// floats except through [`Phase::approx`].
#[derive(Debug, Clone)]
pub struct Phase<T: Scalar> {
    shift: i64,
    ray: Complex<T>,
}

impl<T: Scalar> Phase<T> {
    /// The phase of a nonzero charge in the semi-closed upper half plane.
    pub fn of(z: &Complex<T>) -> Result<Self> {
        if z.re.is_zero() && z.im.is_zero() {
            return Err(Error::ZeroObject);
        }
        if !in_semi_closed_upper_half_plane(z) {
            return Err(Error::Contract(format!(
                "charge {} + {} i is outside the semi-closed upper half plane",
                format_scalar(&z.re),
                format_scalar(&z.im)
            )));
        }
        Ok(Phase {
            shift: 0,
            ray: z.clone(),
        })
    }

    /// Phase in `(-1, 1]` of an arbitrary nonzero complex number.
    pub fn of_any(z: &Complex<T>) -> Result<Self> {
        if in_semi_closed_upper_half_plane(z) {
            return Self::of(z);
        }
        let neg = Complex::new(-z.re.clone(), -z.im.clone());
        Ok(Self::of(&neg)?.shifted(-1))
    }

    pub fn shifted(&self, k: i64) -> Self {
        Phase {
            shift: self.shift + k,
            ray: self.ray.clone(),
        }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn ray(&self) -> &Complex<T> {
        &self.ray
    }

    /// Float value with absolute error a few ulps.
    pub fn approx(&self) -> f64 {
        let x = self.ray.re.to_f64_lossy();
        let y = self.ray.im.to_f64_lossy();
        // y >= 0 here, so atan2 lands in (0, pi]
        let theta = if y == 0.0 {
            std::f64::consts::PI
        } else {
            y.atan2(x)
        };
        self.shift as f64 + theta / std::f64::consts::PI
    }

    /// Compares against a rational real number.
    ///
    /// Exact whenever the fractional part of `a` has denominator
    /// 1, 2, 3, 4 or 6; otherwise decided in floating point and `None` is
    /// returned if the two values are within `1e-12` of each other.
    pub fn cmp_rational(&self, a: &Rational) -> Option<Ordering> {
        let (k, f) = split_floor(a);
        let k: i64 = num_traits::ToPrimitive::to_i64(&k)?;
        if f.is_zero() {
            // phase = shift + theta, theta in (0,1]
            return Some(if self.shift >= k {
                Ordering::Greater
            } else if self.shift == k - 1 && self.is_boundary_ray() {
                Ordering::Equal
            } else {
                Ordering::Less
            });
        }
        match self.shift.cmp(&k) {
            Ordering::Less => return Some(Ordering::Less),
            Ordering::Greater => return Some(Ordering::Greater),
            Ordering::Equal => {}
        }
        self.cmp_theta(&f)
    }

    /// The phase as a rational, when it is one of the values `cmp_rational`
    /// decides exactly (denominator 1, 2, 3, 4 or 6).
    pub fn exact_value(&self) -> Option<Rational> {
        let v = self.approx();
        [1i64, 2, 3, 4, 6].into_iter().find_map(|d| {
            let q = crate::scalar::rat((v * d as f64).round() as i64, d);
            (self.cmp_rational(&q) == Some(Ordering::Equal)).then_some(q)
        })
    }

    /// Exact value if known, else `~x (+-err)` with `digits` decimals.
    pub fn render(&self, digits: usize) -> String {
        match self.exact_value() {
            Some(q) => crate::scalar::format_rational(&q),
            None => format!("~{:.*} (±{:.0e})", digits, self.approx(), PHASE_ERROR),
        }
    }

    fn is_boundary_ray(&self) -> bool {
        self.ray.im.is_zero()
    }

    /// Compares `theta = arg(ray)/pi` with `f` in `(0,1)`.
    fn cmp_theta(&self, f: &Rational) -> Option<Ordering> {
        let x = &self.ray.re;
        let y = &self.ray.im;
        let d = f.denom();
        let n = f.numer();
        let small = |v: i64| num_bigint::BigInt::from(v);
        if *d == small(2) {
            // theta < 1/2 iff x > 0
            return Some(zero_cmp(x).reverse());
        }
        if *d == small(4) {
            // compare direction against (+-1, 1)
            let s = if *n == small(1) { 1 } else { -1 };
            let edge = Complex::new(T::of_i64(s), T::of_i64(1));
            return Some(ccw_cmp(&self.ray, &edge));
        }
        if *d == small(3) || *d == small(6) {
            // theta vs f via squared tangent; handle by quadrant first
            let f_half = f < &crate::scalar::rat(1, 2);
            let theta_half = x.is_positive();
            if x.is_zero() {
                return Some(if f_half {
                    Ordering::Greater
                } else {
                    Ordering::Less
                });
            }
            if f_half != theta_half {
                return Some(if theta_half {
                    Ordering::Less
                } else {
                    Ordering::Greater
                });
            }
            // tan^2(pi f) in {3, 1/3}
            let (tn, td) = if *d == small(3) { (3, 1) } else { (1, 3) };
            let lhs = y.clone() * y.clone() * T::of_i64(td);
            let rhs = x.clone() * x.clone() * T::of_i64(tn);
            let ord = lhs.partial_cmp(&rhs)?;
            // in the first quadrant larger tan means larger angle; reversed past pi/2
            return Some(if theta_half { ord } else { ord.reverse() });
        }
        let theta = self.approx() - self.shift as f64;
        let fv = crate::scalar::rational_to_f64(f);
        if (theta - fv).abs() < 1e-12 {
            None
        } else {
            theta.partial_cmp(&fv)
        }
    }
}

fn zero_cmp<T: Scalar>(x: &T) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Orders two rays of the semi-closed upper half plane by angle.
fn ccw_cmp<T: Scalar>(z: &Complex<T>, w: &Complex<T>) -> Ordering {
    // w is counter-clockwise from z (larger phase) iff cross > 0
    zero_cmp(&cross(z, w)).reverse()
}

impl<T: Scalar> PartialEq for Phase<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for Phase<T> {}

impl<T: Scalar> PartialOrd for Phase<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Phase<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shift
            .cmp(&other.shift)
            .then_with(|| ccw_cmp(&self.ray, &other.ray))
    }
}

/// Bound on `|approx() - phase|`: atan2 plus rounding of the coordinates.
pub const PHASE_ERROR: f64 = 1e-15;

impl<T: Scalar> fmt::Display for Phase<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(12))
    }
}

/// A stability condition on the type-A heart, given by the charges of the
/// simple objects `S_i = M[i,i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityCondition<T: Scalar> {
    heart: TypeAHeart,
    z_simple: Vec<Complex<T>>,
}

impl<T: Scalar> StabilityCondition<T> {
    pub fn new(z_simple: Vec<Complex<T>>) -> Result<Self> {
        let heart = TypeAHeart::new(z_simple.len())?;
        for (i, z) in z_simple.iter().enumerate() {
            if !in_semi_closed_upper_half_plane(z) {
                return Err(Error::InvalidCharge {
                    index: i + 1,
                    reason: format!(
                        "{} + {} i is not in {{m exp(i pi phi): m > 0, 0 < phi <= 1}}",
                        format_scalar(&z.re),
                        format_scalar(&z.im)
                    ),
                });
            }
        }
        Ok(StabilityCondition { heart, z_simple })
    }

    pub fn heart(&self) -> TypeAHeart {
        self.heart
    }

    pub fn n(&self) -> usize {
        self.heart.n()
    }

    pub fn z_simple(&self) -> &[Complex<T>] {
        &self.z_simple
    }

    pub fn charge_of_class(&self, class: &[i64]) -> Complex<T> {
        class
            .iter()
            .zip(&self.z_simple)
            .filter(|(c, _)| **c != 0)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (c, z)| {
                let k = T::of_i64(*c);
                Complex::new(acc.re + k.clone() * z.re.clone(), acc.im + k * z.im.clone())
            })
    }

    /// `Z(M[a,b]) = z_a + ... + z_b`.
    pub fn charge_interval(&self, iv: Interval) -> Complex<T> {
        self.z_simple[iv.a - 1..iv.b]
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, z| {
                Complex::new(acc.re + z.re.clone(), acc.im + z.im.clone())
            })
    }

    pub fn central_charge(&self, e: &IntervalObject) -> Result<Complex<T>> {
        self.check_object(e)?;
        Ok(self.charge_of_class(&e.class()))
    }

    pub fn phase_interval(&self, iv: Interval) -> Phase<T> {
        Phase::of(&self.charge_interval(iv)).expect("nonzero class in a stability function")
    }

    pub fn phase(&self, e: &IntervalObject) -> Result<Phase<T>> {
        if e.is_zero() {
            return Err(Error::ZeroObject);
        }
        Phase::of(&self.central_charge(e)?)
    }

    pub(crate) fn check_object(&self, e: &IntervalObject) -> Result<()> {
        if e.n() != self.n() {
            return Err(Error::Contract(format!(
                "object lives on a heart with {} vertices, stability condition has {}",
                e.n(),
                self.n()
            )));
        }
        Ok(())
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> StabilityCondition<U> {
        StabilityCondition {
            heart: self.heart,
            z_simple: self
                .z_simple
                .iter()
                .map(|z| Complex::new(f(&z.re), f(&z.im)))
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct StabilityJson {
    n: usize,
    z: Vec<[serde_json::Value; 2]>,
}

fn value_to_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected rational, found {other}"))),
    }
}

impl StabilityCondition<Rational> {
    pub fn from_pairs(pairs: &[(Rational, Rational)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|(x, y)| Complex::new(x.clone(), y.clone()))
                .collect(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let z = self
            .z_simple
            .iter()
            .map(|c| {
                [
                    serde_json::Value::String(format_scalar(&c.re)),
                    serde_json::Value::String(format_scalar(&c.im)),
                ]
            })
            .collect();
        serde_json::to_value(StabilityJson { n: self.n(), z }).expect("serializable")
    }

    /// Parses `{"n": n, "z": [["p/q","p/q"], ...]}`.
    ///
    /// Syntax and schema errors keep their line/column; contract errors are
    /// reported as [`crate::JsonError::Invalid`].
    pub fn from_json_str(s: &str) -> std::result::Result<Self, crate::JsonError> {
        let raw: StabilityJson = serde_json::from_str(s)?;
        Ok(Self::from_json_raw(raw)?)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let raw: StabilityJson =
            serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_raw(raw)
    }

    fn from_json_raw(raw: StabilityJson) -> Result<Self> {
        if raw.z.len() != raw.n {
            return Err(Error::Dimension {
                expected: raw.n,
                got: raw.z.len(),
            });
        }
        let pairs = raw
            .z
            .iter()
            .map(|[x, y]| Ok((value_to_rational(x)?, value_to_rational(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(&pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn c(x: i64, y: i64) -> Complex<Rational> {
        Complex::new(int(x), int(y))
    }

    #[test]
    fn central_charge_examples() {
        let s = StabilityCondition::new(vec![c(0, 1), c(0, 1)]).unwrap();
        let h = s.heart();
        let e = IntervalObject::single(h, h.interval(1, 2).unwrap()).unwrap();
        assert_eq!(s.central_charge(&e).unwrap(), c(0, 2));
        assert_eq!(s.central_charge(&IntervalObject::zero(h)).unwrap(), c(0, 0));
        let s3 = StabilityCondition::new(vec![c(-1, 1), c(0, 1), c(1, 1)]).unwrap();
        let h3 = s3.heart();
        let e3 = IntervalObject::single(h3, h3.interval(1, 3).unwrap()).unwrap();
        assert_eq!(s3.central_charge(&e3).unwrap(), c(0, 3));
    }

    #[test]
    fn phase_examples() {
        let half = Phase::of(&c(0, 1)).unwrap();
        assert_eq!(half.cmp_rational(&rat(1, 2)), Some(Ordering::Equal));
        let one = Phase::of(&c(-5, 0)).unwrap();
        assert_eq!(one.cmp_rational(&int(1)), Some(Ordering::Equal));
        let tq = Phase::of(&c(-1, 1)).unwrap();
        assert_eq!(tq.cmp_rational(&rat(3, 4)), Some(Ordering::Equal));
        assert!((tq.approx() - 0.75).abs() < 1e-15);
        assert!(half < tq && tq < one);
        assert!(Phase::of(&c(0, 0)).is_err());
        assert!(Phase::of(&c(0, -1)).is_err());
    }

    #[test]
    fn phase_against_thirds_and_sixths() {
        // arg(1 + 2i)/pi ~ 0.352
        let p = Phase::of(&c(1, 2)).unwrap();
        assert_eq!(p.cmp_rational(&rat(1, 3)), Some(Ordering::Greater));
        assert_eq!(p.cmp_rational(&rat(1, 6)), Some(Ordering::Greater));
        assert_eq!(p.cmp_rational(&rat(2, 3)), Some(Ordering::Less));
        let q = Phase::of(&c(-1, 2)).unwrap(); // ~0.648
        assert_eq!(q.cmp_rational(&rat(2, 3)), Some(Ordering::Less));
        assert_eq!(q.cmp_rational(&rat(5, 6)), Some(Ordering::Less));
        assert_eq!(q.cmp_rational(&rat(1, 3)), Some(Ordering::Greater));
        assert_eq!(q.cmp_rational(&rat(3, 5)), Some(Ordering::Greater));
        assert_eq!(q.shifted(1).cmp_rational(&rat(8, 5)), Some(Ordering::Greater));
        assert_eq!(q.cmp_rational(&int(0)), Some(Ordering::Greater));
        assert_eq!(q.cmp_rational(&int(1)), Some(Ordering::Less));
    }

    #[test]
    fn lower_half_plane_rejected() {
        let err = StabilityCondition::new(vec![c(0, -1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidCharge { index: 1, .. }));
        assert!(StabilityCondition::new(vec![c(1, 0)]).is_err());
        assert!(StabilityCondition::<Rational>::new(vec![]).is_err());
    }

    #[test]
    fn exact_rendering() {
        let p = |x: i64, y: i64| Phase::of(&Complex::new(int(x), int(y))).unwrap();
        assert_eq!(p(0, 1).to_string(), "1/2");
        assert_eq!(p(-1, 0).to_string(), "1");
        assert_eq!(p(-1, 1).to_string(), "3/4");
        assert_eq!(p(1, 1).shifted(-2).to_string(), "-7/4");
        assert!(p(2, 1).to_string().starts_with("~0.14758361765"));
    }

    #[test]
    fn json_round_trip() {
        let s = StabilityCondition::from_pairs(&[(rat(-1, 2), int(1)), (int(-1), int(0))]).unwrap();
        let j = s.to_json().to_string();
        assert_eq!(j, r#"{"n":2,"z":[["-1/2","1"],["-1","0"]]}"#);
        assert_eq!(StabilityCondition::from_json_str(&j).ok().unwrap(), s);
        assert!(matches!(
            StabilityCondition::from_json_str("{\"n\": 1, \"z\": [[\"0\",\"-1\"]]}"),
            Err(crate::JsonError::Invalid(Error::InvalidCharge { .. }))
        ));
        assert!(matches!(
            StabilityCondition::from_json_str("{\"n\": 1,"),
            Err(crate::JsonError::Syntax(_))
        ));
    }

    #[test]
    fn float_instantiation() {
        let s = StabilityCondition::new(vec![Complex::new(0.0f64, 1.0), Complex::new(-1.0, 0.0)])
            .unwrap();
        let p = s.phase_interval(Interval { a: 1, b: 2 });
        assert!((p.approx() - 0.75).abs() < 1e-15);
    }
}
