//! The sup-metric on stability conditions over a fixed heart.

use super::hn::hn_filtration;
use super::interval::{Interval, IntervalObject};
use super::stability::StabilityCondition;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A distance value with a bound on its floating-point error and the
/// interval that attains the supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct Distance {
    pub value: f64,
    pub enclosure: f64,
    pub witness: Interval,
}

/// Per-object contribution `max(|d phi^-|, |d phi^+|, |log m2/m1|)` and its
/// error bound.
pub fn object_term<T: Scalar>(
    s1: &StabilityCondition<T>,
    s2: &StabilityCondition<T>,
    e: &IntervalObject,
) -> Result<(f64, f64)> {
    let h1 = hn_filtration(s1, e)?;
    let h2 = hn_filtration(s2, e)?;
    let dplus = (h1.phi_plus().approx() - h2.phi_plus().approx()).abs();
    let dminus = (h1.phi_minus().approx() - h2.phi_minus().approx()).abs();
    let (m1, m2) = (h1.mass(), h2.mass());
    let dlog = (m2.approx.ln() - m1.approx.ln()).abs();
    let value = dplus.max(dminus).max(dlog);
    let phase_err = 8.0 * f64::EPSILON * (1.0 + h1.phi_plus().approx().abs().max(h2.phi_plus().approx().abs()));
    let log_err = m1.error / m1.approx + m2.error / m2.approx + 2.0 * f64::EPSILON;
    Ok((value, phase_err.max(log_err) + f64::EPSILON * value))
}

/// Supremum over the indecomposables `M[a,b]`, which bounds every object.
pub fn distance<T: Scalar>(s1: &StabilityCondition<T>, s2: &StabilityCondition<T>) -> Result<Distance> {
    if s1.heart() != s2.heart() {
        return Err(Error::Contract(format!(
            "distance between stability conditions on different hearts ({} vs {} vertices)",
            s1.n(),
            s2.n()
        )));
    }
    let heart = s1.heart();
    let mut best: Option<Distance> = None;
    for iv in heart.intervals() {
        let e = IntervalObject::single(heart, iv)?;
        let (value, err) = object_term(s1, s2, &e)?;
        let better = match &best {
            None => true,
            Some(b) => value > b.value,
        };
        if better {
            best = Some(Distance {
                value,
                enclosure: err,
                witness: iv,
            });
        } else if let Some(b) = best.as_mut() {
            b.enclosure = b.enclosure.max(err);
        }
    }
    Ok(best.expect("heart has at least one interval"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};
    use num_complex::Complex;

    fn sigma(z: &[(i64, i64)]) -> StabilityCondition<Rational> {
        StabilityCondition::new(z.iter().map(|&(x, y)| Complex::new(int(x), int(y))).collect())
            .unwrap()
    }

    #[test]
    fn distance_examples() {
        let s = sigma(&[(0, 1), (-1, 0), (2, 3)]);
        assert_eq!(distance(&s, &s).unwrap().value, 0.0);
        let d = distance(&sigma(&[(0, 1)]), &sigma(&[(0, 2)])).unwrap();
        assert!((d.value - 2f64.ln()).abs() <= d.enclosure + 1e-15);
        let d = distance(&sigma(&[(0, 1)]), &sigma(&[(-1, 0)])).unwrap();
        assert!((d.value - 0.5).abs() <= d.enclosure + 1e-15);
        assert!(d.enclosure < 1e-12);
        assert!(distance(&sigma(&[(0, 1)]), &s).is_err());
    }
}
