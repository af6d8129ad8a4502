//! Harder–Narasimhan filtrations, mass and slicing membership.

use std::cmp::Ordering;

use num_complex::Complex;

use super::interval::{Interval, IntervalObject};
use super::stability::{Phase, StabilityCondition};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// One semistable factor of an HN filtration.
#[derive(Debug, Clone, PartialEq)]
pub struct HnFactor<T: Scalar> {
    pub object: IntervalObject,
    pub phase: Phase<T>,
    pub charge: Complex<T>,
}

impl<T: Scalar> HnFactor<T> {
    /// `|Z|^2`, exact.
    pub fn mass_squared(&self) -> T {
        self.charge.re.clone() * self.charge.re.clone()
            + self.charge.im.clone() * self.charge.im.clone()
    }
}

/// Factors listed top-down: `phase(F_1) > phase(F_2) > ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct HnDecomposition<T: Scalar> {
    pub factors: Vec<HnFactor<T>>,
}

impl<T: Scalar> HnDecomposition<T> {
    pub fn phi_plus(&self) -> &Phase<T> {
        &self.factors[0].phase
    }

    pub fn phi_minus(&self) -> &Phase<T> {
        &self.factors[self.factors.len() - 1].phase
    }

    pub fn mass(&self) -> Mass<T> {
        Mass::new(self.factors.iter().map(|f| f.mass_squared()).collect())
    }

    /// Factor classes in order, the data that must be locally constant.
    pub fn factor_classes(&self) -> Vec<Vec<i64>> {
        self.factors.iter().map(|f| f.object.class()).collect()
    }
}

/// A sum of square roots `sum_i sqrt(squares_i)`, with a float value.
#[derive(Debug, Clone, PartialEq)]
pub struct Mass<T: Scalar> {
    pub squares: Vec<T>,
    pub approx: f64,
    /// Bound on `|approx - exact|`.
    pub error: f64,
}

impl<T: Scalar> Mass<T> {
    pub fn new(squares: Vec<T>) -> Self {
        let approx: f64 = squares.iter().map(|s| s.to_f64_lossy().sqrt()).sum();
        // conversion + sqrt per term, then the running sum
        let k = squares.len() as f64;
        let error = approx * f64::EPSILON * (2.0 * k + 2.0);
        Mass {
            squares,
            approx,
            error,
        }
    }
}

impl<T: Scalar> Mass<T> {
    /// Exact form such as `3/2 + sqrt(2)`; perfect squares are resolved.
    /// `None` for float scalars.
    pub fn symbolic(&self) -> Option<String> {
        if !T::EXACT {
            return None;
        }
        let mut rational = Rational::from_integer(0.into());
        let mut radicals: Vec<Rational> = Vec::new();
        for s in &self.squares {
            let q = s.to_rational()?;
            match crate::scalar::exact_sqrt(&q) {
                Some(r) => rational += r,
                None => radicals.push(q),
            }
        }
        let mut terms = Vec::new();
        if !num_traits::Zero::is_zero(&rational) || radicals.is_empty() {
            terms.push(crate::scalar::format_rational(&rational));
        }
        terms.extend(radicals.iter().map(|q| format!("sqrt({})", crate::scalar::format_rational(q))));
        Some(terms.join(" + "))
    }
}

/// Semistability of a single interval: no subobject `M[c,b]` has larger phase.
pub fn is_semistable<T: Scalar>(sigma: &StabilityCondition<T>, e: &IntervalObject) -> Result<bool> {
    sigma.check_object(e)?;
    let iv = e.as_single().ok_or_else(|| {
        Error::Contract(format!(
            "is_semistable expects a single interval, got {e}; use hn_filtration"
        ))
    })?;
    Ok(interval_semistable(sigma, iv))
}

pub fn interval_semistable<T: Scalar>(sigma: &StabilityCondition<T>, iv: Interval) -> bool {
    let p = sigma.phase_interval(iv);
    iv.proper_subobjects()
        .all(|sub| sigma.phase_interval(sub) <= p)
}

/// Greedy HN filtration of one interval, top factor first.
pub fn hn_interval<T: Scalar>(sigma: &StabilityCondition<T>, iv: Interval) -> Vec<(Interval, Phase<T>)> {
    let mut out = Vec::new();
    let mut rest = Some(iv);
    while let Some(cur) = rest {
        // maximal phase among M[c, cur.b], ties to the largest (smallest c)
        let mut best = cur;
        let mut best_phase = sigma.phase_interval(cur);
        for sub in cur.proper_subobjects() {
            let p = sigma.phase_interval(sub);
            if p > best_phase {
                best = sub;
                best_phase = p;
            }
        }
        rest = (best.a > cur.a).then(|| cur.quotient_by(best.a));
        out.push((best, best_phase));
    }
    debug_assert!(out.windows(2).all(|w| w[0].1 > w[1].1));
    out
}

pub fn hn_filtration<T: Scalar>(
    sigma: &StabilityCondition<T>,
    e: &IntervalObject,
) -> Result<HnDecomposition<T>> {
    sigma.check_object(e)?;
    if e.is_zero() {
        return Err(Error::ZeroObject);
    }
    let mut pieces: Vec<(Interval, Phase<T>)> = e
        .intervals()
        .iter()
        .flat_map(|&iv| hn_interval(sigma, iv))
        .collect();
    // decreasing phase; equal phases coalesce into one semistable factor
    pieces.sort_by(|x, y| y.1.cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
    let heart = sigma.heart();
    let mut factors: Vec<HnFactor<T>> = Vec::new();
    let mut i = 0;
    while i < pieces.len() {
        let mut j = i;
        while j < pieces.len() && pieces[j].1.cmp(&pieces[i].1) == Ordering::Equal {
            j += 1;
        }
        let object = IntervalObject::new(heart, pieces[i..j].iter().map(|p| p.0).collect())?;
        let charge = sigma.charge_of_class(&object.class());
        let phase = Phase::of(&charge)?;
        factors.push(HnFactor {
            object,
            phase,
            charge,
        });
        i = j;
    }
    Ok(HnDecomposition { factors })
}

/// `(phi^+, phi^-, mass)` of a nonzero object.
pub fn phi_plus_minus_mass<T: Scalar>(
    sigma: &StabilityCondition<T>,
    e: &IntervalObject,
) -> Result<(Phase<T>, Phase<T>, Mass<T>)> {
    let hn = hn_filtration(sigma, e)?;
    Ok((hn.phi_plus().clone(), hn.phi_minus().clone(), hn.mass()))
}

/// Membership of `e` in the slice `P((a,b))`.
///
/// Fails only when a phase cannot be separated from an endpoint at
/// working precision (see [`Phase::cmp_rational`]).
pub fn in_slice_interval<T: Scalar>(
    sigma: &StabilityCondition<T>,
    e: &IntervalObject,
    a: &Rational,
    b: &Rational,
) -> Result<bool> {
    if a >= b {
        return Err(Error::Contract("slice interval needs a < b".into()));
    }
    sigma.check_object(e)?;
    if e.is_zero() {
        return Ok(true);
    }
    let hn = hn_filtration(sigma, e)?;
    let undecided = || Error::Contract("phase indistinguishable from slice endpoint".into());
    let lower = hn.phi_minus().cmp_rational(a).ok_or_else(undecided)?;
    let upper = hn.phi_plus().cmp_rational(b).ok_or_else(undecided)?;
    Ok(lower == Ordering::Greater && upper == Ordering::Less)
}
