//! Local constancy of HN data under small deformations of the charges.
//!
//! If every pair of interval phases that differ keeps its order, the greedy
//! HN algorithm makes the same choices, so HN factor classes cannot change.
//! [`phase_gap_budget`] turns the smallest phase gap into a bound on how far
//! each simple charge may move.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use super::interval::Interval;
use super::stability::{Phase, StabilityCondition};
use crate::error::Result;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationBudget {
    /// Smallest difference between distinct interval phases.
    pub gap: f64,
    /// Allowed modulus of the change of each simple charge.
    pub epsilon: f64,
}

/// `None` when two intervals share a phase exactly (gap zero).
pub fn phase_gap_budget<T: Scalar>(sigma: &StabilityCondition<T>) -> Option<PerturbationBudget> {
    let intervals = sigma.heart().intervals();
    let mut phases: Vec<(Phase<T>, Interval)> = intervals
        .iter()
        .map(|&iv| (sigma.phase_interval(iv), iv))
        .collect();
    phases.sort_by(|x, y| x.0.cmp(&y.0));
    if phases.windows(2).any(|w| w[0].0 == w[1].0) {
        return None;
    }
    let gap = phases
        .windows(2)
        .map(|w| w[1].0.approx() - w[0].0.approx())
        .fold(f64::INFINITY, f64::min);
    // a single interval has no pairs; any phase-preserving move is allowed
    let gap = if gap.is_finite() { gap } else { 1.0 };
    let turn = (std::f64::consts::PI * gap / 4.0).sin();
    let epsilon = intervals
        .iter()
        .map(|&iv| {
            let z = sigma.charge_interval(iv);
            let modulus = z.re.to_f64_lossy().hypot(z.im.to_f64_lossy());
            modulus * turn / iv.len() as f64
        })
        .fold(f64::INFINITY, f64::min)
        * 0.5;
    Some(PerturbationBudget { gap, epsilon })
}

/// Moves each simple charge by at most `epsilon` in modulus, staying in the
/// semi-closed upper half plane (charges on the negative real axis only move up).
pub fn perturb<R: Rng>(
    rng: &mut R,
    sigma: &StabilityCondition<Rational>,
    epsilon: f64,
) -> Result<StabilityCondition<Rational>> {
    let half = epsilon / 2.0;
    let z = sigma
        .z_simple()
        .iter()
        .map(|z| {
            let dx = rng.gen_range(-half..=half);
            let mut dy = rng.gen_range(-half..=half);
            if z.im.is_zero() {
                dy = dy.abs();
            }
            let dx = Rational::from_float(dx).unwrap_or_else(Rational::zero);
            let dy = Rational::from_float(dy).unwrap_or_else(Rational::zero);
            Complex::new(&z.re + dx, &z.im + dy)
        })
        .collect();
    StabilityCondition::new(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heart::hn::hn_interval;
    use crate::scalar::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ties_have_no_budget() {
        let s = StabilityCondition::new(vec![Complex::new(int(0), int(1)); 2]).unwrap();
        assert!(phase_gap_budget(&s).is_none());
    }

    #[test]
    fn small_moves_keep_hn() {
        let s = StabilityCondition::new(vec![
            Complex::new(int(1), int(2)),
            Complex::new(int(-3), int(1)),
            Complex::new(int(-1), int(0)),
        ])
        .unwrap();
        let budget = phase_gap_budget(&s).unwrap();
        assert!(budget.epsilon > 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t = perturb(&mut rng, &s, budget.epsilon).unwrap();
            for iv in s.heart().intervals() {
                let a: Vec<_> = hn_interval(&s, iv).into_iter().map(|x| x.0).collect();
                let b: Vec<_> = hn_interval(&t, iv).into_iter().map(|x| x.0).collect();
                assert_eq!(a, b);
            }
        }
    }
}
