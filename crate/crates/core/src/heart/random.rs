//! Seeded generators for stability conditions and objects.

use num_bigint::BigInt;
use num_complex::Complex;
use rand::Rng;

use super::interval::{Interval, IntervalObject, TypeAHeart};
use super::stability::StabilityCondition;
use crate::scalar::Rational;

fn small_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    let num = rng.gen_range(lo..=hi);
    let den = rng.gen_range(1..=7);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random stability condition with small-height rational charges; about one
/// simple in eight sits on the negative real axis (phase 1).
pub fn random_stability<R: Rng>(rng: &mut R, n: usize) -> StabilityCondition<Rational> {
    let z = (0..n)
        .map(|_| {
            if rng.gen_ratio(1, 8) {
                Complex::new(-small_rational(rng, 1, 20), Rational::from_integer(0.into()))
            } else {
                Complex::new(small_rational(rng, -20, 20), small_rational(rng, 1, 20))
            }
        })
        .collect();
    StabilityCondition::new(z).expect("generated charges are valid")
}

/// Random nonzero direct sum of up to `max_parts` intervals.
pub fn random_object<R: Rng>(rng: &mut R, heart: TypeAHeart, max_parts: usize) -> IntervalObject {
    let parts = rng.gen_range(1..=max_parts.max(1));
    let n = heart.n();
    let ivs = (0..parts)
        .map(|_| {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(a..=n);
            Interval { a, b }
        })
        .collect();
    IntervalObject::new(heart, ivs).expect("generated intervals are valid")
}
