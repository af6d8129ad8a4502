//! Exact, desk-scale computations with stability conditions.
//!
//! * [`lattice`]: integer lattices, signatures, box enumeration, reflections.
//! * [`heart`]: stability conditions on the type-A quiver heart, HN
//!   filtrations, mass, slices, the sup-metric and an axiom checker.
//! * [`k3`]: Mukai lattices, (-2)-classes, period classification, spherical
//!   twists on classes.
//! * [`flop`]: ADE roots, the hyperplane complement and conifold chambers.
//! * [`sl2z`]: words in the Fourier–Mukai transform and the degree-one twist.
//! * [`selftest`]: seeded invariant suite used by the CLI.
//!
//! The numeric core is generic over [`Scalar`]; the aliases below fix the
//! exact rational instantiation used throughout the CLI.

pub mod error;
pub mod flop;
pub mod heart;
pub mod k3;
pub mod lattice;
pub mod scalar;
pub mod selftest;
pub mod sl2z;

pub use error::{Error, JsonError, Result};
pub use scalar::{Rational, Scalar};

/// Exact stability condition on the type-A heart.
pub type ExactStability = heart::StabilityCondition<Rational>;
/// Floating-point stability condition, for quick exploration.
pub type FloatStability = heart::StabilityCondition<f64>;
pub type ExactPhase = heart::Phase<Rational>;
pub type ExactHn = heart::HnDecomposition<Rational>;
pub type ExactPeriod = k3::PeriodPoint<Rational>;
pub type ExactSlicePoint = flop::SlicePoint<Rational>;
