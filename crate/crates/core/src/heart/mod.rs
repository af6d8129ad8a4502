//! Stability conditions on the heart of type-A quiver representations.

pub mod axioms;
pub mod deformation;
pub mod hn;
pub mod interval;
pub mod metric;
pub mod random;
pub mod stability;

pub use axioms::{brute_force_hn, check_axioms, check_axioms_with, AxiomCheck, AxiomReport};
pub use deformation::{perturb, phase_gap_budget, PerturbationBudget};
pub use hn::{
    hn_filtration, hn_interval, in_slice_interval, interval_semistable, is_semistable,
    phi_plus_minus_mass, HnDecomposition, HnFactor, Mass,
};
pub use interval::{hom_nonzero, Interval, IntervalObject, TypeAHeart};
pub use metric::{distance, object_term, Distance};
pub use random::{random_object, random_stability};
pub use stability::{in_semi_closed_upper_half_plane, Phase, StabilityCondition};
