//! Classification data and rational equivariant cohomology of compact
//! 3-manifolds carrying an effective circle action.
//!
//! A manifold is described by its orbit invariants
//! `{b; (ε, g, f, s, t); (m₁, n₁), …, (m_r, n_r); 𝒢}`:
//!
//! * `b` is the principal Euler number,
//! * `ε`, `g` are the orientability and genus of the orbit surface,
//! * `f`, `s`, `t` count fixed circles, special-exceptional circles and torus
//!   boundaries,
//! * `(mᵢ, nᵢ)` are the Seifert pairs of the exceptional orbits,
//! * `𝒢` is a union of labelled cycle graphs recording corners of the orbit
//!   space where fixed / special-exceptional strata meet `∂M`.
//!
//! The crate validates and normalizes such data ([`invariants`]), decides
//! equivariant diffeomorphism through canonical forms, caps off boundaries
//! ([`capping`]), and computes Poincaré series, Betti numbers, formality, the
//! orbifold Euler number and the cup-product algebra ([`cohomology`],
//! [`element`]). [`textio`] owns the text notation and the JSON reports.

pub mod capping;
pub mod cohomology;
pub mod element;
pub mod enumerate;
mod error;
pub mod graph;
pub mod invariants;
pub mod poly;
pub mod series;
pub mod textio;

pub use capping::{cap_off, orbit_euler_characteristic, verify_capping, CappingReport};
pub use cohomology::{
    betti, equivariant_poincare, euler_number, fixed_set_shape, is_formal, orbit_space_poincare,
    EulerNumber, FixedSetShape, FormalityResult,
};
pub use element::{CohomContext, CohomElement};
pub use error::{Error, Result};
pub use graph::{CycleGraph, CycleWord, EdgeLabel};
pub use invariants::{
    canonical_form, classify_2d, derived_counts, equivalent, normalize, validate, CanonicalForm,
    DerivedCounts, OrbitInvariants, Orientability, SeifertPair, Surface2d, ValidationReport,
};
pub use series::PoincareSeries;
pub use textio::{parse, serialize};

/// Exact rational numbers used throughout the cohomology computations.
pub type Rational = num_rational::BigRational;
