//! Radial harmonic functions on harmonic model spaces.
//!
//! The crate covers the rank-one symmetric spaces (spheres, projective spaces
//! over the complex numbers, quaternions and octonions, their hyperbolic duals)
//! together with flat space. For each model it provides:
//!
//! * the volume density `Θ(r)` in geodesic polar coordinates ([`space`]),
//! * the radial harmonic functions `φ₁ = 1/Θ` and `φ₀ = ∫φ₁`, both from closed
//!   forms and by quadrature, plus their verification ([`harmonic`]),
//! * deck-group quotients (torus, open Klein bottle, real projective space,
//!   a `ℤ₄` lens space, a `ℤ₂` quotient of `ℂP^{2k+1}`) with injectivity radii
//!   and fundamental-domain predicates ([`quotient`]),
//! * Euler characteristic / signature tables and the volume lower bounds they
//!   imply for compact quotients of the negatively curved models ([`topology`]).
//!
//! The crate is `no_std` and only needs `alloc`. IO, the CLI and file formats
//! live in the `radharm` companion crate.

#![no_std]
// Whenever std is linked into the build graph (tests, std dependents), its
// inherent float methods shadow `num_traits::Float`.
#![allow(unused_imports)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod harmonic;
pub mod numeric;
pub mod quotient;
pub mod space;
pub mod special;
pub mod topology;

pub use error::{Error, Result};
pub use harmonic::{
    classify_boundary, general_solution, laplacian_parts_numeric, laplacian_radial, phi0_closed, phi0_numeric, phi1,
    verify_table_entry, BoundaryClassification, RadialFunction, RadialKind, TableVerification,
};
pub use numeric::{derivative, integrate, DerivativeOrder, Interval, QuadratureResult};
pub use quotient::{
    ambient_distance, in_fundamental_domain, injectivity_radius, quotient_distance, Ambient,
    AmbientPoint, DeckAction, DeckGroup, DomainClass, GroupElement, InjectivityReport,
};
pub use space::{CurvatureSign, CutLocusDescriptor, DensityProfile, Family, SpaceModel, TrigKind};
pub use topology::{Signature, TopologyRecord, VolumeBoundReport};
