//! Gauge fields from global projectors.
//!
//! The crate builds the rank-one projectors `p = |ψ⟩⟨ψ|` attached to three
//! Hopf-type fibrations:
//!
//! * the Dirac monopole, `S³ → S²` with structure group `U(1)`;
//! * the graded monopole, `UOSP(1,2) → S^{2,2}` with the Grassmann extension of `U(1)`;
//! * the BPST instanton, `S⁷ → S⁴` with structure group `Sp(1) ≅ SU(2)`.
//!
//! From each projector it derives the canonical connection `∇ = p∘d`, its
//! curvature `p(dp)²`, the Chern forms and their integrals. Every charge is
//! computed along two independent routes: a symbolic route through
//! [`forms`] (polynomial differential forms in base coordinates, pulled back
//! and integrated by Gauss–Legendre quadrature) and a pointwise route through
//! kets and their chart derivatives ([`gauge::pointwise`]).
//!
//! Module map:
//!
//! * [`algebra`]: complex numbers, quaternions and the complexified Grassmann
//!   algebra behind one [`algebra::Scalar`] trait;
//! * [`supermatrix`]: graded matrices, supertrace, Berezinian, the super
//!   adjoint and the supergroup `UOSP(1,2)`;
//! * [`bundle`]: total spaces, Hopf projections, kets, group actions, charts
//!   and samplers;
//! * [`forms`]: graded polynomial differential forms and quadrature;
//! * [`gauge`]: projectors, connections, Chern forms, charges and gauge orbits;
//! * [`report`]: run configuration, verification suites and JSON reports.

pub mod algebra;
pub mod bundle;
pub mod error;
pub mod forms;
pub mod gauge;
pub mod report;
pub mod supermatrix;

pub use error::{Error, Result};
