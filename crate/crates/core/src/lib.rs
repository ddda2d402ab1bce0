//! Exact Ince-polynomial solutions of the Klein-Gordon equation for a charged
//! particle in a linearly polarized plane wave travelling through a medium
//! with index of refraction below one.
//!
//! - [`params`]: laser/plasma inputs and the derived dimensionless couplings.
//! - [`tridiag`]: tridiagonal eigensolver (Sturm bisection + inverse iteration).
//! - [`ince`]: the four Ince matrix families and their polynomials.
//! - [`specialfns`]: scaled modified Bessel functions and the envelope series.
//! - [`physics`]: momentum spectra, wave functions, Gordon–Volkov phase.
//! - [`figures`], [`verify`], [`table`]: figure data, invariant suites, output.

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod figures;
pub mod ince;
pub mod params;
pub mod physics;
pub mod specialfns;
pub mod table;
pub mod tridiag;
pub mod verify;

pub use error::{InceError, Result};
pub use ince::{build_matrix, orthogonality_matrix, solve_family, GramMatrix, IncePolynomial};
pub use params::{
    derive_params, transverse_momentum, DerivedParams, Family, InceProblem, LaserPlasmaConfig,
    PlasmaSpec,
};
pub use physics::{
    momentum_spectrum, volkov_phase, wavefunction, wh_params, FourVector, MassShell, MomentumState,
    SpacetimePoint, WhittakerHillParams,
};
pub use specialfns::{bessel_i_scaled, envelope_fourier, ScaledBesselRow};
pub use tridiag::{char_poly, eigen_all, eigen_count_below, EigenPair, Tridiagonal};

/// Crate version, recorded in output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
