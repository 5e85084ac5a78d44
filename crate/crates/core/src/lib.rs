//! Numerical toolkit for the linearized Boltzmann collision operator with a
//! cutoff soft-potential cross-section `q = |v|^{-gamma} b(cos theta)`,
//! `gamma in [0, d)`.
//!
//! The crate materializes the operator split `L = K - nu` on a velocity grid,
//! computes the low-frequency dispersion branches of the Fourier-transformed
//! transport-collision operator `Bhat(y) = -2 pi i y.xi + L`, verifies the
//! algebraic-in-time semigroup decay with the singular low-frequency weight
//! `rho_alpha(y)`, and solves the perturbative Cauchy problem on a periodic
//! torus by Duhamel fixed-point iteration.
//!
//! Sign convention: throughout, `gamma >= 0` is the *soft* range with
//! `q = |xi - xi_*|^{-gamma}` (singular at coincident velocities). This is
//! opposite to the convention used by much of the kinetic-theory literature,
//! where soft potentials carry a negative exponent; here larger `gamma`
//! means softer.

pub mod cache;
pub mod discretize;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod nonlinear;
pub mod quadrature;
pub mod semigroup;
pub mod spectral;

pub use error::CoreError;

/// Real scalar used throughout the toolkit.
pub type Real = f64;
/// Complex scalar used for discrete operators and evolutions.
pub type Complex = num_complex::Complex64;
/// Dense complex matrix.
pub type CMatrix = ndarray::Array2<num_complex::Complex64>;
/// Dense complex vector.
pub type CVector = ndarray::Array1<num_complex::Complex64>;
/// Dense real matrix.
pub type RMatrix = ndarray::Array2<f64>;
/// Dense real vector.
pub type RVector = ndarray::Array1<f64>;
