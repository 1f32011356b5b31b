//! Complete orthonormal basis sets of 2(2s+1)-component relativistic
//! exponential-type spinor orbitals and Slater-type spinor orbitals for
//! particles with arbitrary half-integral spin.
//!
//! The crate builds the basis functions in position space from three pieces:
//!
//! * exact closed-field arithmetic over `Q[sqrt(d_1), sqrt(d_2), ...]` with a
//!   complex unit ([`exact`]), so every tabulated coefficient is represented
//!   symbolically rather than in floating point;
//! * spinor-type tensor spherical harmonics assembled from Clebsch-Gordan
//!   coefficients in a self-conjugate harmonic phase convention ([`angular`]);
//! * radial families: Slater radials and the Laguerre-based `psi^alpha`
//!   family together with its biorthogonal dual ([`radial`]).
//!
//! [`spinor`] stacks these into the full 2(2s+1)-component orbitals and emits
//! the coefficient tables, [`deriv`] provides the Cartesian-derivative and
//! sigma.p coupling machinery, [`quad`] the deterministic quadrature oracle
//! used by the verification suites, and [`tables`] the cell-by-cell diff
//! against the transcribed reference tables. [`cli`] wires everything into
//! the `etso` binary.

pub mod angular;
pub mod cli;
pub mod deriv;
pub mod exact;
pub mod halfint;
pub mod quad;
pub mod radial;
pub mod spinor;
pub mod tables;

pub use angular::SpinLabels;
pub use exact::{ExactComplex, SqrtLinear};
pub use halfint::HalfInt;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Quantum-number tuple violates an invariant (parity, triangle rule, range).
    #[error("invalid label: {0}")]
    Label(String),
    /// A numeric parameter is outside the supported domain.
    #[error("parameter out of domain: {0}")]
    Domain(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// Exact arithmetic cannot represent the requested value.
    #[error("exact arithmetic: {0}")]
    Exact(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
