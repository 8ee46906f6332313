//! Numerics for the confluent Natanzon potential family.
//!
//! The family is parametrized by six real numbers (g1, g2, sigma1, sigma2,
//! c0, eta). A change of variable h(r), defined through the quadratic
//! R(h) = sigma2*h^2 + sigma1*h + c0 by dh/dr = 2h/sqrt(R), turns the
//! radial Schroedinger problem into one with an exactly known bound-state
//! condition and a closed-form resolvent built from Whittaker functions.
//! Everything here works in units hbar = 1, m = 1/2, so H = -d^2/dr^2 + V(r)
//! and energies coincide with the dimensionless eigenvalue.
//!
//! Modules:
//! - [`potential`]: parameter set, coordinate map h(r), potential values.
//! - [`spectrum`]: bound levels from the quartic quantization condition.
//! - [`green`]: resolvent values, reduced indices, Euclidean kernel identity.
//! - [`specfun`]: self-contained Gamma / Kummer / Tricomi / Whittaker / Bessel-I.
//! - [`algebra`]: 2x2 certification of the underlying so(2,1) disentangling.
//! - [`oracle`]: independent finite-difference eigenvalue cross-check.
//! - [`verify`]: the full check battery used by tests and the CLI.

pub mod algebra;
pub mod error;
pub mod green;
pub mod oracle;
pub mod poly;
pub mod potential;
pub mod quad;
pub mod specfun;
pub mod spectrum;
pub mod util;
pub mod verify;

pub use error::{Error, Result};
pub use green::{GreensValue, KernelIdentity, ReducedIndices};
pub use oracle::{Grid, SpectrumComparison, TridiagonalSystem};
pub use potential::{Anchor, CoordinateMap, MapConfig, NatanzonParams, SpecialCase};
pub use spectrum::EnergyLevel;
