//! Special functions needed by the Green's function and spectrum code:
//! Gamma, Kummer M, Tricomi U, Whittaker M/W, and modified Bessel I.
//!
//! Everything here is real-argument f64. Each routine documents its DLMF
//! source formula and the parameter region each internal branch covers.

mod bessel;
mod gamma;
mod kummer;
mod tricomi;
mod whittaker;

pub use bessel::{bessel_i, bessel_i_scaled};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use kummer::kummer_m;
pub use tricomi::tricomi_u;
pub use whittaker::{whittaker_m, whittaker_w};
