//! Whittaker functions M_(kappa,mu)(z) and W_(kappa,mu)(z), z > 0.
//!
//! Defined through the confluent pair (DLMF 13.14.2-3):
//!   M_(k,m)(z) = e^(-z/2) z^(m+1/2) M(m-k+1/2, 1+2m, z)
//!   W_(k,m)(z) = e^(-z/2) z^(m+1/2) U(m-k+1/2, 1+2m, z)
//! Their Wronskian is M W' - M' W = -Gamma(1+2m)/Gamma(m-k+1/2)
//! (DLMF 13.14.26 rearranged), which the tests verify numerically.

use crate::error::{Error, Result};
use crate::specfun::kummer::kummer_m;
use crate::specfun::tricomi::tricomi_u;

fn front(mu: f64, z: f64) -> Result<f64> {
    if !(z.is_finite() && mu.is_finite()) || z <= 0.0 {
        return Err(Error::Domain(format!(
            "whittaker functions need finite parameters and z > 0; got mu = {mu}, z = {z}"
        )));
    }
    Ok((-0.5 * z + (mu + 0.5) * z.ln()).exp())
}

/// Whittaker function of the first kind, M_(kappa,mu)(z).
pub fn whittaker_m(kappa: f64, mu: f64, z: f64) -> Result<f64> {
    let a = mu - kappa + 0.5;
    let b = 1.0 + 2.0 * mu;
    Ok(front(mu, z)? * kummer_m(a, b, z)?)
}

/// Whittaker function of the second kind, W_(kappa,mu)(z).
pub fn whittaker_w(kappa: f64, mu: f64, z: f64) -> Result<f64> {
    let a = mu - kappa + 0.5;
    let b = 1.0 + 2.0 * mu;
    Ok(front(mu, z)? * tricomi_u(a, b, z)?)
}
