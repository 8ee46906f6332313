//! Modified Bessel function of the first kind, I_nu(x), nu >= 0, x >= 0.
//!
//! Power series (DLMF 10.25.2) for small/moderate x where every term is
//! positive; the scaled large-x expansion e^-x I_nu (DLMF 10.40.1) beyond.
//! The scaled form exists because the Green's-function kernel needs
//! e^(-z) I_nu(z) at z large enough that I itself overflows.

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma;

/// Power series for the *scaled* function when `scaled`, else plain I.
fn series(nu: f64, x: f64, scaled: bool) -> Result<f64> {
    let mut ln0 = nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)?;
    if scaled {
        ln0 -= x;
    }
    let t0 = ln0.exp();
    if t0 == 0.0 && !scaled {
        return Ok(0.0);
    }
    let q = 0.25 * x * x;
    let mut term = 1.0f64; // series in units of t0
    let mut sum = 1.0f64;
    for k in 1..600 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term <= f64::EPSILON * sum {
            return Ok(t0 * sum);
        }
    }
    Err(Error::Convergence(format!("I_{nu}({x}): series stalled")))
}

/// Scaled asymptotic e^-x I_nu(x) ~ (2 pi x)^(-1/2) sum_k (-1)^k a_k(nu)/x^k,
/// truncated at the smallest term.
fn asymptotic_scaled(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut best = f64::INFINITY;
    for k in 1..50 {
        let kf = k as f64;
        let m = 2.0 * kf - 1.0;
        let next = -term * (mu - m * m) / (8.0 * kf * x);
        if next.abs() >= best {
            break;
        }
        best = next.abs();
        term = next;
        sum += term;
        if term.abs() < f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

fn check_args(nu: f64, x: f64) -> Result<()> {
    if !(nu.is_finite() && x.is_finite()) || nu < 0.0 || x < 0.0 {
        return Err(Error::Domain(format!(
            "bessel_i requires nu >= 0, x >= 0; got nu = {nu}, x = {x}"
        )));
    }
    Ok(())
}

fn use_series(nu: f64, x: f64) -> bool {
    x <= (30.0f64).max(nu * nu) && x <= 600.0
}

/// I_nu(x). Errors on overflow (x beyond ~709 for moderate nu).
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if use_series(nu, x) {
        return series(nu, x, false);
    }
    let scaled = asymptotic_scaled(nu, x);
    let ln = x + scaled.ln();
    if ln > 709.0 {
        return Err(Error::Domain(format!("I_{nu}({x}) overflows f64")));
    }
    Ok(ln.exp())
}

/// e^(-x) I_nu(x); stays representable for all admissible x.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    check_args(nu, x)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if use_series(nu, x) {
        return series(nu, x, true);
    }
    Ok(asymptotic_scaled(nu, x))
}
