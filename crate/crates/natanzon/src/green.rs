//! Closed-form resolvent for the mapped Hamiltonian.
//!
//! With w = g2 - sigma2 eps, m = eta - c0 eps, the reduced indices are
//!
//!   omega = sqrt(w),   p = (g1 - sigma1 eps) / (4 omega),
//!   mu = 1/2 + sqrt(m),   gamma = mu/2 - 1/4,
//!
//! and the resolvent kernel between r and r' (h-ordered as h< <= h>) is
//!
//!   G = Gamma(p + mu/2 + 1/4) / (2i omega Gamma(mu + 1/2))
//!       * [ sqrt(R(h>) R(h<)) / (h> h<) ]^(1/2)
//!       * M_{-p,gamma}(omega h<) W_{-p,gamma}(omega h>).
//!
//! Conventions: G is purely imaginary for real eps in the resolvent set,
//! its radial derivative jumps by +i across r = r', and i*G solves
//! (-d^2/dr^2 + V - eps) (iG) = delta(r - r'). Bound states appear as
//! poles of Gamma at p + mu/2 + 1/4 = -n.
//!
//! The Whittaker product also admits the Laplace-type representation
//! G&R 6.669.4, exposed here as [`kernel_identity_check`]; it ties the
//! M*W combination to a Bessel-I integral computed by quadrature and is
//! the main self-test of the special-function stack.

use crate::error::{Error, Result};
use crate::potential::{CoordinateMap, NatanzonParams};
use crate::quad::integrate_to_inf;
use crate::specfun::{bessel_i_scaled, gamma, whittaker_m, whittaker_w};
use num_complex::Complex64;

/// Index data entering the resolvent at a fixed energy.
#[derive(Debug, Clone, Copy)]
pub struct ReducedIndices {
    /// first Whittaker index is -p
    pub p: f64,
    /// mu = 1/2 + sqrt(eta - c0 eps)
    pub mu: f64,
    /// sqrt(g2 - sigma2 eps); scales the Whittaker argument
    pub omega_arg: f64,
    /// second Whittaker index, mu/2 - 1/4
    pub gamma_index: f64,
}

impl ReducedIndices {
    /// Argument of the front Gamma; equals -n exactly at the n-th level.
    pub fn gamma_argument(&self) -> f64 {
        self.p + self.mu / 2.0 + 0.25
    }
}

/// Reduced indices at energy `eps`. Requires g2 - sigma2 eps > 0 and
/// eta - c0 eps >= 0 (up to rounding slack).
pub fn reduced_indices(params: &NatanzonParams, eps: f64) -> Result<ReducedIndices> {
    let w = params.g2 - params.sigma2 * eps;
    if !(w > 0.0) {
        return Err(Error::Domain(format!(
            "g2 - sigma2 eps = {w} must be positive at eps = {eps}"
        )));
    }
    let mut m = params.eta - params.c0 * eps;
    let slack = 1e-10 * (1.0 + params.eta.abs() + (params.c0 * eps).abs());
    if m < 0.0 {
        if m > -slack {
            m = 0.0;
        } else {
            return Err(Error::Domain(format!(
                "eta - c0 eps = {m} must be non-negative at eps = {eps}"
            )));
        }
    }
    let omega_arg = w.sqrt();
    let mu = 0.5 + m.sqrt();
    Ok(ReducedIndices {
        p: (params.g1 - params.sigma1 * eps) / (4.0 * omega_arg),
        mu,
        omega_arg,
        gamma_index: mu / 2.0 - 0.25,
    })
}

/// Refuse energies where the front Gamma sits on a pole (a bound state).
pub fn pole_check(idx: &ReducedIndices) -> Result<()> {
    let g = idx.gamma_argument();
    let nearest = g.round();
    if nearest <= 0.0 && (g - nearest).abs() < 1e-12 {
        return Err(Error::Pole(format!(
            "energy at (or within 1e-12 of) bound state n = {}",
            -nearest
        )));
    }
    Ok(())
}

/// Resolvent kernel value at one point pair.
#[derive(Debug, Clone, Copy)]
pub struct GreensValue {
    pub r: f64,
    pub r_prime: f64,
    pub epsilon: f64,
    /// purely imaginary for real eps off the spectrum; i*value is the
    /// real kernel of (H - eps)^(-1)
    pub value: Complex64,
    pub indices: ReducedIndices,
}

/// Evaluate the resolvent kernel G(r, r'; eps).
pub fn green_function(
    map: &CoordinateMap,
    eps: f64,
    r: f64,
    r_prime: f64,
) -> Result<GreensValue> {
    let params = map.params();
    let idx = reduced_indices(params, eps)?;
    pole_check(&idx)?;

    let h_a = map.h_from_r(r)?;
    let h_b = map.h_from_r(r_prime)?;
    let (h_lt, h_gt) = if h_a <= h_b { (h_a, h_b) } else { (h_b, h_a) };
    let r_lt = params.r_quad(h_lt);
    let r_gt = params.r_quad(h_gt);
    if !(r_lt > 0.0 && r_gt > 0.0) {
        return Err(Error::Domain(format!(
            "R(h) must be positive inside the chart: R({h_lt}) = {r_lt}, R({h_gt}) = {r_gt}"
        )));
    }

    let kappa = -idx.p;
    let m_part = whittaker_m(kappa, idx.gamma_index, idx.omega_arg * h_lt)?;
    let w_part = whittaker_w(kappa, idx.gamma_index, idx.omega_arg * h_gt)?;
    let amp = (r_lt * r_gt).powf(0.25) / (h_lt * h_gt).sqrt();
    let front = gamma(idx.gamma_argument())? / (idx.omega_arg * gamma(idx.mu + 0.5)?);
    // 1/(2i) = -i/2
    let value = Complex64::new(0.0, -0.5) * front * amp * m_part * w_part;
    Ok(GreensValue { r, r_prime, epsilon: eps, value, indices: idx })
}

/// Integrand of the product representation G&R 6.669.4 at Laplace time q,
/// written with the small-q cancellations done analytically:
///
///   exp(-2 p q) / sinh(q) * exp(-(x + y) coth(q) / 2) * I_{2 gamma}(sqrt(xy)/sinh q)
///     = exp(expo) * Ie_{2 gamma}(z) / sinh(q),
///
/// expo = -2 p q - [ (x + y) 2 sinh^2(q/2) + (sqrt x - sqrt y)^2 ] / (2 sinh q),
/// z = sqrt(x y)/sinh q, with Ie the exponentially scaled Bessel I.
pub fn euclidean_kernel(x: f64, y: f64, gamma_idx: f64, p: f64, q: f64) -> f64 {
    let sh = q.sinh();
    if !(sh > 0.0) {
        return 0.0;
    }
    let sq = (x.sqrt() - y.sqrt()).powi(2);
    let shh = (0.5 * q).sinh();
    let expo = -2.0 * p * q - ((x + y) * 2.0 * shh * shh + sq) / (2.0 * sh);
    if expo < -700.0 {
        return 0.0;
    }
    let z = (x * y).sqrt() / sh;
    let scaled = bessel_i_scaled(2.0 * gamma_idx, z).unwrap_or(0.0);
    expo.exp() * scaled / sh
}

/// Outcome of one kernel-identity comparison.
#[derive(Debug, Clone, Copy)]
pub struct KernelIdentity {
    pub x: f64,
    pub y: f64,
    pub gamma_index: f64,
    pub p: f64,
    /// Laplace-time quadrature of [`euclidean_kernel`]
    pub quadrature: f64,
    /// Gamma(p + gamma + 1/2) / (Gamma(2 gamma + 1) sqrt(x y)) * M W
    pub closed_form: f64,
    pub rel_error: f64,
}

/// Check G&R 6.669.4 at one parameter point. Requires 0 < x < y, gamma > 0
/// and p + gamma + 1/2 > 0 (convergence of the Laplace integral).
pub fn kernel_identity_check(x: f64, y: f64, gamma_idx: f64, p: f64) -> Result<KernelIdentity> {
    if !(0.0 < x && x < y) {
        return Err(Error::Domain(format!("need 0 < x < y, got x = {x}, y = {y}")));
    }
    if !(gamma_idx > 0.0) {
        return Err(Error::Domain(format!("need gamma > 0, got {gamma_idx}")));
    }
    if !(p + gamma_idx + 0.5 > 0.0) {
        return Err(Error::Domain(format!(
            "Laplace integral diverges: p + gamma + 1/2 = {}",
            p + gamma_idx + 0.5
        )));
    }
    let quadrature =
        integrate_to_inf(|q| euclidean_kernel(x, y, gamma_idx, p, q), 0.0, 1e-14, 2e-12)?.value;
    let m_part = whittaker_m(-p, gamma_idx, x)?;
    let w_part = whittaker_w(-p, gamma_idx, y)?;
    let closed_form = gamma(p + gamma_idx + 0.5)?
        / (gamma(2.0 * gamma_idx + 1.0)? * (x * y).sqrt())
        * m_part
        * w_part;
    let scale = quadrature.abs().max(closed_form.abs()).max(f64::MIN_POSITIVE);
    Ok(KernelIdentity {
        x,
        y,
        gamma_index: gamma_idx,
        p,
        quadrature,
        closed_form,
        rel_error: (quadrature - closed_form).abs() / scale,
    })
}
