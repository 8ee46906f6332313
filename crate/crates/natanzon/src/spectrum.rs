//! Bound-state energies from the quantization condition
//!
//!   (g1 - sigma1 eps) / (2 sqrt(g2 - sigma2 eps))
//!     + sqrt(eta - c0 eps) + (2n + 1) = 0.
//!
//! Rationalizing the two radicals turns the condition into a quartic in eps
//! per level index n; its real roots are filtered back through the exact
//! residual (squaring introduces spurious branches) and Newton-polished.
//! Zero patterns of (sigma2, c0) collapse the quartic to a linear or
//! quadratic equation, which is used when the needed radicals are real.

use crate::error::{Error, Result};
use crate::poly::real_roots;
use crate::potential::{NatanzonParams, SpecialCase};

/// Acceptance threshold on the exact residual for a polished root.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// One bound state.
#[derive(Debug, Clone, Copy)]
pub struct EnergyLevel {
    pub n: u32,
    pub epsilon: f64,
    /// exact quantization residual at `epsilon`
    pub residual: f64,
    /// residual within tolerance and both radicands admissible
    pub valid: bool,
    /// sits exactly at the eta - c0 eps = 0 edge of the discrete tower
    pub threshold: bool,
    /// g2 - sigma2 eps (must be positive for a level)
    pub omega_radicand: f64,
    /// eta - c0 eps (must be non-negative)
    pub mu_radicand: f64,
}

fn mu_scale(p: &NatanzonParams, eps: f64) -> f64 {
    1.0 + p.eta.abs() + (p.c0 * eps).abs()
}

/// Exact residual of the quantization condition. Errors when eps is outside
/// the admissible strip (omega radicand <= 0 or mu radicand < 0 beyond
/// rounding slack).
pub fn quantization_residual(p: &NatanzonParams, eps: f64, n: u32) -> Result<f64> {
    let w = p.g2 - p.sigma2 * eps;
    if !(w > 0.0) {
        return Err(Error::Domain(format!(
            "g2 - sigma2 eps = {w} is not positive at eps = {eps}"
        )));
    }
    let mut m = p.eta - p.c0 * eps;
    if m < 0.0 {
        if m > -1e-10 * mu_scale(p, eps) {
            m = 0.0;
        } else {
            return Err(Error::Domain(format!(
                "eta - c0 eps = {m} is negative at eps = {eps}"
            )));
        }
    }
    let k = (2 * n + 1) as f64;
    Ok((p.g1 - p.sigma1 * eps) / (2.0 * w.sqrt()) + m.sqrt() + k)
}

/// d(residual)/d(eps); requires both radicands strictly positive.
fn residual_derivative(p: &NatanzonParams, eps: f64) -> f64 {
    let w = p.g2 - p.sigma2 * eps;
    let m = p.eta - p.c0 * eps;
    let u = p.g1 - p.sigma1 * eps;
    -p.sigma1 / (2.0 * w.sqrt()) + u * p.sigma2 / (4.0 * w.powf(1.5)) - p.c0 / (2.0 * m.sqrt())
}

/// Polynomial whose real roots contain every solution of the quantization
/// condition at level n, as descending coefficients [c4, c3, c2, c1, c0].
/// Degenerate zero patterns return the reduced linear/quadratic forms
/// (leading zeros) when their radicals are real; otherwise the full quartic.
pub fn quantization_polynomial(p: &NatanzonParams, n: u32) -> [f64; 5] {
    let k = (2 * n + 1) as f64;
    let k2 = k * k;
    let (g1, g2, eta, s2, s1, c0) = (p.g1, p.g2, p.eta, p.sigma2, p.sigma1, p.c0);

    if s2 == 0.0 && c0 == 0.0 && g2 > 0.0 && eta >= 0.0 {
        // single radical is constant: linear in eps
        let q = k + eta.sqrt();
        return [0.0, 0.0, 0.0, -s1, g1 + 2.0 * g2.sqrt() * q];
    }
    if c0 == 0.0 && s2 != 0.0 && eta >= 0.0 {
        // sqrt(eta) is a number; one squaring gives a quadratic
        let q = k + eta.sqrt();
        return [
            0.0,
            0.0,
            s1 * s1,
            -2.0 * g1 * s1 + 4.0 * s2 * q * q,
            g1 * g1 - 4.0 * g2 * q * q,
        ];
    }
    if s2 == 0.0 && c0 != 0.0 && g2 > 0.0 {
        // sqrt(g2) is a number; one squaring gives a quadratic
        let b = g1 + 2.0 * k * g2.sqrt();
        return [
            0.0,
            0.0,
            s1 * s1,
            -2.0 * s1 * b + 4.0 * g2 * c0,
            b * b - 4.0 * g2 * eta,
        ];
    }

    // full rationalization (two squarings)
    let p0 = g1 * g1 - 4.0 * g2 * (k2 + eta);
    let p1 = -2.0 * g1 * s1 + 4.0 * g2 * c0 + 4.0 * s2 * (k2 + eta);
    let p2 = p.delta();
    [
        p2 * p2,
        2.0 * p1 * p2 + 64.0 * k2 * s2 * s2 * c0,
        p1 * p1 + 2.0 * p0 * p2 - 64.0 * k2 * (2.0 * g2 * s2 * c0 + s2 * s2 * eta),
        2.0 * p0 * p1 + 64.0 * k2 * (g2 * g2 * c0 + 2.0 * g2 * s2 * eta),
        p0 * p0 - 64.0 * k2 * g2 * g2 * eta,
    ]
}

/// Build an [`EnergyLevel`] at a candidate eps, or None when inadmissible or
/// the residual exceeds [`RESIDUAL_TOL`].
fn accept(p: &NatanzonParams, n: u32, eps: f64) -> Option<EnergyLevel> {
    let w = p.g2 - p.sigma2 * eps;
    let m = p.eta - p.c0 * eps;
    let res = quantization_residual(p, eps, n).ok()?;
    if res.abs() > RESIDUAL_TOL {
        return None;
    }
    let threshold = m <= 1e-10 * mu_scale(p, eps);
    Some(EnergyLevel {
        n,
        epsilon: eps,
        residual: res,
        valid: true,
        threshold,
        omega_radicand: w,
        mu_radicand: m.max(0.0),
    })
}

/// Newton-polish a root of the exact residual, staying inside the admissible
/// strip. Skipped when the mu radicand is too small for the derivative.
fn polish(p: &NatanzonParams, n: u32, mut eps: f64) -> f64 {
    for _ in 0..8 {
        let w = p.g2 - p.sigma2 * eps;
        let m = p.eta - p.c0 * eps;
        if !(w > 0.0) || m <= 1e-9 * mu_scale(p, eps) {
            return eps; // at a radicand edge: leave the seed as is
        }
        let r = match quantization_residual(p, eps, n) {
            Ok(r) => r,
            Err(_) => return eps,
        };
        let d = residual_derivative(p, eps);
        if !(d.abs() > 0.0) {
            return eps;
        }
        let mut step = r / d;
        // keep the iterate admissible
        for _ in 0..40 {
            let next = eps - step;
            let ok = p.g2 - p.sigma2 * next > 0.0
                && p.eta - p.c0 * next > -1e-10 * mu_scale(p, next);
            if ok {
                break;
            }
            step *= 0.5;
        }
        let next = eps - step;
        if (next - eps).abs() <= 1e-15 * (1.0 + eps.abs()) {
            return next;
        }
        eps = next;
    }
    eps
}

/// Solve the quantization condition at level n. Returns the unique level,
/// None past the end of the tower, or [`Error::MultipleRoots`] if distinct
/// admissible solutions survive (which would make the level label ambiguous).
pub fn solve_level(p: &NatanzonParams, n: u32) -> Result<Option<EnergyLevel>> {
    let coeffs = quantization_polynomial(p, n);
    let mut candidates = match real_roots(&coeffs) {
        Ok(r) => r,
        Err(Error::DegenerateParameter(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    // reduced routes can be refused by their radical guards; retry the quartic
    if candidates.is_empty() && coeffs[0] == 0.0 && coeffs[1] == 0.0 {
        let k = (2 * n + 1) as f64;
        let k2 = k * k;
        let p0 = p.g1 * p.g1 - 4.0 * p.g2 * (k2 + p.eta);
        let p1 = -2.0 * p.g1 * p.sigma1 + 4.0 * p.g2 * p.c0 + 4.0 * p.sigma2 * (k2 + p.eta);
        let p2 = p.delta();
        let full = [
            p2 * p2,
            2.0 * p1 * p2 + 64.0 * k2 * p.sigma2 * p.sigma2 * p.c0,
            p1 * p1 + 2.0 * p0 * p2
                - 64.0 * k2 * (2.0 * p.g2 * p.sigma2 * p.c0 + p.sigma2 * p.sigma2 * p.eta),
            2.0 * p0 * p1 + 64.0 * k2 * (p.g2 * p.g2 * p.c0 + 2.0 * p.g2 * p.sigma2 * p.eta),
            p0 * p0 - 64.0 * k2 * p.g2 * p.g2 * p.eta,
        ];
        candidates = real_roots(&full).unwrap_or_default();
    }
    // the mu radicand edge is invisible to the rationalized polynomial when
    // it coincides with a level; probe it explicitly
    if p.c0 != 0.0 {
        candidates.push(p.eta / p.c0);
    }

    let mut found: Vec<EnergyLevel> = Vec::new();
    for cand in candidates {
        let eps = polish(p, n, cand);
        if let Some(level) = accept(p, n, eps) {
            let dup = found
                .iter()
                .any(|l| (l.epsilon - level.epsilon).abs() <= 1e-7 * (1.0 + level.epsilon.abs()));
            if !dup {
                found.push(level);
            }
        }
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(Some(found[0])),
        _ => Err(Error::MultipleRoots {
            n,
            roots: found.iter().map(|l| l.epsilon).collect(),
        }),
    }
}

/// Levels n = 0, 1, ... up to `n_max` inclusive, stopping at the first index
/// with no solution. Errors if the energies fail to increase strictly.
pub fn bound_spectrum(p: &NatanzonParams, n_max: u32) -> Result<Vec<EnergyLevel>> {
    let mut levels = Vec::new();
    for n in 0..=n_max {
        match solve_level(p, n)? {
            None => break,
            Some(level) => {
                if let Some(prev) = levels.last() {
                    let prev: &EnergyLevel = prev;
                    if level.epsilon <= prev.epsilon {
                        return Err(Error::Numerical(format!(
                            "tower ordering violated: eps_{} = {} <= eps_{} = {}",
                            n,
                            level.epsilon,
                            prev.n,
                            prev.epsilon
                        )));
                    }
                }
                levels.push(level);
            }
        }
    }
    Ok(levels)
}

/// Closed-form level for the three special zero-patterns; None past the end
/// of the tower, error for General parameters.
pub fn closed_form_level(p: &NatanzonParams, n: u32) -> Result<Option<f64>> {
    let k = (2 * n + 1) as f64;
    match p.classify() {
        SpecialCase::Oscillator => {
            if !(p.g2 > 0.0) || p.eta < 0.0 {
                return Ok(None);
            }
            Ok(Some((p.g1 + 2.0 * p.g2.sqrt() * (k + p.eta.sqrt())) / p.sigma1))
        }
        SpecialCase::Coulomb => {
            if p.g1 >= 0.0 || p.eta < 0.0 {
                return Ok(None);
            }
            let q = k + p.eta.sqrt();
            Ok(Some((p.g2 - p.g1 * p.g1 / (4.0 * q * q)) / p.sigma2))
        }
        SpecialCase::Morse => {
            if !(p.g2 > 0.0) {
                return Ok(None);
            }
            let s = -(k + p.g1 / (2.0 * p.g2.sqrt()));
            if s < 0.0 {
                return Ok(None);
            }
            Ok(Some((p.eta - s * s) / p.c0))
        }
        SpecialCase::General => Err(Error::Domain(
            "closed-form levels exist only for the special zero-patterns".into(),
        )),
    }
}
