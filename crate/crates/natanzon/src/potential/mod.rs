//! Parameter set and potential for the confluent family
//!
//!   V(h) = (g2 h^2 + g1 h + eta) / R
//!        + (sigma1 h - sigma2 h^2) / R^2
//!        - (5/4) Delta h^2 / R^3,
//!
//! with R(h) = sigma2 h^2 + sigma1 h + c0 and Delta = sigma1^2 - 4 sigma2 c0,
//! in units hbar = 1, m = 1/2 (so the radial equation is -u'' + V u = eps u).
//! The physical coordinate r is tied to h by dh/dr = 2h / sqrt(R); see [`map`].

mod map;

pub use map::{integrate_r_from_h, CoordinateMap, MapConfig};

use crate::error::{Error, Result};

/// The six real parameters (g2, g1, eta) and (sigma2, sigma1, c0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NatanzonParams {
    pub g2: f64,
    pub g1: f64,
    pub eta: f64,
    pub sigma2: f64,
    pub sigma1: f64,
    pub c0: f64,
}

/// Zero-pattern of (sigma2, sigma1, c0), which fixes the coordinate law and
/// whether the spectrum has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    /// sigma2 = c0 = 0: R = sigma1 h, h = r^2/sigma1 (radial oscillator).
    Oscillator,
    /// sigma1 = c0 = 0: R = sigma2 h^2, h = 2r/sqrt(sigma2) (Coulomb).
    Coulomb,
    /// sigma2 = sigma1 = 0: R = c0, h = e^(2r/sqrt(c0)) (Morse).
    Morse,
    /// anything else: numerical coordinate map, quartic quantization.
    General,
}

/// Where the coordinate map is pinned: h(r0) = h0. With c0 = 0 the natural
/// anchor is the h -> 0 endpoint itself (r -> 0 there); otherwise h0 = 1,
/// where r -> -inf as h -> 0 and the integral needs an interior reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    pub h0: f64,
    pub r0: f64,
}

impl NatanzonParams {
    /// Validates that R is not identically zero and everything is finite.
    pub fn new(g2: f64, g1: f64, eta: f64, sigma2: f64, sigma1: f64, c0: f64) -> Result<Self> {
        let vals = [g2, g1, eta, sigma2, sigma1, c0];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        if sigma2 == 0.0 && sigma1 == 0.0 && c0 == 0.0 {
            return Err(Error::DegenerateParameter(
                "sigma2 = sigma1 = c0 = 0 makes R(h) identically zero".into(),
            ));
        }
        Ok(Self { g2, g1, eta, sigma2, sigma1, c0 })
    }

    /// R(h) = sigma2 h^2 + sigma1 h + c0.
    pub fn r_quad(&self, h: f64) -> f64 {
        (self.sigma2 * h + self.sigma1) * h + self.c0
    }

    /// Delta = sigma1^2 - 4 sigma2 c0 (discriminant of R).
    pub fn delta(&self) -> f64 {
        self.sigma1 * self.sigma1 - 4.0 * self.sigma2 * self.c0
    }

    /// Which of the three closed-form coordinate laws applies, if any.
    pub fn classify(&self) -> SpecialCase {
        match (self.sigma2 == 0.0, self.sigma1 == 0.0, self.c0 == 0.0) {
            (true, false, true) => SpecialCase::Oscillator,
            (false, true, true) => SpecialCase::Coulomb,
            (true, true, false) => SpecialCase::Morse,
            _ => SpecialCase::General,
        }
    }

    /// Map anchor h(r0) = h0 (see [`Anchor`]).
    pub fn anchor(&self) -> Anchor {
        if self.c0 == 0.0 {
            Anchor { h0: 0.0, r0: 0.0 }
        } else {
            Anchor { h0: 1.0, r0: 0.0 }
        }
    }

    /// V as a function of h. Errors when h <= 0 or R(h) <= 0 (outside the
    /// coordinate chart).
    pub fn potential_value(&self, h: f64) -> Result<f64> {
        if !(h > 0.0) {
            return Err(Error::Domain(format!("potential needs h > 0, got {h}")));
        }
        let r = self.r_quad(h);
        if !(r > 0.0) {
            return Err(Error::Domain(format!("R({h}) = {r} is not positive")));
        }
        let num = (self.g2 * h + self.g1) * h + self.eta;
        let t1 = num / r;
        let t2 = (self.sigma1 - self.sigma2 * h) * h / (r * r);
        let t3 = 1.25 * self.delta() * h * h / (r * r * r);
        Ok(t1 + t2 - t3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osc() -> NatanzonParams {
        NatanzonParams::new(1.0, 0.0, 0.25, 0.0, 1.0, 0.0).unwrap()
    }
    fn coulomb() -> NatanzonParams {
        NatanzonParams::new(0.0, -2.0, 1.0, 1.0, 0.0, 0.0).unwrap()
    }
    fn morse() -> NatanzonParams {
        NatanzonParams::new(1.0, -6.0, 0.0, 0.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(osc().classify(), SpecialCase::Oscillator);
        assert_eq!(coulomb().classify(), SpecialCase::Coulomb);
        assert_eq!(morse().classify(), SpecialCase::Morse);
        let g = NatanzonParams::new(1.0, 0.0, 0.5, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(g.classify(), SpecialCase::General);
    }

    #[test]
    fn anchor_convention() {
        assert_eq!(osc().anchor(), Anchor { h0: 0.0, r0: 0.0 });
        assert_eq!(morse().anchor(), Anchor { h0: 1.0, r0: 0.0 });
    }

    #[test]
    fn oscillator_potential_is_r_squared() {
        // with (sigma1, g2, g1, eta) = (1, 1, 0, 1/4): V(h = r^2) = r^2
        let p = osc();
        for &r in &[0.3, 1.0, 2.5, 7.0] {
            let h = r * r;
            let v = p.potential_value(h).unwrap();
            let want = r * r;
            assert!((v - want).abs() < 1e-12 * want.max(1.0), "V = {v}, want {want}");
        }
    }

    #[test]
    fn coulomb_potential_is_minus_one_over_r() {
        let p = coulomb();
        for &r in &[0.2, 1.0, 5.0, 40.0] {
            let h = 2.0 * r;
            let v = p.potential_value(h).unwrap();
            let want = -1.0 / r;
            assert!((v - want).abs() < 1e-13 * want.abs().max(1.0));
        }
    }

    #[test]
    fn morse_potential_exponential_form() {
        let p = morse();
        for &r in &[-2.0f64, -0.5, 0.0, 0.8] {
            let h = (2.0 * r).exp();
            let v = p.potential_value(h).unwrap();
            let want = (4.0 * r).exp() - 6.0 * (2.0 * r).exp();
            assert!((v - want).abs() < 1e-11 * want.abs().max(1.0), "V = {v}, want {want}");
        }
    }

    #[test]
    fn degenerate_r_rejected() {
        assert!(NatanzonParams::new(1.0, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn negative_r_window_rejected_pointwise() {
        // R(h) = -h^2 + 3.5h - 1.5 is negative at h = 4
        let p = NatanzonParams::new(1.0, 0.0, 0.5, -1.0, 3.5, -1.5).unwrap();
        assert!(p.potential_value(4.0).is_err());
        assert!(p.potential_value(1.0).is_ok());
    }

    #[test]
    fn delta_discriminant() {
        let p = NatanzonParams::new(0.0, 0.0, 0.0, 2.0, 3.0, 1.0).unwrap();
        assert_eq!(p.delta(), 9.0 - 8.0);
    }
}
