//! 2x2 certification of the so(2,1) structure behind the solvability.
//!
//! The three generators below satisfy [T1,T2] = -iT1, [T2,T3] = -iT3,
//! [T1,T3] = -iT2, and the two disentangling identities used to reduce the
//! evolution kernel to normal-ordered form:
//!
//!   exp(-iS(T1 + 2 w^2 T3)) = exp(-ia T3) exp(-ib T2) exp(-ic T1),
//!     a = 2w tan(wS), b = 2 ln cos(wS), c = tan(wS)/w;
//!
//!   exp(-ic T1) exp(tau T3) = exp(-i alpha T3) exp(-i beta T2) exp(-i gamma T1),
//!     D = 1 - i tau c / 2, alpha = i tau / D, beta = 2 Ln D, gamma = c / D.
//!
//! Both identities are operator statements; checking them in a faithful 2x2
//! representation with a generic matrix exponential certifies the coefficient
//! functions independently of any special-function code.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn mat_identity() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][j] - b[i][j];
        }
    }
    out
}

pub fn mat_scale(s: Complex64, a: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = s * a[i][j];
        }
    }
    out
}

pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

/// Largest entry modulus; a cheap operator-norm surrogate adequate for 2x2.
pub fn mat_norm(a: &Mat2) -> f64 {
    let mut m = 0.0f64;
    for row in a {
        for e in row {
            m = m.max(e.norm());
        }
    }
    m
}

/// The faithful rep: lowering / Cartan / raising, normalized so the three
/// commutators above hold exactly.
pub fn generators() -> (Mat2, Mat2, Mat2) {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let i_half = Complex64::new(0.0, 0.5);
    let t1 = [[ZERO, ZERO], [s, ZERO]];
    let t2 = [[-i_half, ZERO], [ZERO, i_half]];
    let t3 = [[ZERO, s], [ZERO, ZERO]];
    (t1, t2, t3)
}

/// exp(A) for a 2x2 complex matrix by trace splitting: A = (t/2) I + B with
/// B traceless, B^2 = s^2 I, so exp A = e^(t/2) (cosh s I + sinh(s)/s B).
/// The s -> 0 limit is taken by series below |s| = 1e-3.
pub fn matrix_exp(a: &Mat2) -> Mat2 {
    let tr = a[0][0] + a[1][1];
    let half = tr * 0.5;
    let b = [[a[0][0] - half, a[0][1]], [a[1][0], a[1][1] - half]];
    // for traceless B: B^2 = -det(B) I
    let s2 = -(b[0][0] * b[1][1] - b[0][1] * b[1][0]);
    let s = s2.sqrt();
    let (ch, shs) = if s.norm() < 1e-3 {
        // cosh s = 1 + s^2/2 + s^4/24, sinh(s)/s = 1 + s^2/6 + s^4/120
        (
            ONE + s2 * 0.5 + s2 * s2 / 24.0,
            ONE + s2 / 6.0 + s2 * s2 / 120.0,
        )
    } else {
        (s.cosh(), s.sinh() / s)
    };
    let lead = half.exp();
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { ONE } else { ZERO };
            out[i][j] = lead * (ch * id + shs * b[i][j]);
        }
    }
    out
}

/// Norms of [T1,T2] + iT1, [T2,T3] + iT3, [T1,T3] + iT2 for any triple.
pub fn commutator_residuals(t1: &Mat2, t2: &Mat2, t3: &Mat2) -> [f64; 3] {
    let i = Complex64::new(0.0, 1.0);
    let r12 = mat_norm(&mat_sub(&commutator(t1, t2), &mat_scale(-i, t1)));
    let r23 = mat_norm(&mat_sub(&commutator(t2, t3), &mat_scale(-i, t3)));
    let r13 = mat_norm(&mat_sub(&commutator(t1, t3), &mat_scale(-i, t2)));
    [r12, r23, r13]
}

/// Coefficients (a, b, c) of the first disentangling at frequency `omega`
/// and parameter `s_time`; stable through omega -> 0 (a, b -> 0, c -> S).
pub fn disentangle_coefficients(omega: f64, s_time: f64) -> Result<(f64, f64, f64)> {
    let theta = omega * s_time;
    if !(theta.abs() < std::f64::consts::FRAC_PI_2 - 0.01) {
        return Err(Error::Domain(format!(
            "disentangling needs |omega * S| < pi/2 - 0.01, got {theta}"
        )));
    }
    let tan_ratio = if theta.abs() < 1e-8 {
        1.0 + theta * theta / 3.0
    } else {
        theta.tan() / theta
    };
    let a = 2.0 * omega * omega * s_time * tan_ratio; // 2 omega tan(theta)
    let b = 2.0 * theta.cos().ln();
    let c = s_time * tan_ratio; // tan(theta)/omega
    Ok((a, b, c))
}

/// Residual of exp(-iS(T1 + 2 w^2 T3)) = exp(-iaT3) exp(-ibT2) exp(-icT1)
/// in the 2x2 rep, with `a_factor` scaling the a coefficient (1.0 for the
/// true identity; anything else is a deliberate defect for negative tests).
pub fn bch_disentangle_residual_perturbed(
    omega: f64,
    s_time: f64,
    a_factor: f64,
) -> Result<f64> {
    let (a, b, c) = disentangle_coefficients(omega, s_time)?;
    let a = a * a_factor;
    let (t1, t2, t3) = generators();
    let mi = Complex64::new(0.0, -1.0);

    let mut gen = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            gen[i][j] = mi * s_time * (t1[i][j] + 2.0 * omega * omega * t3[i][j]);
        }
    }
    let lhs = matrix_exp(&gen);
    let rhs = mat_mul(
        &matrix_exp(&mat_scale(mi * a, &t3)),
        &mat_mul(
            &matrix_exp(&mat_scale(mi * b, &t2)),
            &matrix_exp(&mat_scale(mi * c, &t1)),
        ),
    );
    Ok(mat_norm(&mat_sub(&lhs, &rhs)))
}

/// [`bch_disentangle_residual_perturbed`] with exact coefficients.
pub fn bch_disentangle_residual(omega: f64, s_time: f64) -> Result<f64> {
    bch_disentangle_residual_perturbed(omega, s_time, 1.0)
}

/// Residual of the reordering exp(-icT1) exp(tau T3) =
/// exp(-i alpha T3) exp(-i beta T2) exp(-i gamma T1), valid while
/// D = 1 - i tau c / 2 stays away from zero.
pub fn bch_reorder_residual(c: Complex64, tau: Complex64) -> Result<f64> {
    let i = Complex64::new(0.0, 1.0);
    let d = ONE - i * tau * c * 0.5;
    if d.norm() <= 1e-6 {
        return Err(Error::DegenerateParameter(format!(
            "reordering breaks down: |1 - i tau c / 2| = {:.3e}",
            d.norm()
        )));
    }
    let alpha = i * tau / d;
    let beta = 2.0 * d.ln();
    let gamma = c / d;

    let (t1, t2, t3) = generators();
    let mi = Complex64::new(0.0, -1.0);
    let lhs = mat_mul(
        &matrix_exp(&mat_scale(mi * c, &t1)),
        &matrix_exp(&mat_scale(tau, &t3)),
    );
    let rhs = mat_mul(
        &matrix_exp(&mat_scale(mi * alpha, &t3)),
        &mat_mul(
            &matrix_exp(&mat_scale(mi * beta, &t2)),
            &matrix_exp(&mat_scale(mi * gamma, &t1)),
        ),
    );
    Ok(mat_norm(&mat_sub(&lhs, &rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::SplitMix64;

    #[test]
    fn generator_commutators_close() {
        let (t1, t2, t3) = generators();
        for r in commutator_residuals(&t1, &t2, &t3) {
            assert!(r <= 1e-15, "commutator residual {r:.3e}");
        }
    }

    #[test]
    fn doubled_generators_break_the_algebra() {
        let (t1, t2, t3) = generators();
        let two = Complex64::new(2.0, 0.0);
        let res = commutator_residuals(&mat_scale(two, &t1), &mat_scale(two, &t2), &mat_scale(two, &t3));
        assert!(res.iter().any(|&r| r > 0.5), "{res:?}");
    }

    #[test]
    fn exp_agrees_with_scalar_and_nilpotent_cases() {
        let l1 = Complex64::new(0.3, -0.7);
        let l2 = Complex64::new(-1.1, 0.2);
        let e = matrix_exp(&[[l1, ZERO], [ZERO, l2]]);
        assert!((e[0][0] - l1.exp()).norm() < 1e-15);
        assert!((e[1][1] - l2.exp()).norm() < 1e-15);
        assert!(e[0][1].norm() == 0.0 && e[1][0].norm() == 0.0);

        let n = Complex64::new(0.4, 1.3);
        let e = matrix_exp(&[[ZERO, n], [ZERO, ZERO]]);
        assert!((e[0][1] - n).norm() < 1e-15, "nilpotent exp is I + N");
    }

    #[test]
    fn exp_of_a_and_minus_a_invert() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..25 {
            let mut a = [[ZERO; 2]; 2];
            let mut na = [[ZERO; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    let z = Complex64::new(rng.range(-1.5, 1.5), rng.range(-1.5, 1.5));
                    a[i][j] = z;
                    na[i][j] = -z;
                }
            }
            let prod = mat_mul(&matrix_exp(&a), &matrix_exp(&na));
            assert!(
                mat_norm(&mat_sub(&prod, &mat_identity())) < 1e-13,
                "exp(A) exp(-A) != I"
            );
        }
    }

    #[test]
    fn disentangling_holds_on_a_grid() {
        for i in 0..8 {
            for j in 0..8 {
                let omega = 0.05 + 0.4 * i as f64;
                let s = 0.05 + 0.12 * j as f64;
                if (omega * s).abs() >= std::f64::consts::FRAC_PI_2 - 0.05 {
                    continue;
                }
                let r = bch_disentangle_residual(omega, s).unwrap();
                // near |omega S| = pi/2 the matrix entries grow like 1/cos,
                // amplifying rounding; 1e-12 absolute is the honest bound
                assert!(r < 1e-12, "omega = {omega}, S = {s}: residual {r:.3e}");
            }
        }
    }

    #[test]
    fn disentangling_survives_the_frequency_limit() {
        for omega in [0.0, 1e-12, 1e-7] {
            let r = bch_disentangle_residual(omega, 0.9).unwrap();
            assert!(r < 1e-14, "omega = {omega}: residual {r:.3e}");
        }
    }

    #[test]
    fn disentangling_rejects_large_angles() {
        assert!(bch_disentangle_residual(2.0, 1.0).is_err());
    }

    #[test]
    fn perturbed_coefficient_is_detected() {
        let r = bch_disentangle_residual_perturbed(0.8, 0.9, 1.01).unwrap();
        assert!(r > 1e-4, "1% defect in a must be visible, got {r:.3e}");
    }

    #[test]
    fn reordering_holds_for_random_draws() {
        let mut rng = SplitMix64::new(7);
        let mut tested = 0;
        while tested < 60 {
            let c = Complex64::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let tau = Complex64::new(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
            let d = (ONE - Complex64::new(0.0, 1.0) * tau * c * 0.5).norm();
            if d <= 0.1 {
                continue;
            }
            let r = bch_reorder_residual(c, tau).unwrap();
            assert!(r < 1e-12, "c = {c}, tau = {tau}: residual {r:.3e}");
            tested += 1;
        }
    }

    #[test]
    fn reordering_rejects_the_singular_surface() {
        // tau c = -2i makes D = 0
        let c = Complex64::new(1.0, 0.0);
        let tau = Complex64::new(0.0, -2.0);
        assert!(bch_reorder_residual(c, tau).is_err());
    }
}
