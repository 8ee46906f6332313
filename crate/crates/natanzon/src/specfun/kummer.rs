//! Confluent hypergeometric M(a, b, z) (Kummer's function, DLMF 13.2.2).
//!
//! Branches: terminating polynomial when a is a non-positive integer,
//! the Kummer transform M(a,b,z) = e^z M(b-a,b,-z) to keep the series
//! argument non-negative (DLMF 13.2.39), plain Taylor series for moderate z,
//! and the large-z asymptotic expansion (DLMF 13.7.1) past z = 60.

use crate::error::{Error, Result};
use crate::specfun::gamma::{gamma, rgamma};

fn is_nonpos_int(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Taylor series with Kahan compensation; assumes b is not a non-positive
/// integer at or before any term that gets used.
fn series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut term = 1.0f64;
    let mut small_streak = 0u32;
    for k in 0..1200 {
        let kf = k as f64;
        let denom = (b + kf) * (kf + 1.0);
        if denom == 0.0 {
            return Err(Error::Pole(format!("M(a,{b},z): series denominator vanished")));
        }
        term *= (a + kf) / denom * z;
        if term == 0.0 {
            break; // terminating polynomial
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= f64::EPSILON * sum.abs() {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
        if !sum.is_finite() {
            return Err(Error::Numerical(format!("M({a},{b},{z}) overflowed in series")));
        }
        if k == 1199 {
            return Err(Error::Convergence(format!("M({a},{b},{z}): series stalled")));
        }
    }
    Ok(sum)
}

/// Large-z expansion M ~ Gamma(b)/Gamma(a) e^z z^(a-b) sum_k (b-a)_k (1-a)_k / (k! z^k).
fn asymptotic(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    let mut best = f64::INFINITY;
    for k in 0..60 {
        let kf = k as f64;
        let next = term * (b - a + kf) * (1.0 - a + kf) / ((kf + 1.0) * z);
        if next.abs() >= best {
            break; // divergent tail reached; stop at the smallest term
        }
        best = next.abs();
        term = next;
        sum += term;
        if term.abs() < f64::EPSILON * sum.abs() {
            break;
        }
    }
    let front = gamma(b)? * rgamma(a) * z.powf(a - b) * z.exp();
    Ok(front * sum)
}

/// Kummer's confluent hypergeometric function M(a, b, z) for real arguments.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::Domain("kummer_m: non-finite argument".into()));
    }
    if is_nonpos_int(b) && !(is_nonpos_int(a) && a >= b) {
        return Err(Error::Pole(format!("M(a,b,z) undefined at b = {b}")));
    }
    if is_nonpos_int(a) {
        // terminating polynomial of degree -a; series handles any sign of z
        return series(a, b, z);
    }
    if z < 0.0 {
        // Kummer transform keeps all series terms one-signed
        let m = kummer_m(b - a, b, -z)?;
        return Ok(z.exp() * m);
    }
    if z > 60.0 && !is_nonpos_int(a) {
        return asymptotic(a, b, z);
    }
    series(a, b, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: f64, b: f64, z: f64, want: f64, tol: f64) {
        let got = kummer_m(a, b, z).unwrap();
        let rel = ((got - want) / want).abs();
        assert!(rel < tol, "M({a},{b},{z}) = {got:e}, want {want:e}, rel {rel:e}");
    }

    #[test]
    fn reference_values() {
        check(0.3, 1.7, 5.5, 9.321_801_123_975_294, 1e-14);
        check(2.5, 1.2, 0.4, 2.155_418_477_229_632, 1e-14);
        check(-0.8, 2.3, 3.0, -0.176_545_710_041_845_02, 1e-13);
        check(4.2, 0.9, 7.0, 287_483.131_303_912_5, 1e-13);
        check(0.5, 0.25, 2.0, 16.476_235_058_022_86, 1e-14);
        check(1.3, 2.6, 45.0, 3.912_243_715_583_154_7e17, 1e-13);
    }

    #[test]
    fn terminating_polynomial() {
        // M(-2, 3, z) = 1 - 2z/3 + z^2/12 exactly
        let z = 2.5;
        let want = 1.0 - 2.0 * z / 3.0 + z * z / 12.0;
        check(-2.0, 3.0, z, want, 1e-15);
        assert!((want - (-0.145_833_333_333_333_33)).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_regime() {
        check(0.6, 1.9, 80.0, 1.209_295_171_606_848_5e32, 1e-12);
    }

    #[test]
    fn negative_argument_via_transform() {
        // M(a, b, -z) e^z = M(b-a, b, z) by construction; also check e^z itself
        let m = kummer_m(1.3, 1.3, -4.0).unwrap();
        assert!((m - (-4.0f64).exp()).abs() < 1e-16);
        let lhs = kummer_m(0.7, 2.1, -3.0).unwrap();
        let rhs = (-3.0f64).exp() * kummer_m(1.4, 2.1, 3.0).unwrap();
        assert!(((lhs - rhs) / rhs).abs() < 1e-14);
    }

    #[test]
    fn contiguous_relation() {
        // (b-a) M(a-1,b,z) + (2a-b+z) M(a,b,z) - a M(a+1,b,z) = 0
        for &(a, b, z) in &[(0.9, 1.7, 2.0), (2.2, 3.4, 11.0), (0.4, 0.8, 0.3)] {
            let m0 = kummer_m(a - 1.0, b, z).unwrap();
            let m1 = kummer_m(a, b, z).unwrap();
            let m2 = kummer_m(a + 1.0, b, z).unwrap();
            let res = (b - a) * m0 + (2.0 * a - b + z) * m1 - a * m2;
            let scale = m1.abs().max(1.0);
            assert!(
                (res / scale).abs() < 1e-13,
                "contiguity fails at ({a},{b},{z}): {res:e}"
            );
        }
    }

    #[test]
    fn rejects_bad_b() {
        assert!(matches!(kummer_m(0.5, -2.0, 1.0), Err(Error::Pole(_))));
        // but a terminating numerator that stops first is fine
        assert!(kummer_m(-1.0, -2.0, 1.0).is_ok());
    }
}
