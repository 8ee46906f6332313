//! Real roots of real polynomials up to degree 4, analytically seeded
//! (quadratic formula / Cardano / Ferrari) and Newton-polished against the
//! original coefficients. Coefficients are in descending-degree order.

use crate::error::{Error, Result};

/// Horner evaluation returning (value, derivative).
pub fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut v = 0.0f64;
    let mut d = 0.0f64;
    for &c in coeffs {
        d = d * x + v;
        v = v * x + c;
    }
    (v, d)
}

fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..8 {
        let (v, d) = eval_with_derivative(coeffs, x);
        if v == 0.0 || d == 0.0 {
            break;
        }
        let step = v / d;
        let next = x - step;
        if !next.is_finite() {
            break;
        }
        if (next - x).abs() <= 1e-15 * (1.0 + x.abs()) {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// Roots of the monic quadratic x^2 + b x + c, numerically stable pairing.
fn quadratic_monic(b: f64, c: f64, out: &mut Vec<f64>) {
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q != 0.0 {
        out.push(q);
        out.push(c / q);
    } else {
        // b == 0 and disc == b^2 - 4c >= 0
        out.push(sq * 0.5);
        out.push(-sq * 0.5);
    }
}

/// Real roots of the monic cubic x^3 + a2 x^2 + a1 x + a0 (Cardano).
fn cubic_monic(a2: f64, a1: f64, a0: f64, out: &mut Vec<f64>) {
    let shift = a2 / 3.0;
    let p = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    let half_q = 0.5 * q;
    let disc = half_q * half_q + (p / 3.0) * (p / 3.0) * (p / 3.0);
    if disc > 0.0 {
        // one real root; formulate to avoid cancellation between the cbrts
        let sq = disc.sqrt();
        let big = -half_q - half_q.signum() * sq;
        let u = big.cbrt();
        let root = if u != 0.0 { u - p / (3.0 * u) } else { 0.0 };
        out.push(root - shift);
    } else if p == 0.0 {
        out.push(-shift); // triple root
    } else {
        // three real roots (trigonometric form)
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        for k in 0..3 {
            let ang = theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            out.push(m * ang.cos() - shift);
        }
    }
}

/// Real roots of the monic quartic x^4 + b x^3 + c x^2 + d x + e (Ferrari).
fn quartic_monic(b: f64, c: f64, d: f64, e: f64, out: &mut Vec<f64>) {
    // depress: x = y - b/4  =>  y^4 + p y^2 + q y + r
    let b2 = b * b;
    let p = c - 3.0 * b2 / 8.0;
    let q = d - 0.5 * b * c + b2 * b / 8.0;
    let r = e - 0.25 * b * d + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;
    let shift = b / 4.0;

    let scale = p.abs().max(q.abs()).max(r.abs()).max(1.0);
    if q.abs() <= 1e-12 * scale {
        // biquadratic: y^2 solves t^2 + p t + r = 0
        let mut ys = Vec::new();
        quadratic_monic(p, r, &mut ys);
        for y2 in ys {
            if y2 > 0.0 {
                out.push(y2.sqrt() - shift);
                out.push(-y2.sqrt() - shift);
            } else if y2 > -1e-13 * scale {
                out.push(-shift);
            }
        }
        return;
    }

    // resolvent: 8 t^3 + 8 p t^2 + (2 p^2 - 8 r) t - q^2 = 0 always has a
    // root t >= 0 (value at 0 is -q^2 <= 0, leading term positive)
    let mut ts = Vec::new();
    cubic_monic(p, (2.0 * p * p - 8.0 * r) / 8.0, -q * q / 8.0, &mut ts);
    let t = ts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(t > 0.0) {
        return; // q != 0 forces t > 0; anything else means no real roots
    }
    let s = (2.0 * t).sqrt();
    // y^2 - s y + (p/2 + t + q/(2s)) = 0  and  y^2 + s y + (p/2 + t - q/(2s))
    let mut ys = Vec::new();
    quadratic_monic(-s, 0.5 * p + t + q / (2.0 * s), &mut ys);
    quadratic_monic(s, 0.5 * p + t - q / (2.0 * s), &mut ys);
    for y in ys {
        out.push(y - shift);
    }
}

/// All real roots (ascending, deduplicated) of the polynomial with the given
/// descending-order coefficients. Degree after stripping negligible leading
/// coefficients must be 1..=4; a zero polynomial is an error, a nonzero
/// constant has no roots.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Err(Error::DegenerateParameter(
            "polynomial is identically zero".into(),
        ));
    }
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c[0].abs() <= 1e-14 * scale {
        c.remove(0);
    }
    let lead = c[0];
    for v in c.iter_mut() {
        *v /= lead;
    }
    let mut roots = Vec::new();
    match c.len() {
        1 => {} // nonzero constant: no roots
        2 => roots.push(-c[1]),
        3 => quadratic_monic(c[1], c[2], &mut roots),
        4 => cubic_monic(c[1], c[2], c[3], &mut roots),
        5 => quartic_monic(c[1], c[2], c[3], c[4], &mut roots),
        n => {
            return Err(Error::Domain(format!(
                "real_roots supports degree <= 4, got degree {}",
                n - 1
            )))
        }
    }
    let mut polished: Vec<f64> = roots.into_iter().map(|x| polish(&c, x)).collect();
    polished.sort_by(f64::total_cmp);
    polished.dedup_by(|a, b| (*a - *b).abs() <= 1e-10 * (1.0 + b.abs()));
    Ok(polished)
}
