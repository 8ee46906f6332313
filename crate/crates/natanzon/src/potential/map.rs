//! The coordinate chart r(h) defined by dh/dr = 2h / sqrt(R(h)), i.e.
//!
//!   r(h) = r0 + int_{h0}^{h} sqrt(R(t)) / (2t) dt.
//!
//! The three special zero-patterns integrate in closed form. Everything else
//! gets a monotone node table of cumulative Gauss-Kronrod segments, built by
//! geometric walking from the anchor toward the chart edges (h = 0, infinity,
//! or a root of R), plus on-demand geometric extension beyond the table.
//!
//! With c0 = 0 the anchor sits at h = 0 where the integrand behaves like
//! t^(-1/2); the substitution w = sqrt(t) turns it into the smooth
//! sqrt(sigma2 w^2 + sigma1) dw, so the whole table lives in w-space there.

use crate::error::{Error, Result};
use crate::poly::real_roots;
use crate::potential::{NatanzonParams, SpecialCase};
use crate::quad::integrate;

/// Construction knobs for the numeric table route.
#[derive(Debug, Clone)]
pub struct MapConfig {
    /// lower bound on the number of table nodes
    pub min_nodes: usize,
    /// the table covers at least r in [r0 - r_span, r0 + r_span] where the
    /// chart reaches that far
    pub r_span: f64,
    /// tolerance handed to each segment quadrature
    pub quad_tol: f64,
    /// |r(h) - r_target| tolerance for h_from_r
    pub invert_tol: f64,
}

impl Default for MapConfig {
    fn default() -> Self {
        Self { min_nodes: 512, r_span: 160.0, quad_tol: 1e-13, invert_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WSpace {
    /// w = sqrt(h) (anchor at h = 0, c0 = 0)
    SqrtH,
    /// w = h (anchor at h = 1, c0 != 0)
    PlainH,
}

#[derive(Debug, Clone)]
struct Table {
    space: WSpace,
    /// ascending node coordinates in w-space
    ws: Vec<f64>,
    /// r at each node
    rs: Vec<f64>,
    /// chart edge below the table in w-space (not itself reachable)
    w_lo: f64,
    /// chart edge above, possibly infinite
    w_hi: f64,
    /// infimum of r over the chart (-inf for a log tail at h -> 0)
    r_lo: f64,
    /// supremum of r (+inf when h is unbounded)
    r_hi: f64,
}

#[derive(Debug, Clone)]
enum Repr {
    /// h = r^2 / sigma1, r > 0
    SqrtLaw,
    /// h = 2 r / sqrt(sigma2), r > 0
    LinearLaw,
    /// h = exp(2 r / sqrt(c0)), any r
    ExpLaw,
    Table(Table),
}

/// Bidirectional map between the physical half-line coordinate r and the
/// algebraic variable h, for one parameter set.
#[derive(Debug, Clone)]
pub struct CoordinateMap {
    params: NatanzonParams,
    cfg: MapConfig,
    repr: Repr,
}

/// max trusted magnitude for w during geometric walks/extensions
const W_CAP: f64 = 1e290;
const W_FLOOR: f64 = 1e-290;
const WALK_CAP: usize = 30_000;

impl CoordinateMap {
    pub fn build(params: &NatanzonParams, cfg: &MapConfig) -> Result<Self> {
        let repr = match params.classify() {
            SpecialCase::Oscillator => {
                if params.sigma1 <= 0.0 {
                    return Err(Error::Domain(
                        "sigma2 = c0 = 0 needs sigma1 > 0 for R > 0 on h > 0".into(),
                    ));
                }
                Repr::SqrtLaw
            }
            SpecialCase::Coulomb => {
                if params.sigma2 <= 0.0 {
                    return Err(Error::Domain(
                        "sigma1 = c0 = 0 needs sigma2 > 0 for R > 0 on h > 0".into(),
                    ));
                }
                Repr::LinearLaw
            }
            SpecialCase::Morse => {
                if params.c0 <= 0.0 {
                    return Err(Error::Domain(
                        "sigma2 = sigma1 = 0 needs c0 > 0 for R > 0".into(),
                    ));
                }
                Repr::ExpLaw
            }
            SpecialCase::General => Repr::Table(build_table(params, cfg)?),
        };
        Ok(Self { params: *params, cfg: cfg.clone(), repr })
    }

    /// Open h-interval the chart covers (R > 0, h > 0).
    pub fn h_domain(&self) -> (f64, f64) {
        match &self.repr {
            Repr::SqrtLaw | Repr::LinearLaw | Repr::ExpLaw => (0.0, f64::INFINITY),
            Repr::Table(t) => match t.space {
                WSpace::SqrtH => (t.w_lo * t.w_lo, t.w_hi * t.w_hi),
                WSpace::PlainH => (t.w_lo, t.w_hi),
            },
        }
    }

    /// Open r-interval the chart covers.
    pub fn r_domain(&self) -> (f64, f64) {
        match &self.repr {
            Repr::SqrtLaw | Repr::LinearLaw => (0.0, f64::INFINITY),
            Repr::ExpLaw => (f64::NEG_INFINITY, f64::INFINITY),
            Repr::Table(t) => (t.r_lo, t.r_hi),
        }
    }

    /// dh/dr = 2h / sqrt(R(h)) at a chart point.
    pub fn dh_dr(&self, h: f64) -> Result<f64> {
        let r = self.params.r_quad(h);
        if !(h > 0.0 && r > 0.0) {
            return Err(Error::Domain(format!("dh_dr outside chart: h = {h}, R = {r}")));
        }
        Ok(2.0 * h / r.sqrt())
    }

    pub fn params(&self) -> &NatanzonParams {
        &self.params
    }

    /// V(r) through the chart.
    pub fn potential_at_r(&self, r: f64) -> Result<f64> {
        self.params.potential_value(self.h_from_r(r)?)
    }

    pub fn r_from_h(&self, h: f64) -> Result<f64> {
        let (hlo, hhi) = self.h_domain();
        if !(h > hlo && h < hhi) || !(self.params.r_quad(h) > 0.0) {
            return Err(Error::Domain(format!(
                "h = {h} outside the chart window ({hlo}, {hhi})"
            )));
        }
        match &self.repr {
            Repr::SqrtLaw => Ok((self.params.sigma1 * h).sqrt()),
            Repr::LinearLaw => Ok(0.5 * self.params.sigma2.sqrt() * h),
            Repr::ExpLaw => Ok(0.5 * self.params.c0.sqrt() * h.ln()),
            Repr::Table(t) => self.table_r_from_h(t, h),
        }
    }

    pub fn h_from_r(&self, r: f64) -> Result<f64> {
        if !r.is_finite() {
            return Err(Error::Domain(format!("h_from_r of non-finite r = {r}")));
        }
        match &self.repr {
            Repr::SqrtLaw => {
                if r <= 0.0 {
                    return Err(Error::Domain(format!("chart needs r > 0, got {r}")));
                }
                Ok(r * r / self.params.sigma1)
            }
            Repr::LinearLaw => {
                if r <= 0.0 {
                    return Err(Error::Domain(format!("chart needs r > 0, got {r}")));
                }
                Ok(2.0 * r / self.params.sigma2.sqrt())
            }
            Repr::ExpLaw => {
                let x = 2.0 * r / self.params.c0.sqrt();
                if x.abs() > 700.0 {
                    return Err(Error::Domain(format!(
                        "r = {r} maps beyond the representable h range"
                    )));
                }
                Ok(x.exp())
            }
            Repr::Table(t) => self.invert_table(t, r),
        }
    }

    /// integrand dr/dw in the table's w-space
    fn g_w(&self, space: WSpace, w: f64) -> f64 {
        let p = &self.params;
        match space {
            WSpace::SqrtH => (p.sigma2 * w * w + p.sigma1).max(0.0).sqrt(),
            WSpace::PlainH => p.r_quad(w).max(0.0).sqrt() / (2.0 * w),
        }
    }

    fn seg(&self, space: WSpace, a: f64, b: f64) -> Result<f64> {
        let tol = self.cfg.quad_tol;
        Ok(integrate(|w| self.g_w(space, w), a, b, tol, tol)?.value)
    }

    fn table_r_from_h(&self, t: &Table, h: f64) -> Result<f64> {
        let w = match t.space {
            WSpace::SqrtH => h.sqrt(),
            WSpace::PlainH => h,
        };
        if w <= t.ws[0] {
            return Ok(t.rs[0] - self.seg(t.space, w, t.ws[0])?);
        }
        if w >= *t.ws.last().unwrap() {
            let n = t.ws.len() - 1;
            return Ok(t.rs[n] + self.seg(t.space, t.ws[n], w)?);
        }
        let k = match t.ws.binary_search_by(|x| x.total_cmp(&w)) {
            Ok(i) => return Ok(t.rs[i]),
            Err(i) => i - 1, // ws[k] < w < ws[k+1]
        };
        // integrate from the nearer endpoint
        if w - t.ws[k] <= t.ws[k + 1] - w {
            Ok(t.rs[k] + self.seg(t.space, t.ws[k], w)?)
        } else {
            Ok(t.rs[k + 1] - self.seg(t.space, w, t.ws[k + 1])?)
        }
    }

    /// Safeguarded Newton for r(w) = r_target on a bracket [lo, hi] with
    /// r(a_w) = a_r known; F is evaluated by quadrature from the fixed anchor.
    fn newton_w(
        &self,
        space: WSpace,
        a_w: f64,
        a_r: f64,
        mut lo: f64,
        mut hi: f64,
        r_target: f64,
    ) -> Result<f64> {
        let tol = self.cfg.invert_tol * (1.0 + r_target.abs());
        let mut w = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = a_r + self.seg(space, a_w, w)? - r_target;
            if f.abs() <= tol {
                return Ok(w);
            }
            if f > 0.0 {
                hi = w;
            } else {
                lo = w;
            }
            let d = self.g_w(space, w);
            let next = w - f / d;
            w = if d > 0.0 && next.is_finite() && next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= f64::EPSILON * hi.abs() {
                // bracket exhausted at machine precision; accept midpoint
                return Ok(w);
            }
        }
        Err(Error::Convergence(format!(
            "coordinate inversion stalled at r = {r_target}"
        )))
    }

    fn invert_table(&self, t: &Table, r_target: f64) -> Result<f64> {
        if (t.r_lo.is_finite() && r_target <= t.r_lo)
            || (t.r_hi.is_finite() && r_target >= t.r_hi)
        {
            return Err(Error::Domain(format!(
                "r = {r_target} outside the chart range ({}, {})",
                t.r_lo, t.r_hi
            )));
        }
        let n = t.ws.len() - 1;
        let w = if r_target < t.rs[0] {
            // extend below the table: halve the gap to the lower edge
            let mut hi = t.ws[0];
            let mut rhi = t.rs[0];
            let mut found = None;
            for _ in 0..WALK_CAP {
                let next = if t.w_lo == 0.0 { hi * 0.5 } else { t.w_lo + (hi - t.w_lo) * 0.5 };
                if t.w_lo == 0.0 && next < W_FLOOR && t.space == WSpace::PlainH {
                    // deep log tail: r(w) = rhi + (sqrt(c0)/2) ln(w/hi) + O(w)
                    let ln_h = hi.ln() + (r_target - rhi) * 2.0 / self.params.c0.sqrt();
                    if ln_h < -690.0 {
                        return Err(Error::Domain(format!(
                            "r = {r_target} maps below the representable h range"
                        )));
                    }
                    return Ok(ln_h.exp());
                }
                let rlo = rhi - self.seg(t.space, next, hi)?;
                if rlo <= r_target {
                    found = Some(self.newton_w(t.space, next, rlo, next, hi, r_target)?);
                    break;
                }
                hi = next;
                rhi = rlo;
                if t.w_lo > 0.0 && hi - t.w_lo <= f64::EPSILON * t.w_lo {
                    return Err(Error::Domain(format!(
                        "r = {r_target} below the reachable chart range"
                    )));
                }
            }
            found.ok_or_else(|| Error::Convergence("left chart walk exhausted".into()))?
        } else if r_target > t.rs[n] {
            // extend above the table
            let mut lo = t.ws[n];
            let mut rlo = t.rs[n];
            let mut found = None;
            for _ in 0..WALK_CAP {
                let next = if t.w_hi.is_finite() {
                    t.w_hi - (t.w_hi - lo) * 0.5
                } else {
                    (lo * 2.0).max(1.0)
                };
                if next > W_CAP {
                    return Err(Error::Domain(format!(
                        "r = {r_target} beyond the representable h range"
                    )));
                }
                let rhi = rlo + self.seg(t.space, lo, next)?;
                if rhi >= r_target {
                    found = Some(self.newton_w(t.space, lo, rlo, lo, next, r_target)?);
                    break;
                }
                lo = next;
                rlo = rhi;
                if t.w_hi.is_finite() && t.w_hi - lo <= f64::EPSILON * t.w_hi {
                    return Err(Error::Domain(format!(
                        "r = {r_target} above the reachable chart range"
                    )));
                }
            }
            found.ok_or_else(|| Error::Convergence("right chart walk exhausted".into()))?
        } else {
            // inside the table
            let k = t.rs.partition_point(|&x| x < r_target).saturating_sub(1).min(n - 1);
            self.newton_w(t.space, t.ws[k], t.rs[k], t.ws[k], t.ws[k + 1], r_target)?
        };
        Ok(match t.space {
            WSpace::SqrtH => w * w,
            WSpace::PlainH => w,
        })
    }
}

/// r(h) by direct quadrature from the anchor, with no table. Serves as the
/// reference implementation the table is tested against.
pub fn integrate_r_from_h(params: &NatanzonParams, h: f64) -> Result<f64> {
    if !(h > 0.0 && params.r_quad(h) > 0.0) {
        return Err(Error::Domain(format!("h = {h} outside the chart")));
    }
    let tol = 1e-13;
    if params.c0 == 0.0 {
        if params.sigma1 <= 0.0 {
            return Err(Error::Domain("chart from h = 0 needs sigma1 > 0".into()));
        }
        let (s2, s1) = (params.sigma2, params.sigma1);
        let q = integrate(|w| (s2 * w * w + s1).max(0.0).sqrt(), 0.0, h.sqrt(), tol, tol)?;
        Ok(q.value)
    } else {
        if !(params.r_quad(1.0) > 0.0) {
            return Err(Error::Domain("anchor h = 1 is outside the R > 0 window".into()));
        }
        let p = *params;
        let q = integrate(
            move |t| p.r_quad(t).max(0.0).sqrt() / (2.0 * t),
            1.0,
            h,
            tol,
            tol,
        )?;
        Ok(q.value)
    }
}

/// Positive-R window around the anchor, as (h_lo, h_hi) with h_hi possibly
/// infinite; errors when the anchor itself is outside.
fn chart_window(params: &NatanzonParams) -> Result<(f64, f64)> {
    let anchor = params.anchor();
    let roots = match real_roots(&[params.sigma2, params.sigma1, params.c0]) {
        Ok(r) => r,
        Err(Error::DegenerateParameter(_)) => unreachable!("R not identically zero"),
        Err(e) => return Err(e),
    };
    if anchor.h0 == 0.0 {
        // c0 = 0: R = h (sigma2 h + sigma1); need sigma1 > 0 so R > 0 just above 0
        if params.sigma1 <= 0.0 {
            return Err(Error::Domain(
                "with c0 = 0 the chart starts at h = 0 and needs sigma1 > 0".into(),
            ));
        }
        let hi = roots
            .iter()
            .copied()
            .filter(|&x| x > 1e-300)
            .fold(f64::INFINITY, f64::min);
        Ok((0.0, hi))
    } else {
        if !(params.r_quad(1.0) > 0.0) {
            return Err(Error::Domain(format!(
                "anchor h = 1 outside the R > 0 window (R(1) = {})",
                params.r_quad(1.0)
            )));
        }
        let lo = roots.iter().copied().filter(|&x| x > 0.0 && x < 1.0).fold(0.0, f64::max);
        let hi = roots.iter().copied().filter(|&x| x > 1.0).fold(f64::INFINITY, f64::min);
        Ok((lo, hi))
    }
}

fn build_table(params: &NatanzonParams, cfg: &MapConfig) -> Result<Table> {
    let (h_lo, h_hi) = chart_window(params)?;
    let anchor = params.anchor();
    let space = if anchor.h0 == 0.0 { WSpace::SqrtH } else { WSpace::PlainH };
    let tol = cfg.quad_tol;

    let g = |w: f64| -> f64 {
        match space {
            WSpace::SqrtH => (params.sigma2 * w * w + params.sigma1).max(0.0).sqrt(),
            WSpace::PlainH => params.r_quad(w).max(0.0).sqrt() / (2.0 * w),
        }
    };
    let seg = |a: f64, b: f64| -> Result<f64> { Ok(integrate(g, a, b, tol, tol)?.value) };

    // ---- phase 1: choose node positions by walking until the span is covered
    let (w_anchor, w_lo, w_hi) = match space {
        WSpace::SqrtH => (0.0, 0.0, h_hi.sqrt()),
        WSpace::PlainH => (1.0, h_lo, h_hi),
    };
    let phi = 1.07;
    let mut left: Vec<f64> = Vec::new(); // descending from anchor (exclusive)
    if space == WSpace::PlainH {
        let mut cur = w_anchor;
        let mut r_cur = anchor.r0;
        for _ in 0..WALK_CAP {
            let next = w_lo + (cur - w_lo) / phi;
            if next >= cur || next <= w_lo {
                break;
            }
            r_cur -= seg(next, cur)?;
            left.push(next);
            cur = next;
            if w_lo == 0.0 {
                if r_cur < anchor.r0 - cfg.r_span - 1.0 || cur < 1e-280 {
                    break;
                }
            } else if cur - w_lo < 1e-10 * (w_lo + 1.0)
                || r_cur < anchor.r0 - cfg.r_span - 1.0
            {
                break;
            }
        }
    }
    let mut right: Vec<f64> = Vec::new(); // ascending from anchor (exclusive)
    {
        let mut cur = w_anchor;
        let mut r_cur = anchor.r0;
        // first step away from a w = 0 anchor when the window is unbounded
        // (SqrtH with sigma2 > 0): scale off where the sigma2 term takes over
        let first = if space == WSpace::SqrtH && !w_hi.is_finite() {
            Some(1e-4 * (params.sigma1 / params.sigma2).sqrt().max(1e-4))
        } else {
            None
        };
        let mut pending_first = first;
        for _ in 0..WALK_CAP {
            let next = if let Some(s) = pending_first.take() {
                s
            } else if w_hi.is_finite() {
                w_hi - (w_hi - cur) / phi
            } else {
                cur * phi
            };
            if next <= cur || next >= w_hi {
                break;
            }
            r_cur += seg(cur, next)?;
            right.push(next);
            cur = next;
            if w_hi.is_finite() {
                if w_hi - cur < 1e-10 * (w_hi + 1.0) || r_cur > anchor.r0 + cfg.r_span + 1.0 {
                    break;
                }
            } else if r_cur > anchor.r0 + cfg.r_span + 1.0 || cur > W_CAP {
                break;
            }
        }
    }

    let mut ws: Vec<f64> = Vec::with_capacity(left.len() + right.len() + 1);
    ws.extend(left.iter().rev());
    ws.push(w_anchor);
    let anchor_pos = ws.len() - 1;
    ws.extend(right.iter());
    if ws.len() < 2 {
        return Err(Error::Domain(
            "chart window is too thin to build a coordinate table".into(),
        ));
    }

    // ---- phase 2: enforce the node budget by midpoint refinement
    let mut anchor_idx = anchor_pos;
    while ws.len() < cfg.min_nodes.max(2) {
        let mut finer = Vec::with_capacity(ws.len() * 2 - 1);
        let mut new_anchor = 0usize;
        for i in 0..ws.len() {
            if i == anchor_idx {
                new_anchor = finer.len();
            }
            finer.push(ws[i]);
            if i + 1 < ws.len() {
                finer.push(0.5 * (ws[i] + ws[i + 1]));
            }
        }
        ws = finer;
        anchor_idx = new_anchor;
    }

    // ---- phase 3: one cumulative integration pass
    let mut rs = vec![0.0f64; ws.len()];
    rs[anchor_idx] = anchor.r0;
    for k in anchor_idx..ws.len() - 1 {
        rs[k + 1] = rs[k] + seg(ws[k], ws[k + 1])?;
    }
    for k in (0..anchor_idx).rev() {
        rs[k] = rs[k + 1] - seg(ws[k], ws[k + 1])?;
    }

    // ---- phase 4: chart range limits
    let r_lo = match space {
        WSpace::SqrtH => anchor.r0, // w = 0 is the anchor itself
        WSpace::PlainH => {
            if w_lo == 0.0 {
                f64::NEG_INFINITY // log tail
            } else {
                // finite limit: smooth tail integral with v = sqrt(t - h_lo)
                let p = *params;
                let a = ws[0];
                let tail = integrate(
                    |v: f64| {
                        let t = w_lo + v * v;
                        p.r_quad(t).max(0.0).sqrt() * v / t
                    },
                    0.0,
                    (a - w_lo).sqrt(),
                    tol,
                    tol,
                )?;
                rs[0] - tail.value
            }
        }
    };
    let r_hi = if w_hi.is_finite() {
        // finite limit: v = sqrt(h_hi - t) (or sqrt(w_hi - w) in SqrtH space,
        // where the integrand also vanishes like sqrt at the edge)
        let b = *ws.last().unwrap();
        let tail = match space {
            WSpace::SqrtH => {
                let p = *params;
                integrate(
                    |v: f64| {
                        let w = w_hi - v * v;
                        (p.sigma2 * w * w + p.sigma1).max(0.0).sqrt() * 2.0 * v
                    },
                    0.0,
                    (w_hi - b).sqrt(),
                    tol,
                    tol,
                )?
            }
            WSpace::PlainH => {
                let p = *params;
                integrate(
                    |v: f64| {
                        let t = w_hi - v * v;
                        p.r_quad(t).max(0.0).sqrt() * v / t
                    },
                    0.0,
                    (w_hi - b).sqrt(),
                    tol,
                    tol,
                )?
            }
        };
        rs[ws.len() - 1] + tail.value
    } else {
        f64::INFINITY
    };

    Ok(Table { space, ws, rs, w_lo, w_hi, r_lo, r_hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map_for(p: &NatanzonParams) -> CoordinateMap {
        CoordinateMap::build(p, &MapConfig::default()).unwrap()
    }

    #[test]
    fn closed_law_round_trips() {
        let osc = NatanzonParams::new(1.0, 0.0, 0.25, 0.0, 2.0, 0.0).unwrap();
        let cou = NatanzonParams::new(0.0, -2.0, 1.0, 3.0, 0.0, 0.0).unwrap();
        let mor = NatanzonParams::new(1.0, -6.0, 0.0, 0.0, 0.0, 4.0).unwrap();
        for p in [osc, cou, mor] {
            let m = map_for(&p);
            for &r in &[0.1, 1.0, 7.5, 42.0] {
                let h = m.h_from_r(r).unwrap();
                let back = m.r_from_h(h).unwrap();
                assert!((back - r).abs() < 1e-12 * (1.0 + r.abs()), "{p:?} at r = {r}");
            }
        }
    }

    #[test]
    fn closed_law_slope_is_exact() {
        // dh/dr from the closed forms vs 2h/sqrt(R)
        let mor = NatanzonParams::new(1.0, -6.0, 0.0, 0.0, 0.0, 4.0).unwrap();
        let m = map_for(&mor);
        for &r in &[-3.0, 0.0, 2.0] {
            let h = m.h_from_r(r).unwrap();
            let d = 1e-6;
            let slope = (m.h_from_r(r + d).unwrap() - m.h_from_r(r - d).unwrap()) / (2.0 * d);
            let want = m.dh_dr(h).unwrap();
            assert!(((slope - want) / want).abs() < 1e-9);
        }
    }

    #[test]
    fn table_matches_direct_quadrature() {
        let p = NatanzonParams::new(1.0, -1.0, 0.5, 1.0, 1.0, 1.0).unwrap();
        let m = map_for(&p);
        for &h in &[0.01, 0.3, 1.0, 2.0, 9.0, 118.0] {
            let via_table = m.r_from_h(h).unwrap();
            let direct = integrate_r_from_h(&p, h).unwrap();
            assert!(
                (via_table - direct).abs() < 1e-10 * (1.0 + direct.abs()),
                "h = {h}: table {via_table}, direct {direct}"
            );
        }
    }

    #[test]
    fn table_round_trip_and_anchor() {
        let p = NatanzonParams::new(0.5, 0.2, 1.0, 2.0, 0.7, 1.3).unwrap();
        let m = map_for(&p);
        assert!((m.h_from_r(0.0).unwrap() - 1.0).abs() < 1e-10, "anchor h(0) = 1");
        for &r in &[-30.0, -4.2, -0.3, 0.0, 0.9, 17.0, 155.0] {
            let h = m.h_from_r(r).unwrap();
            let back = m.r_from_h(h).unwrap();
            assert!(
                (back - r).abs() < 1e-9 * (1.0 + r.abs()),
                "round trip at r = {r}: h = {h}, back = {back}"
            );
        }
    }

    #[test]
    fn table_slope_matches_defining_ode() {
        let p = NatanzonParams::new(1.0, 0.0, 0.5, 1.0, 1.0, 0.0).unwrap(); // c0 = 0 route
        let m = map_for(&p);
        for &r in &[0.05, 0.7, 3.0, 20.0] {
            let h = m.h_from_r(r).unwrap();
            let d = 1e-5 * (1.0 + r.abs());
            let slope = (m.h_from_r(r + d).unwrap() - m.h_from_r(r - d).unwrap()) / (2.0 * d);
            let want = m.dh_dr(h).unwrap();
            assert!(
                ((slope - want) / want).abs() < 1e-7,
                "slope at r = {r}: {slope} vs {want}"
            );
        }
    }

    #[test]
    fn finite_window_chart() {
        // R = -(h - 0.5)(h - 3) > 0 on (0.5, 3), anchor h = 1 inside
        let p = NatanzonParams::new(1.0, 0.0, 0.5, -1.0, 3.5, -1.5).unwrap();
        let m = map_for(&p);
        let (hlo, hhi) = m.h_domain();
        assert!((hlo - 0.5).abs() < 1e-12 && (hhi - 3.0).abs() < 1e-12);
        let (rlo, rhi) = m.r_domain();
        assert!(rlo.is_finite() && rhi.is_finite() && rlo < 0.0 && rhi > 0.0);
        // round trip well inside
        let r = 0.5 * rhi;
        let h = m.h_from_r(r).unwrap();
        assert!((m.r_from_h(h).unwrap() - r).abs() < 1e-9);
        // out of range refused
        assert!(m.h_from_r(rhi + 0.1).is_err());
        assert!(m.h_from_r(rlo - 0.1).is_err());
    }

    #[test]
    fn extension_beyond_table_is_consistent() {
        let p = NatanzonParams::new(1.0, -1.0, 0.5, 1.0, 1.0, 1.0).unwrap();
        let small = CoordinateMap::build(
            &p,
            &MapConfig { r_span: 5.0, ..MapConfig::default() },
        )
        .unwrap();
        let big = map_for(&p);
        for &r in &[-11.0, 9.0, 23.0] {
            let a = small.h_from_r(r).unwrap();
            let b = big.h_from_r(r).unwrap();
            assert!(
                ((a - b) / b).abs() < 1e-9,
                "extension mismatch at r = {r}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn deep_log_tail_asymptote() {
        // c0 != 0: r -> -inf as h -> 0; far past the table the closed
        // asymptote h ~ exp(2 r / sqrt(c0)) takes over
        let p = NatanzonParams::new(1.0, -1.0, 0.5, 1.0, 1.0, 1.0).unwrap();
        let m = map_for(&p);
        let r = -200.0;
        let h = m.h_from_r(r).unwrap();
        assert!(h > 0.0 && h < 1e-80);
        // slope of ln h wrt r should be 2/sqrt(c0) = 2
        let h2 = m.h_from_r(r + 1.0).unwrap();
        assert!(((h2 / h).ln() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn anchor_outside_window_rejected() {
        // R(1) = 1 - 4 + 1 < 0
        let p = NatanzonParams::new(1.0, 0.0, 0.5, 1.0, -4.0, 1.0).unwrap();
        assert!(CoordinateMap::build(&p, &MapConfig::default()).is_err());
        // c0 = 0 with sigma1 < 0: R < 0 just above h = 0
        let q = NatanzonParams::new(1.0, 0.0, 0.5, 1.0, -1.0, 0.0).unwrap();
        assert!(CoordinateMap::build(&q, &MapConfig::default()).is_err());
    }

    #[test]
    fn node_budget_respected() {
        let p = NatanzonParams::new(1.0, -1.0, 0.5, 1.0, 1.0, 1.0).unwrap();
        let m = map_for(&p);
        if let Repr::Table(t) = &m.repr {
            assert!(t.ws.len() >= 512, "only {} nodes", t.ws.len());
            assert!(t.ws.windows(2).all(|w| w[0] < w[1]), "nodes not sorted");
            assert!(t.rs.windows(2).all(|w| w[0] < w[1]), "r not monotone");
        } else {
            panic!("expected a table representation");
        }
    }
}
