//! Independent finite-difference cross-check of the analytic spectrum.
//!
//! Nothing here touches the quantization condition or the special-function
//! stack: the Hamiltonian -d^2/dr^2 + V(r) is discretized with the 3-point
//! stencil on a uniform Dirichlet grid, eigenvalues come from Sturm-sequence
//! bisection, and convergence is certified by the observed O(step^2) slope
//! across three nested grids. The box is sized by walking the potential
//! outward until the WKB tail action exceeds a fixed budget, so domain
//! truncation contributes a grid-independent shift that cancels in the
//! slope estimate and is negligible against the comparison tolerance.

use crate::error::{Error, Result};
use crate::potential::CoordinateMap;
use crate::spectrum::{bound_spectrum, EnergyLevel};

/// Uniform grid with `n` interior nodes and Dirichlet walls at both ends.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n as f64 + 1.0)
    }
    /// i-th interior node, i in 0..n.
    pub fn node(&self, i: usize) -> f64 {
        self.r_min + (i as f64 + 1.0) * self.spacing()
    }
}

/// Symmetric tridiagonal matrix: `diag` (n) and `off` (n-1).
#[derive(Debug, Clone)]
pub struct TridiagonalSystem {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl TridiagonalSystem {
    /// Solve (T - shift I) x = rhs by the Thomas recursion. Errors when a
    /// pivot collapses (shift too close to an eigenvalue for this grid).
    pub fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.diag.len();
        if rhs.len() != n || n == 0 {
            return Err(Error::Domain("rhs length must match the matrix".into()));
        }
        let scale = self.diag.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        let mut sup = vec![0.0; n];
        let mut x = vec![0.0; n];
        let mut piv = self.diag[0] - shift;
        if piv.abs() < 1e-14 * scale {
            return Err(Error::Numerical("vanishing pivot in tridiagonal solve".into()));
        }
        sup[0] = if n > 1 { self.off[0] / piv } else { 0.0 };
        x[0] = rhs[0] / piv;
        for i in 1..n {
            piv = (self.diag[i] - shift) - self.off[i - 1] * sup[i - 1];
            if piv.abs() < 1e-14 * scale {
                return Err(Error::Numerical("vanishing pivot in tridiagonal solve".into()));
            }
            if i < n - 1 {
                sup[i] = self.off[i] / piv;
            }
            x[i] = (rhs[i] - self.off[i - 1] * x[i - 1]) / piv;
        }
        for i in (0..n - 1).rev() {
            x[i] -= sup[i] * x[i + 1];
        }
        Ok(x)
    }

    /// Number of eigenvalues strictly below `lambda` (Sturm sequence via the
    /// LDL^T pivots).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let mut count = 0usize;
        let mut d = self.diag[0] - lambda;
        if d == 0.0 {
            d = -f64::MIN_POSITIVE;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            d = (self.diag[i] - lambda) - self.off[i - 1] * self.off[i - 1] / d;
            if d == 0.0 {
                d = -f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues by bisection on the Sturm count.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<f64> {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.off[i - 1].abs();
            }
            if i < n - 1 {
                radius += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        let mut out = Vec::with_capacity(k);
        for j in 0..k.min(n) {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..90 {
                let mid = 0.5 * (a + b);
                if b - a <= 1e-12 * (1.0 + mid.abs()) {
                    break;
                }
                if self.sturm_count(mid) >= j + 1 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            out.push(0.5 * (a + b));
        }
        out
    }
}

/// Discretized -d^2/dr^2 + V with `v` holding V at the interior nodes.
pub fn fd_hamiltonian(grid: &Grid, v: &[f64]) -> Result<TridiagonalSystem> {
    if v.len() != grid.n || grid.n < 2 {
        return Err(Error::Domain(format!(
            "need V at each of the {} interior nodes, got {}",
            grid.n,
            v.len()
        )));
    }
    let inv2 = 1.0 / (grid.spacing() * grid.spacing());
    Ok(TridiagonalSystem {
        diag: v.iter().map(|&vi| 2.0 * inv2 + vi).collect(),
        off: vec![-inv2; grid.n - 1],
    })
}

/// Behavioural knobs for the spectrum comparison.
#[derive(Debug, Clone, Copy)]
pub struct FdOptions {
    /// target spacing of the coarsest of the three grids
    pub base_step: f64,
    /// compare at most this many levels from the bottom of the tower
    pub max_levels: usize,
    /// skip levels closer than this to a finite potential asymptote
    /// (their tails would force an impractically large box)
    pub edge_margin: f64,
    /// WKB action accumulated past the outer turning point before the wall
    pub tail_action: f64,
    /// hard cap on |r| while walking the box outward
    pub walk_cap: f64,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions {
            base_step: 0.02,
            max_levels: 4,
            edge_margin: 0.05,
            tail_action: 7.5,
            walk_cap: 500.0,
        }
    }
}

/// One analytic level against its finite-difference estimates.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonRow {
    pub n: u32,
    pub analytic: f64,
    /// eigenvalue on the coarse / medium / fine grid
    pub fd: [f64; 3],
    /// Richardson extrapolation from the two finest grids
    pub extrapolated: f64,
    /// log2 of the ratio of successive differences; 2 for a clean stencil
    pub slope: f64,
    pub diff: f64,
    pub within: bool,
}

/// Full outcome of one comparison run.
#[derive(Debug, Clone)]
pub struct SpectrumComparison {
    pub rows: Vec<ComparisonRow>,
    /// analytic level indices excluded (threshold states, edge-hugging tails)
    pub excluded: Vec<u32>,
    pub r_min: f64,
    pub r_max: f64,
    /// interior nodes of the finest grid
    pub finest_n: usize,
}

impl SpectrumComparison {
    pub fn all_within(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.within)
    }
    pub fn slopes_in(&self, lo: f64, hi: f64) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.slope >= lo && r.slope <= hi)
    }
}

/// Walk outward from `start` in direction `dir` until the tail action past
/// the outermost classical turning point exceeds the budget.
fn walk_wall(
    map: &CoordinateMap,
    eps_top: f64,
    start: f64,
    dir: f64,
    opts: &FdOptions,
) -> Result<f64> {
    let step = 0.25;
    let mut r = start;
    let mut action = 0.0;
    while r.abs() <= opts.walk_cap {
        r += dir * step;
        let v = match map.potential_at_r(r) {
            Ok(v) => v,
            Err(e) => {
                return Err(Error::Domain(format!(
                    "potential not evaluable while sizing the box at r = {r}: {e}"
                )))
            }
        };
        if v <= eps_top {
            action = 0.0; // still classically allowed: restart the tail
        } else {
            action += step * (v - eps_top).sqrt();
            if action >= opts.tail_action {
                return Ok(r);
            }
        }
    }
    Err(Error::Domain(format!(
        "box wall not found within |r| <= {}; level too close to a continuum edge",
        opts.walk_cap
    )))
}

/// Dirichlet box large enough to hold every bound state up to `eps_top`.
pub fn bound_state_grid(map: &CoordinateMap, eps_top: f64, opts: &FdOptions) -> Result<Grid> {
    let params = map.params();
    let r_max = walk_wall(map, eps_top, 0.0, 1.0, opts)?;
    let r_min = if params.c0 == 0.0 {
        // chart opens at r = 0 with a wall (or a regular Dirichlet point)
        0.0
    } else {
        walk_wall(map, eps_top, 0.0, -1.0, opts)?
    };
    let n = ((r_max - r_min) / opts.base_step).ceil() as usize;
    if n < 16 {
        return Err(Error::Domain("box degenerated to fewer than 16 nodes".into()));
    }
    Ok(Grid { r_min, r_max, n })
}

/// Compare the analytic tower (levels 0..=n_max) against finite differences
/// on three nested grids. Threshold levels and levels hugging a finite
/// asymptote are excluded (reported in `excluded`); the remaining prefix of
/// the tower maps 1:1 onto the lowest finite-difference eigenvalues.
pub fn compare_spectrum(
    map: &CoordinateMap,
    n_max: u32,
    opts: &FdOptions,
) -> Result<SpectrumComparison> {
    let params = map.params();
    let tower = bound_spectrum(params, n_max)?;
    let mut included: Vec<&EnergyLevel> = Vec::new();
    let mut excluded = Vec::new();
    for level in &tower {
        let mut keep = !level.threshold && included.len() < opts.max_levels;
        if params.c0 != 0.0 && params.eta / params.c0 - level.epsilon < opts.edge_margin {
            keep = false;
        }
        if params.sigma2 != 0.0
            && params.g2 / params.sigma2 - level.epsilon < opts.edge_margin
        {
            keep = false;
        }
        if keep {
            included.push(level);
        } else {
            excluded.push(level.n);
        }
    }
    // only a contiguous prefix keeps the index correspondence with the
    // lowest FD eigenvalues
    while let Some(last) = included.last() {
        if last.n as usize == included.len() - 1 {
            break;
        }
        excluded.push(last.n);
        included.pop();
    }
    if included.is_empty() {
        return Err(Error::Domain(
            "no levels left to compare after threshold/edge exclusions".into(),
        ));
    }

    let eps_top = included.last().unwrap().epsilon;
    let base = bound_state_grid(map, eps_top, opts)?;
    // nested grids: spacing d, d/2, d/4 share nodes with the finest
    let grids = [
        Grid { n: base.n, ..base },
        Grid { n: 2 * base.n + 1, ..base },
        Grid { n: 4 * base.n + 3, ..base },
    ];
    let fine = &grids[2];
    let mut v_fine = Vec::with_capacity(fine.n);
    for i in 0..fine.n {
        v_fine.push(map.potential_at_r(fine.node(i))?);
    }
    let mut eigs: Vec<Vec<f64>> = Vec::with_capacity(3);
    for (gi, g) in grids.iter().enumerate() {
        let stride = 1usize << (2 - gi); // 4, 2, 1 on the shared fine lattice
        let v: Vec<f64> = (0..g.n).map(|i| v_fine[stride * (i + 1) - 1]).collect();
        let h = fd_hamiltonian(g, &v)?;
        eigs.push(h.lowest_eigenvalues(included.len()));
    }

    let mut rows = Vec::with_capacity(included.len());
    for (m, level) in included.iter().enumerate() {
        let fd = [eigs[0][m], eigs[1][m], eigs[2][m]];
        let d1 = fd[0] - fd[1];
        let d2 = fd[1] - fd[2];
        let slope = if d1 * d2 > 0.0 { (d1 / d2).abs().log2() } else { f64::NAN };
        let extrapolated = fd[2] + d2 / 3.0;
        let diff = (extrapolated - level.epsilon).abs();
        let within = diff <= 1e-3f64.max(1e-9 + 4.0 * (d2 / 3.0).abs());
        rows.push(ComparisonRow {
            n: level.n,
            analytic: level.epsilon,
            fd,
            extrapolated,
            slope,
            diff,
            within,
        });
    }
    excluded.sort_unstable();
    Ok(SpectrumComparison {
        rows,
        excluded,
        r_min: base.r_min,
        r_max: base.r_max,
        finest_n: fine.n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{MapConfig, NatanzonParams};

    fn build(g2: f64, g1: f64, eta: f64, s2: f64, s1: f64, c0: f64) -> CoordinateMap {
        let p = NatanzonParams::new(g2, g1, eta, s2, s1, c0).unwrap();
        CoordinateMap::build(&p, &MapConfig::default()).unwrap()
    }

    #[test]
    fn thomas_solve_round_trip() {
        let t = TridiagonalSystem {
            diag: vec![4.0, 5.0, 6.0, 5.0, 4.0],
            off: vec![-1.0, -2.0, -2.0, -1.0],
        };
        let x_true = [1.0, -2.0, 0.5, 3.0, -1.0];
        let shift = 0.7;
        let mut rhs = vec![0.0; 5];
        for i in 0..5 {
            rhs[i] = (t.diag[i] - shift) * x_true[i];
            if i > 0 {
                rhs[i] += t.off[i - 1] * x_true[i - 1];
            }
            if i < 4 {
                rhs[i] += t.off[i] * x_true[i + 1];
            }
        }
        let x = t.solve_shifted(shift, &rhs).unwrap();
        for i in 0..5 {
            assert!((x[i] - x_true[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn sturm_bisection_matches_free_particle_box() {
        // V = 0 on [0, L]: lambda_j = (2 - 2 cos(j pi / (n+1))) / step^2
        let grid = Grid { r_min: 0.0, r_max: 3.0, n: 199 };
        let h = fd_hamiltonian(&grid, &vec![0.0; grid.n]).unwrap();
        let step = grid.spacing();
        let eigs = h.lowest_eigenvalues(3);
        for (j, got) in eigs.iter().enumerate() {
            let arg = (j as f64 + 1.0) * std::f64::consts::PI / (grid.n as f64 + 1.0);
            let want = (2.0 - 2.0 * arg.cos()) / (step * step);
            assert!(
                (got - want).abs() < 1e-9 * want,
                "j = {j}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn sturm_count_is_monotone() {
        let grid = Grid { r_min: 0.0, r_max: 3.0, n: 50 };
        let h = fd_hamiltonian(&grid, &vec![0.0; grid.n]).unwrap();
        assert_eq!(h.sturm_count(-1.0), 0);
        assert_eq!(h.sturm_count(1e9), 50);
        assert!(h.sturm_count(50.0) <= h.sturm_count(200.0));
    }

    #[test]
    fn oscillator_spectrum_confirmed() {
        let map = build(1.0, 0.0, 0.25, 0.0, 1.0, 0.0);
        let out = compare_spectrum(&map, 3, &FdOptions::default()).unwrap();
        assert_eq!(out.rows.len(), 4);
        for row in &out.rows {
            assert!(row.within, "{row:?}");
            assert!(row.slope > 1.7 && row.slope < 2.3, "{row:?}");
            assert!(row.diff < 1e-3, "{row:?}");
        }
    }

    #[test]
    fn morse_spectrum_confirmed_with_threshold_excluded() {
        let map = build(1.0, -6.0, 0.0, 0.0, 0.0, 1.0);
        let out = compare_spectrum(&map, 3, &FdOptions::default()).unwrap();
        assert_eq!(out.rows.len(), 1, "{out:?}");
        assert!(out.excluded.contains(&1), "threshold level must be excluded");
        assert!((out.rows[0].analytic + 4.0).abs() < 1e-10);
        assert!(out.rows[0].within && out.rows[0].slope > 1.7 && out.rows[0].slope < 2.3);
    }

    #[test]
    fn coulomb_spectrum_confirmed() {
        let map = build(0.0, -2.0, 1.0, 1.0, 0.0, 0.0);
        let opts = FdOptions { base_step: 0.02, max_levels: 2, ..FdOptions::default() };
        let out = compare_spectrum(&map, 3, &opts).unwrap();
        assert!(
            !out.rows.is_empty() && out.rows.len() <= 2,
            "edge margin keeps the deep prefix: {out:?}"
        );
        for row in &out.rows {
            assert!(row.within, "{row:?}");
            assert!(row.slope > 1.7 && row.slope < 2.3, "{row:?}");
        }
    }

    #[test]
    fn general_parameters_confirmed() {
        let map = build(1.0, -8.0, 0.5, 1.0, 1.0, 1.0);
        let out = compare_spectrum(&map, 3, &FdOptions::default()).unwrap();
        assert!(!out.rows.is_empty());
        for row in &out.rows {
            assert!(row.within, "{row:?}");
            assert!(row.slope > 1.7 && row.slope < 2.3, "{row:?}");
        }
    }
}
