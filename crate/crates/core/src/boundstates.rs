//! Bound states of the rectangular potential: connection matrices, the split
//! parity residuals, the scan-and-bracket solver and eigenfunctions.
//!
//! Inside the well the pair `u = ψ1 - ψ3`, `v = ψ2` obeys `u' = a v`,
//! `v' = -b u` with `a = √2(E - v2)` and `b = (E - v1)(E - v3)/(√2(E - va))`,
//! so `a b = k²`. Outside, a decaying state has `(u, v) ∝ (2E/κ, ±√2)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::model::{
    accumulation_window, cos_kernel, scaled_kernels, sin_kernel, EnergyPoint, Geometry,
    PotentialConfig, DEFAULT_PHASE_CAP, POLE_TOL, SCAN_FLOOR, SCAN_WINDOW,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn sign(&self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        }
    }
}

/// 2×2 matrix carrying `(ψ1 - ψ3, ψ2)` from the left edge to the right edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionMatrix {
    pub l11: f64,
    pub l12: f64,
    pub l21: f64,
    pub l22: f64,
    /// Interior `k²` (zero for matrices not built from a well).
    pub k2: f64,
    /// Width the matrix spans (zero for point interactions).
    pub l: f64,
}

impl ConnectionMatrix {
    pub fn new(l11: f64, l12: f64, l21: f64, l22: f64) -> Self {
        Self {
            l11,
            l12,
            l21,
            l22,
            k2: 0.0,
            l: 0.0,
        }
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    pub fn det(&self) -> f64 {
        self.l11 * self.l22 - self.l12 * self.l21
    }

    pub fn apply(&self, w: [f64; 2]) -> [f64; 2] {
        [
            self.l11 * w[0] + self.l12 * w[1],
            self.l21 * w[0] + self.l22 * w[1],
        ]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            l11: self.l11 * factor,
            l12: self.l12 * factor,
            l21: self.l21 * factor,
            l22: self.l22 * factor,
            ..*self
        }
    }
}

/// Interior coefficients `(a, b)` of the reduced system.
pub fn interior_coefficients(cfg: &PotentialConfig, e: f64) -> Result<(f64, f64)> {
    let va = cfg.va();
    if (e - va).abs() < POLE_TOL * cfg.m().max(va.abs()) {
        return Err(Error::PoleAtVa { energy: e, va });
    }
    let a = SQRT_2 * (e - cfg.v2());
    let b = (e - cfg.v1()) * (e - cfg.v3()) / (SQRT_2 * (e - va));
    Ok((a, b))
}

/// Connection matrix across an interior stretch of length `t` (negative `t` runs backwards).
///
/// Writing `λ21 = -b·s` keeps the matrix finite at `E = v2`, where `k²` and `a`
/// vanish together.
pub fn propagator(cfg: &PotentialConfig, e: f64, t: f64) -> Result<ConnectionMatrix> {
    let (a, b) = interior_coefficients(cfg, e)?;
    let k2 = a * b;
    let s = sin_kernel(k2, t);
    let c = cos_kernel(k2, t);
    Ok(ConnectionMatrix {
        l11: c,
        l12: a * s,
        l21: -b * s,
        l22: c,
        k2,
        l: t,
    })
}

pub fn connection_matrix(cfg: &PotentialConfig, geom: &Geometry, e: f64) -> Result<ConnectionMatrix> {
    propagator(cfg, e, geom.l())
}

/// Left side of `λ11 + λ22 + (κ/√2E) λ12 + (√2E/κ) λ21 = 0`.
pub fn general_bound_condition(lam: &ConnectionMatrix, e: f64, m: f64) -> Result<f64> {
    let p = EnergyPoint::new(e, m)?;
    if e.abs() < POLE_TOL * m {
        return Err(Error::ZeroEnergyPole(e));
    }
    let r = SQRT_2 * e / p.kappa;
    Ok(lam.l11 + lam.l22 + lam.l12 / r + r * lam.l21)
}

/// The two addends of each parity residual, with the continued kernels scaled
/// by `1/cosh` when `k` is imaginary.
fn residual_terms(cfg: &PotentialConfig, l: f64, e: f64, kappa: f64) -> ([f64; 2], [f64; 2]) {
    let (v1, v2, v3) = (cfg.v1(), cfg.v2(), cfg.v3());
    let q = (e - v1) * (e - v3) / (e - cfg.va());
    let k2 = (e - v2) * q;
    let (s, c) = scaled_kernels(k2, 0.5 * l);
    let plus = [kappa * (1.0 - v2 / e) * s, c];
    let minus = [kappa * c / e, -q * s];
    (plus, minus)
}

fn normalized(t: [f64; 2]) -> f64 {
    let d = t[0].abs() + t[1].abs();
    if d == 0.0 {
        0.0
    } else {
        (t[0] + t[1]) / d
    }
}

/// Parity residuals `(r_plus, r_minus)`.
///
/// `r_plus = κ(1 - v2/E) s + c` and `r_minus = κc/E - q s` with
/// `q = (E - v1)(E - v3)/(E - va)`, kernels taken at `l/2` and divided by
/// `cosh(|k| l/2)` for imaginary `k`. `r_plus` is proportional to `ψ1 - ψ3` at the
/// midpoint and `r_minus` to `ψ2` there, so their zeros are the even- and
/// odd-`ψ2` bound states.
pub fn split_residuals(cfg: &PotentialConfig, geom: &Geometry, e: f64) -> Result<(f64, f64)> {
    let p = EnergyPoint::new(e, cfg.m())?;
    if e.abs() < POLE_TOL * cfg.m() {
        return Err(Error::ZeroEnergyPole(e));
    }
    interior_coefficients(cfg, e)?;
    let (plus, minus) = residual_terms(cfg, geom.l(), e, p.kappa);
    Ok((plus[0] + plus[1], minus[0] + minus[1]))
}

/// Parity residuals divided by the sum of the magnitudes of their addends; values lie in `[-1, 1]`.
pub fn normalized_residuals(cfg: &PotentialConfig, l: f64, e: f64) -> (f64, f64) {
    let m = cfg.m();
    let kappa = ((m - e) * (m + e)).sqrt();
    let (plus, minus) = residual_terms(cfg, l, e, kappa);
    (normalized(plus), normalized(minus))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundStateSolution {
    pub energy: f64,
    pub parity: Parity,
    pub kappa: f64,
    pub rho: f64,
    pub k2: f64,
    /// Normalized parity residual at `energy`.
    pub residual: f64,
}

/// Knobs of the scan-and-bracket search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Base number of uniformly spaced energies across the gap.
    pub grid_points: usize,
    /// Largest half-phase `|k| l/2` sampled next to an accumulation point.
    pub phase_cap: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid_points: 4000,
            phase_cap: DEFAULT_PHASE_CAP,
        }
    }
}

/// Energy intervals searched for roots, in ascending order.
///
/// The gap minus `0` (the free flat band), minus `va` with its accumulation
/// window, stopping `SCAN_FLOOR·m` short of every excluded point.
pub fn scan_intervals(cfg: &PotentialConfig, l: f64, phase_cap: f64) -> Vec<(f64, f64)> {
    let m = cfg.m();
    let floor = SCAN_FLOOR * m;
    let mut holes = vec![(-floor, floor)];
    let va = cfg.va();
    if va.abs() < m {
        holes.push((va - floor, va + floor));
        if let Some((lo, hi)) = accumulation_window(cfg, l, phase_cap) {
            holes.push((lo - floor, hi + floor));
        }
    }
    holes.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::new();
    let mut start = -m + floor;
    for (lo, hi) in holes {
        if lo > start {
            out.push((start, lo.min(m - floor)));
        }
        start = start.max(hi);
    }
    if start < m - floor {
        out.push((start, m - floor));
    }
    out.retain(|(a, b)| b > a);
    out
}

fn half_phase(cfg: &PotentialConfig, l: f64, e: f64) -> f64 {
    let q = (e - cfg.v1()) * (e - cfg.v3()) / (e - cfg.va());
    let k2 = (e - cfg.v2()) * q;
    if k2 > 0.0 {
        0.5 * l * k2.sqrt()
    } else {
        0.0
    }
}

/// Sample energies for one interval: a uniform grid, approach points toward
/// both ends down to `SCAN_FLOOR`, and refinement until the half-phase moves by
/// at most π/8 between neighbours.
fn interval_grid(cfg: &PotentialConfig, l: f64, lo: f64, hi: f64, h: f64) -> Vec<f64> {
    let m = cfg.m();
    let mut pts = vec![lo, hi];
    let n = ((hi - lo) / h).ceil() as usize;
    for i in 1..n {
        pts.push(lo + (hi - lo) * i as f64 / n as f64);
    }
    let mut d = SCAN_FLOOR * m;
    while d < SCAN_WINDOW * m * 10.0 && 2.0 * d < hi - lo {
        pts.push(lo + d);
        pts.push(hi - d);
        d *= 10.0;
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let limit = std::f64::consts::PI / 8.0;
    let mut out = Vec::with_capacity(pts.len());
    let mut stack: Vec<(f64, f64, f64, f64)> = Vec::new();
    let phases: Vec<f64> = pts.iter().map(|&e| half_phase(cfg, l, e)).collect();
    out.push(pts[0]);
    for i in 1..pts.len() {
        stack.push((pts[i - 1], phases[i - 1], pts[i], phases[i]));
        while let Some((a, pa, b, pb)) = stack.pop() {
            let jump = (pb - pa).abs();
            if jump > limit && b - a > 4.0 * f64::EPSILON * m {
                let parts = ((jump / limit).ceil() as usize).clamp(2, 64);
                let mut prev = (a, pa);
                let mut cells = Vec::with_capacity(parts);
                for j in 1..=parts {
                    let e = if j == parts {
                        b
                    } else {
                        a + (b - a) * j as f64 / parts as f64
                    };
                    let p = if j == parts { pb } else { half_phase(cfg, l, e) };
                    cells.push((prev.0, prev.1, e, p));
                    prev = (e, p);
                }
                stack.extend(cells.into_iter().rev());
            } else {
                out.push(b);
            }
        }
    }
    out
}

/// Root of `f` on `[a, b]` with `f(a)·f(b) < 0`, bisected to machine precision
/// and finished with two guarded secant steps.
fn bracket_root<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    let mut fb = f(b);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    let (mut best, mut fbest) = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    for _ in 0..2 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !(x2 >= a && x2 <= b) {
            break;
        }
        let f2 = f(x2);
        if f2.abs() < fbest.abs() {
            best = x2;
            fbest = f2;
        }
        (x0, f0, x1, f1) = (x1, f1, x2, f2);
    }
    best
}

/// Golden-section search for the minimum of `|f|` on `[a, b]`.
fn min_abs<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c).abs(), f(d).abs());
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c).abs();
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d).abs();
        }
        if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
    }
    0.5 * (a + b)
}

/// Brackets of sign changes in sampled values, including pairs hidden
/// between samples next to a local minimum of `|f|`.
fn brackets<F: Fn(f64) -> f64>(f: &F, xs: &[f64], ys: &[f64]) -> (Vec<(f64, f64)>, Vec<f64>) {
    let mut out = Vec::new();
    let mut exact = Vec::new();
    for i in 0..xs.len() {
        if ys[i] == 0.0 {
            exact.push(xs[i]);
            continue;
        }
        if i + 1 < xs.len() && ys[i + 1] != 0.0 && (ys[i] < 0.0) != (ys[i + 1] < 0.0) {
            out.push((xs[i], xs[i + 1]));
        }
        if i >= 1 && i + 1 < xs.len() {
            let (l, c, r) = (ys[i - 1], ys[i], ys[i + 1]);
            let same = (l < 0.0) == (c < 0.0) && (c < 0.0) == (r < 0.0);
            if same && c.abs() < l.abs() && c.abs() <= r.abs() {
                let xm = min_abs(f, xs[i - 1], xs[i + 1]);
                let fm = f(xm);
                if fm == 0.0 {
                    exact.push(xm);
                } else if (fm < 0.0) != (c < 0.0) {
                    out.push((xs[i - 1], xm));
                    out.push((xm, xs[i + 1]));
                }
            }
        }
    }
    (out, exact)
}

fn make_solution(cfg: &PotentialConfig, l: f64, e: f64, parity: Parity) -> Option<BoundStateSolution> {
    let p = EnergyPoint::new(e, cfg.m()).ok()?;
    let (rp, rm) = normalized_residuals(cfg, l, e);
    let residual = match parity {
        Parity::Plus => rp,
        Parity::Minus => rm,
    };
    let k2 = (e - cfg.v1()) * (e - cfg.v2()) * (e - cfg.v3()) / (e - cfg.va());
    Some(BoundStateSolution {
        energy: e,
        parity,
        kappa: p.kappa,
        rho: p.rho,
        k2,
        residual: residual.abs(),
    })
}

/// Whether `sol` still solves its parity condition: a normalized residual below
/// `1e-10`, or, where the residual is too steep for any double to reach that,
/// a sign change within 16 ulps.
pub fn revalidate(cfg: &PotentialConfig, l: f64, sol: &BoundStateSolution) -> bool {
    let r = |e: f64| {
        let (p, q) = normalized_residuals(cfg, l, e);
        match sol.parity {
            Parity::Plus => p,
            Parity::Minus => q,
        }
    };
    let e = sol.energy;
    if r(e).abs() < 1e-10 {
        return true;
    }
    let d = 16.0 * f64::EPSILON * e.abs();
    r(e - d) * r(e + d) <= 0.0
}

pub fn find_bound_states(cfg: &PotentialConfig, geom: &Geometry) -> Vec<BoundStateSolution> {
    find_bound_states_with(cfg, geom, &SolverOptions::default())
}

/// All bound states in the gap, sorted by energy.
pub fn find_bound_states_with(
    cfg: &PotentialConfig,
    geom: &Geometry,
    opts: &SolverOptions,
) -> Vec<BoundStateSolution> {
    let l = geom.l();
    let m = cfg.m();
    let h = 2.0 * m / opts.grid_points.max(16) as f64;
    let intervals = scan_intervals(cfg, l, opts.phase_cap);

    let mut found: Vec<BoundStateSolution> = intervals
        .par_iter()
        .flat_map_iter(|&(lo, hi)| {
            let xs = interval_grid(cfg, l, lo, hi, h);
            let ys: Vec<(f64, f64)> = xs.iter().map(|&e| normalized_residuals(cfg, l, e)).collect();
            let mut sols = Vec::new();
            for parity in [Parity::Plus, Parity::Minus] {
                let f = |e: f64| {
                    let (p, q) = normalized_residuals(cfg, l, e);
                    if parity == Parity::Plus {
                        p
                    } else {
                        q
                    }
                };
                let vals: Vec<f64> = ys
                    .iter()
                    .map(|&(p, q)| if parity == Parity::Plus { p } else { q })
                    .collect();
                let (brs, exact) = brackets(&f, &xs, &vals);
                let roots = brs
                    .into_iter()
                    .map(|(a, b)| bracket_root(f, a, b))
                    .chain(exact);
                sols.extend(roots.filter_map(|e| make_solution(cfg, l, e, parity)));
            }
            sols
        })
        .collect();

    found.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.parity.cmp(&b.parity)));
    found.dedup_by(|b, a| a.parity == b.parity && (a.energy - b.energy).abs() <= 1e-11 * m);
    found
}

/// Eigenfunction normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `max |ψ2| = 1` over the requested grid, positive at the peak.
    PeakPsi2,
    /// Unit norm by trapezoid quadrature over the requested grid.
    UnitL2,
    /// Left exterior tail `(ρ⁻¹, √2, ρ) e^{κ(x - x1)}`.
    UnitExterior,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveFunctionSample {
    pub x: f64,
    pub psi1: f64,
    pub psi2: f64,
    pub psi3: f64,
}

impl WaveFunctionSample {
    pub fn spinor(&self) -> [Complex64; 3] {
        [
            Complex64::new(self.psi1, 0.0),
            Complex64::new(self.psi2, 0.0),
            Complex64::new(self.psi3, 0.0),
        ]
    }
}

/// One-sided limits of the spinor at both edges, in the unit-exterior normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeLimits {
    pub left_outer: [f64; 3],
    pub left_inner: [f64; 3],
    pub right_inner: [f64; 3],
    pub right_outer: [f64; 3],
}

/// Evaluates a bound state with left tail amplitude 1.
struct Shape {
    e: f64,
    kappa: f64,
    rho: f64,
    v1: f64,
    v3: f64,
    va: f64,
    x1: f64,
    x2: f64,
    a: f64,
    right_amp: f64,
    cfg: PotentialConfig,
}

impl Shape {
    fn new(sol: &BoundStateSolution, cfg: &PotentialConfig, geom: &Geometry) -> Result<Self> {
        let p = EnergyPoint::new(sol.energy, cfg.m())
            .map_err(|_| Error::OutOfDomainSolution(sol.energy))?;
        let e = sol.energy;
        // The well is symmetric, so parity fixes the right tail exactly. Matching
        // at the midpoint instead fails for edge-localized pairs whose
        // splitting is below rounding.
        let right_amp = -sol.parity.sign();
        Ok(Self {
            e,
            kappa: p.kappa,
            rho: p.rho,
            v1: cfg.v1(),
            v3: cfg.v3(),
            va: cfg.va(),
            x1: geom.x1(),
            x2: geom.x2(),
            a: geom.a(),
            right_amp,
            cfg: *cfg,
        })
    }

    fn interior(&self, w: [f64; 2]) -> [f64; 3] {
        let d = 2.0 * (self.e - self.va);
        [w[0] * (self.e - self.v3) / d, w[1], -w[0] * (self.e - self.v1) / d]
    }

    fn left_vector(&self) -> [f64; 2] {
        [2.0 * self.e / self.kappa, SQRT_2]
    }

    fn right_vector(&self) -> [f64; 2] {
        [
            self.right_amp * 2.0 * self.e / self.kappa,
            -self.right_amp * SQRT_2,
        ]
    }

    fn at(&self, x: f64) -> Result<[f64; 3]> {
        let r = self.rho;
        if x < self.x1 {
            let f = (self.kappa * (x - self.x1)).exp();
            Ok([f / r, SQRT_2 * f, r * f])
        } else if x > self.x2 {
            let f = self.right_amp * (-self.kappa * (x - self.x2)).exp();
            Ok([f / r, -SQRT_2 * f, r * f])
        } else if x <= self.a {
            let w = propagator(&self.cfg, self.e, x - self.x1)?.apply(self.left_vector());
            Ok(self.interior(w))
        } else {
            let w = propagator(&self.cfg, self.e, x - self.x2)?.apply(self.right_vector());
            Ok(self.interior(w))
        }
    }

    fn edges(&self) -> EdgeLimits {
        let r = self.rho;
        let ra = self.right_amp;
        EdgeLimits {
            left_outer: [1.0 / r, SQRT_2, r],
            left_inner: self.interior(self.left_vector()),
            right_inner: self.interior(self.right_vector()),
            right_outer: [ra / r, -SQRT_2 * ra, ra * r],
        }
    }
}

/// Bound-state spinor on `xs`: exterior tails, interior propagated from each
/// edge to the midpoint. Points on an edge take the interior value.
pub fn eigenfunction(
    sol: &BoundStateSolution,
    cfg: &PotentialConfig,
    geom: &Geometry,
    xs: &[f64],
    norm: Normalization,
) -> Result<Vec<WaveFunctionSample>> {
    let shape = Shape::new(sol, cfg, geom)?;
    let mut out = xs
        .iter()
        .map(|&x| {
            shape.at(x).map(|p| WaveFunctionSample {
                x,
                psi1: p[0],
                psi2: p[1],
                psi3: p[2],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let factor = match norm {
        Normalization::UnitExterior => 1.0,
        Normalization::PeakPsi2 => {
            let peak = out
                .iter()
                .map(|s| s.psi2)
                .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
            if peak == 0.0 {
                1.0
            } else {
                1.0 / peak
            }
        }
        Normalization::UnitL2 => {
            let density: Vec<f64> = out
                .iter()
                .map(|s| s.psi1 * s.psi1 + s.psi2 * s.psi2 + s.psi3 * s.psi3)
                .collect();
            let integral: f64 = out
                .windows(2)
                .zip(density.windows(2))
                .map(|(w, d)| 0.5 * (w[1].x - w[0].x) * (d[0] + d[1]))
                .sum();
            if integral > 0.0 {
                1.0 / integral.sqrt()
            } else {
                1.0
            }
        }
    };
    for s in &mut out {
        s.psi1 *= factor;
        s.psi2 *= factor;
        s.psi3 *= factor;
    }
    Ok(out)
}

/// One-sided spinor values at both edges, unit-exterior normalization.
pub fn edge_limits(sol: &BoundStateSolution, cfg: &PotentialConfig, geom: &Geometry) -> Result<EdgeLimits> {
    Ok(Shape::new(sol, cfg, geom)?.edges())
}

/// Jumps `ψ1(x - 0) - ψ1(x + 0)` at `x1` and `x2` (equal to those of `ψ3`), unit-exterior normalization.
///
/// Closed form `μ/κ` at `x1` with `μ = m - E(v1 - v3)/(2E - v1 - v3)`; at `x2` the
/// parity sign multiplies it.
pub fn discontinuities(sol: &BoundStateSolution, cfg: &PotentialConfig, _geom: &Geometry) -> Result<(f64, f64)> {
    let e = sol.energy;
    let p = EnergyPoint::new(e, cfg.m()).map_err(|_| Error::OutOfDomainSolution(e))?;
    let d = 2.0 * e - cfg.v1() - cfg.v3();
    if d.abs() < POLE_TOL * cfg.m().max(cfg.va().abs()) {
        return Err(Error::MuPole(e));
    }
    let mu = cfg.m() - e * (cfg.v1() - cfg.v3()) / d;
    let jump = mu / p.kappa;
    Ok((jump, sol.parity.sign() * jump))
}

/// Net current `ψ† S_y ψ = -√2 Im(ψ2* (ψ1 - ψ3))`.
pub fn current(psi: &[Complex64; 3]) -> f64 {
    -SQRT_2 * (psi[1].conj() * (psi[0] - psi[2])).im
}
