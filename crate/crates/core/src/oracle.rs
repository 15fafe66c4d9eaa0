//! Independent bound-state finder: fixed-step RK4 on the reduced `(u, v)`
//! system, matched against the decaying exterior rays. Uses no closed-form
//! propagator.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{accumulation_window, EnergyPoint, Geometry, PotentialConfig, POLE_TOL, SCAN_FLOOR};

/// Largest `|k| h` taken by one RK4 step.
const MAX_PHASE_STEP: f64 = 0.005;

/// Ceiling on the step count; only reached on the evanescent side of `va`,
/// where the growing mode dominates long before.
const MAX_STEPS: usize = 20_000;

/// `(ψ1 - ψ3, ψ2)` at one position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedState {
    pub u: f64,
    pub v: f64,
}

impl ReducedState {
    fn norm(&self) -> f64 {
        self.u.hypot(self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Minimum number of RK4 steps per integration.
    pub steps: usize,
    /// Base number of uniformly spaced energies across the gap.
    pub grid_points: usize,
    /// Largest half-phase sampled next to an accumulation point.
    pub phase_cap: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            steps: 2000,
            grid_points: 4000,
            phase_cap: crate::model::DEFAULT_PHASE_CAP,
        }
    }
}

/// Coefficients of `u' = a v`, `v' = -b u`.
fn coefficients(cfg: &PotentialConfig, e: f64) -> Result<(f64, f64)> {
    let d = 2.0 * e - cfg.v1() - cfg.v3();
    if d.abs() < 2.0 * POLE_TOL * cfg.m().max(cfg.va().abs()) {
        return Err(Error::SPole(e));
    }
    let a = SQRT_2 * (e - cfg.v2());
    let b = SQRT_2 * (e - cfg.v1()) * (e - cfg.v3()) / d;
    Ok((a, b))
}

/// Integrates over length `len`, rescaling to unit norm along the way. Only the
/// direction of the result is meaningful.
fn integrate(a: f64, b: f64, start: ReducedState, len: f64, min_steps: usize) -> ReducedState {
    let k = (a * b).abs().sqrt();
    let wanted = (k * len / MAX_PHASE_STEP).ceil() as usize;
    let n = wanted.clamp(min_steps.max(1), MAX_STEPS.max(min_steps));
    let h = len / n as f64;
    let f = |s: ReducedState| ReducedState { u: a * s.v, v: -b * s.u };
    let mut y = start;
    for i in 0..n {
        let k1 = f(y);
        let k2 = f(ReducedState { u: y.u + 0.5 * h * k1.u, v: y.v + 0.5 * h * k1.v });
        let k3 = f(ReducedState { u: y.u + 0.5 * h * k2.u, v: y.v + 0.5 * h * k2.v });
        let k4 = f(ReducedState { u: y.u + h * k3.u, v: y.v + h * k3.v });
        y.u += h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
        y.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
        if i % 32 == 31 {
            let r = y.norm();
            y.u /= r;
            y.v /= r;
        }
    }
    let r = y.norm();
    ReducedState { u: y.u / r, v: y.v / r }
}

fn left_ray(e: f64, kappa: f64) -> ReducedState {
    let s = ReducedState { u: 2.0 * e, v: SQRT_2 * kappa };
    let r = s.norm();
    ReducedState { u: s.u / r, v: s.v / r }
}

/// Mismatch between the left-launched solution at `x2` and the decaying right
/// ray `(2E/κ, -√2)`, both taken as unit vectors; zero exactly at a bound state.
pub fn shoot(cfg: &PotentialConfig, geom: &Geometry, e: f64) -> Result<f64> {
    shoot_with(cfg, geom, e, OracleOptions::default().steps)
}

pub fn shoot_with(cfg: &PotentialConfig, geom: &Geometry, e: f64, steps: usize) -> Result<f64> {
    let p = EnergyPoint::new(e, cfg.m())?;
    let (a, b) = coefficients(cfg, e)?;
    let end = integrate(a, b, left_ray(e, p.kappa), geom.l(), steps);
    let ray = left_ray(e, p.kappa);
    // Right ray is the mirror image (u, -v) of the left one.
    Ok(end.u * (-ray.v) - end.v * ray.u)
}

/// Left-launched unit state at the midpoint.
///
/// The well is mirror symmetric and `(u, v) -> (u, -v)` maps solutions onto
/// solutions, so the `x2` mismatch vanishes exactly when `u` or `v` does here.
/// Tracking the two separately keeps nearly degenerate pairs apart.
pub fn shoot_midpoint(cfg: &PotentialConfig, geom: &Geometry, e: f64, steps: usize) -> Result<ReducedState> {
    let p = EnergyPoint::new(e, cfg.m())?;
    let (a, b) = coefficients(cfg, e)?;
    Ok(integrate(a, b, left_ray(e, p.kappa), 0.5 * geom.l(), steps))
}

/// Scan intervals: the gap minus `0`, `va` and the accumulation window beside it.
fn domain(cfg: &PotentialConfig, l: f64, phase_cap: f64) -> Vec<(f64, f64)> {
    let m = cfg.m();
    let eps = SCAN_FLOOR * m;
    let mut cuts = vec![(-eps, eps)];
    let va = cfg.va();
    if va.abs() < m {
        let (lo, hi) = accumulation_window(cfg, l, phase_cap).unwrap_or((va, va));
        cuts.push((lo.min(va) - eps, hi.max(va) + eps));
    }
    cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = Vec::new();
    let mut lo = -m + eps;
    for (a, b) in cuts {
        if a > lo {
            out.push((lo, a.min(m - eps)));
        }
        lo = lo.max(b);
    }
    if lo < m - eps {
        out.push((lo, m - eps));
    }
    out
}

fn half_phase(cfg: &PotentialConfig, l: f64, e: f64) -> f64 {
    match coefficients(cfg, e) {
        Ok((a, b)) if a * b > 0.0 => 0.5 * l * (a * b).sqrt(),
        _ => 0.0,
    }
}

/// Samples: uniform, log-spaced toward both ends, and subdivided wherever the
/// interior phase advances by more than π/8.
fn samples(cfg: &PotentialConfig, l: f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let m = cfg.m();
    let mut base: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    for d in [1e-10, 1e-9, 1e-8, 1e-7, 1e-6] {
        if 2.0 * d * m < hi - lo {
            base.push(lo + d * m);
            base.push(hi - d * m);
        }
    }
    base.sort_by(f64::total_cmp);
    base.dedup();
    let mut out = vec![base[0]];
    for w in base.windows(2) {
        refine(cfg, l, (w[0], half_phase(cfg, l, w[0])), (w[1], half_phase(cfg, l, w[1])), &mut out);
    }
    out
}

/// Appends the points of `(a, b]`, halving cells whose phase step exceeds π/8.
fn refine(cfg: &PotentialConfig, l: f64, a: (f64, f64), b: (f64, f64), out: &mut Vec<f64>) {
    if (b.1 - a.1).abs() > PI / 8.0 && b.0 - a.0 > 4.0 * f64::EPSILON * b.0.abs().max(cfg.m()) {
        let c = 0.5 * (a.0 + b.0);
        let mid = (c, half_phase(cfg, l, c));
        refine(cfg, l, a, mid, out);
        refine(cfg, l, mid, b, out);
    } else {
        out.push(b.0);
    }
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    loop {
        let c = 0.5 * (a + b);
        if c <= a || c >= b {
            return c;
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if (fc > 0.0) == (fa > 0.0) {
            a = c;
        } else {
            b = c;
        }
    }
}

/// Golden-section minimizer of `|f|`.
fn golden<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (3.0 - 5f64.sqrt());
    let mut x1 = a + r * (b - a);
    let mut x2 = b - r * (b - a);
    let (mut f1, mut f2) = (f(x1).abs(), f(x2).abs());
    while b - a > 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300) {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + r * (b - a);
            f1 = f(x1).abs();
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - r * (b - a);
            f2 = f(x2).abs();
        }
    }
    0.5 * (a + b)
}

fn roots_of<F: Fn(f64) -> f64>(f: &F, xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..xs.len() {
        if ys[i] == 0.0 {
            out.push(xs[i]);
            continue;
        }
        if i + 1 < xs.len() && ys[i + 1] != 0.0 && (ys[i] > 0.0) != (ys[i + 1] > 0.0) {
            out.push(bisect(f, xs[i], xs[i + 1]));
        }
        // A same-sign dip may hide two close roots.
        if i > 0 && i + 1 < xs.len() {
            let (l, c, r) = (ys[i - 1], ys[i], ys[i + 1]);
            if (l > 0.0) == (c > 0.0) && (c > 0.0) == (r > 0.0) && c.abs() < l.abs() && c.abs() <= r.abs() {
                let xm = golden(f, xs[i - 1], xs[i + 1]);
                let fm = f(xm);
                if fm == 0.0 {
                    out.push(xm);
                } else if (fm > 0.0) != (c > 0.0) {
                    out.push(bisect(f, xs[i - 1], xm));
                    out.push(bisect(f, xm, xs[i + 1]));
                }
            }
        }
    }
    out
}

pub fn oracle_bound_states(cfg: &PotentialConfig, geom: &Geometry) -> Vec<f64> {
    oracle_bound_states_with(cfg, geom, &OracleOptions::default())
}

/// Bound-state energies from sign changes of the midpoint components.
pub fn oracle_bound_states_with(cfg: &PotentialConfig, geom: &Geometry, opts: &OracleOptions) -> Vec<f64> {
    let l = geom.l();
    let m = cfg.m();
    let mut found = Vec::new();
    for (lo, hi) in domain(cfg, l, opts.phase_cap) {
        let n = (((hi - lo) / (2.0 * m)) * opts.grid_points as f64).ceil().max(8.0) as usize;
        let xs = samples(cfg, l, lo, hi, n);
        let states: Vec<ReducedState> = xs
            .par_iter()
            .map(|&e| shoot_midpoint(cfg, geom, e, opts.steps).unwrap_or(ReducedState { u: f64::NAN, v: f64::NAN }))
            .collect();
        let us: Vec<f64> = states.iter().map(|s| s.u).collect();
        let vs: Vec<f64> = states.iter().map(|s| s.v).collect();
        let fu = |e: f64| shoot_midpoint(cfg, geom, e, opts.steps).map_or(f64::NAN, |s| s.u);
        let fv = |e: f64| shoot_midpoint(cfg, geom, e, opts.steps).map_or(f64::NAN, |s| s.v);
        for mut roots in [roots_of(&fu, &xs, &us), roots_of(&fv, &xs, &vs)] {
            // Zeros of u and of v are distinct states even when they coincide.
            roots.retain(|e| e.is_finite());
            roots.sort_by(f64::total_cmp);
            roots.dedup_by(|b, a| (*a - *b).abs() <= 1e-11 * m);
            found.extend(roots);
        }
    }
    found.sort_by(f64::total_cmp);
    found
}
