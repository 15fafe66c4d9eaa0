//! Shared physical symbols: strengths, geometry, exterior quantities, the
//! spin matrices and the scalar kernels every other module builds on.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for the `E = va` pole of `k²`.
pub const POLE_TOL: f64 = 1e-12;

/// Half-width (in units of m) of the scan windows around poles and thresholds.
pub const SCAN_WINDOW: f64 = 1e-7;

/// Closest approach (in units of m) of the shrinking-window pass.
pub const SCAN_FLOOR: f64 = 1e-10;

/// Default cap on the half-phase `|k| l / 2` next to an accumulation point.
pub const DEFAULT_PHASE_CAP: f64 = 64.0;

/// Constant diagonal strengths, both bare and renormalized by the mass.
///
/// The renormalized values are `v1 = v11 + m`, `v2 = v22`, `v3 = v33 - m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialConfig {
    v11: f64,
    v22: f64,
    v33: f64,
    m: f64,
    v1: f64,
    v2: f64,
    v3: f64,
}

impl PotentialConfig {
    pub fn new(v11: f64, v22: f64, v33: f64, m: f64) -> Result<Self> {
        check_mass(m)?;
        check_finite(&[v11, v22, v33])?;
        Ok(Self {
            v11,
            v22,
            v33,
            m,
            v1: v11 + m,
            v2: v22,
            v3: v33 - m,
        })
    }

    /// Builds a configuration from renormalized strengths, keeping them bit-exact.
    pub fn from_renormalized(v1: f64, v2: f64, v3: f64, m: f64) -> Result<Self> {
        check_mass(m)?;
        check_finite(&[v1, v2, v3])?;
        Ok(Self {
            v11: v1 - m,
            v22: v2,
            v33: v3 + m,
            m,
            v1,
            v2,
            v3,
        })
    }

    pub fn free(m: f64) -> Result<Self> {
        Self::new(0.0, 0.0, 0.0, m)
    }

    pub fn v11(&self) -> f64 {
        self.v11
    }
    pub fn v22(&self) -> f64 {
        self.v22
    }
    pub fn v33(&self) -> f64 {
        self.v33
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn v1(&self) -> f64 {
        self.v1
    }
    pub fn v2(&self) -> f64 {
        self.v2
    }
    pub fn v3(&self) -> f64 {
        self.v3
    }
    pub fn va(&self) -> f64 {
        0.5 * (self.v1 + self.v3)
    }

    /// Renormalized strengths as an array.
    pub fn renormalized(&self) -> [f64; 3] {
        [self.v1, self.v2, self.v3]
    }
}

fn check_mass(m: f64) -> Result<()> {
    if m.is_finite() && m > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("mass must be positive, got {m}")))
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(Error::InvalidParameter(format!("strength {v} is not finite"))),
        None => Ok(()),
    }
}

/// Support `[x1, x2]` of the rectangular potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    x1: f64,
    x2: f64,
}

impl Geometry {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        if !(x1.is_finite() && x2.is_finite() && x1 < x2) {
            return Err(Error::InvalidParameter(format!(
                "geometry needs finite x1 < x2, got [{x1}, {x2}]"
            )));
        }
        Ok(Self { x1, x2 })
    }

    /// Width `l` centered on the origin.
    pub fn centered(l: f64) -> Result<Self> {
        Self::new(-0.5 * l, 0.5 * l)
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }
    pub fn x2(&self) -> f64 {
        self.x2
    }
    pub fn l(&self) -> f64 {
        self.x2 - self.x1
    }
    pub fn a(&self) -> f64 {
        0.5 * (self.x1 + self.x2)
    }
}

/// Exterior quantities of an energy inside the gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    pub e: f64,
    pub kappa: f64,
    pub rho: f64,
}

impl EnergyPoint {
    pub fn new(e: f64, m: f64) -> Result<Self> {
        if !(e.abs() < m) {
            return Err(Error::GapEdge { energy: e, m });
        }
        let kappa = ((m - e) * (m + e)).sqrt();
        if kappa == 0.0 {
            return Err(Error::GapEdge { energy: e, m });
        }
        let rho = ((m - e) / (m + e)).sqrt();
        Ok(Self { e, kappa, rho })
    }

    pub fn inv_rho(&self) -> f64 {
        1.0 / self.rho
    }
}

/// Spin-1 matrices, the particle-hole matrix `C` and the parity matrix `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinMatrices {
    pub sy: Matrix3<Complex64>,
    pub sz: Matrix3<Complex64>,
    pub c: Matrix3<Complex64>,
    pub p: Matrix3<Complex64>,
}

impl Default for SpinMatrices {
    fn default() -> Self {
        Self::new()
    }
}

impl SpinMatrices {
    pub fn new() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        Self {
            sy: Matrix3::new(z, -i, z, i, z, -i, z, i, z),
            sz: Matrix3::new(one, z, z, z, z, z, z, z, -one),
            c: Matrix3::new(z, z, one, z, one, z, one, z, z),
            p: Matrix3::new(-one, z, z, z, one, z, z, z, -one),
        }
    }

    /// Free Hamiltonian for a plane wave `e^{ikx}`.
    pub fn h0(&self, k: f64, m: f64) -> Matrix3<Complex64> {
        self.sy * Complex64::new(k, 0.0) + self.sz * Complex64::new(m, 0.0)
    }

    /// Full momentum-space Hamiltonian for constant strengths.
    pub fn hamiltonian(&self, cfg: &PotentialConfig, k: f64) -> Matrix3<Complex64> {
        let mut h = self.h0(k, cfg.m());
        h[(0, 0)] += cfg.v11();
        h[(1, 1)] += cfg.v22();
        h[(2, 2)] += cfg.v33();
        h
    }
}

/// `sin(√w t)/√w`, continued to `w < 0` through `sinh`.
pub fn sin_kernel(w: f64, t: f64) -> f64 {
    let x = w.abs().sqrt() * t;
    if x.abs() < 1e-4 {
        let x2 = if w >= 0.0 { -x * x } else { x * x };
        return t * (1.0 + x2 / 6.0 * (1.0 + x2 / 20.0));
    }
    if w > 0.0 {
        x.sin() / w.sqrt()
    } else {
        x.sinh() / (-w).sqrt()
    }
}

/// `cos(√w t)`, continued to `w < 0` through `cosh`.
pub fn cos_kernel(w: f64, t: f64) -> f64 {
    let x = w.abs().sqrt() * t;
    if w >= 0.0 {
        x.cos()
    } else {
        x.cosh()
    }
}

/// The pair `(sin_kernel, cos_kernel)` divided by `cosh(√-w t)` when `w < 0`.
///
/// Bounded for every `w`, which keeps residuals finite next to `va`.
pub fn scaled_kernels(w: f64, t: f64) -> (f64, f64) {
    if w >= 0.0 {
        return (sin_kernel(w, t), cos_kernel(w, t));
    }
    let q = (-w).sqrt();
    let x = q * t;
    if x < 1e-4 {
        let c = x.cosh();
        (sin_kernel(w, t) / c, 1.0)
    } else {
        (x.tanh() / q, 1.0)
    }
}

fn pole_guard(cfg: &PotentialConfig, e: f64) -> Result<()> {
    let va = cfg.va();
    if (e - va).abs() < POLE_TOL * cfg.m().max(va.abs()) {
        Err(Error::PoleAtVa { energy: e, va })
    } else {
        Ok(())
    }
}

/// `k² = (E-v1)(E-v2)(E-v3)/(E-va)`; a negative value means imaginary `k`.
pub fn k_squared(cfg: &PotentialConfig, e: f64) -> Result<f64> {
    pole_guard(cfg, e)?;
    Ok((e - cfg.v1()) * (e - cfg.v2()) * (e - cfg.v3()) / (e - cfg.va()))
}

/// `γ = (κ/k)(1 - v2/E)` for a real wavenumber `k`.
pub fn gamma(cfg: &PotentialConfig, e: f64, k: f64) -> Result<f64> {
    if e.abs() < POLE_TOL * cfg.m() {
        return Err(Error::ZeroEnergyPole(e));
    }
    if k == 0.0 {
        return Err(Error::ZeroK(e));
    }
    let point = EnergyPoint::new(e, cfg.m())?;
    Ok(point.kappa / k * (1.0 - cfg.v2() / e))
}

/// A quantity that is real for real `k` and purely imaginary for imaginary `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branched {
    Real(f64),
    Imaginary(f64),
}

impl Branched {
    pub fn as_complex(&self) -> Complex64 {
        match *self {
            Branched::Real(x) => Complex64::new(x, 0.0),
            Branched::Imaginary(y) => Complex64::new(0.0, y),
        }
    }
}

/// `η = √2 (E - v2)/k` with `k = +√k²` or `k = i√-k²`.
pub fn eta(cfg: &PotentialConfig, e: f64) -> Result<Branched> {
    let k2 = k_squared(cfg, e)?;
    if k2 == 0.0 {
        return Err(Error::ZeroK(e));
    }
    let num = std::f64::consts::SQRT_2 * (e - cfg.v2());
    if k2 > 0.0 {
        Ok(Branched::Real(num / k2.sqrt()))
    } else {
        Ok(Branched::Imaginary(-num / (-k2).sqrt()))
    }
}

/// Excluded neighbourhood of `va` in which the half-phase `|k| l/2` would exceed `phase_cap`.
///
/// Next to `va` the interior wavenumber diverges on one side and bound states
/// pile up without bound; the cap keeps the search finite. Returns `None` when
/// the pole is removable or outside the gap.
pub fn accumulation_window(cfg: &PotentialConfig, l: f64, phase_cap: f64) -> Option<(f64, f64)> {
    let va = cfg.va();
    let m = cfg.m();
    if va.abs() >= m {
        return None;
    }
    let residue = (va - cfg.v1()) * (va - cfg.v2()) * (va - cfg.v3());
    if residue == 0.0 {
        return None;
    }
    let width = residue.abs() * l * l / (4.0 * phase_cap * phase_cap);
    if residue > 0.0 {
        Some((va, va + width))
    } else {
        Some((va - width, va))
    }
}
