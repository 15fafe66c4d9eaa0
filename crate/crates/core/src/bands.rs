//! Three-band dispersion for constant strengths, flat-band planes and band
//! eigenvectors.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::model::{PotentialConfig, SpinMatrices};

/// Relative tolerance on the plane relations and on panel ties.
pub const PLANE_TOL: f64 = 1e-9;

const ROOT_TOL: f64 = 1e-10;

/// The three band energies at one wavenumber, sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandTriple {
    pub k: f64,
    pub e_minus: f64,
    pub e_mid: f64,
    pub e_plus: f64,
    /// Set when the middle band is k-independent for this configuration.
    pub mid_is_flat: bool,
}

impl BandTriple {
    pub fn energies(&self) -> [f64; 3] {
        [self.e_minus, self.e_mid, self.e_plus]
    }
}

/// Membership of the two flat-band planes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatBandClass {
    /// `v11 + v33 = 2 v22`
    pub on_a: bool,
    /// `v33 - v11 = 2m`
    pub on_b: bool,
    pub flat_energy: Option<f64>,
}

/// Ordering classes of `v2` against `v1`, `va`, `v3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Panel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
}

impl Panel {
    pub fn letter(&self) -> char {
        match self {
            Panel::A => 'a',
            Panel::B => 'b',
            Panel::C => 'c',
            Panel::D => 'd',
            Panel::E => 'e',
            Panel::F => 'f',
            Panel::G => 'g',
            Panel::H => 'h',
            Panel::I => 'i',
            Panel::J => 'j',
        }
    }
}

/// Which band an eigenvector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandBranch {
    Minus,
    Mid,
    Plus,
}

/// Closed forms available for the band eigenvector coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SigmaFormula {
    Generic,
    PlaneA,
    PlaneB,
    LineAB,
}

/// Plane-wave amplitudes `col(-σ1, 1, σ3)` of a band state.
///
/// `sigma` holds the imaginary parts of `σ1`, `σ3`. It is `None` when the
/// second component vanishes and the state cannot be written in that form;
/// `amplitudes` is always the unit-norm eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaCoefficients {
    pub branch: BandBranch,
    pub energy: f64,
    pub sigma: Option<[f64; 2]>,
    pub amplitudes: [Complex64; 3],
}

/// Band data for a wavenumber grid plus the configuration's classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandSweep {
    pub panel: Panel,
    pub flat: FlatBandClass,
    pub bands: Vec<BandTriple>,
}

fn scale(cfg: &PotentialConfig) -> f64 {
    [cfg.m(), cfg.v11().abs(), cfg.v22().abs(), cfg.v33().abs()]
        .into_iter()
        .fold(0.0, f64::max)
}

fn near(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= PLANE_TOL * scale
}

pub fn classify_flat(cfg: &PotentialConfig) -> FlatBandClass {
    let s = scale(cfg);
    let on_a = near(cfg.v11() + cfg.v33(), 2.0 * cfg.v22(), s);
    let on_b = near(cfg.v33() - cfg.v11(), 2.0 * cfg.m(), s);
    let flat_energy = match (on_a, on_b) {
        (true, _) => Some(cfg.v22()),
        (false, true) => Some(cfg.v11() + cfg.m()),
        _ => None,
    };
    FlatBandClass {
        on_a,
        on_b,
        flat_energy,
    }
}

/// Panel class from the renormalized strengths. When `v1 > v3` the roles of
/// `v1` and `v3` are swapped so the classes refer to the smaller and larger one.
pub fn panel_class(cfg: &PotentialConfig) -> Panel {
    let s = scale(cfg);
    let (v1, v2, v3) = (cfg.v1(), cfg.v2(), cfg.v3());
    if near(v1, v3, s) {
        return if near(v2, v1, s) {
            Panel::J
        } else if v2 < v1 {
            Panel::H
        } else {
            Panel::I
        };
    }
    let (lo, hi) = if v1 < v3 { (v1, v3) } else { (v3, v1) };
    let va = cfg.va();
    if near(v2, lo, s) {
        Panel::B
    } else if near(v2, va, s) {
        Panel::D
    } else if near(v2, hi, s) {
        Panel::F
    } else if v2 < lo {
        Panel::A
    } else if v2 < va {
        Panel::C
    } else if v2 < hi {
        Panel::E
    } else {
        Panel::G
    }
}

/// Monic cubic `(E-v1)(E-v2)(E-v3) - (E-va)k²` as `[c0, c1, c2]`.
fn cubic_coefficients(cfg: &PotentialConfig, k: f64) -> [f64; 3] {
    let [v1, v2, v3] = cfg.renormalized();
    let k2 = k * k;
    let s1 = v1 + v2 + v3;
    let s2 = v1 * v2 + v1 * v3 + v2 * v3;
    let s3 = v1 * v2 * v3;
    [-s3 + k2 * cfg.va(), s2 - k2, -s1]
}

fn cubic(c: &[f64; 3], e: f64) -> (f64, f64) {
    let p = ((e + c[2]) * e + c[1]) * e + c[0];
    let dp = (3.0 * e + 2.0 * c[2]) * e + c[1];
    (p, dp)
}

/// Eigenvalues of the companion matrix, or `None` if the Schur iteration stalls.
fn companion_guesses(c: &[f64; 3]) -> Option<[f64; 3]> {
    let companion = Matrix3::new(-c[2], -c[1], -c[0], 1.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    let eig = companion.try_schur(f64::EPSILON, 500)?.complex_eigenvalues();
    let mut re = [eig[0].re, eig[1].re, eig[2].re];
    re.sort_by(f64::total_cmp);
    Some(re)
}

/// Newton iteration safeguarded by the bracket `[lo, hi]` with `p(lo) < 0 < p(hi)`
/// (or the reverse).
fn polish(c: &[f64; 3], guess: f64, mut lo: f64, mut hi: f64) -> f64 {
    let (plo, phi) = (cubic(c, lo).0, cubic(c, hi).0);
    if plo == 0.0 {
        return lo;
    }
    if phi == 0.0 {
        return hi;
    }
    if plo > 0.0 {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut x = if guess > lo.min(hi) && guess < lo.max(hi) {
        guess
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..200 {
        let (p, dp) = cubic(c, x);
        if p == 0.0 {
            return x;
        }
        if p < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - p / dp;
        let inside = newton > lo.min(hi) && newton < lo.max(hi);
        let next = if dp != 0.0 && inside {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-300) || next == x {
            return next;
        }
        x = next;
    }
    x
}

/// Band energies at wavenumber `k`.
pub fn dispersion_bands(cfg: &PotentialConfig, k: f64) -> Result<BandTriple> {
    let [v1, v2, v3] = cfg.renormalized();
    let mut roots = if k == 0.0 {
        [v1, v2, v3]
    } else if v1 == v3 {
        // (E - v1)[(E - v1)(E - v2) - k²]: one root is exact.
        let r = (0.25 * (v1 - v2).powi(2) + k * k).sqrt();
        let mid = 0.5 * (v1 + v2);
        [mid - r, v1, mid + r]
    } else {
        let c = cubic_coefficients(cfg, k);
        let bound = 1.0 + c.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let (lo, hi) = (v1.min(v3), v1.max(v3));
        let g = companion_guesses(&c).unwrap_or([lo - 1.0, 0.5 * (lo + hi), hi + 1.0]);
        [
            polish(&c, g[0], -bound, lo),
            polish(&c, g[1], lo, hi),
            polish(&c, g[2], hi, bound),
        ]
    };
    roots.sort_by(f64::total_cmp);
    for &e in &roots {
        let r = band_residual(cfg, k, e);
        let f = ((e - v1) * (e - v2) * (e - v3)).abs();
        if !(r <= ROOT_TOL * (1.0 + f)) {
            return Err(Error::DegenerateRoots { k, residual: r });
        }
    }
    let flat = classify_flat(cfg);
    Ok(BandTriple {
        k,
        e_minus: roots[0],
        e_mid: roots[1],
        e_plus: roots[2],
        mid_is_flat: flat.flat_energy.is_some(),
    })
}

/// `|F(E) - G(E) k²|` for the dispersion relation.
pub fn band_residual(cfg: &PotentialConfig, k: f64, e: f64) -> f64 {
    let [v1, v2, v3] = cfg.renormalized();
    ((e - v1) * (e - v2) * (e - v3) - (e - cfg.va()) * k * k).abs()
}

pub fn band_sweep(cfg: &PotentialConfig, k_grid: &[f64]) -> Result<BandSweep> {
    if k_grid.is_empty() {
        return Err(Error::InvalidParameter("empty wavenumber grid".into()));
    }
    let bands = k_grid
        .iter()
        .map(|&k| dispersion_bands(cfg, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(BandSweep {
        panel: panel_class(cfg),
        flat: classify_flat(cfg),
        bands,
    })
}

fn branch_energy(t: &BandTriple, branch: BandBranch) -> f64 {
    match branch {
        BandBranch::Minus => t.e_minus,
        BandBranch::Mid => t.e_mid,
        BandBranch::Plus => t.e_plus,
    }
}

fn sign_of(branch: BandBranch) -> f64 {
    match branch {
        BandBranch::Minus => -1.0,
        BandBranch::Mid => 0.0,
        BandBranch::Plus => 1.0,
    }
}

fn from_sigma(branch: BandBranch, energy: f64, s1: f64, s3: f64) -> SigmaCoefficients {
    let v = Vector3::new(
        Complex64::new(0.0, -s1),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, s3),
    );
    let v = v / Complex64::new(v.norm(), 0.0);
    SigmaCoefficients {
        branch,
        energy,
        sigma: Some([s1, s3]),
        amplitudes: [v[0], v[1], v[2]],
    }
}

/// The state `(1, 0, 1)/√2` sitting at `E = v1 = v3`.
fn outer_pair(branch: BandBranch, energy: f64) -> SigmaCoefficients {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    SigmaCoefficients {
        branch,
        energy,
        sigma: None,
        amplitudes: [h, Complex64::new(0.0, 0.0), h],
    }
}

fn unit(branch: BandBranch, energy: f64, index: usize) -> SigmaCoefficients {
    let mut amplitudes = [Complex64::new(0.0, 0.0); 3];
    amplitudes[index] = Complex64::new(1.0, 0.0);
    SigmaCoefficients {
        branch,
        energy,
        sigma: None,
        amplitudes,
    }
}

fn generic_sigma(cfg: &PotentialConfig, k: f64, branch: BandBranch, e: f64) -> SigmaCoefficients {
    let [v1, v2, v3] = cfg.renormalized();
    if k == 0.0 {
        // Diagonal Hamiltonian: pick the matching unit vector.
        let d = [v1, v2, v3];
        let idx = (0..3)
            .min_by(|&i, &j| (d[i] - e).abs().total_cmp(&(d[j] - e).abs()))
            .unwrap_or(1);
        return unit(branch, e, idx);
    }
    let (d1, d3) = (e - v1, e - v3);
    let tiny = 1e-13 * scale(cfg);
    if d1.abs() <= tiny || d3.abs() <= tiny {
        return outer_pair(branch, e);
    }
    from_sigma(branch, e, k / (SQRT_2 * d1), k / (SQRT_2 * d3))
}

/// Band eigenvector coefficients for the requested branch and closed form.
pub fn band_eigenfunction(
    cfg: &PotentialConfig,
    k: f64,
    branch: BandBranch,
    formula: SigmaFormula,
) -> Result<SigmaCoefficients> {
    let flat = classify_flat(cfg);
    let [v1, v2, v3] = cfg.renormalized();
    let s = sign_of(branch);
    match formula {
        SigmaFormula::Generic => {
            let t = dispersion_bands(cfg, k)?;
            Ok(generic_sigma(cfg, k, branch, branch_energy(&t, branch)))
        }
        SigmaFormula::PlaneA => {
            if !flat.on_a {
                return Err(Error::PlaneMismatch("the A-plane form"));
            }
            if branch == BandBranch::Mid || k == 0.0 {
                let t = dispersion_bands(cfg, k)?;
                return Ok(generic_sigma(cfg, k, branch, branch_energy(&t, branch)));
            }
            let half = 0.5 * (v1 - v3);
            let r = (k * k + half * half).sqrt();
            let c = 1.0 / (SQRT_2 * k);
            Ok(from_sigma(
                branch,
                v2 + s * r,
                c * (half + s * r),
                c * (-half + s * r),
            ))
        }
        SigmaFormula::PlaneB => {
            if !flat.on_b {
                return Err(Error::PlaneMismatch("the B-plane form"));
            }
            if branch == BandBranch::Mid {
                return Ok(outer_pair(branch, v1));
            }
            if k == 0.0 {
                let t = dispersion_bands(cfg, k)?;
                return Ok(generic_sigma(cfg, k, branch, branch_energy(&t, branch)));
            }
            let half = 0.5 * (v1 - v2);
            let r = (k * k + half * half).sqrt();
            let sig = (half + s * r) / (SQRT_2 * k);
            Ok(from_sigma(branch, 0.5 * (v1 + v2) + s * r, sig, sig))
        }
        SigmaFormula::LineAB => {
            if !(flat.on_a && flat.on_b) {
                return Err(Error::PlaneMismatch("the A∩B-line form"));
            }
            if branch == BandBranch::Mid {
                return Ok(outer_pair(branch, v2));
            }
            if k == 0.0 {
                return Ok(outer_pair(branch, v2));
            }
            let sig = s * k.signum() * std::f64::consts::FRAC_1_SQRT_2;
            Ok(from_sigma(branch, v2 + s * k.abs(), sig, sig))
        }
    }
}

/// Max-norm of `(H(k) - E) A` for a plane-wave amplitude vector.
pub fn system_residual(cfg: &PotentialConfig, k: f64, sigma: &SigmaCoefficients) -> f64 {
    let h = SpinMatrices::new().hamiltonian(cfg, k);
    let a = Vector3::new(sigma.amplitudes[0], sigma.amplitudes[1], sigma.amplitudes[2]);
    let r = h * a - a * Complex64::new(sigma.energy, 0.0);
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
