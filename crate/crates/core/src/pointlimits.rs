//! Point interactions obtained by squeezing the well to zero width while the
//! strength grows as `g/l`, `g (m/l²)^{1/3}` or `g/(l² m)`: limit energies,
//! limit connection matrices and convergence of finite-width states.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::boundstates::{find_bound_states, ConnectionMatrix, Parity, WaveFunctionSample};
use crate::error::{Error, Result};
use crate::model::{cos_kernel, sin_kernel, EnergyPoint, Geometry};
use crate::spectra::{classify, PencilSpec, SpectrumTag, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SqueezeFamily {
    /// `V = g/l`.
    Delta,
    /// `V = g (m/l²)^{1/3}`.
    TwoThirds,
    /// `V = g/(l² m)`.
    InvSquare,
}

impl SqueezeFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            SqueezeFamily::Delta => "delta",
            SqueezeFamily::TwoThirds => "l-2/3",
            SqueezeFamily::InvSquare => "l-2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeLaw {
    pub family: SqueezeFamily,
    /// Dimensionless strength.
    pub g: f64,
}

impl SqueezeLaw {
    /// Strength `V(l)`.
    pub fn strength(&self, l: f64, m: f64) -> f64 {
        match self.family {
            SqueezeFamily::Delta => self.g / l,
            SqueezeFamily::TwoThirds => self.g * (m / (l * l)).cbrt(),
            SqueezeFamily::InvSquare => self.g / (l * l * m),
        }
    }
}

/// A pencil line squeezed along a law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointSpec {
    pub vertex: Vertex,
    pub alpha: [f64; 3],
    pub law: SqueezeLaw,
}

impl PointSpec {
    fn pencil(&self) -> PencilSpec {
        PencilSpec {
            vertex: self.vertex,
            alpha: self.alpha,
            v_grid: Vec::new(),
        }
    }

    fn is_type_three(&self) -> bool {
        let [a1, a2, a3] = self.alpha;
        self.vertex == Vertex::P1 && a1 != 0.0 && a2 == 0.0 && a3 == 0.0
    }
}

/// Limit level `n` with its two-sided connection matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointInteraction {
    pub n: usize,
    pub energy: f64,
    pub parity: Parity,
    /// `-√((m² - E²)/2)/E`.
    pub chi: f64,
    pub lambda: ConnectionMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitLevel {
    pub energy: f64,
    pub parity: Parity,
}

fn parity_of(odd_is_plus: bool, n: usize) -> Parity {
    if (n % 2 == 1) == odd_is_plus {
        Parity::Plus
    } else {
        Parity::Minus
    }
}

fn window(msg: String) -> Error {
    Error::OutOfValidityWindow(msg)
}

fn unsupported(tag: SpectrumTag, family: SqueezeFamily) -> Error {
    Error::UnsupportedCombination(format!("{} spectrum under the {} squeeze", tag.as_str(), family.as_str()))
}

/// Ground state shared by the type-II line and its relatives: `E = m g/√(4 + g²)`.
fn hydrogen_ground(g: f64, m: f64) -> f64 {
    m * g / (4.0 + g * g).sqrt()
}

/// Limit energy of level `n`.
///
/// For the two-branch P and D species `n` selects the branch: 0 for `E⁺`,
/// 1 for `E⁻`. Elsewhere `n = 0` is the δ-squeezed ground state and `n ≥ 1`
/// the excited levels of the steeper squeezes.
pub fn limit_energy(spec: &PointSpec, n: usize, m: f64) -> Result<LimitLevel> {
    if !(m > 0.0) {
        return Err(Error::InvalidParameter("mass must be positive".into()));
    }
    let g = spec.law.g;
    if g == 0.0 || !g.is_finite() {
        return Err(window("g must be finite and nonzero".into()));
    }
    if spec.is_type_three() {
        return Err(Error::NoBoundState(
            "a lone outer strength leaves k and γ finite as l → 0".into(),
        ));
    }
    let ty = classify(&spec.pencil());
    let [a1, a2, _] = spec.alpha;
    let family = spec.law.family;
    let nf = n as f64;
    let level = |energy: f64, parity: Parity| Ok(LimitLevel { energy, parity });
    match (ty.tag, family) {
        (SpectrumTag::P, SqueezeFamily::Delta) | (SpectrumTag::D, SqueezeFamily::Delta) => {
            if n > 1 {
                return Err(Error::UnsupportedCombination("P and D limits have two branches, n = 0 or 1".into()));
            }
            let beta = ty.beta.expect("P and D have beta");
            let (plus, minus) = if ty.tag == SpectrumTag::P {
                let t = (beta.sqrt() * g / 2.0).tan();
                let s = t.signum();
                (s * m / (1.0 + beta / (t * t)).sqrt(), -s * m / (1.0 + beta * t * t).sqrt())
            } else {
                let th = ((-beta).sqrt() * g / 2.0).tanh();
                let s = g.signum();
                (s * m / (1.0 - beta / (th * th)).sqrt(), s * m / (1.0 - beta * th * th).sqrt())
            };
            if n == 0 {
                level(plus, Parity::Plus)
            } else {
                level(minus, Parity::Minus)
            }
        }
        (SpectrumTag::H2, SqueezeFamily::Delta) => {
            if n != 0 {
                return Err(window("the δ squeeze keeps only the ground state".into()));
            }
            level(hydrogen_ground(a2 * g, m), Parity::Plus)
        }
        (SpectrumTag::H2, SqueezeFamily::InvSquare) => {
            let g = a2 * g;
            if n == 0 {
                return level(hydrogen_ground(g, m), Parity::Plus);
            }
            let q = nf * nf * PI * PI;
            let e = q * m / (2.0 * g) * ((1.0 + 4.0 * g * g / (q * q)).sqrt() - 1.0);
            level(e, parity_of(false, n))
        }
        (SpectrumTag::H1, SqueezeFamily::TwoThirds) => {
            if n == 0 {
                return Err(window("levels of the l^(-2/3) squeeze start at n = 1".into()));
            }
            let limit = (nf * PI / a1.abs()).powf(2.0 / 3.0) / a2.abs().cbrt();
            if g.abs() >= limit {
                return Err(window(format!("|g| must stay below {limit} for n = {n}")));
            }
            level((a1 / (nf * PI)).powi(2) * a2 * g.powi(3) * m, parity_of(true, n))
        }
        (SpectrumTag::W1, SqueezeFamily::Delta) | (SpectrumTag::W1, SqueezeFamily::InvSquare) => {
            let beta = ty.beta.expect("W1 has beta");
            if n == 0 {
                let e = -(beta * g).signum() * m / (1.0 + beta * beta * g * g / 4.0).sqrt();
                // Real k needs βgE < 0; the ground state satisfies it for every g ≠ 0.
                debug_assert!(beta * g * e < 0.0);
                return level(e, Parity::Minus);
            }
            if family == SqueezeFamily::Delta {
                return Err(window("the δ squeeze keeps only the ground state".into()));
            }
            let e = -nf * nf * PI * PI * m / (beta * g);
            if e.abs() >= m {
                return Err(window(format!("level {n} needs |βg| > (nπ)²")));
            }
            level(e, parity_of(true, n))
        }
        (SpectrumTag::W2, SqueezeFamily::Delta) | (SpectrumTag::W2, SqueezeFamily::InvSquare) => {
            if g >= 0.0 {
                return Err(window("real k needs g < 0".into()));
            }
            if n == 0 {
                return level(hydrogen_ground(g, m), Parity::Plus);
            }
            if family == SqueezeFamily::Delta {
                return Err(window("the δ squeeze keeps only the ground state".into()));
            }
            let edge = -nf * nf * PI * PI / (2.0 * a1);
            if g >= edge {
                return Err(window(format!("level {n} needs g < {edge}")));
            }
            level(-(1.0 + nf * nf * PI * PI / (a1 * g)) * m, parity_of(false, n))
        }
        (tag, family) => Err(unsupported(tag, family)),
    }
}

/// `χ = -√((m² - E²)/2)/E`.
pub fn chi(e: f64, m: f64) -> Result<f64> {
    let p = EnergyPoint::new(e, m)?;
    if e == 0.0 {
        return Err(Error::ZeroEnergyPole(e));
    }
    Ok(-p.kappa / (SQRT_2 * e))
}

/// Limit level `n` together with its connection matrix.
pub fn limit_matrix(spec: &PointSpec, n: usize, m: f64) -> Result<PointInteraction> {
    let lv = limit_energy(spec, n, m)?;
    let e = lv.energy;
    let x = chi(e, m)?;
    let ty = classify(&spec.pencil());
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let lambda = match ty.tag {
        SpectrumTag::P | SpectrumTag::D => {
            let beta = ty.beta.expect("P and D have beta");
            let g = spec.law.g;
            let (s, c) = (sin_kernel(beta, g), cos_kernel(beta, g));
            ConnectionMatrix::new(c, -SQRT_2 * s, beta * s / SQRT_2, c)
        }
        SpectrumTag::H1 | SpectrumTag::W1 => ConnectionMatrix::new(1.0, 0.0, 2.0 * x, 1.0).scaled(sign),
        SpectrumTag::H2 | SpectrumTag::W2 => ConnectionMatrix::new(1.0, 2.0 / x, 0.0, 1.0).scaled(sign),
        SpectrumTag::Unclassified => return Err(unsupported(ty.tag, spec.law.family)),
    };
    Ok(PointInteraction {
        n,
        energy: e,
        parity: lv.parity,
        chi: x,
        lambda,
    })
}

/// `(ψ1 - ψ3, ψ2)` at `x = -0` and `x = +0` for a squeezed state with unit left amplitude.
pub fn boundary_values(e: f64, m: f64, parity: Parity) -> Result<([f64; 2], [f64; 2])> {
    let p = EnergyPoint::new(e, m)?;
    let u = 2.0 * e / p.kappa;
    Ok(match parity {
        Parity::Plus => ([u, SQRT_2], [-u, SQRT_2]),
        Parity::Minus => ([u, SQRT_2], [u, -SQRT_2]),
    })
}

/// Largest component of `Λ ψ(-0) - ψ(+0)`.
pub fn substitution_residual(pi: &PointInteraction, m: f64) -> Result<f64> {
    let (left, right) = boundary_values(pi.energy, m, pi.parity)?;
    let mapped = pi.lambda.apply(left);
    Ok((mapped[0] - right[0]).abs().max((mapped[1] - right[1]).abs()))
}

/// Two-valued, π-periodic limit function of the type-P δ squeeze with β = 1,
/// returned as `(ε⁺, ε⁻)` of the periodic piece.
pub fn epsilon(g: f64) -> (f64, f64) {
    let r = g.rem_euclid(PI);
    let plus = (r / 2.0).sin();
    // ε⁻ lives on (0, π]; fold the left end onto the right.
    let s = if r == 0.0 { PI } else { r };
    (plus, -(s / 2.0).cos())
}

/// Squeezed spinor: `(ρ⁻¹, √2, ρ) e^{κx}` for `x < 0` and the parity image
/// `(∓ρ⁻¹, ±√2, ∓ρ) e^{-κx}` for `x ≥ 0`.
pub fn squeezed_eigenfunction(pi: &PointInteraction, m: f64, xs: &[f64]) -> Result<Vec<WaveFunctionSample>> {
    let p = EnergyPoint::new(pi.energy, m)?;
    let (ir, r) = (p.inv_rho(), p.rho);
    Ok(xs
        .iter()
        .map(|&x| {
            let (c, s) = if x < 0.0 {
                ((p.kappa * x).exp(), [1.0, 1.0, 1.0])
            } else {
                let f = (-p.kappa * x).exp();
                match pi.parity {
                    Parity::Plus => (f, [-1.0, 1.0, -1.0]),
                    Parity::Minus => (f, [1.0, -1.0, 1.0]),
                }
            };
            WaveFunctionSample {
                x,
                psi1: s[0] * ir * c,
                psi2: s[1] * SQRT_2 * c,
                psi3: s[2] * r * c,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub l: f64,
    pub v: f64,
    pub energy: f64,
    pub error: f64,
    /// `log(e_prev/e)/log(l_prev/l)`; absent on the first row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub spec: PointSpec,
    pub n: usize,
    pub limit: LimitLevel,
    pub capture_radius: f64,
    pub rows: Vec<ConvergenceRow>,
}

/// `0.2` times the gap from level `n` to its neighbours in the same limit, or
/// to the nearer of the threshold and `E = 0` when it has none.
pub fn capture_radius(spec: &PointSpec, n: usize, m: f64) -> Result<f64> {
    let e = limit_energy(spec, n, m)?.energy;
    let mut gaps: Vec<f64> = [n.checked_sub(1), Some(n + 1)]
        .into_iter()
        .flatten()
        .filter_map(|j| limit_energy(spec, j, m).ok())
        .map(|lv| (lv.energy - e).abs())
        .filter(|d| *d > 0.0)
        .collect();
    if gaps.is_empty() {
        gaps.push((m - e.abs()).min(e.abs()));
    }
    Ok(0.2 * gaps.into_iter().fold(f64::INFINITY, f64::min))
}

/// Law whose finite-width wells approach level `n`. The ground level listed
/// with the `l⁻²` excited levels belongs to the δ squeeze: under `l⁻²` the
/// ground state runs into the threshold instead.
pub fn approach_law(spec: &PointSpec, n: usize) -> SqueezeLaw {
    match (n, spec.law.family) {
        (0, SqueezeFamily::InvSquare) => SqueezeLaw {
            family: SqueezeFamily::Delta,
            g: spec.law.g,
        },
        _ => spec.law,
    }
}

/// Finite-width energies along `ls` converging to limit level `n`.
///
/// Widths follow [`approach_law`]. At each width the state of matching
/// parity nearest to the limit is selected; none within the capture radius
/// is `BranchLost`.
pub fn convergence_study(spec: &PointSpec, n: usize, ls: &[f64], m: f64) -> Result<ConvergenceTable> {
    let limit = limit_energy(spec, n, m)?;
    let radius = capture_radius(spec, n, m)?;
    let pencil = spec.pencil();
    let law = approach_law(spec, n);
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ls.len());
    for &l in ls {
        let v = law.strength(l, m);
        let cfg = pencil.config(v, m)?;
        let geom = Geometry::centered(l)?;
        let best = find_bound_states(&cfg, &geom)
            .into_iter()
            .filter(|s| s.parity == limit.parity)
            .min_by(|a, b| (a.energy - limit.energy).abs().total_cmp(&(b.energy - limit.energy).abs()));
        let energy = match best {
            Some(s) if (s.energy - limit.energy).abs() <= radius => s.energy,
            _ => {
                return Err(Error::BranchLost {
                    l,
                    target: limit.energy,
                    radius,
                })
            }
        };
        let error = (energy - limit.energy).abs();
        let order = rows.last().map(|p| (p.error / error).ln() / (p.l / l).ln());
        rows.push(ConvergenceRow { l, v, energy, error, order });
    }
    Ok(ConvergenceTable {
        spec: *spec,
        n,
        limit,
        capture_radius: radius,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundstates::general_bound_condition;
    use proptest::prelude::*;

    fn spec(vertex: Vertex, alpha: [f64; 3], family: SqueezeFamily, g: f64) -> PointSpec {
        PointSpec {
            vertex,
            alpha,
            law: SqueezeLaw { family, g },
        }
    }

    fn h2(family: SqueezeFamily, g: f64) -> PointSpec {
        spec(Vertex::P1, [0.0, 1.0, 0.0], family, g)
    }

    #[test]
    fn delta_ground_of_type_two() {
        let s = h2(SqueezeFamily::Delta, 2.0);
        let lv = limit_energy(&s, 0, 1.0).unwrap();
        assert!((lv.energy - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(lv.parity, Parity::Plus);
        let pi = limit_matrix(&s, 0, 1.0).unwrap();
        let e = pi.energy;
        assert!((pi.lambda.l12 + 2.0 * SQRT_2).abs() < 1e-12);
        assert!((pi.lambda.l12 + 2.0 * SQRT_2 * e / (1.0 - e * e).sqrt()).abs() < 1e-12);
        assert_eq!((pi.lambda.l11, pi.lambda.l21, pi.lambda.l22), (1.0, 0.0, 1.0));
    }

    #[test]
    fn inverse_square_first_excited_level() {
        let e = limit_energy(&h2(SqueezeFamily::InvSquare, 2.0), 1, 1.0).unwrap();
        let expected = PI * PI / 4.0 * ((1.0 + 16.0 / PI.powi(4)).sqrt() - 1.0);
        assert!((e.energy - expected).abs() < 1e-15);
        assert!((e.energy - 0.1949).abs() < 1e-4);
        assert_eq!(e.parity, Parity::Minus);
    }

    #[test]
    fn type_p_delta_branches() {
        let s = spec(Vertex::P1, [1.0, 1.0, 1.0], SqueezeFamily::Delta, 1.3);
        let (p, mn) = (limit_energy(&s, 0, 1.0).unwrap(), limit_energy(&s, 1, 1.0).unwrap());
        assert!((p.energy - (0.65f64).sin()).abs() < 1e-14);
        assert!((mn.energy + (0.65f64).cos()).abs() < 1e-14);
        assert!(limit_energy(&s, 2, 1.0).is_err());
    }

    #[test]
    fn w1_delta_matrix_matches_strength_form() {
        let beta = 2.0 * 1.0 * 3.0 / 4.0;
        for g in [-2.0, 0.7, 3.0] {
            let s = spec(Vertex::P2, [1.0, 0.0, 3.0], SqueezeFamily::Delta, g);
            let pi = limit_matrix(&s, 0, 1.0).unwrap();
            assert!((pi.lambda.l21 - beta * g / SQRT_2).abs() < 1e-12);
            assert_eq!(pi.parity, Parity::Minus);
        }
    }

    #[test]
    fn unit_determinant_of_limit_matrices() {
        let cases = [
            (spec(Vertex::P1, [1.0, 1.0, 1.0], SqueezeFamily::Delta, 2.2), 0..2),
            (spec(Vertex::P2, [-1.0, 1.0, -1.0], SqueezeFamily::Delta, 1.7), 0..2),
            (h2(SqueezeFamily::InvSquare, 2.0), 0..6),
            (spec(Vertex::P2, [1.0, 1.0, -1.0], SqueezeFamily::TwoThirds, 0.9), 1..4),
            (spec(Vertex::P2, [1.0, 0.0, 1.0], SqueezeFamily::InvSquare, 200.0), 0..4),
            (spec(Vertex::P1, [2.0, 1.0, 0.0], SqueezeFamily::InvSquare, -20.0), 0..2),
        ];
        for (s, ns) in cases {
            for n in ns {
                let pi = limit_matrix(&s, n, 1.0).unwrap();
                assert!((pi.lambda.det() - 1.0).abs() < 1e-12, "{s:?} {n}");
                assert!(substitution_residual(&pi, 1.0).unwrap() < 1e-12, "{s:?} {n}");
                let r = general_bound_condition(&pi.lambda, pi.energy, 1.0).unwrap();
                assert!(r.abs() < 1e-10, "{s:?} {n} {r}");
            }
        }
    }

    #[test]
    fn level_ordering() {
        let s = h2(SqueezeFamily::InvSquare, 2.0);
        let es: Vec<f64> = (0..8).map(|n| limit_energy(&s, n, 1.0).unwrap().energy.abs()).collect();
        assert!(es[0] < 1.0 && es.windows(2).all(|w| w[0] > w[1]));
        let s = spec(Vertex::P1, [2.0, 1.0, 0.0], SqueezeFamily::InvSquare, -60.0);
        let es: Vec<f64> = (0..4).map(|n| limit_energy(&s, n, 1.0).unwrap().energy).collect();
        assert!(es.windows(2).all(|w| w[0] < w[1]));
        // The well-type series grows like n² toward the threshold.
        let s = spec(Vertex::P2, [1.0, 0.0, 1.0], SqueezeFamily::InvSquare, 200.0);
        let es: Vec<f64> = (1..5).map(|n| limit_energy(&s, n, 1.0).unwrap().energy.abs()).collect();
        assert!(es.windows(2).all(|w| w[0] < w[1]) && es[3] < 1.0);
    }

    #[test]
    fn validity_windows() {
        let h1 = |g| spec(Vertex::P2, [1.0, 1.0, -1.0], SqueezeFamily::TwoThirds, g);
        let edge = PI.powf(2.0 / 3.0);
        assert!(limit_energy(&h1(0.99 * edge), 1, 1.0).is_ok());
        assert!(matches!(limit_energy(&h1(edge), 1, 1.0), Err(Error::OutOfValidityWindow(_))));
        assert!(matches!(limit_energy(&h1(1.0), 0, 1.0), Err(Error::OutOfValidityWindow(_))));
        let w2 = |g| spec(Vertex::P1, [2.0, 1.0, 0.0], SqueezeFamily::InvSquare, g);
        assert!(limit_energy(&w2(-PI * PI / 4.0 - 0.01), 1, 1.0).is_ok());
        assert!(matches!(limit_energy(&w2(-PI * PI / 4.0 + 0.01), 1, 1.0), Err(Error::OutOfValidityWindow(_))));
        assert!(matches!(limit_energy(&w2(1.0), 0, 1.0), Err(Error::OutOfValidityWindow(_))));
        assert!(matches!(
            limit_energy(&h2(SqueezeFamily::TwoThirds, 1.0), 1, 1.0),
            Err(Error::UnsupportedCombination(_))
        ));
        assert!(matches!(limit_energy(&h2(SqueezeFamily::Delta, 0.0), 0, 1.0), Err(Error::OutOfValidityWindow(_))));
    }

    #[test]
    fn type_three_has_no_limit_state() {
        for family in [SqueezeFamily::Delta, SqueezeFamily::TwoThirds, SqueezeFamily::InvSquare] {
            let s = spec(Vertex::P1, [1.0, 0.0, 0.0], family, 3.0);
            assert!(matches!(limit_energy(&s, 0, 1.0), Err(Error::NoBoundState(_))));
        }
    }

    #[test]
    fn squeezed_spinor_jumps() {
        let s = h2(SqueezeFamily::InvSquare, 2.0);
        for n in 0..4 {
            let pi = limit_matrix(&s, n, 1.0).unwrap();
            let w = squeezed_eigenfunction(&pi, 1.0, &[-1e-300, 0.0]).unwrap();
            // Upper-triangular Λ keeps ψ2 continuous up to its sign.
            assert!((w[0].psi2.abs() - w[1].psi2.abs()).abs() < 1e-15);
            let (l, r) = boundary_values(pi.energy, 1.0, pi.parity).unwrap();
            assert!(((w[0].psi1 - w[0].psi3) - l[0]).abs() < 1e-12);
            assert!(((w[1].psi1 - w[1].psi3) - r[0]).abs() < 1e-12);
        }
        let w1 = spec(Vertex::P2, [1.0, 0.0, 1.0], SqueezeFamily::Delta, 2.0);
        let pi = limit_matrix(&w1, 0, 1.0).unwrap();
        let w = squeezed_eigenfunction(&pi, 1.0, &[-1e-300, 0.0]).unwrap();
        // Lower-triangular Λ keeps ψ1 - ψ3 continuous.
        assert!(((w[0].psi1 - w[0].psi3) - (w[1].psi1 - w[1].psi3)).abs() < 1e-14);
    }

    #[test]
    fn delta_ground_converges() {
        let s = h2(SqueezeFamily::Delta, 2.0);
        let ls: Vec<f64> = (2..=6).map(|k| 0.5f64.powi(k)).collect();
        let t = convergence_study(&s, 0, &ls, 1.0).unwrap();
        assert!(t.rows.windows(2).all(|w| w[1].error < w[0].error));
        for r in &t.rows[1..] {
            assert!(r.order.unwrap() > 0.9);
        }
    }

    #[test]
    fn lost_branch_is_reported() {
        let s = h2(SqueezeFamily::Delta, 2.0);
        assert!(matches!(convergence_study(&s, 0, &[3.0], 1.0), Err(Error::BranchLost { .. })));
    }

    proptest! {
        #[test]
        fn epsilon_is_pi_periodic(g in -20.0f64..20.0) {
            let (a, b) = epsilon(g);
            let (c, d) = epsilon(g + PI);
            prop_assert!((a - c).abs() < 1e-12 && (b - d).abs() < 1e-12);
        }

        #[test]
        fn epsilon_matches_delta_branches(g in 0.01f64..3.1) {
            let s = spec(Vertex::P1, [1.0, 1.0, 1.0], SqueezeFamily::Delta, g);
            let (p, m) = (limit_energy(&s, 0, 1.0).unwrap(), limit_energy(&s, 1, 1.0).unwrap());
            let (a, b) = epsilon(g);
            prop_assert!((p.energy - a).abs() < 1e-12 && (m.energy - b).abs() < 1e-12);
            // One period on, the branches trade places.
            let s2 = PointSpec { law: SqueezeLaw { g: g + PI, ..s.law }, ..s };
            let p2 = limit_energy(&s2, 0, 1.0).unwrap();
            let m2 = limit_energy(&s2, 1, 1.0).unwrap();
            prop_assert!((p2.energy - b).abs() < 1e-12 && (m2.energy - a).abs() < 1e-12);
        }

        #[test]
        fn squeeze_laws_scale(g in -5.0f64..5.0, l in 1e-4f64..1.0) {
            let d = SqueezeLaw { family: SqueezeFamily::Delta, g };
            let t = SqueezeLaw { family: SqueezeFamily::TwoThirds, g };
            let s = SqueezeLaw { family: SqueezeFamily::InvSquare, g };
            let tol = 1e-12 * (1.0 + g.abs());
            prop_assert!((d.strength(l, 1.0) * l - g).abs() < tol);
            prop_assert!((s.strength(l, 1.0) * l * l - g).abs() < tol);
            prop_assert!((t.strength(l, 1.0) * (l * l).cbrt() - g).abs() < tol);
        }
    }
}
