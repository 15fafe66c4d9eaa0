//! Randomized cross-checks: the transcendental solver against the shooting
//! oracle, and the structural invariants of connection matrices and bound
//! states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundstates::{
    current, discontinuities, edge_limits, eigenfunction, find_bound_states, propagator, BoundStateSolution,
    Normalization, Parity, WaveFunctionSample,
};
use crate::error::Error;
use crate::model::{Geometry, PotentialConfig};
use crate::oracle::oracle_bound_states;
use crate::pointlimits::{limit_energy, PointSpec, SqueezeFamily, SqueezeLaw};
use crate::spectra::Vertex;

/// Largest bare strength drawn, in units of `m`.
pub const STRENGTH_RANGE: f64 = 5.0;
/// Width range drawn, in units of `1/m`.
pub const WIDTH_RANGE: (f64, f64) = (0.2, 3.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random configurations for the oracle comparison and the state checks.
    pub cases: usize,
    /// Random `(cfg, E, l)` triples for the determinant check.
    pub det_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 42,
            cases: 20,
            det_samples: 10_000,
        }
    }
}

/// `n` configurations with bare strengths uniform in `±5m` and centered wells
/// of width uniform in `[0.2, 3]/m`.
pub fn random_configs(seed: u64, n: usize, m: f64) -> Vec<(PotentialConfig, Geometry)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut s = || rng.gen_range(-STRENGTH_RANGE..STRENGTH_RANGE) * m;
            let (v11, v22, v33) = (s(), s(), s());
            let l = rng.gen_range(WIDTH_RANGE.0..WIDTH_RANGE.1) / m;
            (
                PotentialConfig::new(v11, v22, v33, m).expect("finite strengths"),
                Geometry::centered(l).expect("positive width"),
            )
        })
        .collect()
}

/// Same count and energies within `tol·m` between solver and oracle.
pub fn oracle_agreement(cases: &[(PotentialConfig, Geometry)], tol: f64) -> Check {
    let failures: Vec<String> = cases
        .par_iter()
        .enumerate()
        .filter_map(|(i, (cfg, geom))| {
            let solver: Vec<f64> = find_bound_states(cfg, geom).iter().map(|s| s.energy).collect();
            let oracle = oracle_bound_states(cfg, geom);
            let worst = solver
                .iter()
                .zip(&oracle)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if solver.len() != oracle.len() {
                Some(format!("case {i}: {} states vs {} from the oracle", solver.len(), oracle.len()))
            } else if worst > tol * cfg.m() {
                Some(format!("case {i}: energies differ by {worst:.3e}"))
            } else {
                None
            }
        })
        .collect();
    let detail = if failures.is_empty() {
        format!("{} configurations agree", cases.len())
    } else {
        failures.join("; ")
    };
    Check::new("oracle agreement", failures.is_empty(), detail)
}

/// `det Λ = 1` over random `(cfg, E, l)`, relative to the squared entry scale.
pub fn determinant_check(seed: u64, samples: usize, tol: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xde7);
    let mut worst = 0.0f64;
    let mut used = 0;
    while used < samples {
        let mut s = || rng.gen_range(-STRENGTH_RANGE..STRENGTH_RANGE);
        let cfg = PotentialConfig::new(s(), s(), s(), 1.0).expect("finite strengths");
        let e = rng.gen_range(-1.0..1.0);
        let l = rng.gen_range(WIDTH_RANGE.0..WIDTH_RANGE.1);
        let Ok(lam) = propagator(&cfg, e, l) else { continue };
        let scale = [lam.l11, lam.l12, lam.l21, lam.l22]
            .iter()
            .fold(1.0f64, |acc, x| acc.max(x.abs()));
        worst = worst.max((lam.det() - 1.0).abs() / (scale * scale));
        used += 1;
    }
    Check::new(
        "unit determinant",
        worst < tol,
        format!("{samples} samples, worst scaled |det - 1| = {worst:.3e}"),
    )
}

fn states(cases: &[(PotentialConfig, Geometry)]) -> Vec<(PotentialConfig, Geometry, BoundStateSolution)> {
    cases
        .par_iter()
        .flat_map_iter(|(cfg, geom)| find_bound_states(cfg, geom).into_iter().map(move |s| (*cfg, *geom, s)))
        .collect()
}

/// ψ2 even and ψ1, ψ3 odd about the midpoint for `+`, the reverse for `-`,
/// with the halves built from opposite edges meeting at the midpoint.
/// Deviations are relative to the largest component on the grid; the part
/// below the rounding floor of the state is not counted.
pub fn parity_check(cases: &[(PotentialConfig, Geometry)], tol: f64) -> Check {
    let (mut worst, mut raw) = (0.0f64, 0.0f64);
    let mut count = 0;
    for (cfg, geom, s) in states(cases) {
        let (sym, mid) = parity_deviation(&s, &cfg, &geom);
        raw = raw.max(sym.max(mid));
        worst = worst.max(sym.max(mid) - rounding_floor(&cfg, geom.l(), s.energy));
        count += 1;
    }
    Check::new(
        "parity symmetry",
        worst < tol,
        format!("{count} states, worst defect {raw:.3e}, worst excess over rounding {worst:.3e}"),
    )
}

/// Relative error that one-ulp perturbations of the edge data and of `E`
/// leave at the midpoint: `16 ε ‖Λ(l/2)‖ (1 + |E| dθ/dE)` with `θ = |k| l/2`.
///
/// The first factor is the growth of the evanescent mode, the second the
/// phase sensitivity next to the accumulation point.
pub fn rounding_floor(cfg: &PotentialConfig, l: f64, e: f64) -> f64 {
    let Ok(lam) = propagator(cfg, e, 0.5 * l) else {
        return f64::INFINITY;
    };
    let growth = [lam.l11, lam.l12, lam.l21, lam.l22]
        .iter()
        .fold(1.0f64, |acc, x| acc.max(x.abs()));
    let [v1, v2, v3] = cfg.renormalized();
    let d = e - cfg.va();
    let k2 = (e - v1) * (e - v2) * (e - v3) / d;
    let dk2 = ((e - v2) * (e - v3) + (e - v1) * (e - v3) + (e - v1) * (e - v2)) / d - k2 / d;
    let k = k2.abs().sqrt();
    let dtheta = if k > 0.0 { 0.25 * l * dk2.abs() / k } else { 0.0 };
    16.0 * f64::EPSILON * growth * (1.0 + e.abs() * dtheta)
}

/// Relative symmetry defect and midpoint mismatch of one state.
pub fn parity_deviation(s: &BoundStateSolution, cfg: &PotentialConfig, geom: &Geometry) -> (f64, f64) {
    let offsets: Vec<f64> = (0..=40).map(|i| geom.l() * i as f64 / 20.0).collect();
    let xs: Vec<f64> = offsets
        .iter()
        .map(|d| geom.a() + d)
        .chain(offsets.iter().map(|d| geom.a() - d))
        .chain([geom.a().next_up()])
        .collect();
    let Ok(w) = eigenfunction(s, cfg, geom, &xs, Normalization::UnitExterior) else {
        return (f64::INFINITY, f64::INFINITY);
    };
    let peak = w
        .iter()
        .map(|p| p.psi1.abs().max(p.psi2.abs()).max(p.psi3.abs()))
        .fold(0.0, f64::max);
    let diff = |a: &WaveFunctionSample, b: &WaveFunctionSample, sign: [f64; 3]| {
        (a.psi1 - sign[0] * b.psi1)
            .abs()
            .max((a.psi2 - sign[1] * b.psi2).abs())
            .max((a.psi3 - sign[2] * b.psi3).abs())
            / peak
    };
    let sign = match s.parity {
        Parity::Plus => [-1.0, 1.0, -1.0],
        Parity::Minus => [1.0, -1.0, 1.0],
    };
    let n = offsets.len();
    let sym = (0..n).map(|i| diff(&w[i], &w[n + i], sign)).fold(0.0, f64::max);
    let mid = diff(&w[2 * n], &w[0], [1.0; 3]);
    (sym, mid)
}

/// `j = 0` on a grid and on both sides of each edge.
pub fn current_check(cases: &[(PotentialConfig, Geometry)], tol: f64) -> Check {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (cfg, geom, s) in states(cases) {
        let xs: Vec<f64> = (0..=60).map(|i| geom.x1() - geom.l() + 3.0 * geom.l() * i as f64 / 60.0).collect();
        if let Ok(w) = eigenfunction(&s, &cfg, &geom, &xs, Normalization::PeakPsi2) {
            for p in &w {
                worst = worst.max(current(&p.spinor()).abs());
            }
        }
        if let Ok(e) = edge_limits(&s, &cfg, &geom) {
            let j = |p: [f64; 3]| current(&p.map(|c| num_complex::Complex64::new(c, 0.0)));
            worst = worst
                .max((j(e.left_outer) - j(e.left_inner)).abs())
                .max((j(e.right_outer) - j(e.right_inner)).abs());
        }
        count += 1;
    }
    Check::new("zero current", worst < tol, format!("{count} states, worst |j| = {worst:.3e}"))
}

/// Closed-form jumps against the one-sided edge values.
pub fn jump_check(cases: &[(PotentialConfig, Geometry)], tol: f64) -> Check {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (cfg, geom, s) in states(cases) {
        let (Ok((d1, d2)), Ok(e)) = (discontinuities(&s, &cfg, &geom), edge_limits(&s, &cfg, &geom)) else {
            continue;
        };
        let s1 = e.left_outer[0] - e.left_inner[0];
        let s2 = e.right_inner[0] - e.right_outer[0];
        let s3 = e.left_outer[2] - e.left_inner[2];
        let scale = 1.0 + d1.abs();
        worst = worst
            .max((d1 - s1).abs() / scale)
            .max((d2 - s2).abs() / scale)
            .max((d1 - s3).abs() / scale);
        count += 1;
    }
    Check::new("edge jumps", worst < tol, format!("{count} states, worst {worst:.3e}"))
}

/// Without outer strengths ψ1 and ψ3 are continuous at both edges.
pub fn continuity_check(seed: u64, cases: usize, tol: f64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
    let configs: Vec<(PotentialConfig, Geometry)> = (0..cases)
        .map(|_| {
            let v22 = rng.gen_range(-STRENGTH_RANGE..STRENGTH_RANGE);
            let l = rng.gen_range(WIDTH_RANGE.0..WIDTH_RANGE.1);
            (
                PotentialConfig::new(0.0, v22, 0.0, 1.0).expect("finite strengths"),
                Geometry::centered(l).expect("positive width"),
            )
        })
        .collect();
    let mut worst = 0.0f64;
    let mut count = 0;
    for (cfg, geom, s) in states(&configs) {
        if let Ok(e) = edge_limits(&s, &cfg, &geom) {
            let scale = e.left_outer.iter().fold(1.0f64, |a, x| a.max(x.abs()));
            for j in [0, 2] {
                worst = worst
                    .max((e.left_outer[j] - e.left_inner[j]).abs() / scale)
                    .max((e.right_outer[j] - e.right_inner[j]).abs() / scale);
            }
            count += 1;
        }
    }
    Check::new("outer components continuous", worst < tol, format!("{count} states, worst jump {worst:.3e}"))
}

/// A lone outer strength has no squeezed limit state under any law.
pub fn type_three_check() -> Check {
    let families = [SqueezeFamily::Delta, SqueezeFamily::TwoThirds, SqueezeFamily::InvSquare];
    let mut bad = Vec::new();
    for family in families {
        for g in [-3.0, 0.5, 4.0] {
            let spec = PointSpec {
                vertex: Vertex::P1,
                alpha: [1.0, 0.0, 0.0],
                law: SqueezeLaw { family, g },
            };
            if !matches!(limit_energy(&spec, 0, 1.0), Err(Error::NoBoundState(_))) {
                bad.push(format!("{} g={g}", family.as_str()));
            }
        }
    }
    Check::new(
        "type III squeeze",
        bad.is_empty(),
        if bad.is_empty() { "no limit states".to_string() } else { bad.join(", ") },
    )
}

/// The full suite.
pub fn run(opts: &VerifyOptions) -> Vec<Check> {
    let cases = random_configs(opts.seed, opts.cases, 1.0);
    vec![
        oracle_agreement(&cases, 1e-8),
        determinant_check(opts.seed, opts.det_samples, 1e-12),
        parity_check(&cases, 1e-10),
        current_check(&cases, 1e-12),
        jump_check(&cases, 1e-9),
        continuity_check(opts.seed, opts.cases, 1e-10),
        type_three_check(),
    ]
}
