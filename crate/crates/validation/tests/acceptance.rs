//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::{Duration, Instant};

use pseudospin_core::bands::dispersion_bands;
use pseudospin_core::boundstates::{find_bound_states, BoundStateSolution, Parity};
use pseudospin_core::model::{Geometry, PotentialConfig};
use pseudospin_core::presets::{fig3, sweep_preset, SweepPreset};
use pseudospin_core::pointlimits::{convergence_study, limit_energy, PointSpec, SqueezeFamily, SqueezeLaw};
use pseudospin_core::spectra::{cutoff_values, sweep, PencilSpec, Vertex};
use pseudospin_core::verify::{oracle_agreement, random_configs, run, VerifyOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const M: f64 = 1.0;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn nearest(states: &[BoundStateSolution], parity: Parity, target: f64) -> Option<f64> {
    states
        .iter()
        .filter(|s| s.parity == parity)
        .map(|s| s.energy)
        .min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()))
}

fn single_well_states() -> Outcome {
    let (cfg, geom) = fig3();
    let states = find_bound_states(&cfg, &geom);
    let found: Vec<String> = states.iter().map(|s| format!("{}{:.4}", s.parity.symbol(), s.energy)).collect();
    let ok = states.len() == 2
        && states
            .iter()
            .any(|s| s.parity == Parity::Plus && (s.energy - 0.56).abs() <= 0.01)
        && states
            .iter()
            .any(|s| s.parity == Parity::Minus && (s.energy + 0.65).abs() <= 0.01);
    outcome(ok, format!("states {}", found.join(", ")))
}

fn flat_band_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ks: Vec<f64> = (0..100).map(|i| 0.1 * i as f64).collect();
    let mut worst = 0.0f64;
    for plane in ["A", "B"] {
        for _ in 0..50 {
            let (v11, v33) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let (cfg, flat) = if plane == "A" {
                let v22 = 0.5 * (v11 + v33);
                (PotentialConfig::new(v11, v22, v33, M).unwrap(), v22)
            } else {
                let v22 = rng.gen_range(-5.0..5.0);
                (PotentialConfig::new(v11, v22, v11 + 2.0 * M, M).unwrap(), v11 + M)
            };
            for &k in &ks {
                match dispersion_bands(&cfg, k) {
                    Ok(b) => worst = worst.max((b.e_mid - flat).abs()),
                    Err(_) => worst = f64::INFINITY,
                }
            }
        }
    }
    outcome(worst < 1e-10 * M, format!("100 configs x 100 k, worst |E_mid - E_flat| = {worst:.2e}"))
}

fn shifted_free_spectrum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (v, k) = (rng.gen_range(-5.0..5.0), rng.gen_range(0.0..5.0));
        let b = dispersion_bands(&PotentialConfig::new(v, v, v, M).unwrap(), k).unwrap();
        let w = (k * k + M * M).sqrt();
        for (got, want) in b.energies().iter().zip([v - w, v, v + w]) {
            worst = worst.max((got - want).abs());
        }
    }
    outcome(worst < 1e-10, format!("10 samples, worst deviation {worst:.2e}"))
}

fn delta_ground_convergence() -> Outcome {
    let spec = PointSpec {
        vertex: Vertex::P1,
        alpha: [0.0, 1.0, 0.0],
        law: SqueezeLaw {
            family: SqueezeFamily::Delta,
            g: 2.0,
        },
    };
    let ls: Vec<f64> = (2..=8).map(|k| 2f64.powi(-k)).collect();
    match convergence_study(&spec, 0, &ls, M) {
        Ok(t) => {
            let errors: Vec<f64> = t.rows.iter().map(|r| r.error).collect();
            let monotone = errors.windows(2).all(|w| w[1] < w[0]);
            let last = *errors.last().unwrap();
            let table: Vec<String> = errors.iter().map(|e| format!("{e:.2e}")).collect();
            outcome(
                monotone && last < 1e-2 * M && (t.limit.energy - FRAC_1_SQRT_2).abs() < 1e-15,
                format!("errors along l = 2^-2..2^-8: {}", table.join(" ")),
            )
        }
        Err(e) => outcome(false, format!("{e}")),
    }
}

fn inverse_square_excited() -> Outcome {
    let spec = PointSpec {
        vertex: Vertex::P1,
        alpha: [0.0, 1.0, 0.0],
        law: SqueezeLaw {
            family: SqueezeFamily::InvSquare,
            g: 2.0,
        },
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=3 {
        let q = (n as f64 * PI).powi(2);
        let closed = q * M / 4.0 * ((1.0 + 16.0 / (q * q)).sqrt() - 1.0);
        let limit = limit_energy(&spec, n, M).unwrap().energy;
        match convergence_study(&spec, n, &[1e-2], M) {
            Ok(t) => {
                let e = t.rows[0].energy;
                let rel = (e - closed).abs() / closed;
                ok &= rel < 0.01 && (limit - closed).abs() < 1e-15;
                parts.push(format!("n={n}: {e:.5} vs {closed:.5} ({:.2}%)", 100.0 * rel));
            }
            Err(err) => {
                ok = false;
                parts.push(format!("n={n}: {err}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn asymptotic_periodicity() -> Outcome {
    let l = 0.5;
    let pencil = PencilSpec::new(Vertex::P1, [1.0, 1.0, 1.0], vec![25.0, 50.0, 100.0]).unwrap();
    let spec = sweep(&pencil, &Geometry::centered(l).unwrap(), M).unwrap();
    let mut errors = Vec::new();
    for p in &spec.points {
        let x = p.v * l / 2.0;
        let plus = M * x.cos().signum() * x.sin();
        let minus = -M * x.sin().signum() * x.cos();
        let err = [(Parity::Plus, plus), (Parity::Minus, minus)]
            .iter()
            .map(|&(par, want)| nearest(&p.states, par, want).map_or(f64::INFINITY, |e| (e - want).abs()))
            .fold(0.0, f64::max);
        errors.push(err);
    }
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    outcome(
        monotone && errors[2] < 2e-2 * M,
        format!("max error at V = 25, 50, 100: {:.3e} {:.3e} {:.3e}", errors[0], errors[1], errors[2]),
    )
}

fn type_d_merging() -> Outcome {
    let pencil = PencilSpec::new(Vertex::P2, [-1.0, 1.0, -1.0], vec![50.0]).unwrap();
    let cfg = pencil.config(50.0, M).unwrap();
    let states = find_bound_states(&cfg, &Geometry::centered(5.0).unwrap());
    let target = M / 2f64.sqrt();
    match (nearest(&states, Parity::Plus, target), nearest(&states, Parity::Minus, target)) {
        (Some(p), Some(m)) => outcome(
            (p - m).abs() < 1e-3 * M && (p - target).abs() < 1e-2 * M && (m - target).abs() < 1e-2 * M,
            format!("E+ = {p:.8}, E- = {m:.8}, |E+ - E-| = {:.2e}", (p - m).abs()),
        ),
        _ => outcome(false, format!("missing a parity among {} states", states.len())),
    }
}

fn h1_cutoffs() -> Outcome {
    let SweepPreset { pencil, l, .. } = sweep_preset("fig6").unwrap();
    let dv = pencil.v_grid[1] - pencil.v_grid[0];
    let spec = sweep(&pencil, &Geometry::centered(l).unwrap(), M).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=3 {
        let predicted: Vec<f64> = cutoff_values(&pencil, l, M, n)
            .unwrap()
            .into_iter()
            .filter(|c| c.threshold > 0.0 && c.v.abs() < 12.0)
            .map(|c| c.v)
            .collect();
        for vc in predicted {
            let poly = (vc - M).powi(2) * (1.0 + vc / M) - (n as f64 * PI / l).powi(2) * M.powi(3);
            let event = spec
                .events
                .iter()
                .filter(|e| e.energy > 0.9 * M)
                .map(|e| e.v)
                .min_by(|a, b| (a - vc).abs().total_cmp(&(b - vc).abs()));
            let hit = event.is_some_and(|v| (v - vc).abs() <= 2.0 * dv) && poly.abs() < 1e-9;
            ok &= hit;
            parts.push(format!("n={n}: V_c = {vc:.4}, nearest touch {}", event.map_or("none".into(), |v| format!("{v:.4}"))));
        }
    }
    // The simple branch E+ = -V on the interior of (-m, m).
    let mut worst = 0.0f64;
    let mut checked = 0;
    for p in spec.points.iter().filter(|p| p.v.abs() < M && p.v.abs() > 1e-9) {
        let d = nearest(&p.states, Parity::Plus, -p.v).map_or(f64::INFINITY, |e| (e + p.v).abs());
        worst = worst.max(d);
        checked += 1;
    }
    let branch_ok = worst < 1e-9 * M;
    parts.push(format!("E+ = -V branch over {checked} strengths: worst |E+ + V| = {worst:.3e}"));
    outcome(ok && branch_ok, parts.join("; "))
}

fn w_detachment() -> Outcome {
    let preset = sweep_preset("fig8").unwrap();
    let l = preset.l;
    let pencil = PencilSpec::uniform(preset.pencil.vertex, preset.pencil.alpha, 0.05, 50.0, 1000).unwrap();
    let spec = sweep(&pencil, &Geometry::centered(l).unwrap(), M).unwrap();
    let counts = spec.counts();
    let drops: Vec<f64> = counts
        .windows(2)
        .zip(&pencil.v_grid)
        .filter(|(w, _)| w[1] < w[0])
        .map(|(_, v)| *v)
        .collect();
    let mut parts = Vec::new();
    let mut ok = drops.is_empty();
    if !drops.is_empty() {
        parts.push(format!(
            "count decreases at {} strengths, first near V = {:.2}",
            drops.len(),
            drops[0]
        ));
    }
    let q = (PI / l).powi(2);
    for n in 3..=5 {
        let need = n + 1;
        let step = (0..counts.len())
            .rev()
            .take_while(|&i| counts[i] >= need)
            .last()
            .map(|i| pencil.v_grid[i]);
        let want = q * (n * n) as f64 / M;
        let good = step.is_some_and(|v| (v - want).abs() <= 0.1 * want);
        ok &= good;
        parts.push(format!("step {n}: {} vs {want:.2}", step.map_or("none".into(), |v| format!("{v:.2}"))));
    }
    let v = 100.0;
    let cfg = pencil.config(v, M).unwrap();
    let states = find_bound_states(&cfg, &Geometry::centered(l).unwrap());
    let mut worst = 0.0f64;
    let mut worst_n = 0;
    for n in 1.. {
        let want = -q * (n * n) as f64 / v;
        if want.abs() >= M {
            break;
        }
        let parity = if n % 2 == 1 { Parity::Plus } else { Parity::Minus };
        let rel = nearest(&states, parity, want).map_or(f64::INFINITY, |e| ((e - want) / want).abs());
        if rel > worst {
            worst = rel;
            worst_n = n;
        }
    }
    ok &= worst < 0.05;
    parts.push(format!("V=100 levels: worst relative error {:.1}% at n={worst_n}", 100.0 * worst));
    outcome(ok, parts.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let check = oracle_agreement(&random_configs(42, 20, M), 1e-8);
    outcome(check.passed, check.detail)
}

fn property_suite() -> Outcome {
    let checks = run(&VerifyOptions::default());
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    let detail = if failed.is_empty() {
        format!("{} checks green", checks.len())
    } else {
        failed.join("; ")
    };
    outcome(failed.is_empty(), detail)
}

fn main() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        (1, "single-well bound states", 1, single_well_states),
        (2, "flat-band invariance", 5, flat_band_invariance),
        (3, "shifted free spectrum", 1, shifted_free_spectrum),
        (4, "delta-limit ground state convergence", 10, delta_ground_convergence),
        (5, "l^-2 excited states", 10, inverse_square_excited),
        (6, "type P asymptotic periodicity", 30, asymptotic_periodicity),
        (7, "type D merging", 30, type_d_merging),
        (8, "H1 cutoffs and simple branch", 60, h1_cutoffs),
        (9, "W detachment", 60, w_detachment),
        (10, "oracle equivalence", 60, oracle_equivalence),
        (11, "property suite", 60, property_suite),
    ];
    let mut failures = 0;
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let passed = out.passed && in_time;
        if !passed {
            failures += 1;
        }
        let timing = if in_time {
            format!("{:.2}s", took.as_secs_f64())
        } else {
            format!("{:.2}s over the {budget}s budget", took.as_secs_f64())
        };
        println!(
            "{} {id:>2} {name} [{timing}]: {}",
            if passed { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
