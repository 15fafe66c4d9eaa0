//! One runner per subcommand. Runners compute tables and a JSON report;
//! writing them is left to the caller.

use pseudospin_core::bands::{band_sweep, classify_flat, panel_class, FlatBandClass};
use pseudospin_core::boundstates::{eigenfunction, find_bound_states_with, Normalization, SolverOptions};
use pseudospin_core::model::{Geometry, PotentialConfig};
use pseudospin_core::pointlimits::{
    convergence_study, limit_matrix, squeezed_eigenfunction, PointInteraction, PointSpec, SqueezeFamily, SqueezeLaw,
};
use pseudospin_core::presets::{fig3, point_preset, sweep_preset, table1, Triangle, POINT_PRESETS, SWEEP_PRESETS};
use pseudospin_core::spectra::{classify, cutoff_values, sweep, EventKind, PencilSpec, SpectrumTag, Vertex};
use pseudospin_core::verify::{run, VerifyOptions};
use serde_json::{json, Value};

use crate::config::{
    BandsArgs, BoundStatesArgs, FamilyArg, FlatArgs, NormArg, PointLimitArgs, SetArg, SweepArgs, VerifyArgs,
};
use crate::error::{CliError, Context};
use crate::table::{Cell, Table};

/// Result of a runner.
#[derive(Debug, Default)]
pub struct Outcome {
    pub tables: Vec<Table>,
    /// Extra JSON documents written as `<name>.json`.
    pub documents: Vec<(String, Value)>,
    pub report: Value,
    /// Human-readable lines for standard output.
    pub summary: Vec<String>,
    /// Set when outputs were produced but the run must exit nonzero.
    pub failure: Option<CliError>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn positive(x: f64, flag: &str) -> Result<(), CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("{flag} must be positive and finite, got {x}")))
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn opt_num(x: Option<f64>) -> Cell {
    x.map_or(Cell::Text(String::new()), Cell::Num)
}

fn flat_json(f: &FlatBandClass, m: f64) -> Value {
    json!({ "on_a": f.on_a, "on_b": f.on_b, "flat_energy": f.flat_energy.map(|e| e / m) })
}

pub fn bands(a: &BandsArgs) -> Result<Outcome, CliError> {
    positive(a.m, "--m")?;
    positive(a.kmax, "--kmax")?;
    if a.nk < 2 {
        return Err(usage("--nk must be at least 2"));
    }
    let [v11, v22, v33] = a.v.0;
    let cfg = PotentialConfig::new(v11, v22, v33, a.m).context(|| "strengths".into())?;
    let ks = linspace(-a.kmax, a.kmax, a.nk);
    let sweep = band_sweep(&cfg, &ks).context(|| "band sweep".into())?;
    let panel = sweep.panel.letter().to_string();
    let mut t = Table::new("bands", &["k", "e_minus", "e_mid", "e_plus", "panel_class"]);
    for b in &sweep.bands {
        t.push(vec![(b.k / a.m).into(), (b.e_minus / a.m).into(), (b.e_mid / a.m).into(), (b.e_plus / a.m).into(), panel.as_str().into()]);
    }
    Ok(Outcome {
        summary: vec![format!(
            "panel {panel}; on_A={} on_B={}; {} wavenumbers",
            sweep.flat.on_a, sweep.flat.on_b, a.nk
        )],
        report: json!({ "panel": panel, "flat": flat_json(&sweep.flat, a.m), "renormalized": cfg.renormalized().map(|v| v / a.m) }),
        tables: vec![t],
        ..Outcome::default()
    })
}

pub fn flat(a: &FlatArgs) -> Result<Outcome, CliError> {
    positive(a.m, "--m")?;
    let cfg = PotentialConfig::new(a.v11, a.v22, a.v33, a.m).context(|| "strengths".into())?;
    let f = classify_flat(&cfg);
    let panel = panel_class(&cfg).letter().to_string();
    let mut t = Table::new("flat", &["v11", "v22", "v33", "m", "on_a", "on_b", "flat_energy", "panel_class"]);
    t.push(vec![
        (a.v11 / a.m).into(),
        (a.v22 / a.m).into(),
        (a.v33 / a.m).into(),
        a.m.into(),
        f.on_a.into(),
        f.on_b.into(),
        opt_num(f.flat_energy.map(|e| e / a.m)),
        panel.as_str().into(),
    ]);
    let energy = f.flat_energy.map_or("none".to_string(), |e| format!("{}", e / a.m));
    Ok(Outcome {
        summary: vec![format!("on_A={} on_B={} flat_energy={energy} panel {panel}", f.on_a, f.on_b)],
        report: json!({ "panel": panel, "flat": flat_json(&f, a.m) }),
        tables: vec![t],
        ..Outcome::default()
    })
}

pub fn boundstates(a: &BoundStatesArgs) -> Result<Outcome, CliError> {
    positive(a.m, "--m")?;
    let m = a.m;
    let (cfg, l) = match (&a.preset, a.v, a.l) {
        (Some(name), _, _) if name == "fig3" => {
            let (c, g) = fig3();
            let cfg = PotentialConfig::new(c.v11() * m, c.v22() * m, c.v33() * m, m).context(|| "preset".into())?;
            (cfg, g.l() / m)
        }
        (Some(name), _, _) => return Err(usage(format!("unknown boundstates preset {name:?}; known: fig3"))),
        (None, Some(v), Some(l)) => {
            positive(l, "--l")?;
            let [v11, v22, v33] = v.0;
            (PotentialConfig::new(v11, v22, v33, m).context(|| "strengths".into())?, l)
        }
        _ => return Err(usage("give --preset, or both --v and --l")),
    };
    if a.grid < 2 {
        return Err(usage("--grid must be at least 2"));
    }
    let geom = Geometry::centered(l).context(|| "width".into())?;
    let opts = SolverOptions {
        grid_points: a.grid,
        ..SolverOptions::default()
    };
    let states = find_bound_states_with(&cfg, &geom, &opts);

    let mut t = Table::new("boundstates", &["state", "parity", "E_b/m", "kappa", "residual"]);
    let mut summary = vec![format!("{} bound states at l = {} / m", states.len(), l * m)];
    for (i, s) in states.iter().enumerate() {
        t.push(vec![i.into(), s.parity.symbol().into(), (s.energy / m).into(), (s.kappa / m).into(), s.residual.into()]);
        summary.push(format!("  {i}: {} E = {:.10} m", s.parity.symbol(), s.energy / m));
    }
    let mut tables = vec![t];

    if a.samples > 0 && !states.is_empty() {
        let kappa_min = states.iter().map(|s| s.kappa).fold(f64::INFINITY, f64::min);
        let half = match a.window {
            Some(w) => {
                positive(w, "--window")?;
                w
            }
            None => l / 2.0 + (5.0 / kappa_min).min(50.0 / m),
        };
        let xs = linspace(-half, half, a.samples);
        let norm = match a.norm {
            NormArg::Peak => Normalization::PeakPsi2,
            NormArg::L2 => Normalization::UnitL2,
            NormArg::Exterior => Normalization::UnitExterior,
        };
        let mut w = Table::new("wavefunctions", &["state", "x", "psi1", "psi2", "psi3"]);
        for (i, s) in states.iter().enumerate() {
            for p in eigenfunction(s, &cfg, &geom, &xs, norm).context(|| format!("eigenfunction of state {i}"))? {
                w.push(vec![i.into(), (p.x * m).into(), p.psi1.into(), p.psi2.into(), p.psi3.into()]);
            }
        }
        tables.push(w);
    }
    Ok(Outcome {
        report: json!({
            "strengths": [cfg.v11() / m, cfg.v22() / m, cfg.v33() / m],
            "l": l * m,
            "count": states.len(),
        }),
        tables,
        summary,
        ..Outcome::default()
    })
}

fn vertex_name(v: Vertex) -> &'static str {
    match v {
        Vertex::P1 => "P1",
        Vertex::P2 => "P2",
    }
}

pub fn sweep_cmd(a: &SweepArgs) -> Result<Outcome, CliError> {
    positive(a.m, "--m")?;
    let m = a.m;
    let (vertex, alpha, l, grid) = match &a.preset {
        Some(name) => {
            if !SWEEP_PRESETS.contains(&name.as_str()) {
                return Err(usage(format!("unknown sweep preset {name:?}; known: {}", SWEEP_PRESETS.join(", "))));
            }
            let p = sweep_preset(name).context(|| format!("preset {name}"))?;
            let grid: Vec<f64> = p.pencil.v_grid.iter().map(|v| v * m).collect();
            (p.pencil.vertex, p.pencil.alpha, p.l / m, grid)
        }
        None => match (a.vertex, a.alpha, a.l) {
            (Some(v), Some(al), Some(l)) => {
                positive(l, "--l")?;
                (v.into(), al.0, l, linspace(-12.0 * m, 12.0 * m, 2400))
            }
            _ => return Err(usage("give --preset, or all of --vertex, --alpha and --l")),
        },
    };
    let grid = if a.vmin.is_some() || a.vmax.is_some() || a.nv.is_some() {
        let lo = a.vmin.unwrap_or(grid[0]);
        let hi = a.vmax.unwrap_or(grid[grid.len() - 1]);
        let n = a.nv.unwrap_or(grid.len());
        if !(lo < hi) || n < 2 {
            return Err(usage("need --vmin < --vmax and --nv >= 2"));
        }
        linspace(lo, hi, n)
    } else {
        grid
    };
    let pencil = PencilSpec::new(vertex, alpha, grid).context(|| "pencil".into())?;
    let geom = Geometry::centered(l).context(|| "width".into())?;
    let spec = sweep(&pencil, &geom, m).context(|| "sweep".into())?;

    let mut t = Table::new("sweep", &["V/m", "parity", "E_b/m", "branch_id", "k2_sign"]);
    for p in &spec.points {
        for (s, &id) in p.states.iter().zip(&p.branch_ids) {
            let k2_sign = if s.k2 > 0.0 { 1 } else if s.k2 < 0.0 { -1 } else { 0 };
            t.push(vec![(p.v / m).into(), s.parity.symbol().into(), (s.energy / m).into(), id.into(), Cell::Int(k2_sign)]);
        }
    }
    let events: Vec<Value> = spec
        .events
        .iter()
        .map(|e| {
            json!({
                "kind": match e.kind { EventKind::Appearance => "appearance", EventKind::Disappearance => "disappearance" },
                "V": e.v / m,
                "E": e.energy / m,
                "parity": e.parity.symbol(),
                "branch": e.branch,
            })
        })
        .collect();
    let cutoffs: Vec<Value> = (1..=5)
        .filter_map(|n| cutoff_values(&pencil, l, m, n).ok())
        .flatten()
        .map(|c| json!({ "n": c.n, "V": c.v / m, "threshold": c.threshold / m, "parity": c.parity.symbol() }))
        .collect();
    let tag = spec.kind.tag.as_str();
    Ok(Outcome {
        summary: vec![format!(
            "type {tag}: {} strengths, {} branches, {} events",
            spec.points.len(),
            spec.branches.len(),
            events.len()
        )],
        report: json!({
            "pencil": {
                "vertex": vertex_name(vertex),
                "alpha": alpha,
                "l": l * m,
                "vmin": pencil.v_grid[0] / m,
                "vmax": pencil.v_grid[pencil.v_grid.len() - 1] / m,
                "nv": pencil.v_grid.len(),
            },
            "type": tag,
            "beta": spec.kind.beta,
            "events": events,
            "cutoffs": cutoffs,
        }),
        tables: vec![t],
        ..Outcome::default()
    })
}

fn representative(set: SetArg) -> (Vertex, [f64; 3]) {
    match set {
        SetArg::P => (Vertex::P1, [1.0, 1.0, 1.0]),
        SetArg::D => (Vertex::P2, [-1.0, 1.0, -1.0]),
        SetArg::H1 => (Vertex::P2, [1.0, 1.0, -1.0]),
        SetArg::H2 => (Vertex::P1, [0.0, 1.0, 0.0]),
        SetArg::W1 => (Vertex::P2, [1.0, 0.0, 1.0]),
        SetArg::W2 => (Vertex::P1, [2.0, 1.0, 0.0]),
    }
}

fn set_tag(set: SetArg) -> SpectrumTag {
    match set {
        SetArg::P => SpectrumTag::P,
        SetArg::D => SpectrumTag::D,
        SetArg::H1 => SpectrumTag::H1,
        SetArg::H2 => SpectrumTag::H2,
        SetArg::W1 => SpectrumTag::W1,
        SetArg::W2 => SpectrumTag::W2,
    }
}

fn tag_of(spec: &PointSpec) -> SpectrumTag {
    let pencil = PencilSpec {
        vertex: spec.vertex,
        alpha: spec.alpha,
        v_grid: vec![0.0],
    };
    classify(&pencil).tag
}

fn interaction_row(pi: &PointInteraction, m: f64) -> Vec<Cell> {
    let l = &pi.lambda;
    vec![
        pi.n.into(),
        pi.parity.symbol().into(),
        (pi.energy / m).into(),
        pi.chi.into(),
        l.l11.into(),
        l.l12.into(),
        l.l21.into(),
        l.l22.into(),
    ]
}

const LEVEL_HEADERS: [&str; 8] = ["n", "parity", "E/m", "chi", "l11", "l12", "l21", "l22"];

pub fn pointlimit(a: &PointLimitArgs) -> Result<Outcome, CliError> {
    positive(a.m, "--m")?;
    positive(a.window, "--window")?;
    let m = a.m;
    if let Some(name) = &a.preset {
        if name == "table1" {
            return table_one(m);
        }
        if !POINT_PRESETS.contains(&name.as_str()) {
            return Err(usage(format!("unknown pointlimit preset {name:?}; known: {}", POINT_PRESETS.join(", "))));
        }
        let p = point_preset(name).context(|| format!("preset {name}"))?;
        let samples = if a.samples == 0 { 401 } else { a.samples };
        return point_study(&p.spec, &p.levels, a.ls.as_ref().map(|w| &w.0[..]), samples, a.window, m);
    }
    let family = match a.family.ok_or_else(|| usage("give --preset or --family"))? {
        FamilyArg::Delta => SqueezeFamily::Delta,
        FamilyArg::TwoThirds => SqueezeFamily::TwoThirds,
        FamilyArg::InvSquare => SqueezeFamily::InvSquare,
    };
    let g = a.g.ok_or_else(|| usage("--g is required with --family"))?;
    let (vertex, alpha) = match (a.vertex, a.alpha, a.set) {
        (Some(v), Some(al), _) => (v.into(), al.0),
        (None, None, Some(set)) => representative(set),
        _ => return Err(usage("give --set, or both --vertex and --alpha")),
    };
    let spec = PointSpec {
        vertex,
        alpha,
        law: SqueezeLaw { family, g },
    };
    if let Some(set) = a.set {
        let tag = tag_of(&spec);
        if tag != set_tag(set) {
            return Err(usage(format!("the pencil classifies as {}, not {}", tag.as_str(), set_tag(set).as_str())));
        }
    }
    let levels = a.n.as_ref().map_or(vec![0], |l| l.0.clone());
    point_study(&spec, &levels, a.ls.as_ref().map(|w| &w.0[..]), a.samples, a.window, m)
}

fn point_study(spec: &PointSpec, levels: &[usize], ls: Option<&[f64]>, samples: usize, window: f64, m: f64) -> Result<Outcome, CliError> {
    let tag = tag_of(spec).as_str();
    let family = spec.law.family.as_str();
    let mut levels_t = Table::new("levels", &LEVEL_HEADERS);
    let mut summary = vec![format!("type {tag}, {family} squeeze, g = {}", spec.law.g)];
    let mut interactions = Vec::new();
    for &n in levels {
        let pi = limit_matrix(spec, n, m).context(|| format!("level {n} of {tag} under the {family} squeeze"))?;
        summary.push(format!("  n={n}: {} E = {:.10} m", pi.parity.symbol(), pi.energy / m));
        levels_t.push(interaction_row(&pi, m));
        interactions.push(pi);
    }
    let mut tables = vec![levels_t];

    if let Some(ls) = ls {
        let mut c = Table::new("convergence", &["n", "l", "V", "E_b", "error", "order"]);
        for &n in levels {
            let study = convergence_study(spec, n, ls, m).context(|| format!("convergence of level {n}"))?;
            for r in &study.rows {
                c.push(vec![n.into(), (r.l * m).into(), (r.v / m).into(), (r.energy / m).into(), (r.error / m).into(), opt_num(r.order)]);
            }
        }
        tables.push(c);
    }
    if samples > 0 {
        let xs = linspace(-window / m, window / m, samples);
        let mut w = Table::new("eigenfunctions", &["n", "x", "psi1", "psi2", "psi3"]);
        for pi in &interactions {
            for p in squeezed_eigenfunction(pi, m, &xs).context(|| format!("eigenfunction of level {}", pi.n))? {
                w.push(vec![pi.n.into(), (p.x * m).into(), p.psi1.into(), p.psi2.into(), p.psi3.into()]);
            }
        }
        tables.push(w);
    }
    Ok(Outcome {
        report: json!({
            "vertex": vertex_name(spec.vertex),
            "alpha": spec.alpha,
            "family": family,
            "g": spec.law.g,
            "type": tag,
            "levels": interactions.iter().map(|pi| json!({ "n": pi.n, "E": pi.energy / m, "parity": pi.parity.symbol() })).collect::<Vec<_>>(),
        }),
        tables,
        summary,
        ..Outcome::default()
    })
}

fn table_one(m: f64) -> Result<Outcome, CliError> {
    let rows = table1(m).context(|| "table".into())?;
    let mut t = Table::new(
        "table1",
        &["triangle", "set", "family", "g", "formula", "figure", "n", "parity", "E/m", "chi", "l11", "l12", "l21", "l22"],
    );
    let mut doc = Vec::new();
    for row in &rows {
        let spec = &row.preset.spec;
        let triangle = match row.triangle {
            Triangle::Lower => "lower",
            Triangle::Upper => "upper",
        };
        let set = row.tag.as_str();
        let family = spec.law.family.as_str();
        let formula = format!("{set}/{family}");
        for pi in &row.interactions {
            let mut cells: Vec<Cell> = vec![triangle.into(), set.into(), family.into(), spec.law.g.into(), formula.as_str().into(), row.figure.into()];
            cells.extend(interaction_row(pi, m));
            t.push(cells);
            let l = &pi.lambda;
            doc.push(json!({
                "triangle": triangle,
                "set": set,
                "family": family,
                "vertex": vertex_name(spec.vertex),
                "alpha": spec.alpha,
                "g": spec.law.g,
                "formula": formula,
                "figure": row.figure,
                "n": pi.n,
                "limit": pi.energy / m,
                "parity": pi.parity.symbol(),
                "chi": pi.chi,
                "lambda": [[l.l11, l.l12], [l.l21, l.l22]],
            }));
        }
    }
    let summary = vec![format!("{} table rows, {} limit levels", rows.len(), doc.len())];
    Ok(Outcome {
        tables: vec![t],
        documents: vec![("table1_entries".into(), Value::Array(doc))],
        report: json!({ "rows": rows.len() }),
        summary,
        failure: None,
    })
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    if a.cases == 0 {
        return Err(usage("--cases must be at least 1"));
    }
    let checks = run(&VerifyOptions {
        seed: a.seed,
        cases: a.cases,
        det_samples: a.det_samples,
    });
    let mut t = Table::new("verify", &["check", "passed", "detail"]);
    let mut summary = Vec::new();
    for c in &checks {
        t.push(vec![c.name.as_str().into(), c.passed.into(), c.detail.as_str().into()]);
        summary.push(format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    Ok(Outcome {
        report: json!({
            "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed })).collect::<Vec<_>>(),
        }),
        failure: (!failed.is_empty()).then(|| CliError::Verification(failed.join(", "))),
        tables: vec![t],
        summary,
        documents: Vec::new(),
    })
}
