use pseudospin_core::boundstates::{find_bound_states, find_bound_states_with, revalidate, Parity, SolverOptions};
use pseudospin_core::model::Geometry;
use pseudospin_core::presets::{fig3, sweep_preset, SWEEP_PRESETS};
use pseudospin_core::spectra::{sweep, PencilSpec, Vertex};

fn coarse(name: &str) -> (PencilSpec, f64) {
    let p = sweep_preset(name).unwrap();
    let pencil = PencilSpec::uniform(p.pencil.vertex, p.pencil.alpha, -12.0, 12.0, 97).unwrap();
    (pencil, p.l)
}

#[test]
fn preset_sweeps_revalidate() {
    for name in SWEEP_PRESETS {
        let (pencil, l) = coarse(name);
        let spec = sweep(&pencil, &Geometry::centered(l).unwrap(), 1.0).unwrap();
        for p in &spec.points {
            let cfg = pencil.config(p.v, 1.0).unwrap();
            for s in &p.states {
                assert!(s.energy.abs() < 1.0, "{name} V={} {s:?}", p.v);
                assert!(revalidate(&cfg, l, s), "{name} V={} {s:?}", p.v);
            }
        }
        for b in &spec.branches {
            for &(v, e) in &b.points {
                let pt = spec.points.iter().find(|p| p.v == v).unwrap();
                let i = pt.branch_ids.iter().position(|&id| id == b.id).unwrap();
                assert_eq!(pt.states[i].energy, e);
                assert_eq!(pt.states[i].parity, b.parity);
            }
        }
    }
}

#[test]
fn type_d_pair_merges_with_growing_strength() {
    let (pencil, l) = coarse("fig5");
    let geom = Geometry::centered(l).unwrap();
    let target = 0.5f64.sqrt();
    let mut last = f64::INFINITY;
    for v in [5.0, 10.0, 20.0, 50.0] {
        let states = find_bound_states(&pencil.config(v, 1.0).unwrap(), &geom);
        let pick = |par: Parity| {
            states
                .iter()
                .filter(|s| s.parity == par)
                .map(|s| s.energy)
                .min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()))
                .unwrap()
        };
        let gap = (pick(Parity::Plus) - pick(Parity::Minus)).abs();
        assert!(gap <= last, "V={v}: {gap} after {last}");
        last = gap;
    }
    assert!(last < 1e-3);
}

#[test]
fn type_two_energies_follow_strength_sign() {
    let (pencil, l) = coarse("fig7");
    let geom = Geometry::centered(l).unwrap();
    for &v in pencil.v_grid.iter().filter(|v| v.abs() > 1e-9) {
        for s in find_bound_states(&pencil.config(v, 1.0).unwrap(), &geom) {
            assert_eq!(s.energy.signum(), v.signum(), "V={v} {s:?}");
        }
    }
}

#[test]
fn doubling_the_scan_grid_keeps_counts() {
    let (cfg, geom) = fig3();
    let mut cases = vec![(cfg, geom)];
    for (name, v) in [("fig4", 100.0), ("fig5", 50.0), ("fig6", 3.0), ("fig8", 100.0)] {
        let p = sweep_preset(name).unwrap();
        cases.push((p.pencil.config(v, 1.0).unwrap(), Geometry::centered(p.l).unwrap()));
    }
    for (cfg, geom) in cases {
        let base = find_bound_states(&cfg, &geom);
        let fine = find_bound_states_with(
            &cfg,
            &geom,
            &SolverOptions {
                grid_points: 8000,
                ..SolverOptions::default()
            },
        );
        assert_eq!(base.len(), fine.len(), "{cfg:?}");
        for (a, b) in base.iter().zip(&fine) {
            assert!((a.energy - b.energy).abs() < 1e-10);
        }
    }
}

#[test]
fn pencils_share_the_free_point() {
    // P1 at V = 0 is the free particle; P2 at V = 0 is the B-plane vertex.
    let geom = Geometry::centered(1.0).unwrap();
    let p1 = PencilSpec::new(Vertex::P1, [1.0, 2.0, 3.0], vec![0.0]).unwrap();
    assert!(find_bound_states(&p1.config(0.0, 1.0).unwrap(), &geom).is_empty());
    let p2 = PencilSpec::new(Vertex::P2, [1.0, 2.0, 3.0], vec![0.0]).unwrap();
    let cfg = p2.config(0.0, 1.0).unwrap();
    assert_eq!((cfg.v11(), cfg.v33()), (-1.0, 1.0));
}
