//! Named parameter sets: single wells, sweep pencils, squeezes and the
//! point-interaction table.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Geometry, PotentialConfig};
use crate::pointlimits::{limit_matrix, PointInteraction, PointSpec, SqueezeFamily, SqueezeLaw};
use crate::spectra::{PencilSpec, SpectrumTag, Vertex};

/// Strength range and resolution of the sweep presets, in units of `m`.
pub const SWEEP_RANGE: (f64, f64) = (-12.0, 12.0);
pub const SWEEP_POINTS: usize = 2400;

pub const SWEEP_PRESETS: [&str; 6] = ["fig4", "fig5", "fig6", "fig7", "fig8", "fig9"];
pub const POINT_PRESETS: [&str; 3] = ["fig10", "fig11", "table1"];

/// Single-well preset: strengths `(v11, v22, v33)` at `m = 1` and width.
pub fn fig3() -> (PotentialConfig, Geometry) {
    (
        PotentialConfig::new(3.0, 3.0, 3.0, 1.0).expect("finite strengths"),
        Geometry::centered(0.5).expect("positive width"),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPreset {
    pub name: String,
    pub pencil: PencilSpec,
    /// Well width in units of `1/m`.
    pub l: f64,
}

/// Pencil, direction and width of a sweep figure on the default grid.
pub fn sweep_preset(name: &str) -> Result<SweepPreset> {
    let (vertex, alpha, l) = match name {
        "fig4" => (Vertex::P1, [1.0, 1.0, 1.0], 0.5),
        "fig5" => (Vertex::P2, [-1.0, 1.0, -1.0], 5.0),
        "fig6" => (Vertex::P2, [1.0, 1.0, -1.0], 2.0),
        "fig7" => (Vertex::P1, [0.0, 1.0, 0.0], 2.0),
        // Its levels obey k = √(E(E - V)), which holds on P2 rather than P1.
        "fig8" => (Vertex::P2, [1.0, 0.0, 1.0], 2.5),
        "fig9" => (Vertex::P1, [2.0, 1.0, 0.0], 2.0),
        other => return Err(Error::InvalidParameter(format!("unknown sweep preset {other}"))),
    };
    Ok(SweepPreset {
        name: name.to_string(),
        pencil: PencilSpec::uniform(vertex, alpha, SWEEP_RANGE.0, SWEEP_RANGE.1, SWEEP_POINTS)?,
        l,
    })
}

/// One squeeze with the levels it is evaluated at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointPreset {
    pub spec: PointSpec,
    pub levels: Vec<usize>,
}

fn point(vertex: Vertex, alpha: [f64; 3], family: SqueezeFamily, g: f64, levels: Vec<usize>) -> PointPreset {
    PointPreset {
        spec: PointSpec {
            vertex,
            alpha,
            law: SqueezeLaw { family, g },
        },
        levels,
    }
}

/// Squeezed eigenfunction figures: type P at `g = π/2` and the four lowest
/// type-II levels at `g = 2`.
pub fn point_preset(name: &str) -> Result<PointPreset> {
    match name {
        "fig10" => Ok(point(Vertex::P1, [1.0, 1.0, 1.0], SqueezeFamily::Delta, PI / 2.0, vec![0, 1])),
        "fig11" => Ok(point(Vertex::P1, [0.0, 1.0, 0.0], SqueezeFamily::InvSquare, 2.0, vec![0, 1, 2, 3])),
        other => Err(Error::InvalidParameter(format!("unknown point preset {other}"))),
    }
}

/// Shape of a limit connection matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Triangle {
    /// `(-1)ⁿ [[1, 0], [2χ, 1]]`
    Lower,
    /// `(-1)ⁿ [[1, 2/χ], [0, 1]]`
    Upper,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub triangle: Triangle,
    pub tag: SpectrumTag,
    pub preset: PointPreset,
    /// Sweep figure whose levels realize this limit.
    pub figure: &'static str,
    pub interactions: Vec<PointInteraction>,
}

/// Every row of the point-interaction table, evaluated on a representative
/// pencil of its set with `g` inside each validity window.
pub fn table1(m: f64) -> Result<Vec<TableRow>> {
    use SqueezeFamily::*;
    let rows = [
        (Triangle::Lower, SpectrumTag::H1, point(Vertex::P2, [1.0, 1.0, -1.0], TwoThirds, 1.0, vec![1, 2, 3]), "fig6"),
        (Triangle::Lower, SpectrumTag::W1, point(Vertex::P2, [1.0, 0.0, 1.0], Delta, 2.0, vec![0]), "fig8"),
        (Triangle::Lower, SpectrumTag::W1, point(Vertex::P2, [1.0, 0.0, 1.0], InvSquare, 100.0, vec![1, 2, 3]), "fig8"),
        (Triangle::Upper, SpectrumTag::H2, point(Vertex::P1, [0.0, 1.0, 0.0], Delta, 2.0, vec![0]), "fig7"),
        (Triangle::Upper, SpectrumTag::H2, point(Vertex::P1, [0.0, 1.0, 0.0], InvSquare, 2.0, vec![1, 2, 3]), "fig7"),
        (Triangle::Upper, SpectrumTag::W2, point(Vertex::P1, [2.0, 1.0, 0.0], Delta, -2.0, vec![0]), "fig9"),
        (Triangle::Upper, SpectrumTag::W2, point(Vertex::P1, [2.0, 1.0, 0.0], InvSquare, -20.0, vec![1, 2]), "fig9"),
    ];
    rows.into_iter()
        .map(|(triangle, tag, preset, figure)| {
            let interactions = preset
                .levels
                .iter()
                .map(|&n| limit_matrix(&preset.spec, n, m))
                .collect::<Result<Vec<_>>>()?;
            Ok(TableRow {
                triangle,
                tag,
                preset,
                figure,
                interactions,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::classify;

    #[test]
    fn sweep_presets_resolve() {
        let tags = ["P", "D", "H1", "H2", "W1", "W2"];
        for (name, tag) in SWEEP_PRESETS.iter().zip(tags) {
            let p = sweep_preset(name).unwrap();
            assert_eq!(classify(&p.pencil).tag.as_str(), tag, "{name}");
            assert_eq!(p.pencil.v_grid.len(), SWEEP_POINTS);
        }
        assert!(sweep_preset("fig12").is_err());
    }

    #[test]
    fn table_rows_have_declared_shape() {
        for row in table1(1.0).unwrap() {
            let spec = &row.preset.spec;
            let pencil = PencilSpec::new(spec.vertex, spec.alpha, vec![0.0]).unwrap();
            assert_eq!(classify(&pencil).tag, row.tag);
            for pi in &row.interactions {
                let sign = if pi.n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(pi.lambda.l11, sign);
                assert_eq!(pi.lambda.l22, sign);
                match row.triangle {
                    Triangle::Lower => assert!(pi.lambda.l12 == 0.0 && (pi.lambda.l21 - sign * 2.0 * pi.chi).abs() < 1e-15),
                    Triangle::Upper => assert!(pi.lambda.l21 == 0.0 && (pi.lambda.l12 - sign * 2.0 / pi.chi).abs() < 1e-15),
                }
            }
        }
    }

    #[test]
    fn point_presets_have_declared_levels() {
        let p = point_preset("fig10").unwrap();
        let e = limit_matrix(&p.spec, 0, 1.0).unwrap().energy;
        assert!((e - (PI / 4.0).sin()).abs() < 1e-15);
        let p = point_preset("fig11").unwrap();
        assert_eq!(p.levels, vec![0, 1, 2, 3]);
        assert!(point_preset("table1").is_err());
    }
}
