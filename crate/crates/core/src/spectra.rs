//! Strength sweeps along the two pencils of lines, branch tracking, spectrum
//! classification and the large-strength closed forms.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundstates::{find_bound_states, BoundStateSolution, Parity};
use crate::error::{Error, Result};
use crate::model::{Geometry, PotentialConfig};

/// Common point of a pencil: the origin of bare strengths (`P1`) or the point
/// where all renormalized strengths vanish (`P2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Vertex {
    P1,
    P2,
}

/// A line of strengths through a vertex, sampled at `v_grid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PencilSpec {
    pub vertex: Vertex,
    pub alpha: [f64; 3],
    pub v_grid: Vec<f64>,
}

impl PencilSpec {
    pub fn new(vertex: Vertex, alpha: [f64; 3], v_grid: Vec<f64>) -> Result<Self> {
        if alpha.iter().chain(&v_grid).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("pencil entries must be finite".into()));
        }
        if v_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("strength grid must be strictly increasing".into()));
        }
        Ok(Self { vertex, alpha, v_grid })
    }

    /// `n` equally spaced strengths on `[lo, hi]`.
    pub fn uniform(vertex: Vertex, alpha: [f64; 3], lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 || hi <= lo {
            return Err(Error::InvalidParameter("need n >= 2 and hi > lo".into()));
        }
        let grid = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        Self::new(vertex, alpha, grid)
    }

    /// Potential at strength `v`.
    pub fn config(&self, v: f64, m: f64) -> Result<PotentialConfig> {
        let [a1, a2, a3] = self.alpha;
        match self.vertex {
            Vertex::P1 => PotentialConfig::new(a1 * v, a2 * v, a3 * v, m),
            Vertex::P2 => PotentialConfig::from_renormalized(a1 * v, a2 * v, a3 * v, m),
        }
    }

    /// Renormalized strengths `(v1, v2, v3)` as affine functions `c + α V`; returns `c`.
    fn offsets(&self, m: f64) -> [f64; 3] {
        match self.vertex {
            Vertex::P1 => [m, 0.0, -m],
            Vertex::P2 => [0.0; 3],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectrumTag {
    P,
    D,
    H1,
    H2,
    W1,
    W2,
    Unclassified,
}

impl SpectrumTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumTag::P => "P",
            SpectrumTag::D => "D",
            SpectrumTag::H1 => "H1",
            SpectrumTag::H2 => "H2",
            SpectrumTag::W1 => "W1",
            SpectrumTag::W2 => "W2",
            SpectrumTag::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumType {
    pub tag: SpectrumTag,
    /// `2α1α3/(α1 + α3)` when `α1 + α3 ≠ 0`.
    pub beta: Option<f64>,
}

/// Spectrum species of a pencil from its coefficients alone.
pub fn classify(pencil: &PencilSpec) -> SpectrumType {
    let [a1, a2, a3] = pencil.alpha;
    let sum = a1 + a3;
    let beta = (sum != 0.0).then(|| 2.0 * a1 * a3 / sum);
    let p1 = pencil.vertex == Vertex::P1;
    let tag = if a1 != 0.0 && a2 != 0.0 && a3 != 0.0 && sum != 0.0 {
        if a1 * a3 / sum > 0.0 {
            SpectrumTag::P
        } else {
            SpectrumTag::D
        }
    } else if a1 != 0.0 && a1 == -a3 && a2 != 0.0 {
        SpectrumTag::H1
    } else if p1 && a1 == 0.0 && a3 == 0.0 && a2 != 0.0 {
        SpectrumTag::H2
    } else if a1 != 0.0 && a3 != 0.0 && sum != 0.0 && a2 == 0.0 {
        SpectrumTag::W1
    } else if p1 && a1 > 0.0 && a2 != 0.0 && a3 == 0.0 {
        SpectrumTag::W2
    } else {
        SpectrumTag::Unclassified
    };
    SpectrumType { tag, beta }
}

/// Bound states at one strength, with the branch each belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub v: f64,
    pub states: Vec<BoundStateSolution>,
    pub branch_ids: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub id: usize,
    pub parity: Parity,
    /// `(V, E)` pairs on consecutive grid strengths.
    pub points: Vec<(f64, f64)>,
}

impl Branch {
    fn slope(&self) -> Option<f64> {
        let n = self.points.len();
        (n >= 2).then(|| {
            let (a, b) = (self.points[n - 2], self.points[n - 1]);
            ((b.1 - a.1) / (b.0 - a.0)).abs()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    Appearance,
    Disappearance,
}

/// A branch starting or ending strictly inside the strength grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEvent {
    pub kind: EventKind,
    pub v: f64,
    pub energy: f64,
    pub parity: Parity,
    pub branch: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchedSpectrum {
    pub pencil: PencilSpec,
    pub kind: SpectrumType,
    pub l: f64,
    pub m: f64,
    pub points: Vec<SweepPoint>,
    pub branches: Vec<Branch>,
    pub events: Vec<SpectrumEvent>,
}

impl BranchedSpectrum {
    /// Number of bound states at each grid strength.
    pub fn counts(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.states.len()).collect()
    }
}

/// Solves every grid strength, then links states into branches.
///
/// A state continues the branch of the same parity whose last energy is
/// nearest, provided the jump stays within `5 ΔV` times the branch's recent
/// slope (at least one). Leftovers open new branches.
pub fn sweep(pencil: &PencilSpec, geom: &Geometry, m: f64) -> Result<BranchedSpectrum> {
    let configs = pencil
        .v_grid
        .iter()
        .map(|&v| pencil.config(v, m))
        .collect::<Result<Vec<_>>>()?;
    let solved: Vec<Vec<BoundStateSolution>> = configs.par_iter().map(|c| find_bound_states(c, geom)).collect();

    let mut branches: Vec<Branch> = Vec::new();
    let mut events = Vec::new();
    let mut points: Vec<SweepPoint> = Vec::with_capacity(solved.len());
    let mut active: Vec<usize> = Vec::new();
    for (i, states) in solved.into_iter().enumerate() {
        let v = pencil.v_grid[i];
        let mut ids = vec![usize::MAX; states.len()];
        if i > 0 {
            let dv = v - pencil.v_grid[i - 1];
            let mut pairs = Vec::new();
            for &b in &active {
                let br = &branches[b];
                let last = br.points.last().expect("active branches are non-empty").1;
                let tol = 5.0 * dv * br.slope().unwrap_or(1.0).max(1.0);
                for (j, s) in states.iter().enumerate() {
                    let d = (s.energy - last).abs();
                    if s.parity == br.parity && d <= tol {
                        pairs.push((d, b, j));
                    }
                }
            }
            pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut taken = vec![false; branches.len()];
            for (_, b, j) in pairs {
                if !taken[b] && ids[j] == usize::MAX {
                    taken[b] = true;
                    ids[j] = b;
                }
            }
            for &b in &active {
                if !taken[b] {
                    let (bv, be) = *branches[b].points.last().expect("non-empty");
                    events.push(SpectrumEvent {
                        kind: EventKind::Disappearance,
                        v: bv,
                        energy: be,
                        parity: branches[b].parity,
                        branch: b,
                    });
                }
            }
        }
        for (j, s) in states.iter().enumerate() {
            if ids[j] == usize::MAX {
                ids[j] = branches.len();
                branches.push(Branch {
                    id: ids[j],
                    parity: s.parity,
                    points: Vec::new(),
                });
                if i > 0 {
                    events.push(SpectrumEvent {
                        kind: EventKind::Appearance,
                        v,
                        energy: s.energy,
                        parity: s.parity,
                        branch: ids[j],
                    });
                }
            }
            branches[ids[j]].points.push((v, s.energy));
        }
        active = ids.clone();
        points.push(SweepPoint { v, states, branch_ids: ids });
    }
    Ok(BranchedSpectrum {
        kind: classify(pencil),
        pencil: pencil.clone(),
        l: geom.l(),
        m,
        points,
        branches,
        events,
    })
}

/// A closed-form level; `n` is `None` for the two-branch P and D forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticLevel {
    pub n: Option<usize>,
    pub parity: Parity,
    pub energy: f64,
}

fn parity_of(odd_is_plus: bool, n: usize) -> Parity {
    if (n % 2 == 1) == odd_is_plus {
        Parity::Plus
    } else {
        Parity::Minus
    }
}

/// Large-strength approximation to the levels of `pencil` at strength `v`.
///
/// P and D give both parity branches and ignore `n`; the H and W species need
/// a level index (`n = 0` is the ground form where one exists; H1 starts at 1).
pub fn asymptotic_energy(pencil: &PencilSpec, v: f64, l: f64, m: f64, n: Option<usize>) -> Result<Vec<AsymptoticLevel>> {
    let ty = classify(pencil);
    let [a1, a2, _] = pencil.alpha;
    let need_n = || n.ok_or_else(|| Error::TypeMismatch(format!("{} needs a level index", ty.tag.as_str())));
    let level = |n: usize, parity: Parity, energy: f64| {
        Ok(vec![AsymptoticLevel {
            n: Some(n),
            parity,
            energy,
        }])
    };
    match ty.tag {
        SpectrumTag::P => {
            let beta = ty.beta.expect("type P has beta");
            let x = beta.sqrt() * v * l / 2.0;
            let t = x.tan();
            let sign = t.signum();
            Ok(vec![
                AsymptoticLevel {
                    n: None,
                    parity: Parity::Plus,
                    energy: sign * m / (1.0 + beta / (t * t)).sqrt(),
                },
                AsymptoticLevel {
                    n: None,
                    parity: Parity::Minus,
                    energy: -sign * m / (1.0 + beta * t * t).sqrt(),
                },
            ])
        }
        SpectrumTag::D => {
            let beta = ty.beta.expect("type D has beta");
            let x = (-beta).sqrt() * v * l / 2.0;
            let th = x.tanh();
            let s = v.signum();
            Ok(vec![
                AsymptoticLevel {
                    n: None,
                    parity: Parity::Plus,
                    energy: s * m / (1.0 - beta / (th * th)).sqrt(),
                },
                AsymptoticLevel {
                    n: None,
                    parity: Parity::Minus,
                    energy: s * m / (1.0 - beta * th * th).sqrt(),
                },
            ])
        }
        SpectrumTag::H1 => {
            let n = need_n()?;
            if n == 0 {
                return Err(Error::TypeMismatch("H1 levels start at n = 1".into()));
            }
            let q = l / (n as f64 * PI);
            level(n, parity_of(true, n), a1 * a1 * a2 * q * q * v.powi(3))
        }
        SpectrumTag::H2 => {
            let n = need_n()?;
            let w = a2 * v;
            let e = if n == 0 {
                w.signum() * m / (1.0 + (2.0 / (w * l)).powi(2)).sqrt()
            } else {
                let q2 = (n as f64 * PI / l).powi(2);
                w.signum() * (q2 * q2 / (4.0 * w * w) + m * m).sqrt() - q2 / (2.0 * w)
            };
            level(n, parity_of(false, n), e)
        }
        SpectrumTag::W1 => {
            let n = need_n()?;
            let beta = ty.beta.expect("type W1 has beta");
            if n == 0 {
                let e = -(beta * v).signum() * m / (1.0 + (beta * v * l / 2.0).powi(2)).sqrt();
                return level(0, Parity::Minus, e);
            }
            let q2 = (n as f64 * PI / l).powi(2);
            level(n, parity_of(true, n), -q2 / (beta * v))
        }
        SpectrumTag::W2 => {
            let n = need_n()?;
            if n == 0 {
                let e = if v < 0.0 {
                    -m / (1.0 + 4.0 / (v * v * l * l)).sqrt()
                } else {
                    m / (1.0 + 2.0 * a1 * m / v).sqrt()
                };
                return level(0, Parity::Plus, e);
            }
            let q2 = (n as f64 * PI / l).powi(2);
            level(n, parity_of(false, n), -(m + q2 / (a1 * v)))
        }
        SpectrumTag::Unclassified => Err(Error::TypeMismatch("unclassified".into())),
    }
}

/// Strength at which level `n` touches a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cutoff {
    pub n: usize,
    pub v: f64,
    /// `+m` or `-m`.
    pub threshold: f64,
    pub parity: Parity,
}

/// Real roots of `c[0] + c[1] x + c[2] x² + c[3] x³`, ascending.
fn real_roots(c: [f64; 4]) -> Vec<f64> {
    let scale = c.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let deg = (0..4).rev().find(|&i| c[i].abs() > 1e-14 * scale).unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    let p = |x: f64| ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
    // Critical points split the line into monotone pieces.
    let mut cuts = Vec::new();
    if deg == 3 {
        let (a, b, cc) = (3.0 * c[3], 2.0 * c[2], c[1]);
        let disc = b * b - 4.0 * a * cc;
        if disc > 0.0 {
            let r = disc.sqrt();
            cuts.push((-b - r) / (2.0 * a));
            cuts.push((-b + r) / (2.0 * a));
        }
    } else if deg == 2 {
        cuts.push(-c[1] / (2.0 * c[2]));
    }
    cuts.sort_by(f64::total_cmp);
    let bound = 1.0 + (0..deg).map(|i| (c[i] / c[deg]).abs()).fold(0.0, f64::max);
    let mut edges = vec![-bound];
    edges.extend(cuts.into_iter().filter(|x| x.abs() < bound));
    edges.push(bound);
    let mut out: Vec<f64> = Vec::new();
    for w in edges.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (p(a), p(b));
        if fa == 0.0 {
            out.push(a);
            continue;
        }
        if (fa > 0.0) == (fb > 0.0) {
            continue;
        }
        loop {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if (p(mid) > 0.0) == (fa > 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    if p(bound) == 0.0 {
        out.push(bound);
    }
    out.dedup_by(|b, a| (*a - *b).abs() <= 1e-12 * bound);
    out
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Strengths at which level `n ≥ 1` meets a threshold.
///
/// H1: roots of `k²(E = ±m) l² = (nπ)²`, a cubic in `V`. W1 and W2: the
/// detachment strengths `±(nπ/l)²/(|β| m)` and `-(nπ/l)²/(2α m)`.
pub fn cutoff_values(pencil: &PencilSpec, l: f64, m: f64, n: usize) -> Result<Vec<Cutoff>> {
    if n == 0 || l <= 0.0 {
        return Err(Error::InvalidParameter("need n >= 1 and l > 0".into()));
    }
    let ty = classify(pencil);
    let q2 = (n as f64 * PI / l).powi(2);
    let mut out = Vec::new();
    match ty.tag {
        SpectrumTag::H1 => {
            let c = pencil.offsets(m);
            let a = pencil.alpha;
            let s = 0.5 * (a[0] + a[2]);
            for t in [-m, m] {
                // (t - v1)(t - v2)(t - v3) = (nπ/l)² (t - va), each factor linear in V.
                let mut prod = vec![1.0];
                for j in 0..3 {
                    prod = poly_mul(&prod, &[t - c[j], -a[j]]);
                }
                let coeffs = [prod[0] - q2 * t, prod[1] + q2 * s, prod[2], prod[3]];
                for v in real_roots(coeffs) {
                    if (t - s * v).abs() > 1e-12 * m {
                        out.push(Cutoff {
                            n,
                            v,
                            threshold: t,
                            parity: parity_of(true, n),
                        });
                    }
                }
            }
        }
        SpectrumTag::W1 => {
            let beta = ty.beta.expect("type W1 has beta");
            let v = q2 / (beta.abs() * m);
            for v in [-v, v] {
                let e = -q2 / (beta * v);
                out.push(Cutoff {
                    n,
                    v,
                    threshold: e.signum() * m,
                    parity: parity_of(true, n),
                });
            }
        }
        SpectrumTag::W2 => {
            out.push(Cutoff {
                n,
                v: -q2 / (2.0 * pencil.alpha[0] * m),
                threshold: -m,
                parity: parity_of(false, n),
            });
        }
        other => {
            return Err(Error::TypeMismatch(format!("{} has no cutoffs", other.as_str())));
        }
    }
    out.sort_by(|a, b| a.v.total_cmp(&b.v));
    Ok(out)
}
