//! Command-line schema. The parsed [`RunConfig`] is also the manifest record
//! of a run, so every field serializes and round-trips.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pseudospin_core::spectra::Vertex;
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[command(name = "pseudospin", version, about = "Bands, bound states, sweeps and point limits of the pseudospin-1 Dirac well")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Directory receiving the tables and `manifest.json`.
    #[arg(long, global = true, default_value = "pseudospin-out")]
    pub out: PathBuf,
    /// Table format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Band energies over a wavenumber grid, with panel and flat-band report.
    Bands(BandsArgs),
    /// Flat-band plane membership of one configuration.
    Flat(FlatArgs),
    /// Bound states and eigenfunctions of one well.
    Boundstates(BoundStatesArgs),
    /// Bound states along a strength pencil.
    Sweep(SweepArgs),
    /// Point-interaction limits and finite-width convergence.
    Pointlimit(PointLimitArgs),
    /// Oracle cross-check and invariant suite.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bands(_) => "bands",
            Command::Flat(_) => "flat",
            Command::Boundstates(_) => "boundstates",
            Command::Sweep(_) => "sweep",
            Command::Pointlimit(_) => "pointlimit",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Three comma-separated numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Triple(pub [f64; 3]);

impl FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        match parts[..] {
            [a, b, c] if parts.iter().all(|x| x.is_finite()) => Ok(Triple([a, b, c])),
            _ => Err(format!("expected three finite numbers, got {s:?}")),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Level indices: `3`, `0,2,5` or the inclusive range `0..3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Levels(pub Vec<usize>);

impl FromStr for Levels {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = |e: std::num::ParseIntError| format!("{s:?}: {e}");
        if let Some((lo, hi)) = s.split_once("..") {
            let (lo, hi) = (lo.trim().parse::<usize>().map_err(bad)?, hi.trim().parse::<usize>().map_err(bad)?);
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            return Ok(Levels((lo..=hi).collect()));
        }
        s.split(',')
            .map(|p| p.trim().parse::<usize>().map_err(bad))
            .collect::<Result<Vec<_>, _>>()
            .map(Levels)
    }
}

/// Comma-separated positive numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Widths(pub Vec<f64>);

impl FromStr for Widths {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let ls = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if ls.iter().all(|&l| l > 0.0 && l.is_finite()) {
            Ok(Widths(ls))
        } else {
            Err(format!("widths must be positive, got {s:?}"))
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexArg {
    #[value(name = "P1")]
    P1,
    #[value(name = "P2")]
    P2,
}

impl From<VertexArg> for Vertex {
    fn from(v: VertexArg) -> Self {
        match v {
            VertexArg::P1 => Vertex::P1,
            VertexArg::P2 => Vertex::P2,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormArg {
    /// `max |ψ2| = 1`.
    Peak,
    /// Unit L² norm on the sample grid.
    L2,
    /// Unit left exterior tail.
    Exterior,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyArg {
    /// `V = g/l`.
    #[value(name = "delta")]
    Delta,
    /// `V = g (m/l²)^{1/3}`.
    #[value(name = "l-2/3", alias = "l23")]
    TwoThirds,
    /// `V = g/(l² m)`.
    #[value(name = "l2", alias = "l-2")]
    InvSquare,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetArg {
    P,
    D,
    H1,
    H2,
    W1,
    W2,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandsArgs {
    /// Bare strengths `v11,v22,v33`.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Triple,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    /// The grid spans `[-kmax, kmax]`.
    #[arg(long, default_value_t = 5.0)]
    pub kmax: f64,
    #[arg(long, default_value_t = 400)]
    pub nk: usize,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub v11: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub v22: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub v33: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundStatesArgs {
    /// Named configuration (`fig3`).
    #[arg(long, conflicts_with_all = ["v", "l"])]
    pub preset: Option<String>,
    /// Bare strengths `v11,v22,v33`.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<Triple>,
    /// Well width, centred on the origin.
    #[arg(long)]
    pub l: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    /// Energy scan points across the gap.
    #[arg(long, default_value_t = 4000)]
    pub grid: usize,
    /// Eigenfunction samples per state; 0 skips eigenfunctions.
    #[arg(long, default_value_t = 401)]
    pub samples: usize,
    /// Half-width of the sample window; defaults to the well plus five decay lengths.
    #[arg(long)]
    pub window: Option<f64>,
    #[arg(long, value_enum, default_value_t = NormArg::Peak)]
    pub norm: NormArg,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepArgs {
    /// Named pencil (`fig4` … `fig9`).
    #[arg(long, conflicts_with_all = ["vertex", "alpha", "l"])]
    pub preset: Option<String>,
    #[arg(long, value_enum, ignore_case = true)]
    pub vertex: Option<VertexArg>,
    /// Pencil direction `α1,α2,α3`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<Triple>,
    #[arg(long)]
    pub l: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub vmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub vmax: Option<f64>,
    #[arg(long)]
    pub nv: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointLimitArgs {
    /// Named study (`fig10`, `fig11`, `table1`).
    #[arg(long, conflicts_with_all = ["family", "set", "vertex", "alpha", "g", "n"])]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Spectrum species; selects a representative pencil unless `--vertex/--alpha` are given.
    #[arg(long, value_enum, ignore_case = true)]
    pub set: Option<SetArg>,
    #[arg(long, value_enum, ignore_case = true, requires = "alpha")]
    pub vertex: Option<VertexArg>,
    #[arg(long, allow_hyphen_values = true, requires = "vertex")]
    pub alpha: Option<Triple>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    /// Levels, e.g. `0..3`.
    #[arg(long)]
    pub n: Option<Levels>,
    /// Widths of a finite-well convergence study, e.g. `0.25,0.125,0.0625`.
    #[arg(long)]
    pub ls: Option<Widths>,
    /// Squeezed-eigenfunction samples per level on `[-window, window]`; 0 skips them.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 5.0)]
    pub window: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Random configurations for the oracle and eigenfunction checks.
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
    /// Random energies for the determinant check.
    #[arg(long, default_value_t = 10_000)]
    pub det_samples: usize,
}
