//! Bands, bound states, strength sweeps and point-interaction limits for the
//! one-dimensional pseudospin-1 Dirac Hamiltonian with a rectangular
//! three-component potential. Energies are in units of the mass `m`.

pub mod bands;
pub mod boundstates;
pub mod error;
pub mod model;
pub mod oracle;
pub mod pointlimits;
pub mod presets;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
