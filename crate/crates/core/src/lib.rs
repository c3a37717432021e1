//! Moore complexes of simplicial groups, Peiffer pairings and homotopy
//! computations for small models.

pub mod config;
pub mod error;
pub mod exec;
pub mod fp_group;
pub mod homotopy;
pub mod simplex_maps;
pub mod peiffer;
pub mod simplicial;

pub use config::Bounds;
pub use error::{Error, Result};
pub use exec::Exec;
