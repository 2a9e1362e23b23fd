//! Local distinguishability of small sets of orthogonal product states.
//!
//! The crate models product-state sets, computes their edge-colored
//! orthogonality graphs, builds and applies local POVMs, simulates LOCC
//! protocol trees exactly, searches for discrimination protocols and
//! certifies local indistinguishability when every party is restricted to
//! trivial orthogonality-preserving measurements.

pub mod cert;
pub mod commands;
pub mod error;
pub mod family;
pub mod generate;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod measurement;
pub mod protocol;
pub mod states;
pub mod synthesis;

pub use error::{Error, Result};
