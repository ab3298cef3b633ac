//! Exact-arithmetic Kac–Moody algebras, truncated weight modules, and
//! parabolic restriction and induction functors.

pub mod analysis;
pub mod cartan;
pub mod error;
pub mod gla;
pub mod linalg;
pub mod pind;
pub mod rational;
pub mod report;
pub mod wmod;

pub use error::{Error, Result};
pub use rational::Q;

/// Recorded in dumped tables and reports.
pub const ENGINE_VERSION: &str = concat!("minind-", env!("CARGO_PKG_VERSION"));
