//! Auslander-Reiten theory for finitely presented representations of quivers
//! whose finite acyclic core may be extended by infinite linear rays.

pub mod artheory;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod pathcat;
pub mod rep;
pub mod quiver;

pub use error::{Error, Result};
