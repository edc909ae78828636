//! Exact standard bases over local and global polynomial rings, and the
//! singularity invariants of frontal map germs and wave fronts built on them.

pub mod cli;
pub mod derlog;
pub mod error;
pub mod genfam;
pub mod germ;
pub mod invariants;
pub mod ring;
pub mod stdbasis;

pub use error::{Error, Result};
