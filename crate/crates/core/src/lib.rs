//! Exact engine for finite simplicial complexes.

pub mod complex;
pub mod error;
pub mod face;
pub mod grape;
pub mod graph;
pub mod homology;
pub mod homotopy;
pub mod report;
pub mod snf;
pub mod verify;

pub use complex::{Complex, ComplexJson};
pub use error::{Error, Result};
pub use face::{Face, GroundSet};
pub use grape::{check_grape, verify_certificate, GrapeOptions, GrapeVariant, GrapeVerdict, ShClass};
pub use report::Status;
