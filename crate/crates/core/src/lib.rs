//! Exact computational topology for small Δ-complexes: homology via Smith
//! normal form, fundamental-group presentations with Tietze simplification,
//! torus-knot groups and a sampled (2,3) torus knot on the 3-sphere.

pub mod delta_complex;
pub mod format;
pub mod fundamental_group;
pub mod groups;
pub mod homology;
pub mod knot_geometry;
pub mod report;
pub mod smith;
pub mod spaces;

pub use delta_complex::{CellId, ComplexError, DeltaComplex, IdentificationSpec};
pub use groups::{Presentation, Word};
pub use homology::{homology, HomologyGroup};
pub use smith::{smith_normal_form, verify_snf, IntegerMatrix, SnfResult};
