//! Exact cohomology-ring arithmetic and bounds on the topological complexity
//! of oriented frame bundles.
//!
//! Topological complexity is unreduced throughout: `TC(point) = 1`.

pub mod algebra;
pub mod bounds;
pub mod catalog;
pub mod cuplength;
pub mod error;
pub mod field;
pub mod golden;
pub mod linalg;
pub mod report;
pub mod ring_file;

pub use algebra::{Algebra, Element, GeneratorSpec, SparseVec};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
