//! Cube complexes, their homology and links, polygon tilings, presentation
//! complexes, and the Kan–Thurston construction with its group actions.

pub mod cat0;
pub mod complex;
pub mod error;
pub mod homology;
pub mod io;
pub mod kan_thurston;
pub mod polygon;
pub mod presentation;
pub mod sym;

pub use complex::{CellRef, CubeComplex};
pub use error::{Error, Result};
pub use sym::Sym;
