//! Sorting networks and staircase Young tableaux.
//!
//! The crate covers the Edelman-Greene bijection between staircase standard
//! tableaux and sorting networks, exact uniform sampling through the
//! corner-removal chain, pattern occurrences and their disjoint counts, point
//! configurations that realise networks geometrically, and Monte Carlo
//! experiment drivers built from those pieces.

pub mod cli;
pub mod eg;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod patterns;
pub mod render;
pub mod sampler;
pub mod tableau;

pub use eg::{eg_forward, eg_inverse, validate_network, SortingNetwork};
pub use error::{Error, Result};
pub use patterns::{Pattern, Window};
pub use sampler::SeededRng;
pub use tableau::{Cell, StandardTableau, YoungDiagram};
