//! Combinatorial models of the arc graph of a surface, the sphere graph of
//! the doubled handlebody, and the maps between them.

pub mod arcs;
pub mod doubling;
pub mod error;
pub mod kernel;
pub mod projection;
pub mod spheres;
pub mod surgery;

pub use error::{Error, Result};
