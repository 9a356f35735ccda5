//! Free-group words, ends, cylinders, the ribbon-graph surface model and the
//! cyclic order on the circle at infinity.

pub mod circle;
pub mod clopen;
pub mod ribbon;
pub mod word;

pub use circle::{circle_order, lines_link, BoundaryPosition, CirclePoint, CornerPoint, EndPoint, Line};
pub use clopen::{children, end_in_cylinder, ClopenSet, Cylinder};
pub use ribbon::{RibbonGraph, RibbonSpec};
pub use word::{CyclicWord, Letter, ReducedWord};
