//! Arcs on the surface: canonical forms, disjointness, enumeration, distances.

mod canonical;
mod disjoint;
mod enumerate;
mod farey;
mod graph;
mod multi;

pub use canonical::{arc_from_lines, canonicalize_arc, Arc, ArcJson, RawArc};
pub use disjoint::{
    arcs_disjoint, arcs_disjoint_within, chords_disjoint, chords_link, is_simple, same_line,
    support_radius, Chord,
};
pub use enumerate::enumerate_arcs;
pub use farey::{farey_adjacent, slope_arc, Slope};
pub use graph::{arc_distance, ArcGraph, Distance, MAX_ADAPTIVE_BOUND};
pub use multi::MultiArc;
