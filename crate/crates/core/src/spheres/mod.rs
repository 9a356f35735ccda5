//! Spheres in the doubled handlebody as bipartitions of the end space.

mod crossing;
mod enumerate;
mod graph;
mod partition;
mod system;

pub use crossing::{
    certified_radius, crossing_candidates, crossing_translates, crosses, is_embedded,
    is_embedded_within, kappa, kappa_within, sided_cross, translate_crosses, CrossingOrbit, Sided,
};
pub(crate) use crossing::crossing_witness;
pub use enumerate::enumerate_spheres;
pub use graph::{sphere_distance, SphereGraph};
pub use partition::{canonicalize_sphere, SphereJson, SpherePartition};
pub use system::SphereSystem;
