use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::crossing::kappa;
use super::partition::SpherePartition;

/// Pairwise disjoint, pairwise distinct spheres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereSystem {
    spheres: BTreeSet<SpherePartition>,
}

impl SphereSystem {
    pub fn new<I: IntoIterator<Item = SpherePartition>>(rank: usize, it: I) -> Result<Self> {
        let spheres: BTreeSet<SpherePartition> = it.into_iter().collect();
        if spheres.is_empty() {
            return Err(Error::EmptySystem);
        }
        let v: Vec<&SpherePartition> = spheres.iter().collect();
        for (i, p) in v.iter().enumerate() {
            for q in &v[i + 1..] {
                if kappa(rank, p, q) != 0 {
                    return Err(Error::NotDisjoint);
                }
            }
        }
        Ok(SphereSystem { spheres })
    }

    pub fn spheres(&self) -> impl Iterator<Item = &SpherePartition> {
        self.spheres.iter()
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }
}
