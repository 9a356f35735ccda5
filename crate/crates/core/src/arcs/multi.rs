use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kernel::RibbonGraph;

use super::canonical::Arc;
use super::disjoint::arcs_disjoint;

/// Pairwise disjoint arcs, parallel copies counted by multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiArc {
    arcs: BTreeMap<Arc, usize>,
}

impl MultiArc {
    pub fn new<I: IntoIterator<Item = Arc>>(rg: &RibbonGraph, it: I) -> Result<MultiArc> {
        let mut arcs = BTreeMap::new();
        for a in it {
            if !a.is_essential(rg) {
                return Err(Error::InessentialArc);
            }
            *arcs.entry(a).or_insert(0) += 1;
        }
        let keys: Vec<&Arc> = arcs.keys().collect();
        for (i, a) in keys.iter().enumerate() {
            for b in &keys[i..] {
                if !arcs_disjoint(rg, a, b) {
                    return Err(Error::NotDisjoint);
                }
            }
        }
        Ok(MultiArc { arcs })
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.keys()
    }

    pub fn multiplicity(&self, a: &Arc) -> usize {
        self.arcs.get(a).copied().unwrap_or(0)
    }

    /// Number of arcs counted with multiplicity.
    pub fn total(&self) -> usize {
        self.arcs.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.arcs.len()
    }
}
