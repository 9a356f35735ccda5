use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::kernel::{ReducedWord, RibbonGraph};

use super::canonical::{canonicalize_arc, Arc, RawArc};
use super::disjoint::is_simple;

/// All simple essential arcs of complexity at most `max_complexity`.
///
/// A canonical arc is reached from the raw description with the same
/// slots, so raws with connectors up to length `max_complexity - 1` suffice.
pub fn enumerate_arcs(rg: &RibbonGraph, max_complexity: usize) -> BTreeSet<Arc> {
    if max_complexity == 0 {
        return BTreeSet::new();
    }
    let words = ReducedWord::ball(rg.rank(), max_complexity - 1);
    let mut slots = Vec::new();
    for i in 0..rg.boundary_count() {
        for s in 0..rg.period(i) {
            slots.push((i, s as i64));
        }
    }
    let found: BTreeSet<Arc> = words
        .par_iter()
        .flat_map_iter(|w| {
            let mut out = Vec::new();
            for &from in &slots {
                for &to in &slots {
                    let raw = RawArc::new(from, w.clone(), to);
                    let a = canonicalize_arc(rg, &raw).expect("slots in range");
                    if a.complexity() <= max_complexity {
                        out.push(a);
                    }
                }
            }
            out
        })
        .collect();
    found
        .into_par_iter()
        .filter(|a| a.is_essential(rg) && is_simple(rg, a))
        .collect()
}
