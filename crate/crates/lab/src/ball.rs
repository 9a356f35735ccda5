use std::collections::{BTreeMap, BTreeSet};

use dhl_core::arcs::{enumerate_arcs, Arc, ArcGraph, Distance};
use dhl_core::doubling::iota;
use dhl_core::kernel::RibbonGraph;
use dhl_core::projection::phi_all;
use dhl_core::spheres::{enumerate_spheres, SphereGraph, SpherePartition};
use rayon::prelude::*;

use crate::config::CampaignConfig;
use crate::error::LabError;
use crate::report::Exactness;

/// The enumerated region both graphs are explored in.
///
/// Spheres: the enumeration ball, the doubles of all arcs up to the arc
/// complexity cap, and the doubles of `φ` over every admissible matching
/// of everything enumerated. Arcs: the
/// arc ball up to the completeness bound together with every `φ` output.
pub struct Ball {
    pub rg: RibbonGraph,
    pub arcs: ArcGraph,
    pub spheres: SphereGraph,
    /// Spheres from the enumeration proper.
    pub enumerated: BTreeSet<SpherePartition>,
    /// The doubled arcs present in the ball, with their arcs.
    pub doubled: BTreeMap<SpherePartition, Arc>,
    /// `φ` over every admissible matching, per sphere index.
    pub phi: Vec<BTreeSet<Arc>>,
    cap: u32,
    arc_dist: Vec<Vec<Option<u32>>>,
    sphere_dist: Vec<Vec<Option<u32>>>,
}

fn exactness(d: Distance) -> Exactness {
    match d {
        Distance::Exact(_) => Exactness::Exact,
        Distance::UpperBound(_) => Exactness::UpperBound,
        Distance::ExceedsCap => Exactness::Uncertified,
    }
}

/// Worse of two exactness levels.
pub fn weaker(a: Exactness, b: Exactness) -> Exactness {
    use Exactness::*;
    match (a, b) {
        (Uncertified, _) | (_, Uncertified) => Uncertified,
        (UpperBound, _) | (_, UpperBound) => UpperBound,
        _ => Exact,
    }
}

impl Ball {
    pub fn build(rg: RibbonGraph, c: &CampaignConfig) -> Result<Ball, LabError> {
        let rank = rg.rank();
        let enumerated = enumerate_spheres(rank, c.radius, c.max_cylinders);
        let base_arcs = enumerate_arcs(&rg, c.arc_complexity.max(c.arc_bound));
        let mut doubled = BTreeMap::new();
        for a in base_arcs.iter().filter(|a| a.complexity() <= c.arc_complexity) {
            doubled.insert(iota(&rg, a)?, a.clone());
        }
        let projected = enumerated
            .par_iter()
            .map(|p| phi_all(&rg, p))
            .collect::<Result<Vec<_>, _>>()?;
        let known: BTreeSet<Arc> = doubled.values().cloned().collect();
        let fresh: BTreeSet<Arc> = projected
            .into_iter()
            .flatten()
            .filter(|a| !known.contains(a))
            .collect();
        for a in fresh {
            doubled.insert(iota(&rg, &a)?, a);
        }
        let mut all: BTreeSet<SpherePartition> = enumerated.clone();
        all.extend(doubled.keys().cloned());
        let spheres = SphereGraph::from_spheres(rank, c.radius, all);
        let phi = spheres
            .spheres()
            .par_iter()
            .map(|p| phi_all(&rg, p))
            .collect::<Result<Vec<_>, _>>()?;
        let mut arc_set: BTreeSet<Arc> = base_arcs
            .into_iter()
            .filter(|a| a.complexity() <= c.arc_bound)
            .collect();
        arc_set.extend(doubled.values().cloned());
        for f in &phi {
            arc_set.extend(f.iter().cloned());
        }
        let arcs = ArcGraph::from_arcs(&rg, c.arc_bound, arc_set);
        let cap = c.cap;
        let arc_dist = (0..arcs.len()).into_par_iter().map(|i| arcs.bfs(i, cap)).collect();
        let sphere_dist = (0..spheres.len())
            .into_par_iter()
            .map(|i| spheres.bfs(i, cap))
            .collect();
        Ok(Ball {
            rg,
            arcs,
            spheres,
            enumerated,
            doubled,
            phi,
            cap,
            arc_dist,
            sphere_dist,
        })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn rank(&self) -> usize {
        self.rg.rank()
    }

    pub fn sphere_index(&self, p: &SpherePartition) -> Option<usize> {
        self.spheres.index_of(p)
    }

    pub fn arc_distance(&self, a: &Arc, b: &Arc) -> Distance {
        let (Some(i), Some(j)) = (self.arcs.index_of(a), self.arcs.index_of(b)) else {
            return Distance::ExceedsCap;
        };
        match self.arc_dist[i][j] {
            Some(d) => self.arcs.certify(d, a, b),
            None => Distance::ExceedsCap,
        }
    }

    pub fn sphere_distance(&self, p: &SpherePartition, q: &SpherePartition) -> Distance {
        let (Some(i), Some(j)) = (self.sphere_index(p), self.sphere_index(q)) else {
            return Distance::ExceedsCap;
        };
        self.sphere_distance_idx(i, j)
    }

    pub fn sphere_distance_idx(&self, i: usize, j: usize) -> Distance {
        match self.sphere_dist[i][j] {
            Some(d) => self.spheres.certify(d, &self.spheres.spheres()[i], &self.spheres.spheres()[j]),
            None => Distance::ExceedsCap,
        }
    }

    /// Largest pairwise arc distance, with the weakest exactness involved.
    pub fn arc_diameter<'a, I>(&self, set: I) -> (i64, Exactness)
    where
        I: IntoIterator<Item = &'a Arc>,
    {
        let v: Vec<&Arc> = set.into_iter().collect();
        let mut best = 0i64;
        let mut ex = Exactness::Exact;
        for (i, a) in v.iter().enumerate() {
            for b in &v[i + 1..] {
                let d = self.arc_distance(a, b);
                ex = weaker(ex, exactness(d));
                if let Some(x) = d.value() {
                    best = best.max(x as i64);
                }
            }
        }
        (best, ex)
    }

    /// Largest pairwise sphere distance. Doubling is 1-Lipschitz, so arc
    /// distances between the underlying arcs bound sphere distances of
    /// doubled spheres; the smaller upper bound is used.
    pub fn sphere_diameter<'a, I>(&self, set: I) -> (i64, Exactness)
    where
        I: IntoIterator<Item = &'a SpherePartition>,
    {
        let v: Vec<&SpherePartition> = set.into_iter().collect();
        let mut best = 0i64;
        let mut ex = Exactness::Exact;
        for (i, p) in v.iter().enumerate() {
            for q in &v[i + 1..] {
                let (d, e) = self.sphere_pair_bound(p, q);
                ex = weaker(ex, e);
                best = best.max(d);
            }
        }
        (best, ex)
    }

    fn sphere_pair_bound(&self, p: &SpherePartition, q: &SpherePartition) -> (i64, Exactness) {
        let direct = self.sphere_distance(p, q);
        if let Distance::Exact(d) = direct {
            return (d as i64, Exactness::Exact);
        }
        let via_arcs = match (self.doubled.get(p), self.doubled.get(q)) {
            (Some(a), Some(b)) => self.arc_distance(a, b).value(),
            _ => None,
        };
        match (direct.value(), via_arcs) {
            (None, None) => (0, Exactness::Uncertified),
            (x, y) => (
                x.into_iter().chain(y).min().expect("one is present") as i64,
                Exactness::UpperBound,
            ),
        }
    }
}

/// The doubled arcs of the ball closest to `p` in the sphere graph.
///
/// The minimum distance has to be certified; otherwise a closer doubled
/// arc could lie outside the ball.
pub fn nearest_point_projection(
    p: &SpherePartition,
    ball: &Ball,
) -> Result<BTreeSet<SpherePartition>, LabError> {
    let i = ball.sphere_index(p).ok_or(LabError::NoCertifiedDistance)?;
    let mut best: Option<u32> = None;
    let mut out = BTreeSet::new();
    for q in ball.doubled.keys() {
        let j = ball.sphere_index(q).expect("doubled spheres are in the ball");
        let Some(d) = ball.sphere_dist[i][j] else {
            continue;
        };
        match best {
            Some(b) if d > b => {}
            Some(b) if d == b => {
                out.insert(q.clone());
            }
            _ => {
                best = Some(d);
                out = BTreeSet::from([q.clone()]);
            }
        }
    }
    let Some(d) = best else {
        return Err(LabError::NoCertifiedDistance);
    };
    // every member realizes the same distance, so certify against each
    let certified = out
        .iter()
        .all(|q| matches!(ball.spheres.certify(d, p, q), Distance::Exact(_)));
    if !certified {
        return Err(LabError::NoCertifiedDistance);
    }
    Ok(out)
}
