//! Surgery of one sphere along innermost discs of another.
//!
//! The circles of `P ∩ Q` correspond to translates `g` with `g·X` crossing
//! the side `Y` of `Q`. The circle of `g` cuts the lift of `Q` into two
//! discs, one on each side `s ∈ {gX, gX*}`. Every other crossing lift lies
//! on exactly one side of `g·X`, and the disc on side `s` is innermost when
//! none lies on that side. Surgery along it yields a sphere bounding one of
//! the corners `s ∩ Y` or `s ∩ Y*`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{ClopenSet, RibbonGraph};
use crate::spheres::{
    canonicalize_sphere, crossing_translates, crossing_witness, is_embedded, kappa, CrossingOrbit,
    Sided, SpherePartition,
};

/// Which half of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Half {
    Side,
    Complement,
}

/// A disc of the target's lift bounded by the circle of `orbit`, lying on
/// half `p_half` of `g·X`, together with the corner the surgery keeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disc {
    pub orbit: CrossingOrbit,
    pub p_half: Half,
    pub q_half: Half,
}

#[derive(Clone, Debug)]
pub struct SurgeryStep {
    pub before: SpherePartition,
    pub disc: Disc,
    pub after: SpherePartition,
}

#[derive(Clone, Debug)]
pub struct SurgeryPath {
    pub source: SpherePartition,
    pub target: SpherePartition,
    pub steps: Vec<SurgeryStep>,
}

impl SurgeryPath {
    /// All spheres along the path, source first, target last.
    pub fn spheres(&self) -> Vec<SpherePartition> {
        let mut out = vec![self.source.clone()];
        out.extend(self.steps.iter().map(|s| s.after.clone()));
        if out.last() != Some(&self.target) {
            out.push(self.target.clone());
        }
        out
    }

    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.spheres().len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.source == self.target
    }
}

fn half<'a>(s: &'a Sided, h: Half) -> &'a ClopenSet {
    match h {
        Half::Side => &s.side,
        Half::Complement => &s.comp,
    }
}

/// A circle of `P ∩ Q` with the circles nested inside each of its discs.
#[derive(Clone, Debug)]
pub struct Circle {
    pub orbit: CrossingOrbit,
    /// Indices of the other circles on the side and complement halves.
    pub inside_side: Vec<usize>,
    pub inside_complement: Vec<usize>,
}

/// One circle per crossing orbit, with the nesting relation between them.
pub fn crossing_orbits(rank: usize, p: &SpherePartition, q: &SpherePartition) -> Vec<Circle> {
    let x = Sided::of(rank, p);
    let y = Sided::of(rank, q);
    let gs = crossing_translates(rank, &x, &y);
    let translated: Vec<(ClopenSet, ClopenSet)> = gs
        .iter()
        .map(|g| (x.side.translate(g, rank), x.comp.translate(g, rank)))
        .collect();
    gs.iter()
        .enumerate()
        .map(|(i, g)| {
            let orbit = crossing_witness(rank, &x, g, &y).expect("crossing translate");
            let (gs_side, gs_comp) = &translated[i];
            let mut inside_side = Vec::new();
            let mut inside_complement = Vec::new();
            for (j, (hs, hc)) in translated.iter().enumerate() {
                if j == i {
                    continue;
                }
                if hs.is_subset_of(gs_side, rank) || hc.is_subset_of(gs_side, rank) {
                    inside_side.push(j);
                } else if hs.is_subset_of(gs_comp, rank) || hc.is_subset_of(gs_comp, rank) {
                    inside_complement.push(j);
                }
            }
            Circle {
                orbit,
                inside_side,
                inside_complement,
            }
        })
        .collect()
}

fn corner(rank: usize, p: &SpherePartition, q: &SpherePartition, d: &Disc) -> ClopenSet {
    let x = Sided::of(rank, p);
    let y = Sided::of(rank, q);
    let s = half(&x, d.p_half).translate(&d.orbit.g, rank);
    s.intersect(half(&y, d.q_half), rank)
}

/// The sphere obtained by surgering `p` along `disc` of `q`, validated.
pub fn surger(
    rank: usize,
    p: &SpherePartition,
    q: &SpherePartition,
    disc: &Disc,
) -> Result<SpherePartition> {
    let side = corner(rank, p, q, disc);
    if !side.is_proper() {
        return Err(Error::ModelViolation("surgery corner is improper".into()));
    }
    if !is_embedded(rank, &side) {
        return Err(Error::ModelViolation(format!(
            "surgery corner {side:?} is not embedded"
        )));
    }
    let out = canonicalize_sphere(rank, &side)?;
    if kappa(rank, &out, p) != 0 {
        return Err(Error::ModelViolation(
            "surgered sphere crosses its predecessor".into(),
        ));
    }
    Ok(out)
}

/// Innermost discs: circles with a half containing no other circle.
pub fn innermost_halves(circles: &[Circle]) -> Vec<(CrossingOrbit, Half)> {
    let mut out = Vec::new();
    for c in circles {
        if c.inside_side.is_empty() {
            out.push((c.orbit.clone(), Half::Side));
        }
        if c.inside_complement.is_empty() {
            out.push((c.orbit.clone(), Half::Complement));
        }
    }
    out
}

/// Innermost discs with, for each, the corner giving the smaller circle
/// count to `q` (ties broken by canonical order). Discs admitting no valid
/// decreasing surgery are left out; compare with [`innermost_halves`].
pub fn innermost_discs(
    rank: usize,
    p: &SpherePartition,
    q: &SpherePartition,
) -> Result<Vec<(Disc, SpherePartition, usize)>> {
    let circles = crossing_orbits(rank, p, q);
    if circles.is_empty() {
        return Err(Error::NoCrossing);
    }
    let before = circles.len();
    let mut out = Vec::new();
    for (orbit, p_half) in innermost_halves(&circles) {
        let mut best: Option<(Disc, SpherePartition, usize)> = None;
        for q_half in [Half::Side, Half::Complement] {
            let disc = Disc {
                orbit: orbit.clone(),
                p_half,
                q_half,
            };
            let Ok(tau) = surger(rank, p, q, &disc) else {
                continue;
            };
            let k = kappa(rank, &tau, q);
            if k >= before {
                continue;
            }
            let better = best
                .as_ref()
                .map_or(true, |(_, t, bk)| (k, &tau) < (*bk, t));
            if better {
                best = Some((disc, tau, k));
            }
        }
        if let Some(b) = best {
            out.push(b);
        }
    }
    Ok(out)
}

/// A surgery path from `p` to `q` with strictly decreasing circle count.
pub fn surgery_path(rank: usize, p: &SpherePartition, q: &SpherePartition) -> Result<SurgeryPath> {
    let mut steps = Vec::new();
    let mut cur = p.clone();
    let mut k = kappa(rank, &cur, q);
    let limit = k + 1;
    while k > 0 {
        let discs = innermost_discs(rank, &cur, q)?;
        let (disc, tau, tk) = discs
            .into_iter()
            .min_by(|a, b| (a.2, &a.1).cmp(&(b.2, &b.1)))
            .ok_or_else(|| Error::ModelViolation("no innermost disc decreases the circle count".into()))?;
        steps.push(SurgeryStep {
            before: cur.clone(),
            disc,
            after: tau.clone(),
        });
        cur = tau;
        k = tk;
        if steps.len() > limit {
            return Err(Error::ModelViolation("surgery path does not terminate".into()));
        }
    }
    Ok(SurgeryPath {
        source: p.clone(),
        target: q.clone(),
        steps,
    })
}

/// Structural checks on a path: consecutive spheres disjoint and distinct,
/// circle count to the target strictly decreasing, ending at the target.
pub fn path_is_valid(rank: usize, path: &SurgeryPath) -> bool {
    let sp = path.spheres();
    if sp.last() != Some(&path.target) {
        return false;
    }
    let ks: Vec<usize> = sp.iter().map(|s| kappa(rank, s, &path.target)).collect();
    sp.windows(2)
        .all(|w| w[0] != w[1] && kappa(rank, &w[0], &w[1]) == 0)
        && ks.windows(2).all(|w| w[1] < w[0] || (w[0] == 0 && w[1] == 0))
}

/// Searches over disc choices for a surgery path from `p` to `q` all of
/// whose spheres satisfy `accept`; the default path is tried first.
pub fn surgery_path_where<F>(
    rank: usize,
    p: &SpherePartition,
    q: &SpherePartition,
    mut accept: F,
    budget: usize,
) -> Result<Option<SurgeryPath>>
where
    F: FnMut(&SpherePartition) -> bool,
{
    fn go<F: FnMut(&SpherePartition) -> bool>(
        rank: usize,
        cur: &SpherePartition,
        q: &SpherePartition,
        accept: &mut F,
        steps: &mut Vec<SurgeryStep>,
        budget: &mut usize,
    ) -> Result<bool> {
        if *budget == 0 {
            return Ok(false);
        }
        *budget -= 1;
        if !accept(cur) {
            return Ok(false);
        }
        if kappa(rank, cur, q) == 0 {
            return Ok(true);
        }
        let mut discs = innermost_discs(rank, cur, q)?;
        discs.sort_by(|a, b| (a.2, &a.1).cmp(&(b.2, &b.1)));
        let mut seen = BTreeSet::new();
        for (disc, tau, _) in discs {
            if !seen.insert(tau.clone()) {
                continue;
            }
            steps.push(SurgeryStep {
                before: cur.clone(),
                disc,
                after: tau.clone(),
            });
            if go(rank, &tau, q, accept, steps, budget)? {
                return Ok(true);
            }
            steps.pop();
        }
        Ok(false)
    }
    let mut steps = Vec::new();
    let mut budget = budget;
    if go(rank, p, q, &mut accept, &mut steps, &mut budget)? {
        Ok(Some(SurgeryPath {
            source: p.clone(),
            target: q.clone(),
            steps,
        }))
    } else {
        Ok(None)
    }
}

/// Verdict of the witness check along a surgery path.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub valid_path: bool,
    pub every_vertex_has_witness: bool,
    /// Upper bound on the diameter of the union of the `ψ` sets.
    pub diameter_bound: Option<u32>,
    pub pass: bool,
}

/// Checks along `path` that every `ψ(σ_i)` contains a sphere disjoint from
/// the target, and that the union of the `ψ(σ_i)` has diameter at most
/// `bound` according to `diameter`.
pub fn witness_check<P, D>(
    rg: &RibbonGraph,
    path: &SurgeryPath,
    mut psi: P,
    diameter: D,
    bound: u32,
) -> Result<WitnessReport>
where
    P: FnMut(&SpherePartition) -> Result<BTreeSet<SpherePartition>>,
    D: Fn(&BTreeSet<SpherePartition>) -> Option<u32>,
{
    let rank = rg.rank();
    let valid_path = path_is_valid(rank, path);
    let mut union = BTreeSet::new();
    let mut every = true;
    for s in path.spheres() {
        let ps = psi(&s)?;
        if !ps.iter().any(|t| kappa(rank, t, &path.target) == 0) {
            every = false;
        }
        union.extend(ps);
    }
    let diameter_bound = diameter(&union);
    let pass = valid_path && every && diameter_bound.is_some_and(|d| d <= bound);
    Ok(WitnessReport {
        valid_path,
        every_vertex_has_witness: every,
        diameter_bound,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{slope_arc, Slope};
    use crate::doubling::iota;

    fn slope_sphere(rg: &RibbonGraph, s: &str) -> SpherePartition {
        iota(rg, &slope_arc(rg, s.parse::<Slope>().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn disjoint_pair_has_no_circles() {
        let rg = RibbonGraph::torus();
        let a = slope_sphere(&rg, "1/0");
        let b = slope_sphere(&rg, "0/1");
        assert!(crossing_orbits(2, &a, &b).is_empty());
        assert!(innermost_discs(2, &a, &b).is_err());
        assert!(surgery_path(2, &a, &a).unwrap().is_empty());
    }

    #[test]
    fn single_circle_gives_two_discs() {
        let rg = RibbonGraph::torus();
        let a = slope_sphere(&rg, "1/0");
        let b = slope_sphere(&rg, "1/2");
        assert_eq!(kappa(2, &a, &b), 1);
        let discs = innermost_discs(2, &a, &b).unwrap();
        assert_eq!(discs.len(), 2);
        for (_, tau, k) in &discs {
            assert_eq!(*k, 0);
            assert_eq!(kappa(2, tau, &a), 0);
        }
        let path = surgery_path(2, &a, &b).unwrap();
        assert!(path.len() <= 2);
        assert!(path_is_valid(2, &path));
    }

    #[test]
    fn longer_paths_decrease_strictly() {
        let rg = RibbonGraph::torus();
        let a = slope_sphere(&rg, "1/0");
        let b = slope_sphere(&rg, "2/5");
        let k = kappa(2, &a, &b);
        assert!(k >= 2);
        let path = surgery_path(2, &a, &b).unwrap();
        assert!(path.len() <= k + 1);
        assert!(path_is_valid(2, &path));
    }
}
