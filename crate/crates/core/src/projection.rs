//! The projection from spheres to arcs, through the walls of a sphere lift.
//!
//! A boundary line whose two ideal ends lie on opposite sides of `X` is a
//! switch line. Going around the circle, the sides of the ends change
//! exactly across switch lines, so a non-crossing matching of switch lines
//! by chords cuts the disc into regions of one side each. Those chords are
//! the lifts of the arcs the sphere meets the surface in.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::arcs::{arc_from_lines, chords_disjoint, Arc, Chord, MultiArc};
use crate::doubling::iota;
use crate::error::{Error, Result};
use crate::kernel::{circle_order, ClopenSet, Letter, Line, ReducedWord, RibbonGraph};
use crate::spheres::SpherePartition;

/// Boundary lines whose ends are separated by `side`, in cyclic order.
pub fn switch_lines(rg: &RibbonGraph, side: &ClopenSet) -> Vec<Line> {
    let mut lines = BTreeSet::new();
    for v in side.frontier() {
        for d in Letter::all(rg.rank()) {
            lines.insert(Line::through_corner(rg, &v, d));
        }
    }
    let mut out: Vec<Line> = lines
        .into_iter()
        .filter(|l| {
            let (b, f) = l.ends(rg);
            side.contains_end(&b) != side.contains_end(&f)
        })
        .collect();
    if out.len() > 2 {
        let p0 = out[0].rep(rg);
        out[1..].sort_by(|a, b| {
            match circle_order(rg, &p0, &a.rep(rg), &b.rep(rg)).expect("distinct lines") {
                1 => Ordering::Less,
                _ => Ordering::Greater,
            }
        });
    }
    out
}

/// A perfect matching of switch lines by index, every pair non-crossing.
pub type Matching = Vec<(usize, usize)>;

/// The two matchings pairing circle-consecutive switch lines.
pub fn consecutive_matchings(n: usize) -> [Matching; 2] {
    let even = (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect();
    let odd = (0..n / 2).map(|k| (2 * k + 1, (2 * k + 2) % n)).collect();
    [even, odd]
}

/// Every non-crossing perfect matching of `n` points in convex position.
pub fn all_matchings(n: usize) -> Vec<Matching> {
    fn go(pts: &[usize]) -> Vec<Matching> {
        if pts.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for j in (1..pts.len()).step_by(2) {
            for inner in go(&pts[1..j]) {
                for outer in go(&pts[j + 1..]) {
                    let mut m = vec![(pts[0], pts[j])];
                    m.extend(inner.iter().copied());
                    m.extend(outer.iter().copied());
                    out.push(m);
                }
            }
        }
        out
    }
    let pts: Vec<usize> = (0..n).collect();
    go(&pts)
}

/// A random non-crossing perfect matching of `n` points.
pub fn random_matching<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matching {
    fn go<R: Rng + ?Sized>(pts: &[usize], rng: &mut R, out: &mut Matching) {
        if pts.is_empty() {
            return;
        }
        let j = 2 * rng.gen_range(0..pts.len() / 2) + 1;
        out.push((pts[0], pts[j]));
        go(&pts[1..j], rng, out);
        go(&pts[j + 1..], rng, out);
    }
    let pts: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    go(&pts, rng, &mut out);
    out
}

/// The sphere's walls: its switch lines and the arcs of admissible matchings.
#[derive(Clone, Debug)]
pub struct Wall {
    pub switches: Vec<Line>,
}

impl Wall {
    pub fn new(rg: &RibbonGraph, p: &SpherePartition) -> Wall {
        Wall {
            switches: switch_lines(rg, p.side()),
        }
    }

    /// Arcs of the chords of `m`, or `None` if they cannot be realized disjointly.
    pub fn arcs_of(&self, rg: &RibbonGraph, m: &Matching) -> Option<Vec<Arc>> {
        let arcs: Vec<Arc> = m
            .iter()
            .map(|&(i, j)| {
                arc_from_lines(rg, &self.switches[i], &self.switches[j]).expect("distinct lines")
            })
            .collect();
        let distinct: BTreeSet<&Arc> = arcs.iter().collect();
        let chords: Vec<Chord> = distinct.iter().map(|a| Chord::new(rg, a)).collect();
        for (i, a) in chords.iter().enumerate() {
            for b in &chords[i..] {
                if !chords_disjoint(rg, a, b) {
                    return None;
                }
            }
        }
        Some(arcs)
    }

    /// All admissible matchings, with their arcs.
    pub fn admissible(&self, rg: &RibbonGraph) -> Vec<(Matching, Vec<Arc>)> {
        all_matchings(self.switches.len())
            .into_iter()
            .filter_map(|m| self.arcs_of(rg, &m).map(|a| (m, a)))
            .collect()
    }

    /// The preferred matching: consecutive pairs, falling back to the first
    /// admissible matching in enumeration order.
    pub fn default_arcs(&self, rg: &RibbonGraph) -> Result<Vec<Arc>> {
        let n = self.switches.len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::ModelViolation(format!("{n} switch lines")));
        }
        for m in consecutive_matchings(n) {
            if let Some(a) = self.arcs_of(rg, &m) {
                return Ok(a);
            }
        }
        self.admissible(rg)
            .into_iter()
            .next()
            .map(|(_, a)| a)
            .ok_or_else(|| Error::ModelViolation("no admissible wall matching".into()))
    }
}

/// Crossing positions of the sphere on each boundary component.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BoundaryProfile {
    /// For each component, the slots (within one period) where a lift of
    /// the sphere crosses the axis, one per switch line.
    pub slots: BTreeMap<usize, Vec<usize>>,
}

impl BoundaryProfile {
    pub fn total(&self) -> usize {
        self.slots.values().map(Vec::len).sum()
    }

    pub fn count(&self, component: usize) -> usize {
        self.slots.get(&component).map_or(0, Vec::len)
    }
}

/// Ends beyond the edge from `u` to its neighbour `v`.
fn halfspace(rank: usize, u: &ReducedWord, v: &ReducedWord) -> ClopenSet {
    if v.len() > u.len() {
        ClopenSet::cylinder(v.clone())
    } else {
        ClopenSet::cylinder(u.clone()).complement(rank)
    }
}

/// Minimal crossing positions of the sphere with the boundary.
///
/// A switch line crosses the sphere at the first edge, in the forward
/// direction, beyond which all ends lie on one side; its slot is recorded.
pub fn boundary_profile(rg: &RibbonGraph, p: &SpherePartition) -> BoundaryProfile {
    let rank = rg.rank();
    let side = p.side();
    let comp = side.complement(rank);
    let mut slots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for l in switch_lines(rg, side) {
        let k = rg.period(l.component);
        let reach = (p.depth() + l.base.len() + 2 * k) as i64;
        let slot = (-reach..=reach)
            .find(|&s| {
                let h = halfspace(rank, &l.vertex(rg, s), &l.vertex(rg, s + 1));
                h.is_subset_of(side, rank) || h.is_subset_of(&comp, rank)
            })
            .map(|s| s.rem_euclid(k as i64) as usize)
            .expect("switch lines end on one side");
        slots.entry(l.component).or_default().push(slot);
    }
    for v in slots.values_mut() {
        v.sort_unstable();
    }
    BoundaryProfile { slots }
}

/// Independent count for the profile: translates `g·X` separating the ends
/// of the axis of each boundary word, up to powers of that word.
pub fn profile_count_within(rg: &RibbonGraph, p: &SpherePartition, radius: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for i in 0..rg.boundary_count() {
        let axis = Line::new(rg, i, ReducedWord::identity());
        let (b, f) = axis.ends(rg);
        let mut classes = BTreeSet::new();
        for g in ReducedWord::ball(rg.rank(), radius) {
            // g·X separates the axis ends iff X separates g⁻¹·axis
            let gi = g.inverse();
            let (bb, ff) = (b.translate(&gi), f.translate(&gi));
            if p.side().contains_end(&bb) != p.side().contains_end(&ff) {
                classes.insert(axis.translate(rg, &gi));
            }
        }
        out.insert(i, classes.len());
    }
    out
}

/// The wall multiarc for the preferred matching.
pub fn wall_multiarc(rg: &RibbonGraph, p: &SpherePartition) -> Result<MultiArc> {
    MultiArc::new(rg, Wall::new(rg, p).default_arcs(rg)?)
}

/// The arcs the sphere projects to, for the preferred matching.
pub fn phi(rg: &RibbonGraph, p: &SpherePartition) -> Result<BTreeSet<Arc>> {
    Ok(Wall::new(rg, p).default_arcs(rg)?.into_iter().collect())
}

/// The projection for a random admissible matching; falls back to the
/// preferred one when the draw is not admissible after `tries` attempts.
pub fn phi_random<R: Rng + ?Sized>(
    rg: &RibbonGraph,
    p: &SpherePartition,
    rng: &mut R,
    tries: usize,
) -> Result<BTreeSet<Arc>> {
    let wall = Wall::new(rg, p);
    let n = wall.switches.len();
    for _ in 0..tries {
        if let Some(a) = wall.arcs_of(rg, &random_matching(n, rng)) {
            return Ok(a.into_iter().collect());
        }
    }
    Ok(wall.default_arcs(rg)?.into_iter().collect())
}

/// Union of the projections over every admissible matching.
pub fn phi_all(rg: &RibbonGraph, p: &SpherePartition) -> Result<BTreeSet<Arc>> {
    let wall = Wall::new(rg, p);
    let all: BTreeSet<Arc> = wall
        .admissible(rg)
        .into_iter()
        .flat_map(|(_, a)| a)
        .collect();
    if all.is_empty() {
        return Err(Error::ModelViolation("no admissible wall matching".into()));
    }
    Ok(all)
}

/// Projection of a system: the union over its spheres.
pub fn phi_system<'a, I>(rg: &RibbonGraph, spheres: I) -> Result<BTreeSet<Arc>>
where
    I: IntoIterator<Item = &'a SpherePartition>,
{
    let mut out = BTreeSet::new();
    for p in spheres {
        out.extend(phi(rg, p)?);
    }
    Ok(out)
}

/// `ι ∘ φ`.
pub fn psi(rg: &RibbonGraph, p: &SpherePartition) -> Result<BTreeSet<SpherePartition>> {
    phi(rg, p)?.iter().map(|a| iota(rg, a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{slope_arc, Slope};
    use crate::spheres::canonicalize_sphere;
    use rand::SeedableRng;

    #[test]
    fn matchings_are_counted_by_catalan_numbers() {
        let counts: Vec<usize> = (0..6).map(|m| all_matchings(2 * m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matching(8, &mut rng);
            assert!(all_matchings(8).iter().any(|x| {
                let mut a = x.clone();
                let mut b = m.clone();
                a.sort();
                b.sort();
                a == b
            }));
        }
    }

    #[test]
    fn doubled_slope_projects_back() {
        let rg = RibbonGraph::torus();
        for s in Slope::box_of(3) {
            let a = slope_arc(&rg, s).unwrap();
            let p = iota(&rg, &a).unwrap();
            assert_eq!(phi(&rg, &p).unwrap(), BTreeSet::from([a.clone()]), "{s}");
            assert_eq!(psi(&rg, &p).unwrap(), BTreeSet::from([p.clone()]));
        }
    }

    #[test]
    fn petal_dual_profile() {
        let rg = RibbonGraph::torus();
        let x = ReducedWord::parse("x", 2).unwrap();
        let p = canonicalize_sphere(2, &ClopenSet::cylinder(x)).unwrap();
        let prof = boundary_profile(&rg, &p);
        assert_eq!(prof.count(0), 2);
        // the x and X letters of xyXY sit at slots 0 and 2
        assert_eq!(prof.slots[&0], vec![0, 2]);
        let oracle = profile_count_within(&rg, &p, p.depth() + rg.max_period() + 2);
        assert_eq!(oracle[&0], 2);
    }
}
