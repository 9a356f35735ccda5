use crate::kernel::{ClopenSet, EndPoint, Letter, ReducedWord};

use super::partition::SpherePartition;

/// One crossing lift pair: the translate `g·X` of the first sphere crosses
/// the second sphere's side `Y`, with one end in each corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingOrbit {
    pub g: ReducedWord,
    /// Ends in `gX∩Y`, `gX∩Y*`, `gX*∩Y`, `gX*∩Y*`.
    pub witnesses: [EndPoint; 4],
}

/// A side with its complement and frontier, ready for repeated tests.
#[derive(Clone, Debug)]
pub struct Sided {
    pub side: ClopenSet,
    pub comp: ClopenSet,
    frontier: Vec<ReducedWord>,
}

impl Sided {
    pub fn new(rank: usize, side: &ClopenSet) -> Sided {
        Sided {
            side: side.clone(),
            comp: side.complement(rank),
            frontier: side.frontier().into_iter().collect(),
        }
    }

    pub fn of(rank: usize, p: &SpherePartition) -> Sided {
        Sided::new(rank, p.side())
    }

    pub fn frontier(&self) -> &[ReducedWord] {
        &self.frontier
    }
}

fn some_end(rank: usize, c: &ClopenSet) -> EndPoint {
    let w = c.words().next().expect("nonempty corner").clone();
    let back = w.last().map(Letter::inverse);
    let l = Letter::all(rank)
        .find(|&l| Some(l) != back)
        .expect("rank is positive");
    EndPoint::new(&w, &ReducedWord::identity().push(l)).expect("nontrivial repetend")
}

/// Whether `g·X` crosses `Y`: all four corners are nonempty.
pub fn translate_crosses(rank: usize, x: &Sided, g: &ReducedWord, y: &Sided) -> bool {
    let gx = x.side.translate(g, rank);
    if !gx.meets(&y.side) || !gx.meets(&y.comp) {
        return false;
    }
    let gxc = x.comp.translate(g, rank);
    gxc.meets(&y.side) && gxc.meets(&y.comp)
}

/// Decides whether `g·P` crosses `Q`, returning corner witnesses if so.
pub fn crosses(
    rank: usize,
    p: &SpherePartition,
    q: &SpherePartition,
    g: &ReducedWord,
) -> Option<CrossingOrbit> {
    let x = Sided::of(rank, p);
    let y = Sided::of(rank, q);
    crossing_witness(rank, &x, g, &y)
}

pub(crate) fn crossing_witness(
    rank: usize,
    x: &Sided,
    g: &ReducedWord,
    y: &Sided,
) -> Option<CrossingOrbit> {
    if !translate_crosses(rank, x, g, y) {
        return None;
    }
    let gx = x.side.translate(g, rank);
    let gxc = x.comp.translate(g, rank);
    let corner = |a: &ClopenSet, b: &ClopenSet| some_end(rank, &a.intersect(b, rank));
    Some(CrossingOrbit {
        g: g.clone(),
        witnesses: [
            corner(&gx, &y.side),
            corner(&gx, &y.comp),
            corner(&gxc, &y.side),
            corner(&gxc, &y.comp),
        ],
    })
}

/// Translates `g` with `g·frontier(X)` meeting `frontier(Y)`.
///
/// If the two frontier subtrees are disjoint, everything beyond the bridge
/// between them is on one side of each partition, so some corner is empty.
pub fn crossing_candidates(x: &Sided, y: &Sided) -> Vec<ReducedWord> {
    let mut out = Vec::with_capacity(x.frontier.len() * y.frontier.len());
    for b in &y.frontier {
        for a in &x.frontier {
            out.push(b.mul(&a.inverse()));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All translates `g` for which `g·X` crosses `Y`.
pub fn crossing_translates(rank: usize, x: &Sided, y: &Sided) -> Vec<ReducedWord> {
    crossing_candidates(x, y)
        .into_iter()
        .filter(|g| translate_crosses(rank, x, g, y))
        .collect()
}

/// Orbits of crossing lift pairs. Stabilizers of sides are trivial, so
/// each orbit is represented by exactly one translate of the first sphere.
pub fn kappa(rank: usize, p: &SpherePartition, q: &SpherePartition) -> usize {
    crossing_translates(rank, &Sided::of(rank, p), &Sided::of(rank, q)).len()
}

/// Whether some lift pair crosses; stops at the first crossing found.
pub fn sided_cross(rank: usize, x: &Sided, y: &Sided) -> bool {
    crossing_candidates(x, y)
        .iter()
        .any(|g| translate_crosses(rank, x, g, y))
}

/// The number of crossing translates of length at most `radius`.
pub fn kappa_within(rank: usize, p: &SpherePartition, q: &SpherePartition, radius: usize) -> usize {
    let x = Sided::of(rank, p);
    let y = Sided::of(rank, q);
    ReducedWord::ball(rank, radius)
        .iter()
        .filter(|g| translate_crosses(rank, &x, g, &y))
        .count()
}

/// The radius prescribed for brute-force searches: the two depths plus two.
pub fn certified_radius(a: &ClopenSet, b: &ClopenSet) -> usize {
    a.depth() + b.depth() + 2
}

/// Whether every translate of the side is nested with it.
pub fn is_embedded(rank: usize, side: &ClopenSet) -> bool {
    if !side.is_proper() {
        return false;
    }
    let x = Sided::new(rank, side);
    !crossing_candidates(&x, &x)
        .iter()
        .any(|g| translate_crosses(rank, &x, g, &x))
}

/// Brute-force embeddedness over all translates of length at most `radius`.
pub fn is_embedded_within(rank: usize, side: &ClopenSet, radius: usize) -> bool {
    if !side.is_proper() {
        return false;
    }
    let x = Sided::new(rank, side);
    !ReducedWord::ball(rank, radius)
        .iter()
        .any(|g| translate_crosses(rank, &x, g, &x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spheres::partition::canonicalize_sphere;

    fn set(ws: &[&str]) -> ClopenSet {
        ClopenSet::from_prefixes(2, ws.iter().map(|s| ReducedWord::parse(s, 2).unwrap()))
    }

    #[test]
    fn petal_duals_are_embedded_and_disjoint() {
        assert!(is_embedded(2, &set(&["x"])));
        // the edge of the splitting <x> * <y>
        assert!(is_embedded(2, &set(&["x", "X"])));
        let p = canonicalize_sphere(2, &set(&["x"])).unwrap();
        let q = canonicalize_sphere(2, &set(&["y"])).unwrap();
        assert!(crosses(2, &p, &q, &ReducedWord::identity()).is_none());
        assert!(crosses(2, &p, &p, &ReducedWord::identity()).is_none());
        assert_eq!(kappa(2, &p, &q), 0);
        assert_eq!(kappa(2, &p, &p), 0);
    }

    #[test]
    fn a_crossing_side_is_not_embedded() {
        // y·{x, yx} = {yx, yyx} crosses {x, yx}
        let s = set(&["x", "yx"]);
        assert!(!is_embedded(2, &s));
        let r = certified_radius(&s, &s);
        assert!(!is_embedded_within(2, &s, r));
    }

    #[test]
    fn witnesses_lie_in_their_corners() {
        let p = canonicalize_sphere(2, &set(&["x", "yx"])).unwrap();
        let x = Sided::of(2, &p);
        let g = crossing_translates(2, &x, &x)[0].clone();
        let orbit = crossing_witness(2, &x, &g, &x).unwrap();
        let gx = x.side.translate(&g, 2);
        let [a, b, c, d] = &orbit.witnesses;
        assert!(gx.contains_end(a) && x.side.contains_end(a));
        assert!(gx.contains_end(b) && !x.side.contains_end(b));
        assert!(!gx.contains_end(c) && x.side.contains_end(c));
        assert!(!gx.contains_end(d) && !x.side.contains_end(d));
    }
}
