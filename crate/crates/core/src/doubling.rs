//! The doubling map from arcs to spheres.

use crate::arcs::{Arc, MultiArc};
use crate::error::{Error, Result};
use crate::kernel::{circle_order, children, CirclePoint, ClopenSet, EndPoint, Line, ReducedWord, RibbonGraph};
use crate::spheres::{canonicalize_sphere, SpherePartition, SphereSystem};

/// Safety cap on the depth of the cylinder recursion.
const MAX_DEPTH: usize = 64;

/// The two boundary lines running along the sides of the edge `(v, v·a)`.
pub fn edge_side_lines(rg: &RibbonGraph, v: &ReducedWord, a: crate::kernel::Letter) -> (Line, Line) {
    (Line::through_corner(rg, v, rg.pred(a)), Line::through_corner(rg, v, a))
}

/// Whether every vertex of `l` lies in the subtree beyond the last edge of `u`.
fn line_beyond(l: &Line, u: &ReducedWord) -> bool {
    l.base.starts_with(u)
}

/// Ends on the positive side of the chord from `l1` to `l2`, as a clopen set.
pub fn chord_side(rg: &RibbonGraph, l1: &Line, l2: &Line) -> Result<ClopenSet> {
    let r1 = l1.rep(rg);
    let r2 = l2.rep(rg);
    let mut out = Vec::new();
    let mut stack: Vec<ReducedWord> = children(rg.rank(), &ReducedWord::identity()).collect();
    while let Some(u) = stack.pop() {
        if u.len() > MAX_DEPTH {
            return Err(Error::ModelViolation("chord side does not close up".into()));
        }
        let n = u.len();
        let a = u.letters()[n - 1];
        let (gl, gr) = edge_side_lines(rg, &u.prefix(n - 1), a);
        let mixed = [l1, l2]
            .iter()
            .any(|l| **l != gl && **l != gr && line_beyond(l, &u));
        if mixed {
            stack.extend(children(rg.rank(), &u));
            continue;
        }
        let probe = CirclePoint::End(
            EndPoint::new(&u, &ReducedWord::identity().push(a)).expect("nontrivial repetend"),
        );
        if circle_order(rg, &r1, &probe, &r2)? == 1 {
            out.push(u);
        }
    }
    Ok(ClopenSet::from_prefixes(rg.rank(), out))
}

/// The sphere obtained by doubling the disc `α × [0,1]`.
pub fn iota(rg: &RibbonGraph, a: &Arc) -> Result<SpherePartition> {
    let (l1, l2) = a.lines(rg);
    if l1 == l2 {
        return Err(Error::InessentialArc);
    }
    canonicalize_sphere(rg.rank(), &chord_side(rg, &l1, &l2)?)
}

pub fn iota_system(rg: &RibbonGraph, m: &MultiArc) -> Result<SphereSystem> {
    if m.distinct() == 0 {
        return Err(Error::EmptySystem);
    }
    let spheres = m.arcs().map(|a| iota(rg, a)).collect::<Result<Vec<_>>>()?;
    SphereSystem::new(rg.rank(), spheres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{arc_from_lines, slope_arc, Slope};
    use crate::kernel::Letter;
    use crate::spheres::is_embedded;

    #[test]
    fn dual_of_petal_x_doubles_to_cylinder_x() {
        let rg = RibbonGraph::torus();
        let one = ReducedWord::identity();
        let x = Letter::from_char('x', 2).unwrap();
        let (a, b) = edge_side_lines(&rg, &one, x);
        let arc = arc_from_lines(&rg, &a, &b).unwrap();
        let s = iota(&rg, &arc).unwrap();
        let want = canonicalize_sphere(2, &ClopenSet::cylinder(ReducedWord::parse("x", 2).unwrap())).unwrap();
        assert_eq!(s, want);
        assert_eq!(arc, slope_arc(&rg, Slope::new(1, 0).unwrap()).unwrap());
    }

    #[test]
    fn doubled_arcs_are_embedded() {
        let rg = RibbonGraph::torus();
        for s in Slope::box_of(3) {
            let a = slope_arc(&rg, s).unwrap();
            let p = iota(&rg, &a).unwrap();
            assert!(is_embedded(2, p.side()), "{s}");
        }
    }

    #[test]
    fn systems_need_arcs() {
        let rg = RibbonGraph::torus();
        let m = MultiArc::new(&rg, []).unwrap();
        assert!(iota_system(&rg, &m).is_err());
        let pair = MultiArc::new(
            &rg,
            ["1/0", "0/1"].map(|s| slope_arc(&rg, s.parse().unwrap()).unwrap()),
        )
        .unwrap();
        assert_eq!(iota_system(&rg, &pair).unwrap().len(), 2);
    }
}
