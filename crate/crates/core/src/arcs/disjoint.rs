use crate::kernel::{circle_order, CirclePoint, Line, ReducedWord, RibbonGraph};

use super::canonical::Arc;

/// Precomputed lift data for repeated disjointness tests.
#[derive(Clone, Debug)]
pub struct Chord {
    pub lines: (Line, Line),
    reps: (CirclePoint, CirclePoint),
    support: Vec<ReducedWord>,
}

impl Chord {
    pub fn new(rg: &RibbonGraph, a: &Arc) -> Chord {
        let lines = a.lines(rg);
        let reps = (lines.0.rep(rg), lines.1.rep(rg));
        Chord {
            lines,
            reps,
            support: a.support(rg),
        }
    }

    pub fn support(&self) -> &[ReducedWord] {
        &self.support
    }
}

/// Whether `g·b` is the line `a`.
pub fn same_line(rg: &RibbonGraph, a: &Line, g: &ReducedWord, b: &Line) -> bool {
    if a.component != b.component {
        return false;
    }
    let r = a.base.inverse().mul(&g.mul(&b.base));
    let w = rg.boundary_word(a.component);
    if r.len() % w.len() != 0 {
        return false;
    }
    let m = (r.len() / w.len()) as i64;
    r == w.pow(m) || r == w.pow(-m)
}

/// Whether the chord `a` links the translate `g·b`.
pub fn chords_link(rg: &RibbonGraph, a: &Chord, g: &ReducedWord, b: &Chord) -> bool {
    let (a1, a2) = (&a.lines.0, &a.lines.1);
    for bl in [&b.lines.0, &b.lines.1] {
        if same_line(rg, a1, g, bl) || same_line(rg, a2, g, bl) {
            return false;
        }
    }
    let c = b.reps.0.translate(g);
    let d = b.reps.1.translate(g);
    let oc = circle_order(rg, &a.reps.0, &a.reps.1, &c).expect("distinct lines");
    let od = circle_order(rg, &a.reps.0, &a.reps.1, &d).expect("distinct lines");
    oc != od
}

/// Translates `g` for which the realizations of `a` and `g·b` can meet.
pub(crate) fn candidate_translates(a: &Chord, b: &Chord) -> Vec<ReducedWord> {
    let mut out = Vec::with_capacity(a.support.len() * b.support.len());
    for y in &a.support {
        for x in &b.support {
            out.push(y.mul(&x.inverse()));
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn chords_disjoint(rg: &RibbonGraph, a: &Chord, b: &Chord) -> bool {
    candidate_translates(a, b)
        .iter()
        .all(|g| !chords_link(rg, a, g, b))
}

/// Whether the two arc classes have disjoint representatives.
///
/// Lifts are realized inside neighbourhoods of their bridge paths, so only
/// translates whose bridge paths meet need to be examined.
pub fn arcs_disjoint(rg: &RibbonGraph, a: &Arc, b: &Arc) -> bool {
    chords_disjoint(rg, &Chord::new(rg, a), &Chord::new(rg, b))
}

/// Brute-force disjointness over every translate of length at most `radius`.
pub fn arcs_disjoint_within(rg: &RibbonGraph, a: &Arc, b: &Arc, radius: usize) -> bool {
    let ca = Chord::new(rg, a);
    let cb = Chord::new(rg, b);
    ReducedWord::ball(rg.rank(), radius)
        .iter()
        .all(|g| !chords_link(rg, &ca, g, &cb))
}

/// Length bound on the translates examined by the exact test.
pub fn support_radius(rg: &RibbonGraph, a: &Arc, b: &Arc) -> usize {
    a.word().len() + b.word().len() + 2 * rg.max_period() + 2
}

/// An arc is simple when its lifts are pairwise unlinked.
pub fn is_simple(rg: &RibbonGraph, a: &Arc) -> bool {
    let c = Chord::new(rg, a);
    chords_disjoint(rg, &c, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::canonical::{canonicalize_arc, RawArc};

    fn arc(rg: &RibbonGraph, s: i64, word: &str, t: i64) -> Arc {
        let w = ReducedWord::parse(word, rg.rank()).unwrap();
        canonicalize_arc(rg, &RawArc::new((0, s), w, (0, t))).unwrap()
    }

    #[test]
    fn arc_is_disjoint_from_itself() {
        let rg = RibbonGraph::torus();
        let a = arc(&rg, 0, "", 1);
        assert!(arcs_disjoint(&rg, &a, &a));
    }

    #[test]
    fn exact_test_agrees_with_brute_force() {
        let rg = RibbonGraph::torus();
        let arcs = [
            arc(&rg, 0, "", 2),
            arc(&rg, 1, "", 3),
            arc(&rg, 0, "", 3),
            arc(&rg, 0, "y", 0),
            arc(&rg, 1, "x", 2),
        ];
        for a in &arcs {
            for b in &arcs {
                let exact = arcs_disjoint(&rg, a, b);
                let r = a.word().len() + b.word().len() + 6;
                assert_eq!(exact, arcs_disjoint_within(&rg, a, b, r), "{a} {b}");
                assert_eq!(exact, arcs_disjoint(&rg, b, a));
            }
        }
    }
}
