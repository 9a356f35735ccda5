//! Slopes on the one-holed torus, as an independent check of the arc model.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::{Letter, Line, ReducedWord, RibbonGraph};

use super::canonical::{arc_from_lines, canonicalize_arc, Arc, RawArc};

/// A reduced fraction `p/q`, with `q ≥ 0` and `1/0` for the infinite slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if gcd(p, q) != 1 {
            return Err(Error::Slope(format!("{p}/{q}")));
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
        Ok(Slope { p, q })
    }

    /// All slopes with `|p|, |q| ≤ n`.
    pub fn box_of(n: i64) -> Vec<Slope> {
        let mut out = Vec::new();
        for q in 0..=n {
            for p in -n..=n {
                if let Ok(s) = Slope::new(p, q) {
                    if s.p == p && s.q == q {
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let bad = || Error::Slope(s.to_string());
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

/// Farey neighbours: `|ps − rq| ≤ 1`.
pub fn farey_adjacent(a: Slope, b: Slope) -> Result<bool> {
    for s in [a, b] {
        if gcd(s.p, s.q) != 1 {
            return Err(Error::Slope(s.to_string()));
        }
    }
    Ok((a.p * b.q - b.p * a.q).abs() <= 1)
}

/// Automorphisms fixing `xyXY`: `y ↦ y x^{±1}` and `x ↦ x y^{±1}`.
#[derive(Clone, Copy, Debug)]
enum Twist {
    Y(bool),
    X(bool),
}

impl Twist {
    fn apply(self, w: &ReducedWord) -> ReducedWord {
        let x = Letter::generator(0);
        let y = Letter::generator(1);
        let (target, tail) = match self {
            Twist::Y(pos) => (y, if pos { x } else { x.inverse() }),
            Twist::X(pos) => (x, if pos { y } else { y.inverse() }),
        };
        ReducedWord::reduce(w.letters().iter().flat_map(|&l| {
            if l == target {
                vec![l, tail]
            } else if l == target.inverse() {
                vec![tail.inverse(), l]
            } else {
                vec![l]
            }
        }))
    }

    fn inverse(self) -> Twist {
        match self {
            Twist::Y(b) => Twist::Y(!b),
            Twist::X(b) => Twist::X(!b),
        }
    }

    /// Action on the homology class `(a, b) = a[x] + b[y]` of a curve.
    fn on_homology(self, (a, b): (i64, i64)) -> (i64, i64) {
        match self {
            Twist::Y(pos) => (if pos { a + b } else { a - b }, b),
            Twist::X(pos) => (a, if pos { b + a } else { b - a }),
        }
    }
}

/// The arc of slope `p/q`: the one disjoint from the curve `x^q y^p`.
pub fn slope_arc(rg: &RibbonGraph, s: Slope) -> Result<Arc> {
    if *rg != RibbonGraph::torus() {
        return Err(Error::Slope("slopes need the one-holed torus preset".into()));
    }
    let mut v = (s.q, s.p);
    let mut ops = Vec::new();
    while v.0 != 0 {
        let t = if v.1 == 0 {
            Twist::X(true)
        } else if v.0.abs() >= v.1.abs() {
            Twist::Y(v.0 * v.1 < 0)
        } else {
            Twist::X(v.0 * v.1 < 0)
        };
        v = t.on_homology(v);
        ops.push(t);
    }
    // the arc dual to petal x misses the curve y
    let x = Letter::generator(0);
    let one = ReducedWord::identity();
    let a = Line::through_corner(rg, &one, x);
    let b = Line::through_corner(rg, &one, rg.pred(x));
    let base = arc_from_lines(rg, &a, &b)?;
    let (l1, l2) = base.lines(rg);
    let c = l1.base.inverse().mul(&l2.base);
    let mut c = c;
    for t in ops.iter().rev() {
        c = t.inverse().apply(&c);
    }
    canonicalize_arc(rg, &RawArc::new((l1.component, 0), c, (l2.component, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::disjoint::arcs_disjoint;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn twists_fix_the_boundary_word() {
        let w = RibbonGraph::torus().boundary_word(0).clone();
        for t in [Twist::Y(true), Twist::Y(false), Twist::X(true), Twist::X(false)] {
            assert_eq!(t.apply(&w), w);
            assert_eq!(t.inverse().apply(&t.apply(&ReducedWord::parse("xYxx", 2).unwrap())),
                ReducedWord::parse("xYxx", 2).unwrap());
        }
    }

    #[test]
    fn farey_examples() {
        assert!(farey_adjacent(sl("1/0"), sl("0/1")).unwrap());
        assert!(farey_adjacent(sl("1/2"), sl("1/3")).unwrap());
        assert!(!farey_adjacent(sl("1/0"), sl("1/2")).unwrap());
        assert!("2/4".parse::<Slope>().is_err());
    }

    #[test]
    fn small_slopes_match_the_oracle() {
        let rg = RibbonGraph::torus();
        let slopes = Slope::box_of(3);
        let arcs: Vec<Arc> = slopes.iter().map(|&s| slope_arc(&rg, s).unwrap()).collect();
        for (i, a) in arcs.iter().enumerate() {
            assert!(a.is_essential(&rg));
            for (j, b) in arcs.iter().enumerate() {
                assert_eq!(i == j, a == b);
                let want = farey_adjacent(slopes[i], slopes[j]).unwrap();
                assert_eq!(arcs_disjoint(&rg, a, b), want, "{} {}", slopes[i], slopes[j]);
            }
        }
    }
}
