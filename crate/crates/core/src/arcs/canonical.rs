use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Line, RibbonGraph, ReducedWord};

/// A homotopy class of arcs, stored canonically.
///
/// The arc runs from the vertex at slot `from.1` of the boundary line of
/// component `from.0` through the identity, along `word`, to the vertex at
/// slot `to.1` of a line of component `to.0`. In canonical form `word` is
/// the bridge between the two lifted boundary lines and both slots lie in
/// one period.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    // field order gives the derived ordering: shortest bridge first
    word_len: usize,
    from: (usize, usize),
    to: (usize, usize),
    word: ReducedWord,
}

/// An arc description before canonicalization. Slots may be any integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawArc {
    pub from: (usize, i64),
    pub to: (usize, i64),
    pub word: ReducedWord,
}

/// JSON form `{"from":[i,slot],"to":[j,slot],"word":"..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub from: (usize, i64),
    pub to: (usize, i64),
    pub word: String,
}

impl RawArc {
    pub fn new(from: (usize, i64), word: ReducedWord, to: (usize, i64)) -> Self {
        RawArc { from, to, word }
    }

    /// The pair of boundary lines joined by this arc.
    /// Parses the display form `[i,s]-word-[j,t]`, with `1` for the empty word.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let bad = || Error::Position(format!("malformed arc {s:?}"));
        let end = |t: &str| -> Result<(usize, i64)> {
            let t = t.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
            let (a, b) = t.split_once(',').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        };
        let l = s.find(']').ok_or_else(bad)?;
        let r = s.rfind('[').ok_or_else(bad)?;
        if r <= l {
            return Err(bad());
        }
        let mid = s[l + 1..r].trim();
        let word = mid
            .strip_prefix('-')
            .and_then(|m| m.strip_suffix('-'))
            .ok_or_else(bad)?;
        let word = if word == "1" {
            ReducedWord::identity()
        } else {
            ReducedWord::parse(word, rank)?
        };
        Ok(RawArc::new(end(&s[..=l])?, word, end(&s[r..])?))
    }

    pub fn lines(&self, rg: &RibbonGraph) -> Result<(Line, Line)> {
        for c in [self.from.0, self.to.0] {
            if c >= rg.boundary_count() {
                return Err(Error::Position(format!(
                    "component {c} out of range (surface has {})",
                    rg.boundary_count()
                )));
            }
        }
        let a = Line::new(rg, self.from.0, ReducedWord::identity());
        let p = rg.boundary_prefix(self.from.0, self.from.1);
        let q = p.mul(&self.word);
        let back = rg.boundary_prefix(self.to.0, self.to.1).inverse();
        let b = Line::new(rg, self.to.0, q.mul(&back));
        Ok((a, b))
    }
}

impl Arc {
    pub fn from_slot(&self) -> (usize, usize) {
        self.from
    }

    pub fn to_slot(&self) -> (usize, usize) {
        self.to
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    /// Bridge length plus one; the dual arcs of single edges have complexity 1.
    pub fn complexity(&self) -> usize {
        self.word.len() + 1
    }

    pub fn raw(&self) -> RawArc {
        RawArc {
            from: (self.from.0, self.from.1 as i64),
            to: (self.to.0, self.to.1 as i64),
            word: self.word.clone(),
        }
    }

    pub fn to_json(&self) -> ArcJson {
        ArcJson {
            from: (self.from.0, self.from.1 as i64),
            to: (self.to.0, self.to.1 as i64),
            word: self.word.to_string(),
        }
    }

    pub fn from_json(rg: &RibbonGraph, j: &ArcJson) -> Result<Arc> {
        let word = ReducedWord::parse(&j.word, rg.rank())?;
        canonicalize_arc(rg, &RawArc::new(j.from, word, j.to))
    }

    /// The lifted pair of boundary lines: the first passes through the identity.
    pub fn lines(&self, rg: &RibbonGraph) -> (Line, Line) {
        self.raw().lines(rg).expect("canonical arcs are well formed")
    }

    pub fn start_vertex(&self, rg: &RibbonGraph) -> ReducedWord {
        rg.boundary_prefix(self.from.0, self.from.1 as i64)
    }

    /// Vertices of the bridge path, where a lift of the arc can be realized.
    pub fn support(&self, rg: &RibbonGraph) -> Vec<ReducedWord> {
        let p = self.start_vertex(rg);
        (0..=self.word.len())
            .map(|k| p.mul(&self.word.prefix(k)))
            .collect()
    }

    pub fn is_essential(&self, rg: &RibbonGraph) -> bool {
        let (a, b) = self.lines(rg);
        a != b
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]-{}-[{},{}]",
            self.from.0,
            self.from.1,
            if self.word.is_empty() {
                "1".to_string()
            } else {
                self.word.to_string()
            },
            self.to.0,
            self.to.1
        )
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Slot at which `v` lies on the line through the identity of component `i`.
fn slot_on_base_line(rg: &RibbonGraph, i: usize, v: &ReducedWord) -> Option<i64> {
    let n = v.len() as i64;
    [n, -n]
        .into_iter()
        .find(|&s| rg.boundary_prefix(i, s) == *v)
}

/// Candidate keys `(from_slot, to_slot, word)` for the closest vertex pairs
/// between the base line of component `i` and `b`.
fn bridge_keys(rg: &RibbonGraph, i: usize, b: &Line) -> Result<Vec<(usize, usize, ReducedWord)>> {
    let kb = rg.period(b.component) as i64;
    let ka = rg.period(i) as i64;
    // projection of the identity onto b: |b.vertex(τ)| is V-shaped in τ
    let mut tau = 0i64;
    let len_at = |t: i64| b.vertex(rg, t).len();
    loop {
        if len_at(tau + 1) < len_at(tau) {
            tau += 1;
        } else if len_at(tau - 1) < len_at(tau) {
            tau -= 1;
        } else {
            break;
        }
    }
    let proj = b.vertex(rg, tau);
    // walk the identity→proj path while it follows the base line
    let mut split = 0usize;
    for k in (0..=proj.len()).rev() {
        let v = proj.prefix(k);
        if slot_on_base_line(rg, i, &v).is_some() {
            split = k;
            break;
        }
    }
    if split < proj.len() {
        // disjoint lines: a unique bridge
        let p = proj.prefix(split);
        let sigma = slot_on_base_line(rg, i, &p).expect("on base line");
        let word = p.inverse().mul(&proj);
        return Ok(vec![(
            sigma.rem_euclid(ka) as usize,
            tau.rem_euclid(kb) as usize,
            word,
        )]);
    }
    // the lines meet: collect the shared vertices around proj
    let limit = 4 * rg.max_period() as i64 + 4;
    let mut keys = Vec::new();
    for dir in [1i64, -1] {
        let mut t = if dir == 1 { tau } else { tau - 1 };
        let mut steps = 0;
        loop {
            let v = b.vertex(rg, t);
            match slot_on_base_line(rg, i, &v) {
                Some(sigma) => keys.push((
                    sigma.rem_euclid(ka) as usize,
                    t.rem_euclid(kb) as usize,
                    ReducedWord::identity(),
                )),
                None => break,
            }
            t += dir;
            steps += 1;
            if steps > limit {
                return Err(Error::ModelViolation(
                    "boundary lines overlap without bound".into(),
                ));
            }
        }
    }
    Ok(keys)
}

/// The canonical representative of the homotopy class of `raw`.
pub fn canonicalize_arc(rg: &RibbonGraph, raw: &RawArc) -> Result<Arc> {
    let (a, b) = raw.lines(rg)?;
    arc_from_lines(rg, &a, &b)
}

/// The canonical arc joining two lifted boundary lines.
pub fn arc_from_lines(rg: &RibbonGraph, a: &Line, b: &Line) -> Result<Arc> {
    if a == b {
        return Ok(Arc {
            word_len: 0,
            from: (a.component, 0),
            to: (a.component, 0),
            word: ReducedWord::identity(),
        });
    }
    let mut best: Option<Arc> = None;
    for (x, y) in [(a, b), (b, a)] {
        let shift = x.base.inverse();
        let y2 = y.translate(rg, &shift);
        for (s, t, word) in bridge_keys(rg, x.component, &y2)? {
            let cand = Arc {
                word_len: word.len(),
                from: (x.component, s),
                to: (y.component, t),
                word,
            };
            if best.as_ref().map_or(true, |bst| cand < *bst) {
                best = Some(cand);
            }
        }
    }
    best.ok_or_else(|| Error::ModelViolation("no bridge between distinct lines".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Letter;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s, 2).unwrap()
    }

    #[test]
    fn reversal_and_period_shift_agree() {
        let rg = RibbonGraph::torus();
        let raw = RawArc::new((0, 1), w("yx"), (0, 2));
        let a = canonicalize_arc(&rg, &raw).unwrap();
        // reversal: start from the far end and walk back
        let (la, lb) = raw.lines(&rg).unwrap();
        let rev = arc_from_lines(&rg, &lb, &la).unwrap();
        assert_eq!(a, rev);
        // shifting the start by one period conjugates the connector
        let period = rg.period(0) as i64;
        let bw = rg.boundary_word(0).clone();
        let shifted = RawArc::new((0, 1 + period), bw.inverse().mul(&w("yx")), (0, 2));
        assert_eq!(canonicalize_arc(&rg, &shifted).unwrap(), a);
    }

    #[test]
    fn boundary_parallel_arc_is_inessential() {
        let rg = RibbonGraph::torus();
        let first = rg.boundary_letter(0, 0);
        let raw = RawArc::new((0, 0), ReducedWord::identity().push(first), (0, 1));
        let a = canonicalize_arc(&rg, &raw).unwrap();
        assert!(!a.is_essential(&rg));
    }

    #[test]
    fn dual_of_an_edge_has_empty_bridge() {
        let rg = RibbonGraph::torus();
        let x = Letter::from_char('x', 2).unwrap();
        let v = ReducedWord::identity();
        let a = Line::through_corner(&rg, &v, x);
        let b = Line::through_corner(&rg, &v, rg.pred(x));
        let arc = arc_from_lines(&rg, &a, &b).unwrap();
        assert!(arc.is_essential(&rg));
        assert!(arc.word().is_empty());
        assert_eq!(arc.complexity(), 1);
    }

    #[test]
    fn display_form_parses_back() {
        let rg = RibbonGraph::torus();
        for a in crate::arcs::enumerate_arcs(&rg, 3) {
            let raw = RawArc::parse(&a.to_string(), 2).unwrap();
            assert_eq!(canonicalize_arc(&rg, &raw).unwrap(), a);
        }
        assert!(RawArc::parse("[0,1]-x", 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let rg = RibbonGraph::torus();
        let raw = RawArc::new((0, 0), w("xy"), (0, 3));
        let a = canonicalize_arc(&rg, &raw).unwrap();
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back: ArcJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Arc::from_json(&rg, &back).unwrap(), a);
    }
}
