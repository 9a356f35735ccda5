use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{ClopenSet, Letter, ReducedWord};

/// An essential sphere, encoded as a bipartition `X ⊔ X*` of the ends of
/// the free group. Stored in canonical form: the least representative
/// over translates and the choice of side.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpherePartition {
    side: ClopenSet,
}

/// JSON form `{"side":["x","yX",...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereJson {
    pub side: Vec<String>,
}

impl SpherePartition {
    pub fn side(&self) -> &ClopenSet {
        &self.side
    }

    pub fn complement(&self, rank: usize) -> ClopenSet {
        self.side.complement(rank)
    }

    pub fn depth(&self) -> usize {
        self.side.depth()
    }

    pub fn to_json(&self) -> SphereJson {
        SphereJson {
            side: self.side.words().map(|w| w.to_string()).collect(),
        }
    }

    pub fn from_json(rank: usize, j: &SphereJson) -> Result<SpherePartition> {
        let words = j
            .side
            .iter()
            .map(|s| ReducedWord::parse(s, rank))
            .collect::<Result<Vec<_>>>()?;
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::ImproperSide);
        }
        canonicalize_sphere(rank, &ClopenSet::from_prefixes(rank, words))
    }

    /// Parses a side written as `{x,yX}` or `x,yX` and canonicalizes it.
    pub fn parse(rank: usize, s: &str) -> Result<SpherePartition> {
        let t = s.trim();
        let t = t.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(t);
        let side = t
            .split(',')
            .map(|w| w.trim())
            .filter(|w| !w.is_empty())
            .map(String::from)
            .collect();
        Self::from_json(rank, &SphereJson { side })
    }

    fn key(&self) -> (usize, usize, Vec<ReducedWord>) {
        self.side.sort_key()
    }
}

impl PartialOrd for SpherePartition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SpherePartition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for SpherePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.side)
    }
}

impl fmt::Display for SpherePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.side)
    }
}

/// The canonical sphere of the bipartition `side ⊔ side*`.
///
/// Translating by `g` moves the root of the tree to `g⁻¹`; the depth of
/// the translate is a maximum of distances to a finite vertex set, hence
/// convex along geodesics. Greedy descent reaches a global minimum, and
/// the minimizers form a subtree explored by breadth-first search.
pub fn canonicalize_sphere(rank: usize, side: &ClopenSet) -> Result<SpherePartition> {
    if !side.is_proper() {
        return Err(Error::ImproperSide);
    }
    let letters: Vec<ReducedWord> = Letter::all(rank)
        .map(|l| ReducedWord::identity().push(l))
        .collect();
    let mut cur = side.clone();
    loop {
        let d = cur.depth();
        let better = letters
            .iter()
            .map(|g| cur.translate(g, rank))
            .find(|t| t.depth() < d);
        match better {
            Some(t) => cur = t,
            None => break,
        }
    }
    let d = cur.depth();
    let mut seen = vec![cur.clone()];
    let mut frontier = vec![cur];
    while let Some(x) = frontier.pop() {
        for g in &letters {
            let t = x.translate(g, rank);
            if t.depth() == d && !seen.contains(&t) {
                seen.push(t.clone());
                frontier.push(t);
            }
        }
    }
    let best = seen
        .iter()
        .flat_map(|x| [x.clone(), x.complement(rank)])
        .min_by_key(|x| x.sort_key())
        .expect("nonempty");
    Ok(SpherePartition { side: best })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ws: &[&str]) -> ClopenSet {
        ClopenSet::from_prefixes(2, ws.iter().map(|s| ReducedWord::parse(s, 2).unwrap()))
    }

    #[test]
    fn petal_dual_forms_agree() {
        let a = canonicalize_sphere(2, &set(&["x"])).unwrap();
        let b = canonicalize_sphere(2, &set(&["X"])).unwrap();
        assert_eq!(a, b);
        let y = ReducedWord::parse("y", 2).unwrap();
        let c = canonicalize_sphere(2, &set(&["x"]).translate(&y, 2)).unwrap();
        assert_eq!(a, c);
        assert_eq!(a.side(), &set(&["x"]));
    }

    #[test]
    fn improper_sides_are_rejected() {
        assert!(canonicalize_sphere(2, &ClopenSet::empty()).is_err());
        assert!(canonicalize_sphere(2, &ClopenSet::full()).is_err());
        assert!(canonicalize_sphere(2, &set(&["xy", "xx", "xY"])).is_ok());
    }

    #[test]
    fn display_form_parses_back() {
        let s = canonicalize_sphere(2, &set(&["xy", "Y"])).unwrap();
        assert_eq!(SpherePartition::parse(2, &s.to_string()).unwrap(), s);
        assert!(SpherePartition::parse(2, "{}").is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = canonicalize_sphere(2, &set(&["xy", "Y"])).unwrap();
        let j = serde_json::to_string(&s.to_json()).unwrap();
        let back: SphereJson = serde_json::from_str(&j).unwrap();
        assert_eq!(SpherePartition::from_json(2, &back).unwrap(), s);
    }
}
