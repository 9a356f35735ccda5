//! Clopen sets of ends, stored as finite unions of cylinders.

use std::collections::BTreeSet;
use std::fmt;

use super::circle::EndPoint;
use super::word::{Letter, ReducedWord};
use crate::error::{Error, Result};

/// The clopen set of ends whose expansion begins with `prefix`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cylinder {
    prefix: ReducedWord,
}

impl Cylinder {
    pub fn new(prefix: ReducedWord) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::EmptyPrefix);
        }
        Ok(Cylinder { prefix })
    }

    pub fn prefix(&self) -> &ReducedWord {
        &self.prefix
    }
}

pub fn end_in_cylinder(e: &EndPoint, c: &Cylinder) -> bool {
    e.starts_with(c.prefix())
}

/// Children of vertex `v` in the tree rooted at the identity.
pub fn children(rank: usize, v: &ReducedWord) -> impl Iterator<Item = ReducedWord> + '_ {
    let last = v.last();
    Letter::all(rank)
        .filter(move |l| Some(l.inverse()) != last)
        .map(move |l| {
            let mut letters = v.letters().to_vec();
            letters.push(l);
            ReducedWord::from_reduced_unchecked(letters)
        })
}

/// A union of cylinders, kept as the minimal antichain of prefixes.
/// The empty prefix stands for the whole end space.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ClopenSet {
    words: BTreeSet<ReducedWord>,
}

impl ClopenSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        let mut words = BTreeSet::new();
        words.insert(ReducedWord::identity());
        ClopenSet { words }
    }

    pub fn cylinder(p: ReducedWord) -> Self {
        let mut words = BTreeSet::new();
        words.insert(p);
        ClopenSet { words }
    }

    /// Union of the given prefixes, normalized to the minimal cover.
    pub fn from_prefixes<I: IntoIterator<Item = ReducedWord>>(rank: usize, it: I) -> Self {
        let mut words: BTreeSet<ReducedWord> = it.into_iter().collect();
        // drop nested prefixes
        let all: Vec<ReducedWord> = words.iter().cloned().collect();
        for w in &all {
            if (0..w.len()).any(|k| words.contains(&w.prefix(k))) {
                words.remove(w);
            }
        }
        // merge complete sibling families, deepest first
        loop {
            let mut merged = false;
            let parents: BTreeSet<ReducedWord> = words
                .iter()
                .filter(|w| !w.is_empty())
                .map(|w| w.prefix(w.len() - 1))
                .collect();
            for p in parents.iter().rev() {
                let kids: Vec<ReducedWord> = children(rank, p).collect();
                if kids.iter().all(|k| words.contains(k)) {
                    for k in &kids {
                        words.remove(k);
                    }
                    words.insert(p.clone());
                    merged = true;
                }
            }
            if !merged {
                break;
            }
        }
        ClopenSet { words }
    }

    pub fn from_cylinders<I: IntoIterator<Item = Cylinder>>(rank: usize, it: I) -> Self {
        Self::from_prefixes(rank, it.into_iter().map(|c| c.prefix))
    }

    pub fn words(&self) -> impl Iterator<Item = &ReducedWord> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.words.contains(&ReducedWord::identity())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    /// Longest prefix length.
    pub fn depth(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn contains_end(&self, e: &EndPoint) -> bool {
        self.words.iter().any(|w| e.starts_with(w))
    }

    /// Whether the cylinder of `v` lies inside this set.
    pub fn covers(&self, v: &ReducedWord) -> bool {
        (0..=v.len()).any(|k| self.words.contains(&v.prefix(k)))
    }

    fn has_below(&self, v: &ReducedWord) -> bool {
        self.words.iter().any(|w| w.starts_with(v))
    }

    pub fn complement(&self, rank: usize) -> ClopenSet {
        let mut out = Vec::new();
        let mut stack = vec![ReducedWord::identity()];
        while let Some(v) = stack.pop() {
            if self.words.contains(&v) {
                continue;
            }
            if !self.has_below(&v) {
                out.push(v);
                continue;
            }
            stack.extend(children(rank, &v));
        }
        ClopenSet::from_prefixes(rank, out)
    }

    pub fn intersect(&self, other: &ClopenSet, rank: usize) -> ClopenSet {
        let mut out = Vec::new();
        for a in &self.words {
            for b in &other.words {
                if a.starts_with(b) {
                    out.push(a.clone());
                } else if b.starts_with(a) {
                    out.push(b.clone());
                }
            }
        }
        ClopenSet::from_prefixes(rank, out)
    }

    pub fn union(&self, other: &ClopenSet, rank: usize) -> ClopenSet {
        ClopenSet::from_prefixes(rank, self.words.iter().chain(other.words.iter()).cloned())
    }

    /// Whether the two sets share an end.
    pub fn meets(&self, other: &ClopenSet) -> bool {
        self.words
            .iter()
            .any(|a| other.words.iter().any(|b| a.starts_with(b) || b.starts_with(a)))
    }

    pub fn is_subset_of(&self, other: &ClopenSet, rank: usize) -> bool {
        !self.meets(&other.complement(rank))
    }

    /// Left translation by `g`.
    pub fn translate(&self, g: &ReducedWord, rank: usize) -> ClopenSet {
        let mut out: Vec<ReducedWord> = Vec::new();
        for p in &self.words {
            if p.is_empty() {
                return ClopenSet::full();
            }
            let n = p.len();
            let a = p.letters()[n - 1];
            let u = g.mul(&p.prefix(n - 1));
            if u.last() == Some(a.inverse()) {
                // the edge now points toward the identity
                out.extend(ClopenSet::cylinder(u).complement(rank).words);
            } else {
                out.push(u.push(a));
            }
        }
        ClopenSet::from_prefixes(rank, out)
    }

    /// Proper prefixes of the stored words: the vertices where membership is decided.
    pub fn frontier(&self) -> BTreeSet<ReducedWord> {
        let mut f = BTreeSet::new();
        f.insert(ReducedWord::identity());
        for w in &self.words {
            for k in 0..w.len() {
                f.insert(w.prefix(k));
            }
        }
        f
    }

    /// Shortlex comparison key: depth, count, then words in order.
    pub fn sort_key(&self) -> (usize, usize, Vec<ReducedWord>) {
        (self.depth(), self.len(), self.words.iter().cloned().collect())
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s, 2).unwrap()
    }

    fn set(ws: &[&str]) -> ClopenSet {
        ClopenSet::from_prefixes(2, ws.iter().map(|s| w(s)))
    }

    #[test]
    fn end_membership_examples() {
        let xe = EndPoint::power(&w("x")).unwrap();
        assert!(end_in_cylinder(&xe, &Cylinder::new(w("x")).unwrap()));
        assert!(!end_in_cylinder(&xe, &Cylinder::new(w("y")).unwrap()));
        let e = EndPoint::new(&w("xY"), &w("x")).unwrap();
        assert!(end_in_cylinder(&e, &Cylinder::new(w("xYx")).unwrap()));
        assert!(Cylinder::new(ReducedWord::identity()).is_err());
    }

    #[test]
    fn minimal_cover_merges_siblings() {
        assert_eq!(set(&["xy", "xx", "xY"]), set(&["x"]));
        assert_eq!(set(&["x", "xy"]), set(&["x"]));
        assert!(set(&["x", "y", "X", "Y"]).is_full());
    }

    #[test]
    fn complement_and_translate() {
        let x = set(&["x"]);
        assert_eq!(x.complement(2), set(&["y", "X", "Y"]));
        // x · cyl(X) is the complement of cyl(x)
        assert_eq!(set(&["X"]).translate(&w("x"), 2), x.complement(2));
        assert_eq!(x.translate(&w("y"), 2), set(&["yx"]));
        let a = set(&["xy", "Y"]);
        let g = w("yXy");
        assert_eq!(a.translate(&g, 2).translate(&g.inverse(), 2), a);
    }

    #[test]
    fn set_algebra() {
        let a = set(&["x", "y"]);
        let b = set(&["xy", "Y"]);
        assert_eq!(a.intersect(&b, 2), set(&["xy"]));
        assert!(set(&["xy"]).is_subset_of(&a, 2));
        assert!(!b.is_subset_of(&a, 2));
        assert!(set(&["xx", "xy", "xY"]).is_subset_of(&set(&["x"]), 2));
        assert!(!a.meets(&set(&["X"])));
    }
}
