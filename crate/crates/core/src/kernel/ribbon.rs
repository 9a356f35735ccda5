//! One-vertex ribbon graphs: the surface model.
//!
//! The surface is a thickened rose with `g` petals. The cyclic order of the
//! `2g` half-edge directions at the vertex fixes the embedding; boundary
//! components are traced by leaving along `e` and then along
//! `succ⁻¹(e⁻¹)`, where `succ` is the cyclic successor.

use serde::{Deserialize, Serialize};

use super::word::{CyclicWord, Letter, ReducedWord};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    rank: usize,
    order: Vec<Letter>,
    /// Position of each direction (dense index) in `order`.
    pos: Vec<usize>,
    boundary: Vec<ReducedWord>,
    /// For each direction (dense index): component and slot in its boundary word.
    locate: Vec<(usize, usize)>,
}

/// Serialized form: `{"rank": 2, "order": ["x","y","X","Y"]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RibbonSpec {
    pub rank: usize,
    pub order: Vec<String>,
}

impl RibbonGraph {
    pub fn new(rank: usize, order: Vec<Letter>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Ribbon("rank must be positive".into()));
        }
        if order.len() != 2 * rank {
            return Err(Error::Ribbon(format!(
                "cyclic order must list all {} directions",
                2 * rank
            )));
        }
        let mut pos = vec![usize::MAX; 2 * rank];
        for (i, l) in order.iter().enumerate() {
            if l.gen_index() >= rank || pos[l.dense()] != usize::MAX {
                return Err(Error::Ribbon(format!("direction {l} repeated or out of range")));
            }
            pos[l.dense()] = i;
        }
        let mut rg = RibbonGraph {
            rank,
            order,
            pos,
            boundary: Vec::new(),
            locate: vec![(0, 0); 2 * rank],
        };
        rg.trace_boundary();
        Ok(rg)
    }

    /// Parses the cyclic order from a string such as `"xyXY"`.
    pub fn parse(rank: usize, order: &str) -> Result<Self> {
        let letters = order
            .chars()
            .map(|c| Letter::from_char(c, rank))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rank, letters)
    }

    /// One-holed torus: order (x, y, X, Y), boundary `xyXY`.
    pub fn torus() -> Self {
        Self::parse(2, "xyXY").expect("preset")
    }

    /// Planar rose (pair of pants): order (x, X, y, Y), three boundary components.
    pub fn planar_rose() -> Self {
        Self::parse(2, "xXyY").expect("preset")
    }

    /// Genus-one surface with two boundary components, rank 3.
    pub fn rank3_default() -> Self {
        Self::parse(3, "xyXYzZ").expect("preset")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "torus" => Ok(Self::torus()),
            "rose" | "planar-rose" | "pants" => Ok(Self::planar_rose()),
            "rank3" => Ok(Self::rank3_default()),
            other => Err(Error::Ribbon(format!("unknown preset {other:?}"))),
        }
    }

    pub fn from_spec(spec: &RibbonSpec) -> Result<Self> {
        let letters = spec
            .order
            .iter()
            .map(|s| {
                let mut cs = s.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => Letter::from_char(c, spec.rank),
                    _ => Err(Error::Ribbon(format!("bad direction {s:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec.rank, letters)
    }

    pub fn to_spec(&self) -> RibbonSpec {
        RibbonSpec {
            rank: self.rank,
            order: self.order.iter().map(|l| l.to_string()).collect(),
        }
    }

    fn trace_boundary(&mut self) {
        let n = 2 * self.rank;
        let mut seen = vec![false; n];
        let mut cycles: Vec<Vec<Letter>> = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut e = Letter::from_dense(start);
            while !seen[e.dense()] {
                seen[e.dense()] = true;
                cyc.push(e);
                e = self.boundary_next(e);
            }
            // rotate to the least rotation so slot 0 is canonical
            let best = (0..cyc.len())
                .map(|r| {
                    let mut rot = cyc[r..].to_vec();
                    rot.extend_from_slice(&cyc[..r]);
                    rot
                })
                .min()
                .expect("nonempty cycle");
            cycles.push(best);
        }
        cycles.sort();
        for (i, c) in cycles.iter().enumerate() {
            for (j, l) in c.iter().enumerate() {
                self.locate[l.dense()] = (i, j);
            }
        }
        self.boundary = cycles
            .into_iter()
            .map(ReducedWord::from_reduced_unchecked)
            .collect();
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &[Letter] {
        &self.order
    }

    /// Cyclic successor of a direction at the vertex.
    pub fn succ(&self, d: Letter) -> Letter {
        self.order[(self.pos[d.dense()] + 1) % self.order.len()]
    }

    pub fn pred(&self, d: Letter) -> Letter {
        let n = self.order.len();
        self.order[(self.pos[d.dense()] + n - 1) % n]
    }

    /// Position of a direction in the cyclic order.
    pub fn position(&self, d: Letter) -> usize {
        self.pos[d.dense()]
    }

    /// The letter following `e` along a boundary component.
    pub fn boundary_next(&self, e: Letter) -> Letter {
        self.pred(e.inverse())
    }

    /// Boundary words with their fixed base rotation (slot 0 = first letter).
    pub fn boundary_words(&self) -> &[ReducedWord] {
        &self.boundary
    }

    /// Boundary words as conjugacy classes.
    pub fn boundary_cyclic(&self) -> Vec<CyclicWord> {
        self.boundary
            .iter()
            .map(|w| CyclicWord::new(w).expect("boundary words are nontrivial"))
            .collect()
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    /// Genus of the thickened surface, from `2h + b - 1 = g`.
    pub fn genus(&self) -> usize {
        (self.rank + 1 - self.boundary_count()) / 2
    }

    pub fn boundary_word(&self, i: usize) -> &ReducedWord {
        &self.boundary[i]
    }

    pub fn period(&self, i: usize) -> usize {
        self.boundary[i].len()
    }

    pub fn max_period(&self) -> usize {
        self.boundary.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Component and slot at which direction `d` occurs in the boundary words.
    pub fn locate(&self, d: Letter) -> (usize, usize) {
        self.locate[d.dense()]
    }

    /// Vertex reached after `slot` steps along component `i` from the identity.
    /// Negative slots walk backwards.
    pub fn boundary_prefix(&self, i: usize, slot: i64) -> ReducedWord {
        let w = &self.boundary[i];
        let k = w.len() as i64;
        let q = slot.div_euclid(k);
        let r = slot.rem_euclid(k) as usize;
        w.pow(q).mul(&w.prefix(r))
    }

    /// Letter leaving the vertex at `slot` along component `i`.
    pub fn boundary_letter(&self, i: usize, slot: i64) -> Letter {
        let w = &self.boundary[i];
        w.letters()[slot.rem_euclid(w.len() as i64) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(rg: &RibbonGraph) -> Vec<String> {
        rg.boundary_cyclic().iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn annulus() {
        let rg = RibbonGraph::parse(1, "xX").unwrap();
        assert_eq!(words(&rg), vec!["x", "X"]);
        assert_eq!(rg.boundary_count(), 2);
        assert_eq!(rg.genus(), 0);
    }

    #[test]
    fn one_holed_torus() {
        let rg = RibbonGraph::torus();
        assert_eq!(words(&rg), vec!["xyXY"]);
        assert_eq!(rg.genus(), 1);
    }

    #[test]
    fn planar_rose_has_three_boundaries() {
        let rg = RibbonGraph::planar_rose();
        assert_eq!(rg.boundary_count(), 3);
        assert_eq!(rg.genus(), 0);
        assert_eq!(2 * rg.genus() + rg.boundary_count() - 1, rg.rank());
    }

    #[test]
    fn every_direction_used_once() {
        for rg in [
            RibbonGraph::torus(),
            RibbonGraph::planar_rose(),
            RibbonGraph::rank3_default(),
            RibbonGraph::parse(3, "xyzXYZ").unwrap(),
        ] {
            let mut all: Vec<Letter> = rg
                .boundary_words()
                .iter()
                .flat_map(|w| w.letters().to_vec())
                .collect();
            all.sort();
            let expected: Vec<Letter> = Letter::all(rg.rank()).collect();
            assert_eq!(all, expected);
            assert_eq!(2 * rg.genus() + rg.boundary_count() - 1, rg.rank());
            for w in rg.boundary_words() {
                assert!(w.is_cyclically_reduced());
            }
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(RibbonGraph::parse(2, "xyX").is_err());
        assert!(RibbonGraph::parse(2, "xyXX").is_err());
        assert!(RibbonGraph::parse(2, "xyXZ").is_err());
    }

    #[test]
    fn spec_round_trip() {
        let rg = RibbonGraph::torus();
        let json = r#"{"rank":2,"order":["x","y","X","Y"]}"#;
        let spec: RibbonSpec = serde_json::from_str(json).unwrap();
        assert_eq!(RibbonGraph::from_spec(&spec).unwrap(), rg);
        assert_eq!(rg.to_spec(), spec);
    }
}
