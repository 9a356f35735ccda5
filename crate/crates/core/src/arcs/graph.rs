use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::RibbonGraph;

use super::canonical::Arc;
use super::disjoint::{chords_disjoint, Chord};
use super::enumerate::enumerate_arcs;

/// A graph distance together with how much it can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Distance {
    Exact(u32),
    UpperBound(u32),
    ExceedsCap,
}

impl Distance {
    pub fn exact(self) -> Option<u32> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }

    pub fn value(self) -> Option<u32> {
        match self {
            Distance::Exact(d) | Distance::UpperBound(d) => Some(d),
            Distance::ExceedsCap => None,
        }
    }
}

/// Disjointness graph on a finite set of arcs.
pub struct ArcGraph {
    bound: usize,
    arcs: Vec<Arc>,
    index: HashMap<Arc, usize>,
    adj: Vec<Vec<usize>>,
}

impl ArcGraph {
    /// The graph induced on all arcs of complexity at most `bound`.
    pub fn build(rg: &RibbonGraph, bound: usize) -> ArcGraph {
        Self::from_arcs(rg, bound, enumerate_arcs(rg, bound))
    }

    pub fn from_arcs(rg: &RibbonGraph, bound: usize, arcs: BTreeSet<Arc>) -> ArcGraph {
        let arcs: Vec<Arc> = arcs.into_iter().collect();
        let chords: Vec<Chord> = arcs.par_iter().map(|a| Chord::new(rg, a)).collect();
        let adj: Vec<Vec<usize>> = (0..arcs.len())
            .into_par_iter()
            .map(|i| {
                (0..arcs.len())
                    .filter(|&j| j != i && chords_disjoint(rg, &chords[i], &chords[j]))
                    .collect()
            })
            .collect();
        let index = arcs.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        ArcGraph {
            bound,
            arcs,
            index,
            adj,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn index_of(&self, a: &Arc) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// Breadth-first distances from `src` up to depth `cap`.
    pub fn bfs(&self, src: usize, cap: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.arcs.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices are labelled");
            if du >= cap {
                continue;
            }
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Distance inside the finite graph, certified when the ball is large
    /// enough relative to the endpoints.
    pub fn distance(&self, a: &Arc, b: &Arc, cap: u32) -> Distance {
        let (Some(i), Some(j)) = (self.index_of(a), self.index_of(b)) else {
            return Distance::ExceedsCap;
        };
        match self.bfs(i, cap)[j] {
            None => Distance::ExceedsCap,
            Some(d) => self.certify(d, a, b),
        }
    }

    /// Certification of a graph distance `d` between `a` and `b`: distances
    /// up to 2 are exact because adjacency is decided exactly; beyond that
    /// the ball must be wide relative to the endpoints.
    pub fn certify(&self, d: u32, a: &Arc, b: &Arc) -> Distance {
        let m = a.complexity().max(b.complexity());
        if d <= 2 || self.bound >= (d as usize + 1) * m {
            Distance::Exact(d)
        } else {
            Distance::UpperBound(d)
        }
    }
}

/// Largest enumeration bound tried by [`arc_distance`].
pub const MAX_ADAPTIVE_BOUND: usize = 6;

/// Arc-graph distance computed in growing enumerated balls.
pub fn arc_distance(rg: &RibbonGraph, a: &Arc, b: &Arc, cap: i64) -> Result<Distance> {
    if cap <= 0 {
        return Err(Error::BadCap);
    }
    if !a.is_essential(rg) || !b.is_essential(rg) {
        return Err(Error::InessentialArc);
    }
    if a == b {
        return Ok(Distance::Exact(0));
    }
    let cap = cap.min(u32::MAX as i64) as u32;
    let m = a.complexity().max(b.complexity());
    let mut last = Distance::ExceedsCap;
    let top = MAX_ADAPTIVE_BOUND.max(m);
    for bound in m..=top {
        let g = ArcGraph::build(rg, bound);
        last = g.distance(a, b, cap);
        if matches!(last, Distance::Exact(_)) {
            break;
        }
    }
    Ok(last)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_ball_one_misses_one_edge() {
        let rg = RibbonGraph::torus();
        let g = ArcGraph::build(&rg, 1);
        // slopes 1/0, 0/1, 1/1, -1/1: only ±1/1 fail to be Farey neighbours
        assert_eq!(g.len(), 4);
        assert_eq!(g.edges().count(), 5);
    }
}
