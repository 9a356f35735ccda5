use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use crate::arcs::Distance;
use crate::error::{Error, Result};

use super::crossing::{sided_cross, Sided};
use super::enumerate::enumerate_spheres;
use super::partition::SpherePartition;

/// Disjointness graph on a finite set of spheres.
pub struct SphereGraph {
    rank: usize,
    radius: usize,
    spheres: Vec<SpherePartition>,
    sided: Vec<Sided>,
    index: HashMap<SpherePartition, usize>,
    adj: Vec<Vec<usize>>,
}

impl SphereGraph {
    /// `radius` is the prefix-length bound of the enumeration the vertex set
    /// came from; it drives certification.
    pub fn from_spheres(rank: usize, radius: usize, spheres: BTreeSet<SpherePartition>) -> Self {
        let spheres: Vec<SpherePartition> = spheres.into_iter().collect();
        let sided: Vec<Sided> = spheres.par_iter().map(|p| Sided::of(rank, p)).collect();
        let n = spheres.len();
        let upper: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (i + 1..n)
                    .filter(|&j| !sided_cross(rank, &sided[i], &sided[j]))
                    .collect()
            })
            .collect();
        let mut adj = vec![Vec::new(); n];
        for (i, js) in upper.into_iter().enumerate() {
            for j in js {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        let index = spheres.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        SphereGraph {
            rank,
            radius,
            spheres,
            sided,
            index,
            adj,
        }
    }

    pub fn build(rank: usize, radius: usize, max_cylinders: usize) -> Self {
        Self::from_spheres(rank, radius, enumerate_spheres(rank, radius, max_cylinders))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn spheres(&self) -> &[SpherePartition] {
        &self.spheres
    }

    pub fn sided(&self, i: usize) -> &Sided {
        &self.sided[i]
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn index_of(&self, p: &SpherePartition) -> Option<usize> {
        self.index.get(p).copied()
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

    pub fn bfs(&self, src: usize, cap: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.spheres.len()];
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

    /// Certification: distances up to 2 are exact because adjacency is
    /// decided exactly; beyond that the ball must be wide relative to the
    /// endpoints.
    pub fn certify(&self, d: u32, p: &SpherePartition, q: &SpherePartition) -> Distance {
        let m = p.depth().max(q.depth());
        if d <= 2 || self.radius >= (d as usize + 1) * m {
            Distance::Exact(d)
        } else {
            Distance::UpperBound(d)
        }
    }

    pub fn distance(&self, p: &SpherePartition, q: &SpherePartition, cap: u32) -> Distance {
        let (Some(i), Some(j)) = (self.index_of(p), self.index_of(q)) else {
            return Distance::ExceedsCap;
        };
        match self.bfs(i, cap)[j] {
            None => Distance::ExceedsCap,
            Some(d) => self.certify(d, p, q),
        }
    }
}

/// Sphere-graph distance in the enumerated ball around both spheres.
pub fn sphere_distance(
    rank: usize,
    p: &SpherePartition,
    q: &SpherePartition,
    cap: i64,
) -> Result<Distance> {
    if cap <= 0 {
        return Err(Error::BadCap);
    }
    if p == q {
        return Ok(Distance::Exact(0));
    }
    let radius = p.depth().max(q.depth()).max(2);
    let k = p.side().len().max(q.side().len()).max(2);
    let mut ball = enumerate_spheres(rank, radius, k);
    ball.insert(p.clone());
    ball.insert(q.clone());
    let g = SphereGraph::from_spheres(rank, radius, ball);
    Ok(g.distance(p, q, cap.min(u32::MAX as i64) as u32))
}
