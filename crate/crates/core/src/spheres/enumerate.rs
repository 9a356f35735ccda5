use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::kernel::{ClopenSet, ReducedWord};

use super::crossing::is_embedded;
use super::partition::{canonicalize_sphere, SpherePartition};

fn antichains(words: &[ReducedWord], k: usize) -> Vec<Vec<usize>> {
    fn go(
        words: &[ReducedWord],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..words.len() {
            let w = &words[i];
            if cur
                .iter()
                .any(|&j| w.starts_with(&words[j]) || words[j].starts_with(w))
            {
                continue;
            }
            cur.push(i);
            go(words, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(words, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All embedded spheres with a side made of at most `max_cylinders`
/// cylinders of prefix length at most `radius`, in canonical form.
pub fn enumerate_spheres(rank: usize, radius: usize, max_cylinders: usize) -> BTreeSet<SpherePartition> {
    let words: Vec<ReducedWord> = ReducedWord::ball(rank, radius)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    antichains(&words, max_cylinders)
        .into_par_iter()
        .filter_map(|idx| {
            let side = ClopenSet::from_prefixes(rank, idx.iter().map(|&i| words[i].clone()));
            if !side.is_proper() || !is_embedded(rank, &side) {
                return None;
            }
            canonicalize_sphere(rank, &side).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_ball_holds_the_two_petal_duals() {
        assert_eq!(enumerate_spheres(2, 1, 1).len(), 2);
    }

    #[test]
    fn monotone() {
        let a = enumerate_spheres(2, 1, 2);
        let b = enumerate_spheres(2, 2, 3);
        assert!(a.is_subset(&b));
    }
}
