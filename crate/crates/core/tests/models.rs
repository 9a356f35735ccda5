use std::collections::BTreeSet;

use dhl_core::arcs::{
    arcs_disjoint, arcs_disjoint_within, canonicalize_arc, enumerate_arcs, farey_adjacent,
    slope_arc, Arc, ArcGraph, RawArc, Slope,
};
use dhl_core::doubling::{chord_side, iota};
use dhl_core::kernel::{circle_order, ClopenSet, CirclePoint, EndPoint, Letter, ReducedWord, RibbonGraph};
use dhl_core::projection::{boundary_profile, phi_all, profile_count_within};
use dhl_core::spheres::{
    canonicalize_sphere, certified_radius, crossing_translates, enumerate_spheres, is_embedded,
    is_embedded_within, kappa, kappa_within, Sided, SpherePartition,
};
use dhl_core::surgery::{path_is_valid, surgery_path};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn surfaces() -> [RibbonGraph; 2] {
    [RibbonGraph::torus(), RibbonGraph::planar_rose()]
}

fn doubled(rg: &RibbonGraph, bound: usize) -> Vec<(Arc, SpherePartition)> {
    enumerate_arcs(rg, bound)
        .into_iter()
        .map(|a| {
            let s = iota(rg, &a).unwrap();
            (a, s)
        })
        .collect()
}

#[test]
fn arc_forms_are_canonical() {
    for rg in surfaces() {
        for a in enumerate_arcs(&rg, 4) {
            let raw = a.raw();
            let (i, s) = raw.from;
            let (j, t) = raw.to;
            let pi = rg.period(i) as i64;
            let pj = rg.period(j) as i64;
            let shifted = RawArc::new((i, s + pi), raw.word.clone(), (j, t - 2 * pj));
            assert_eq!(canonicalize_arc(&rg, &shifted).unwrap(), a);
            // the same arc read from its other end
            let (l1, l2) = a.lines(&rg);
            let back = dhl_core::arcs::arc_from_lines(&rg, &l2, &l1).unwrap();
            assert_eq!(back, a);
            let json = a.to_json();
            assert_eq!(Arc::from_json(&rg, &json).unwrap(), a);
        }
    }
}

#[test]
fn exact_disjointness_matches_brute_force() {
    for rg in surfaces() {
        let arcs: Vec<Arc> = enumerate_arcs(&rg, 3).into_iter().collect();
        for a in &arcs {
            for b in &arcs {
                let r = a.word().len() + b.word().len() + 6;
                assert_eq!(arcs_disjoint(&rg, a, b), arcs_disjoint_within(&rg, a, b, r), "{a} {b}");
            }
        }
    }
}

#[test]
fn doubling_is_coherent_with_disjointness() {
    for rg in surfaces() {
        let d = doubled(&rg, 4);
        let spheres: BTreeSet<_> = d.iter().map(|(_, s)| s.clone()).collect();
        assert_eq!(spheres.len(), d.len(), "doubling is injective");
        for (a, sa) in &d {
            assert!(is_embedded(rg.rank(), sa.side()));
            for (b, sb) in &d {
                let k = kappa(rg.rank(), sa, sb);
                assert_eq!(arcs_disjoint(&rg, a, b), k == 0, "{a} {b}");
                assert_eq!(k, kappa(rg.rank(), sb, sa));
            }
        }
    }
}

#[test]
fn doubled_sides_separate_the_chord_ends() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for rg in surfaces() {
        let rank = rg.rank();
        for a in enumerate_arcs(&rg, 4) {
            let (l1, l2) = a.lines(&rg);
            let side = chord_side(&rg, &l1, &l2).unwrap();
            let (r1, r2) = (l1.rep(&rg), l2.rep(&rg));
            let mut signs = [None, None];
            let mut tested = 0;
            while tested < 1000 {
                let word = |rng: &mut rand_chacha::ChaCha8Rng, n: usize| {
                    ReducedWord::reduce((0..rng.gen_range(0..=n)).map(|_| {
                        let g = rng.gen_range(1..=rank as i8);
                        Letter::from_raw(if rng.gen() { g } else { -g })
                    }))
                };
                let p = word(&mut rng, 8);
                let r = word(&mut rng, 4);
                if r.is_empty() || !r.is_cyclically_reduced() {
                    continue;
                }
                let e = EndPoint::new(&p, &r).unwrap();
                let Ok(o) = circle_order(&rg, &r1, &CirclePoint::End(e.clone()), &r2) else {
                    continue;
                };
                let inside = usize::from(side.contains_end(&e));
                match signs[inside] {
                    None => signs[inside] = Some(o),
                    Some(s) => assert_eq!(s, o, "{a} {e}"),
                }
                tested += 1;
            }
            if let [Some(s), Some(t)] = signs {
                assert_ne!(s, t);
            }
        }
    }
}

#[test]
fn crossing_counts_survive_a_wider_search() {
    let rank = 2;
    let mut spheres = enumerate_spheres(rank, 2, 2);
    spheres.extend(doubled(&RibbonGraph::torus(), 2).into_iter().map(|(_, s)| s));
    let spheres: Vec<_> = spheres.into_iter().collect();
    for p in &spheres {
        let r = certified_radius(p.side(), p.side()) + 2;
        assert!(is_embedded_within(rank, p.side(), r));
        for q in &spheres {
            let r = certified_radius(p.side(), q.side()) + 2;
            if r <= 8 {
                assert_eq!(kappa(rank, p, q), kappa_within(rank, p, q, r), "{p} {q}");
            }
        }
    }
}

#[test]
fn crossing_counts_are_translation_invariant() {
    let rank = 2;
    let spheres: Vec<_> = enumerate_spheres(rank, 2, 2).into_iter().collect();
    let g = ReducedWord::parse("xYxx", rank).unwrap();
    for p in &spheres {
        for q in &spheres {
            let k = kappa(rank, p, q);
            let gp = Sided::new(rank, &p.side().translate(&g, rank));
            let gq = Sided::new(rank, &q.side().complement(rank).translate(&g, rank));
            assert_eq!(crossing_translates(rank, &gp, &gq).len(), k);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embeddedness_survives_a_wider_search(
        ws in prop::collection::vec(prop::collection::vec((1i8..=2, any::<bool>()), 1..3), 1..4)
    ) {
        let words = ws.into_iter().map(|v| {
            ReducedWord::reduce(v.into_iter().map(|(g, inv)| Letter::from_raw(if inv { -g } else { g })))
        }).filter(|w| !w.is_empty());
        let side = ClopenSet::from_prefixes(2, words);
        prop_assume!(side.is_proper());
        let r = certified_radius(&side, &side) + 2;
        prop_assert_eq!(is_embedded(2, &side), is_embedded_within(2, &side, r));
    }
}

#[test]
fn farey_adjacency_matches_disjointness() {
    let rg = RibbonGraph::torus();
    let slopes = Slope::box_of(6);
    let arcs: Vec<Arc> = slopes.iter().map(|&s| slope_arc(&rg, s).unwrap()).collect();
    for (i, &s) in slopes.iter().enumerate() {
        for (j, &t) in slopes.iter().enumerate() {
            if i != j {
                assert_eq!(farey_adjacent(s, t).unwrap(), arcs_disjoint(&rg, &arcs[i], &arcs[j]), "{s} {t}");
            }
        }
    }
}

#[test]
fn graph_distances_obey_the_triangle_inequality() {
    let g = ArcGraph::build(&RibbonGraph::torus(), 5);
    let d: Vec<Vec<Option<u32>>> = (0..g.len()).map(|i| g.bfs(i, 64)).collect();
    for a in 0..g.len() {
        assert_eq!(d[a][a], Some(0));
        for b in 0..g.len() {
            assert_eq!(d[a][b], d[b][a]);
            for c in 0..g.len() {
                if let (Some(x), Some(y), Some(z)) = (d[a][c], d[a][b], d[b][c]) {
                    assert!(x <= y + z);
                }
            }
        }
    }
}

#[test]
fn doubled_arcs_project_back() {
    for rg in surfaces() {
        for (a, s) in doubled(&rg, 4) {
            assert_eq!(phi_all(&rg, &s).unwrap(), BTreeSet::from([a.clone()]), "{a}");
            let prof = boundary_profile(&rg, &s);
            let oracle = profile_count_within(&rg, &s, s.depth() + 4);
            for (i, n) in oracle {
                assert_eq!(prof.count(i), n, "{a}");
            }
        }
    }
}

#[test]
fn surgery_paths_descend() {
    let rg = RibbonGraph::torus();
    let d = doubled(&rg, 4);
    for (_, p) in &d {
        for (_, q) in &d {
            let k = kappa(2, p, q);
            if k == 0 {
                continue;
            }
            let path = surgery_path(2, p, q).unwrap();
            assert!(path_is_valid(2, &path));
            assert!(path.len() <= k + 1, "{p} {q}");
        }
    }
    let a = canonicalize_sphere(2, &ClopenSet::from_prefixes(2, [ReducedWord::parse("x", 2).unwrap()])).unwrap();
    let trivial = surgery_path(2, &a, &a).unwrap();
    assert!(trivial.is_empty());
    assert_eq!(trivial.spheres(), vec![a]);
}
