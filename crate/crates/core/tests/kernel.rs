use dhl_core::kernel::{
    circle_order, ClopenSet, CirclePoint, EndPoint, Letter, ReducedWord, RibbonGraph,
};
use dhl_core::spheres::canonicalize_sphere;
use proptest::prelude::*;

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let r = rank as i8;
    prop::collection::vec((1..=r, any::<bool>()), 0..max_len).prop_map(|v| {
        v.into_iter()
            .map(|(g, inv)| Letter::from_raw(if inv { -g } else { g }))
            .collect()
    })
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = ReducedWord> {
    letters(rank, max_len).prop_map(ReducedWord::reduce)
}

fn end(rank: usize) -> impl Strategy<Value = EndPoint> {
    (word(rank, 6), word(rank, 4))
        .prop_filter("repetend must be cyclically reduced", |(_, r)| {
            !r.is_empty() && r.is_cyclically_reduced()
        })
        .prop_map(|(p, r)| EndPoint::new(&p, &r).unwrap())
}

/// Cancels adjacent inverse pairs at positions chosen by `picks`.
fn reduce_in_order(mut v: Vec<Letter>, picks: &[usize]) -> Vec<Letter> {
    let mut k = 0;
    loop {
        let spots: Vec<usize> = (0..v.len().saturating_sub(1))
            .filter(|&i| v[i] == v[i + 1].inverse())
            .collect();
        if spots.is_empty() {
            return v;
        }
        let i = spots[picks.get(k).copied().unwrap_or(0) % spots.len()];
        k += 1;
        v.drain(i..i + 2);
    }
}

/// Digits of an end in the planar tree: the exit slot at the root, then at
/// each later vertex the offset of the exit counted counterclockwise from
/// the incoming edge. Lexicographic order on digit strings is the circular
/// order cut open at the root's slot 0.
fn digits(rg: &RibbonGraph, e: &EndPoint, n: usize) -> Vec<usize> {
    let deg = 2 * rg.rank();
    let mut out = Vec::with_capacity(n);
    let mut prev: Option<Letter> = None;
    for i in 0..n {
        let l = e.letter(i);
        let pos = rg.position(l);
        out.push(match prev {
            None => pos,
            Some(p) => (pos + deg - rg.position(p.inverse())) % deg,
        });
        prev = Some(l);
    }
    out
}

fn oracle_order(rg: &RibbonGraph, a: &EndPoint, b: &EndPoint, c: &EndPoint) -> i8 {
    let n = 64;
    let (da, db, dc) = (digits(rg, a, n), digits(rg, b, n), digits(rg, c, n));
    // positive iff the linear order is a cyclic rotation of (a, b, c)
    let ab = da < db;
    let bc = db < dc;
    let ca = dc < da;
    if (ab && bc) || (bc && ca) || (ca && ab) {
        1
    } else {
        -1
    }
}

fn presets() -> Vec<RibbonGraph> {
    vec![
        RibbonGraph::torus(),
        RibbonGraph::planar_rose(),
        RibbonGraph::rank3_default(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn reduction_is_confluent(v in letters(3, 24), picks in prop::collection::vec(0usize..64, 24)) {
        let direct = ReducedWord::reduce(v.clone());
        let other = reduce_in_order(v, &picks);
        prop_assert_eq!(direct.letters(), &other[..]);
    }

    #[test]
    fn words_form_a_group(a in word(3, 10), b in word(3, 10), c in word(3, 10)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_empty());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(a.mul(&b).inverse(), b.inverse().mul(&a.inverse()));
    }

    #[test]
    fn word_display_round_trips(a in word(3, 12)) {
        prop_assert_eq!(ReducedWord::parse(&a.to_string(), 3).unwrap(), a);
    }

    #[test]
    fn end_translation_composes(e in end(2), g in word(2, 6), h in word(2, 6)) {
        prop_assert_eq!(e.translate(&h).translate(&g), e.translate(&g.mul(&h)));
        prop_assert_eq!(e.translate(&g).translate(&g.inverse()), e);
    }

    #[test]
    fn canonical_sphere_is_translation_invariant(
        ws in prop::collection::vec(word(2, 4), 1..4),
        g in word(2, 5),
    ) {
        let side = ClopenSet::from_prefixes(2, ws.into_iter().filter(|w| !w.is_empty()));
        prop_assume!(side.is_proper());
        let p = canonicalize_sphere(2, &side).unwrap();
        prop_assert_eq!(&canonicalize_sphere(2, &side.translate(&g, 2)).unwrap(), &p);
        prop_assert_eq!(&canonicalize_sphere(2, &side.complement(2)).unwrap(), &p);
        prop_assert_eq!(&canonicalize_sphere(2, p.side()).unwrap(), &p);
    }
}

#[test]
fn cyclic_order_axioms_on_random_triples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for rg in presets() {
        let rank = rg.rank();
        let rand_word = |rng: &mut rand_chacha::ChaCha8Rng, n: usize| {
            let len = rng.gen_range(0..=n);
            ReducedWord::reduce((0..len).map(|_| {
                let g = rng.gen_range(1..=rank as i8);
                Letter::from_raw(if rng.gen() { g } else { -g })
            }))
        };
        let mut pts = Vec::new();
        while pts.len() < 60 {
            let p = rand_word(&mut rng, 5);
            let r = rand_word(&mut rng, 3);
            if !r.is_empty() && r.is_cyclically_reduced() {
                let e = EndPoint::new(&p, &r).unwrap();
                if !pts.contains(&e) {
                    pts.push(e);
                }
            }
        }
        let mut triples = 0;
        for _ in 0..10_000 {
            let i = rng.gen_range(0..pts.len());
            let j = rng.gen_range(0..pts.len());
            let k = rng.gen_range(0..pts.len());
            if i == j || j == k || i == k {
                continue;
            }
            let (a, b, c) = (&pts[i], &pts[j], &pts[k]);
            let pa = CirclePoint::End(a.clone());
            let pb = CirclePoint::End(b.clone());
            let pc = CirclePoint::End(c.clone());
            let o = circle_order(&rg, &pa, &pb, &pc).unwrap();
            assert_eq!(o, oracle_order(&rg, a, b, c), "{a} {b} {c}");
            assert_eq!(o, circle_order(&rg, &pb, &pc, &pa).unwrap());
            assert_eq!(o, -circle_order(&rg, &pb, &pa, &pc).unwrap());
            let g = rand_word(&mut rng, 6);
            let t = |p: &CirclePoint| p.translate(&g);
            assert_eq!(o, circle_order(&rg, &t(&pa), &t(&pb), &t(&pc)).unwrap());
            triples += 1;
        }
        assert!(triples > 9_000);
    }
}

#[test]
fn cyclic_order_is_transitive() {
    let rg = RibbonGraph::torus();
    let mut pts = Vec::new();
    for p in ReducedWord::ball(2, 2) {
        for r in ["x", "y", "xy", "xY"] {
            let e = CirclePoint::End(EndPoint::new(&p, &ReducedWord::parse(r, 2).unwrap()).unwrap());
            if !pts.contains(&e) {
                pts.push(e);
            }
        }
    }
    let pts = &pts[..24];
    let ord = |a: usize, b: usize, c: usize| circle_order(&rg, &pts[a], &pts[b], &pts[c]).unwrap();
    for a in 0..pts.len() {
        for b in 0..pts.len() {
            for c in 0..pts.len() {
                for d in 0..pts.len() {
                    if [a, b, c, d].iter().collect::<std::collections::BTreeSet<_>>().len() < 4 {
                        continue;
                    }
                    if ord(a, b, c) == 1 && ord(a, c, d) == 1 {
                        assert_eq!(ord(a, b, d), 1);
                    }
                }
            }
        }
    }
}

#[test]
fn degenerate_triples_are_rejected() {
    let rg = RibbonGraph::torus();
    let e = CirclePoint::End(EndPoint::power(&ReducedWord::parse("x", 2).unwrap()).unwrap());
    let f = CirclePoint::End(EndPoint::power(&ReducedWord::parse("y", 2).unwrap()).unwrap());
    assert!(circle_order(&rg, &e, &e, &f).is_err());
}
