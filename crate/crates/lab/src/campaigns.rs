use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use dhl_core::arcs::{
    arcs_disjoint, arcs_disjoint_within, enumerate_arcs, farey_adjacent, slope_arc, Arc, Chord,
    Distance, Slope,
};
use dhl_core::arcs::chords_disjoint;
use dhl_core::doubling::iota;
use dhl_core::kernel::{circle_order, CirclePoint, EndPoint, Letter, ReducedWord, RibbonGraph};
use dhl_core::projection::{phi, phi_all, random_matching, Matching, Wall};
use dhl_core::spheres::{
    canonicalize_sphere, certified_radius, crossing_translates, is_embedded, is_embedded_within,
    kappa, kappa_within, sided_cross, Sided, SpherePartition,
};
use dhl_core::surgery::{
    innermost_discs, path_is_valid, surgery_path, surgery_path_where, witness_check,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::{nearest_point_projection, weaker, Ball};
use crate::config::{Campaign, CampaignConfig};
use crate::error::LabError;
use crate::report::{Exactness, Tally, VerificationReport};
use crate::store::ResultStore;

/// Quoted bounds.
pub const B3_DIAMETER: i64 = 7;
pub const A1_ADDITIVE: i64 = 6;
pub const C3_DIAMETER: u32 = 16;
/// Largest distance at which doubling is compared against arcs.
pub const B7_RANGE: u32 = 4;
/// Switch counts up to which admissible matchings are listed exhaustively.
const LISTED_SWITCHES: usize = 14;
/// Node budget for the search over surgery choices.
const SURGERY_BUDGET: usize = 20_000;

/// Deterministic per-instance generator.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs a campaign. With a store configured, a report already recorded
/// for the same configuration is returned instead of recomputed.
pub fn verify(cfg: &CampaignConfig) -> Result<VerificationReport, LabError> {
    let rg = cfg.validate()?;
    let digest = cfg.digest();
    let threshold = match (cfg.campaign, &cfg.threshold_path) {
        (Campaign::A2, Some(p)) => read_threshold(p, &digest)?,
        _ => None,
    };
    let key = match threshold {
        Some(t) => format!("report:{}:threshold={t}", cfg.campaign),
        None => format!("report:{}", cfg.campaign),
    };
    let mut store = cfg.store_path.as_ref().map(ResultStore::open).transpose()?;
    if let Some(s) = &store {
        if let Some(v) = s.get(&digest, &key) {
            return Ok(serde_json::from_value(v.clone())?);
        }
    }
    let tally = run(&rg, cfg, threshold)?;
    let report = tally.finish(&digest);
    if cfg.campaign == Campaign::A2 && threshold.is_none() && report.pass {
        if let (Some(p), Some(m)) = (&cfg.threshold_path, report.max_observed) {
            write_threshold(p, &digest, m)?;
        }
    }
    if let Some(s) = &mut store {
        s.put(&digest, &key, serde_json::to_value(&report)?)?;
    }
    Ok(report)
}

fn run(rg: &RibbonGraph, cfg: &CampaignConfig, threshold: Option<i64>) -> Result<Tally, LabError> {
    match cfg.campaign {
        Campaign::B5 => b5(rg, cfg),
        Campaign::Coherence => coherence(rg, cfg),
        Campaign::Farey => farey(rg, cfg),
        Campaign::Invariance => invariance(rg, cfg),
        Campaign::B7 => {
            let ball = Ball::build(rg.clone(), cfg)?;
            b7(&ball, cfg)
        }
        other => {
            let ball = Ball::build(rg.clone(), cfg)?;
            match other {
                Campaign::B3 => b3(&ball, cfg),
                Campaign::A1 => a1(&ball),
                Campaign::C3 => c3(&ball, cfg),
                Campaign::C4 => c4(&ball),
                Campaign::A2 => a2(&ball, threshold),
                _ => unreachable!("handled above"),
            }
        }
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Thresholds {
    #[serde(flatten)]
    by_digest: BTreeMap<String, i64>,
}

fn read_threshold(path: &Path, digest: &str) -> Result<Option<i64>, LabError> {
    if !path.exists() {
        return Ok(None);
    }
    let t: Thresholds = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Ok(t.by_digest.get(digest).copied())
}

fn write_threshold(path: &Path, digest: &str, value: i64) -> Result<(), LabError> {
    let mut t = if path.exists() {
        serde_json::from_str(&std::fs::read_to_string(path)?)?
    } else {
        Thresholds::default()
    };
    t.by_digest.insert(digest.into(), value);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, serde_json::to_string_pretty(&t)?)?;
    Ok(())
}

fn b5(rg: &RibbonGraph, cfg: &CampaignConfig) -> Result<Tally, LabError> {
    let arcs: Vec<Arc> = enumerate_arcs(rg, cfg.arc_complexity).into_iter().collect();
    let rows = arcs
        .par_iter()
        .map(|a| {
            let s = iota(rg, a)?;
            let image = phi_all(rg, &s)?;
            let expected = BTreeSet::from([a.clone()]);
            let diff = image.symmetric_difference(&expected).count();
            Ok((a.to_string(), diff, format!("{image:?}")))
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    let mut t = Tally::new("B5", Some(0));
    for (name, diff, image) in rows {
        let detail = if diff == 0 { String::new() } else { image };
        t.record_with(name, diff as i64, Exactness::Exact, detail);
    }
    Ok(t)
}

fn coherence(rg: &RibbonGraph, cfg: &CampaignConfig) -> Result<Tally, LabError> {
    let rank = rg.rank();
    let arcs: Vec<Arc> = enumerate_arcs(rg, cfg.arc_complexity).into_iter().collect();
    let chords: Vec<Chord> = arcs.par_iter().map(|a| Chord::new(rg, a)).collect();
    let sided = arcs
        .par_iter()
        .map(|a| Ok(Sided::of(rank, &iota(rg, a)?)))
        .collect::<Result<Vec<_>, LabError>>()?;
    let rows: Vec<(usize, usize, bool, bool)> = (0..arcs.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (chords, sided) = (&chords, &sided);
            (i..arcs.len()).map(move |j| {
                let disjoint = chords_disjoint(rg, &chords[i], &chords[j]);
                let crossing = sided_cross(rank, &sided[i], &sided[j]);
                (i, j, disjoint, crossing)
            })
        })
        .collect();
    let mut t = Tally::new("coherence", Some(0));
    for (i, j, disjoint, crossing) in rows {
        let bad = disjoint == crossing;
        let detail = if bad {
            format!("arcs disjoint: {disjoint}, doubles cross: {crossing}")
        } else {
            String::new()
        };
        t.record_with(
            format!("{} {}", arcs[i], arcs[j]),
            i64::from(bad),
            Exactness::Exact,
            detail,
        );
    }
    Ok(t)
}

fn farey(rg: &RibbonGraph, cfg: &CampaignConfig) -> Result<Tally, LabError> {
    if rg.order() != RibbonGraph::torus().order() {
        return Err(LabError::Config("the farey campaign runs on the torus preset".into()));
    }
    let slopes = Slope::box_of(cfg.farey_box);
    let chords = slopes
        .par_iter()
        .map(|&s| Ok(Chord::new(rg, &slope_arc(rg, s)?)))
        .collect::<Result<Vec<_>, LabError>>()?;
    let rows = (0..slopes.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (slopes, chords) = (&slopes, &chords);
            (i + 1..slopes.len()).map(move |j| {
                let adjacent = farey_adjacent(slopes[i], slopes[j])?;
                let disjoint = chords_disjoint(rg, &chords[i], &chords[j]);
                Ok((i, j, adjacent, disjoint))
            })
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    let mut t = Tally::new("farey", Some(0));
    t.note(format!("{} slopes with |p|, |q| <= {}", slopes.len(), cfg.farey_box));
    for (i, j, adjacent, disjoint) in rows {
        let bad = adjacent != disjoint;
        t.record(format!("{} {}", slopes[i], slopes[j]), i64::from(bad), Exactness::Exact);
    }
    Ok(t)
}

/// Up to `k` admissible matchings drawn at random.
fn sample_admissible(
    rg: &RibbonGraph,
    wall: &Wall,
    rng: &mut ChaCha8Rng,
    k: usize,
) -> Vec<(Matching, Vec<Arc>)> {
    let n = wall.switches.len();
    if n <= LISTED_SWITCHES {
        let all = wall.admissible(rg);
        if all.is_empty() {
            return all;
        }
        return (0..k)
            .map(|_| all.choose(rng).expect("nonempty").clone())
            .collect();
    }
    let mut out = Vec::new();
    for _ in 0..100 * k {
        let m = random_matching(n, rng);
        if let Some(a) = wall.arcs_of(rg, &m) {
            out.push((m, a));
            if out.len() == k {
                break;
            }
        }
    }
    out
}

fn b3(ball: &Ball, cfg: &CampaignConfig) -> Result<Tally, LabError> {
    let rg = &ball.rg;
    let spheres = ball.spheres.spheres();
    let singles: Vec<Vec<(i64, Exactness)>> = spheres
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut rng = rng_for(cfg.seed, i as u64);
            let wall = Wall::new(rg, p);
            sample_admissible(rg, &wall, &mut rng, cfg.samples)
                .into_iter()
                .map(|(_, arcs)| ball.arc_diameter(arcs.iter()))
                .collect()
        })
        .collect();
    let mut t = Tally::new("B3", Some(B3_DIAMETER));
    let mut draws = 0;
    for (i, rows) in singles.into_iter().enumerate() {
        if rows.is_empty() {
            t.fail(spheres[i].to_string(), "no admissible wall matching");
            continue;
        }
        for (k, (d, ex)) in rows.into_iter().enumerate() {
            draws += 1;
            t.record(format!("{} draw {k}", spheres[i]), d, ex);
        }
    }
    let edges: Vec<(usize, usize)> = ball.spheres.edges().collect();
    let pairs: Vec<(i64, Exactness)> = edges
        .par_iter()
        .map(|&(i, j)| ball.arc_diameter(ball.phi[i].union(&ball.phi[j])))
        .collect();
    for (&(i, j), (d, ex)) in edges.iter().zip(pairs) {
        t.record(format!("{} | {}", spheres[i], spheres[j]), d, ex);
    }
    t.note(format!(
        "{} spheres, {draws} matching draws, {} disjoint pairs (union over all admissible matchings)",
        spheres.len(),
        edges.len()
    ));
    Ok(t)
}

fn b7(ball: &Ball, cfg: &CampaignConfig) -> Result<Tally, LabError> {
    let rg = &ball.rg;
    let arcs: Vec<Arc> = ball
        .arcs
        .arcs()
        .iter()
        .filter(|a| a.complexity() <= cfg.arc_complexity)
        .cloned()
        .collect();
    let doubles = arcs
        .iter()
        .map(|a| iota(rg, a))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Option<(String, i64, Exactness, String)>> = (0..arcs.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (arcs, doubles) = (&arcs, &doubles);
            (i + 1..arcs.len()).map(move |j| {
                let Distance::Exact(da) = ball.arc_distance(&arcs[i], &arcs[j]) else {
                    return None;
                };
                if da > B7_RANGE {
                    return None;
                }
                let name = format!("{} {}", arcs[i], arcs[j]);
                let ds = ball.sphere_distance(&doubles[i], &doubles[j]);
                let (stat, ex, detail) = match ds {
                    Distance::Exact(s) => (
                        (s as i64 - da as i64).abs(),
                        Exactness::Exact,
                        format!("d_A = {da}, d_S = {s}"),
                    ),
                    // the true sphere distance is at most u
                    Distance::UpperBound(u) if u < da => (
                        (da - u) as i64,
                        Exactness::Exact,
                        format!("refutation: d_A = {da}, d_S <= {u}"),
                    ),
                    Distance::UpperBound(u) => (
                        (u - da) as i64,
                        Exactness::Uncertified,
                        format!("d_A = {da}, d_S <= {u}"),
                    ),
                    Distance::ExceedsCap => {
                        (0, Exactness::Uncertified, format!("d_A = {da}, d_S beyond the ball"))
                    }
                };
                Some((name, stat, ex, detail))
            })
        })
        .collect();
    let mut t = Tally::new("B7", Some(0));
    let mut skipped = 0;
    for row in rows {
        match row {
            Some((name, stat, ex, detail)) => t.record_with(name, stat, ex, detail),
            None => skipped += 1,
        }
    }
    t.note(format!(
        "{} arcs; {skipped} pairs skipped with arc distance uncertified or above {B7_RANGE}",
        arcs.len()
    ));
    Ok(t)
}

fn a1(ball: &Ball) -> Result<Tally, LabError> {
    let n = ball.spheres.len();
    let rows: Vec<(usize, usize, i64, Exactness)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).map(move |j| {
                let ds = ball.sphere_distance_idx(i, j);
                // adjacency is decided exactly, so distinct non-adjacent
                // spheres are at distance at least two
                let (ds_low, ds_ex) = match ds {
                    Distance::Exact(d) => (d as i64, Exactness::Exact),
                    Distance::UpperBound(_) | Distance::ExceedsCap => (2, Exactness::UpperBound),
                };
                let mut worst = i64::MIN;
                let mut ex = ds_ex;
                for x in &ball.phi[i] {
                    for y in &ball.phi[j] {
                        let d = ball.arc_distance(x, y);
                        match d {
                            Distance::Exact(v) => worst = worst.max(v as i64),
                            Distance::UpperBound(v) => {
                                worst = worst.max(v as i64);
                                ex = weaker(ex, Exactness::UpperBound);
                            }
                            Distance::ExceedsCap => ex = Exactness::Uncertified,
                        }
                    }
                }
                (i, j, worst - ds_low, ex)
            })
        })
        .collect();
    let spheres = ball.spheres.spheres();
    let mut t = Tally::new("A1", Some(A1_ADDITIVE));
    for (i, j, stat, ex) in rows {
        t.record(format!("{} {}", spheres[i], spheres[j]), stat, ex);
    }
    t.note("statistic: max d_A over both projections minus d_S");
    Ok(t)
}

/// Circle-count pairs of the ball, as ordered index pairs.
fn crossing_pairs(ball: &Ball) -> Vec<(usize, usize, usize)> {
    let rank = ball.rank();
    let n = ball.spheres.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..n).filter_map(move |j| {
                if i == j {
                    return None;
                }
                let k = crossing_translates(rank, ball.spheres.sided(i), ball.spheres.sided(j)).len();
                (k > 0).then_some((i, j, k))
            })
        })
        .collect()
}

fn c4(ball: &Ball) -> Result<Tally, LabError> {
    let rank = ball.rank();
    let spheres = ball.spheres.spheres();
    let pairs = crossing_pairs(ball);
    let rows: Vec<Result<(i64, usize), String>> = pairs
        .par_iter()
        .map(|&(i, j, k)| {
            let (p, q) = (&spheres[i], &spheres[j]);
            let discs = innermost_discs(rank, p, q).map_err(|e| e.to_string())?;
            if discs.len() < 2 {
                return Err(format!("{} innermost discs", discs.len()));
            }
            for (_, tau, tk) in &discs {
                if *tk >= k {
                    return Err(format!("surgery to {tau} does not decrease {k}"));
                }
                if !is_embedded(rank, tau.side()) || tau == p || kappa(rank, tau, p) != 0 {
                    return Err(format!("surgered sphere {tau} is not adjacent and embedded"));
                }
            }
            let path = surgery_path(rank, p, q).map_err(|e| e.to_string())?;
            if !path_is_valid(rank, &path) {
                return Err("invalid surgery path".into());
            }
            Ok((path.len() as i64 - k as i64, discs.len()))
        })
        .collect();
    let mut t = Tally::new("C4", Some(1));
    let mut max_k = 0;
    let mut min_discs = usize::MAX;
    for (&(i, j, k), row) in pairs.iter().zip(rows) {
        max_k = max_k.max(k);
        let name = format!("{} -> {}", spheres[i], spheres[j]);
        match row {
            Ok((excess, discs)) => {
                min_discs = min_discs.min(discs);
                t.record_with(name, excess, Exactness::Exact, format!("kappa {k}"));
            }
            Err(e) => t.fail(name, e),
        }
    }
    t.note(format!(
        "statistic: path length minus kappa; {} crossing pairs, largest kappa {max_k}, fewest innermost discs {}",
        pairs.len(),
        if min_discs == usize::MAX { 0 } else { min_discs }
    ));
    Ok(t)
}

fn c3(ball: &Ball, cfg: &CampaignConfig) -> Result<Tally, LabError> {
    let rg = &ball.rg;
    let rank = ball.rank();
    let spheres = ball.spheres.spheres();
    // the union over every admissible matching, so any efficient choice is covered
    let psi_all = |x: &SpherePartition| -> dhl_core::Result<BTreeSet<SpherePartition>> {
        let arcs = match ball.sphere_index(x) {
            Some(i) => ball.phi[i].clone(),
            None => phi_all(rg, x)?,
        };
        arcs.iter().map(|a| iota(rg, a)).collect()
    };
    let samples = spheres
        .par_iter()
        .map(|s| {
            let targets = psi_all(s)?;
            Ok(targets
                .into_iter()
                .map(|t| {
                    let k = kappa(rank, s, &t);
                    (s.clone(), t, k)
                })
                .filter(|(_, _, k)| *k <= cfg.kappa_max)
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, LabError>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let diameter = |set: &BTreeSet<SpherePartition>| {
        let (d, ex) = ball.sphere_diameter(set.iter());
        (ex != Exactness::Uncertified).then_some(d as u32)
    };
    let rows = samples
        .par_iter()
        .map(|(s, t, k)| {
            let mut path = surgery_path(rank, s, t)?;
            let mut report = witness_check(rg, &path, psi_all, diameter, C3_DIAMETER)?;
            let mut searched = false;
            if !report.every_vertex_has_witness {
                let accept = |x: &SpherePartition| {
                    psi_all(x).is_ok_and(|ps| ps.iter().any(|y| kappa(rank, y, t) == 0))
                };
                if let Some(p) = surgery_path_where(rank, s, t, accept, SURGERY_BUDGET)? {
                    path = p;
                    report = witness_check(rg, &path, psi_all, diameter, C3_DIAMETER)?;
                    searched = true;
                }
            }
            Ok((format!("{s} -> {t}"), *k, report, searched))
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    let mut t = Tally::new("C3", Some(C3_DIAMETER as i64));
    let mut nontrivial = 0;
    let mut searched_paths = 0;
    for (name, k, report, searched) in rows {
        nontrivial += usize::from(k > 0);
        searched_paths += usize::from(searched);
        if !report.valid_path {
            t.fail(name, "invalid surgery path");
        } else if !report.every_vertex_has_witness {
            t.fail(name, "a path sphere has no projection disjoint from the target");
        } else {
            match report.diameter_bound {
                Some(d) => t.record_with(name, d as i64, Exactness::UpperBound, format!("kappa {k}")),
                None => t.record_with(name, 0, Exactness::Uncertified, format!("kappa {k}")),
            }
        }
    }
    t.note(format!(
        "{} samples with kappa <= {}, {nontrivial} with kappa > 0, {searched_paths} needing a searched path",
        samples_len(&t),
        cfg.kappa_max
    ));
    Ok(t)
}

fn samples_len(t: &Tally) -> usize {
    t.instances()
}

fn a2(ball: &Ball, threshold: Option<i64>) -> Result<Tally, LabError> {
    let rg = &ball.rg;
    let spheres = ball.spheres.spheres();
    let rows = spheres
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let near = match nearest_point_projection(s, ball) {
                Ok(n) => n,
                Err(LabError::NoCertifiedDistance) => return Ok(None),
                Err(e) => return Err(e),
            };
            let mut union: BTreeSet<SpherePartition> = ball.phi[i]
                .iter()
                .map(|a| iota(rg, a))
                .collect::<Result<_, _>>()?;
            union.extend(near);
            Ok(Some(ball.sphere_diameter(union.iter())))
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    let mut t = Tally::new("A2", threshold);
    for (s, row) in spheres.iter().zip(rows) {
        match row {
            Some((d, ex)) => t.record(s.to_string(), d, ex),
            None => t.record_with(s.to_string(), 0, Exactness::Uncertified, "no certified nearest point".into()),
        }
    }
    match threshold {
        Some(b) => t.note(format!("regression against frozen threshold {b}")),
        None => t.note("no frozen threshold; this run records one"),
    }
    Ok(t)
}

fn invariance(rg: &RibbonGraph, cfg: &CampaignConfig) -> Result<Tally, LabError> {
    let rank = rg.rank();
    let mut rng = rng_for(cfg.seed, u64::MAX);
    let mut spheres: BTreeSet<SpherePartition> =
        dhl_core::spheres::enumerate_spheres(rank, cfg.radius.min(2), cfg.max_cylinders.min(2));
    let small_arcs: Vec<Arc> = enumerate_arcs(rg, cfg.arc_complexity.min(3)).into_iter().collect();
    for a in &small_arcs {
        spheres.insert(iota(rg, a)?);
    }
    let spheres: Vec<SpherePartition> = spheres.into_iter().collect();
    let mut t = Tally::new("invariance", Some(0));

    // crossing counts are symmetric
    let n = spheres.len();
    let asym: usize = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .filter(|&j| kappa(rank, &spheres[i], &spheres[j]) != kappa(rank, &spheres[j], &spheres[i]))
                .count()
        })
        .sum();
    t.record("kappa symmetry", asym as i64, Exactness::Exact);

    // canonical forms and crossing counts under translation and side swap
    let shifts: Vec<ReducedWord> = (0..3).map(|_| random_word(&mut rng, rank, 6)).collect();
    let moved: usize = spheres
        .par_iter()
        .map(|p| {
            let mut bad = 0;
            for g in &shifts {
                let side = p.side().translate(g, rank);
                bad += usize::from(canonicalize_sphere(rank, &side).ok().as_ref() != Some(p));
                let comp = side.complement(rank);
                bad += usize::from(canonicalize_sphere(rank, &comp).ok().as_ref() != Some(p));
            }
            bad
        })
        .sum();
    t.record("canonical form invariance", moved as i64, Exactness::Exact);
    let g = &shifts[0];
    let kappa_moved: usize = (0..n)
        .into_par_iter()
        .map(|i| {
            let gp = Sided::new(rank, &spheres[i].side().translate(g, rank));
            (0..n)
                .filter(|&j| {
                    let gq = Sided::new(rank, &spheres[j].side().translate(g, rank));
                    crossing_translates(rank, &gp, &gq).len() != kappa(rank, &spheres[i], &spheres[j])
                })
                .count()
        })
        .sum();
    t.record("kappa translation invariance", kappa_moved as i64, Exactness::Exact);

    // exact tests against brute force two steps beyond the prescribed radius
    const WIDE: usize = 8;
    let overturned: usize = (0..n)
        .into_par_iter()
        .map(|i| {
            let p = &spheres[i];
            let mut bad = 0;
            let r = certified_radius(p.side(), p.side()) + 2;
            if r <= WIDE {
                bad += usize::from(is_embedded(rank, p.side()) != is_embedded_within(rank, p.side(), r));
            }
            for q in &spheres {
                let r = certified_radius(p.side(), q.side()) + 2;
                if r <= WIDE {
                    bad += usize::from(kappa(rank, p, q) != kappa_within(rank, p, q, r));
                }
            }
            bad
        })
        .sum();
    t.record("sphere radius confirmation", overturned as i64, Exactness::Exact);
    let arc_overturned: usize = (0..small_arcs.len())
        .into_par_iter()
        .map(|i| {
            let a = &small_arcs[i];
            small_arcs
                .iter()
                .filter(|b| {
                    let r = a.word().len() + b.word().len() + 6;
                    arcs_disjoint(rg, a, b) != arcs_disjoint_within(rg, a, b, r)
                })
                .count()
        })
        .sum();
    t.record("arc radius confirmation", arc_overturned as i64, Exactness::Exact);

    // free reduction does not depend on the order of cancellations
    let mut confluence = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(0..30);
        let raw: Vec<Letter> = (0..len).map(|_| random_letter(&mut rng, rank)).collect();
        let direct = ReducedWord::reduce(raw.iter().copied());
        let mut v = raw;
        loop {
            let spots: Vec<usize> = (0..v.len().saturating_sub(1))
                .filter(|&i| v[i] == v[i + 1].inverse())
                .collect();
            let Some(&i) = spots.choose(&mut rng) else {
                break;
            };
            v.drain(i..i + 2);
        }
        confluence += usize::from(direct.letters() != &v[..]);
    }
    t.record("reduction confluence", confluence as i64, Exactness::Exact);

    // cyclic order axioms
    let mut ends = Vec::new();
    while ends.len() < 64 {
        let p = random_word(&mut rng, rank, 6);
        let r = random_word(&mut rng, rank, 3);
        if !r.is_empty() && r.is_cyclically_reduced() {
            let e = CirclePoint::End(EndPoint::new(&p, &r)?);
            if !ends.contains(&e) {
                ends.push(e);
            }
        }
    }
    let mut axiom_failures = 0;
    let mut triples = 0;
    while triples < 10_000 {
        let idx: Vec<usize> = (0..3).map(|_| rng.gen_range(0..ends.len())).collect();
        if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
            continue;
        }
        triples += 1;
        let (a, b, c) = (&ends[idx[0]], &ends[idx[1]], &ends[idx[2]]);
        let g = random_word(&mut rng, rank, 6);
        let o = circle_order(rg, a, b, c)?;
        let ok = o == circle_order(rg, b, c, a)?
            && o == -circle_order(rg, b, a, c)?
            && o == circle_order(rg, &a.translate(&g), &b.translate(&g), &c.translate(&g))?;
        axiom_failures += usize::from(!ok);
    }
    t.record("cyclic order axioms", axiom_failures as i64, Exactness::Exact);
    t.note(format!(
        "{n} spheres, {} arcs, 1000 random words, {triples} random triples",
        small_arcs.len()
    ));
    Ok(t)
}

fn random_letter(rng: &mut ChaCha8Rng, rank: usize) -> Letter {
    let g = rng.gen_range(1..=rank as i8);
    Letter::from_raw(if rng.gen() { g } else { -g })
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(0..=max_len);
    ReducedWord::reduce((0..len).map(|_| random_letter(rng, rank)).collect::<Vec<_>>())
}

/// The preferred projection, exposed for the command line.
pub fn project(rg: &RibbonGraph, p: &SpherePartition) -> Result<BTreeSet<Arc>, LabError> {
    Ok(phi(rg, p)?)
}
