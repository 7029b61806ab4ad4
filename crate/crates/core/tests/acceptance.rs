//! Acceptance gate: eight exact checks, one result line each.
//!
//! Runs without the libtest harness; the process fails if any check fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use drfan::cones::{cone_of_weighting, dual_cone_generators, primitive_ray, Cone};
use drfan::corpus::{corpus, CorpusParams};
use drfan::fan::{build_fan, cone_catalog, fan_of_catalog, slice_fan, verify_fan, Catalog};
use drfan::graph::{banana, contract, Graph};
use drfan::linalg::IntVec;
use drfan::oracle::{oracle_cone_catalog, oracle_extreme_rays, oracle_monoid_check};
use drfan::svg::render_slice_svg;
use drfan::weighting::{
    base_weighting, enumeration_bound, find_positive_cycle, is_weighting, restrict_weighting,
    shift_by_cycles, Weighting,
};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 200;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

struct Instance {
    graph: Graph,
    catalog: Catalog,
}

impl Instance {
    fn witnesses(&self) -> impl Iterator<Item = &Weighting> {
        self.catalog.entries().map(|e| &e.witness)
    }
}

fn two_gon_rays() -> Outcome {
    for n in 1..=20i64 {
        let start = Instant::now();
        let f = build_fan(&banana(2, n)).expect("fan builds");
        let elapsed = start.elapsed();
        let expected: BTreeSet<IntVec> = (0..=n).map(|a| primitive_ray(&[n - a, a])).collect();
        let got: BTreeSet<IntVec> = f.rays().iter().cloned().collect();
        if f.rays().len() != n as usize + 1 || got != expected {
            return fail(format!(
                "n={n}: {} rays, expected {}",
                f.rays().len(),
                n + 1
            ));
        }
        if elapsed >= Duration::from_secs(1) {
            return fail(format!("n={n} took {elapsed:?}"));
        }
    }
    pass("n = 1..20, each n+1 rays along (n-a, a)")
}

fn banana_catalog() -> Outcome {
    let g = banana(3, 10);
    let catalog = cone_catalog(&g).expect("catalog builds");
    let mut expected: BTreeSet<Vec<IntVec>> = BTreeSet::new();
    let unit = |i: usize| {
        let mut v = [0i64; 3];
        v[i] = 1;
        primitive_ray(&v)
    };
    for i in 0..3 {
        let mut plane = vec![unit((i + 1) % 3), unit((i + 2) % 3)];
        plane.sort();
        expected.insert(plane);
        expected.insert(vec![unit(i)]);
    }
    for a in 1..10i64 {
        for b in 1..10 - a {
            let c = 10 - a - b;
            expected.insert(vec![primitive_ray(&[b * c, a * c, a * b])]);
        }
    }
    expected.insert(Vec::new());
    let ours: BTreeSet<Vec<IntVec>> = catalog.keys().map(|k| k.rays.clone()).collect();
    if ours != expected {
        return fail(format!(
            "catalog has {} cones, expected {}",
            ours.len(),
            expected.len()
        ));
    }
    let radius = (enumeration_bound(&g, &base_weighting(&g)) * 2u32)
        .to_i64()
        .unwrap();
    let oracle = oracle_cone_catalog(&g, radius).expect("oracle runs");
    if oracle != ours {
        return fail(format!(
            "oracle at radius {radius} finds {} cones",
            oracle.len()
        ));
    }
    let f = fan_of_catalog(&g, &catalog);
    let maximal = f.maximal_cones().count();
    if maximal != 39 {
        return fail(format!("{maximal} maximal cones"));
    }
    let svg = render_slice_svg(&slice_fan(&f).expect("three edges")).expect("three edges");
    let points = svg.matches("<circle").count();
    let segments = svg.matches(r#"class="cone2""#).count();
    if (points, segments) != (36, 3) {
        return fail(format!("svg has {points} points and {segments} segments"));
    }
    pass(format!(
        "43 cones = oracle at radius {radius}; 39 maximal; svg 36 points, 3 segments"
    ))
}

fn fan_axioms(instances: &[Instance]) -> Outcome {
    let failures: Vec<usize> = instances
        .par_iter()
        .enumerate()
        .filter(|(_, inst)| !verify_fan(&fan_of_catalog(&inst.graph, &inst.catalog)).is_ok())
        .map(|(i, _)| i)
        .collect();
    if failures.is_empty() {
        pass(format!("{} graphs verified", instances.len()))
    } else {
        fail(format!("graphs {failures:?} fail verification"))
    }
}

fn dual_cone_lemma(instances: &[Instance]) -> Outcome {
    let results: Vec<(usize, usize)> = instances
        .par_iter()
        .map(|inst| {
            let g = &inst.graph;
            let mut bad = 0;
            let mut total = 0;
            for w in inst.witnesses() {
                total += 1;
                let spanned = dual_cone_generators(g, w).cone(g.num_edges());
                let polar = cone_of_weighting(g, w).polar_dual();
                if !(spanned.is_subset_of(&polar)
                    && polar.is_subset_of(&spanned)
                    && spanned == polar)
                {
                    bad += 1;
                }
            }
            (bad, total)
        })
        .collect();
    let bad: usize = results.iter().map(|r| r.0).sum();
    let total: usize = results.iter().map(|r| r.1).sum();
    if bad == 0 {
        pass(format!("{total} weightings, generated cone = polar dual"))
    } else {
        fail(format!("{bad} of {total} weightings disagree"))
    }
}

fn padded_restriction(g: &Graph, w: &Weighting, set: &BTreeSet<usize>) -> (Cone, Cone) {
    let c = contract(g, set).expect("edges exist");
    let res = restrict_weighting(w, &c);
    let padded = cone_of_weighting(&c.contracted, &res).embed(g.num_edges(), &c.surviving_edges());
    (padded, cone_of_weighting(g, w))
}

fn decomposition_lemma(instances: &[Instance]) -> Outcome {
    let results: Vec<(usize, usize, usize, usize)> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let g = &inst.graph;
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let (mut triples, mut eq_bad, mut incl, mut incl_bad) = (0, 0, 0, 0);
            let mut weightings: Vec<Weighting> = inst.witnesses().cloned().collect();
            let h = g.first_betti();
            for _ in 0..4 {
                let coeffs: Vec<i64> = (0..h).map(|_| rng.gen_range(-6..=6)).collect();
                weightings.push(shift_by_cycles(g, &base_weighting(g), &coeffs).unwrap());
            }
            for w in &weightings {
                if let Some(cycle) = find_positive_cycle(g, w) {
                    triples += 1;
                    let (padded, full) = padded_restriction(g, w, &cycle.edge_set());
                    if padded != full {
                        eq_bad += 1;
                    }
                }
                for mask in 0u32..(1 << g.num_edges()) {
                    let set: BTreeSet<usize> =
                        (0..g.num_edges()).filter(|e| mask >> e & 1 == 1).collect();
                    incl += 1;
                    let (padded, full) = padded_restriction(g, w, &set);
                    if !padded.is_subset_of(&full) {
                        incl_bad += 1;
                    }
                }
            }
            (triples, eq_bad, incl, incl_bad)
        })
        .collect();
    let triples: usize = results.iter().map(|r| r.0).sum();
    let eq_bad: usize = results.iter().map(|r| r.1).sum();
    let incl: usize = results.iter().map(|r| r.2).sum();
    let incl_bad: usize = results.iter().map(|r| r.3).sum();
    let detail = format!(
        "{triples} positive-cycle triples ({eq_bad} unequal), {incl} contractions ({incl_bad} not included)"
    );
    if triples >= 100 && eq_bad == 0 && incl_bad == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn positive_cycle_bound(instances: &[Instance]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 6);
    let mut samples = 0;
    let mut misses = 0;
    let usable: Vec<(&Graph, Weighting, i64)> = instances
        .iter()
        .filter_map(|inst| {
            let g = &inst.graph;
            let w = base_weighting(g);
            let n = enumeration_bound(g, &w).to_i64()?;
            (g.first_betti() > 0 && n > 0).then_some((g, w, n))
        })
        .collect();
    if usable.is_empty() {
        return fail("no graph with a cycle and a positive bound");
    }
    while samples < 600 {
        let (g, w, n) = &usable[samples % usable.len()];
        let h = g.first_betti();
        let mut coeffs: Vec<i64> = (0..h).map(|_| rng.gen_range(-2 * n..=2 * n)).collect();
        let big = rng.gen_range(0..h);
        let magnitude = rng.gen_range(n + 1..=2 * n);
        coeffs[big] = if rng.gen_bool(0.5) {
            magnitude
        } else {
            -magnitude
        };
        let shifted = shift_by_cycles(g, w, &coeffs).unwrap();
        samples += 1;
        if find_positive_cycle(g, &shifted).is_none() {
            misses += 1;
        }
    }
    let detail = format!(
        "{samples} vectors over {} graphs, {misses} without a positive cycle",
        usable.len()
    );
    if misses == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn degree_bookkeeping(instances: &[Instance]) -> Outcome {
    let mut weightings = 0;
    let mut perturbations = 0;
    let mut loops = 0;
    let mut halves = 0;
    for inst in instances {
        let g = &inst.graph;
        for w in inst.witnesses().chain(std::iter::once(&base_weighting(g))) {
            weightings += 1;
            let check = is_weighting(g, w.values()).unwrap();
            if !check.valid || check.defects.iter().any(|&d| d != 0) {
                return fail(format!("nonzero defect for flows {:?}", w.flows(g)));
            }
            // One half alone: only the vertex at its end goes off balance.
            for h in (0..g.num_half_edges()).filter(|&h| !g.is_leg(h)) {
                let mut values = w.values().to_vec();
                values[h] += 1;
                let defects = is_weighting(g, &values).unwrap().defects;
                halves += 1;
                let off: Vec<usize> = (0..defects.len()).filter(|&v| defects[v] != 0).collect();
                if off != [g.end(h)] {
                    return fail(format!(
                        "half-edge {h} perturbation gives defects {defects:?}"
                    ));
                }
            }
            // The flow of a whole edge: both ends go off balance.
            for (e, &[s, t]) in g.edges().iter().enumerate() {
                for delta in [1, -1] {
                    let mut values = w.values().to_vec();
                    values[t] += delta;
                    values[s] -= delta;
                    let defects = is_weighting(g, &values).unwrap().defects;
                    let nonzero = defects.iter().filter(|&&d| d != 0).count();
                    if g.is_loop(e) {
                        loops += 1;
                        if nonzero != 0 {
                            return fail(format!("loop perturbation moved a defect: {defects:?}"));
                        }
                    } else {
                        perturbations += 1;
                        if nonzero != 2 {
                            return fail(format!(
                                "edge {e} perturbation gives defects {defects:?}"
                            ));
                        }
                    }
                }
            }
        }
    }
    pass(format!(
        "{weightings} weightings with zero defect; {perturbations} edge-flow perturbations each hit exactly 2 vertices ({loops} on loops leave defects at 0); {halves} single-half perturbations each hit only their own vertex"
    ))
}

fn cone_oracles(instances: &[Instance]) -> Outcome {
    let results: Vec<(usize, usize, usize, Vec<String>)> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let g = &inst.graph;
            let d = g.num_edges();
            let (mut rays, mut monoids, mut bad) = (0, 0, Vec::new());
            if d > 5 {
                return (0, 0, 0, bad);
            }
            let f = fan_of_catalog(g, &inst.catalog);
            let mut cones: Vec<(Cone, bool)> =
                f.cones().iter().map(|c| (c.cone.clone(), true)).collect();
            for c in f.cones() {
                cones.push((c.cone.polar_dual(), d <= 3));
            }
            for (c, check_monoid) in &cones {
                rays += 1;
                let ours: Vec<IntVec> = c.rays().to_vec();
                if oracle_extreme_rays(c).unwrap() != ours {
                    bad.push(format!("graph {i}: rays of {:?}", c.key()));
                }
                if *check_monoid {
                    monoids += 1;
                    if !oracle_monoid_check(c, &c.monoid_generators(), 5) {
                        bad.push(format!("graph {i}: monoid of {:?}", c.key()));
                    }
                }
            }
            (1, rays, monoids, bad)
        })
        .collect();
    let graphs: usize = results.iter().map(|r| r.0).sum();
    let rays: usize = results.iter().map(|r| r.1).sum();
    let monoids: usize = results.iter().map(|r| r.2).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.3).collect();
    let detail = format!("{graphs} graphs: {rays} ray sets, {monoids} monoid checks at bound 5");
    if bad.is_empty() {
        pass(detail)
    } else {
        fail(format!(
            "{detail}; {} disagreements, first: {}",
            bad.len(),
            bad[0]
        ))
    }
}

fn main() -> ExitCode {
    let graphs = corpus(CORPUS_SEED, CORPUS_SIZE, &CorpusParams::default());
    let start = Instant::now();
    let instances: Vec<Instance> = graphs
        .into_par_iter()
        .map(|graph| {
            let catalog = cone_catalog(&graph).expect("corpus catalogs build");
            Instance { graph, catalog }
        })
        .collect();
    let corpus_time = start.elapsed();
    println!(
        "corpus: {} graphs cataloged in {:.2?}",
        instances.len(),
        corpus_time
    );

    type Check<'a> = (&'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let checks: Vec<Check> = vec![
        (
            "two-gon ray count",
            Duration::from_secs(21),
            Box::new(two_gon_rays),
        ),
        (
            "banana catalog",
            Duration::from_secs(30),
            Box::new(banana_catalog),
        ),
        (
            "fan axioms",
            Duration::from_secs(300),
            Box::new(|| fan_axioms(&instances)),
        ),
        (
            "dual-cone lemma",
            Duration::MAX,
            Box::new(|| dual_cone_lemma(&instances)),
        ),
        (
            "decomposition lemma",
            Duration::MAX,
            Box::new(|| decomposition_lemma(&instances)),
        ),
        (
            "positive-cycle bound",
            Duration::MAX,
            Box::new(|| positive_cycle_bound(&instances)),
        ),
        (
            "degree-zero bookkeeping",
            Duration::MAX,
            Box::new(|| degree_bookkeeping(&instances)),
        ),
        (
            "cone oracle equivalence",
            Duration::MAX,
            Box::new(|| cone_oracles(&instances)),
        ),
    ];
    let mut all_ok = true;
    for (i, (name, limit, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let mut elapsed = start.elapsed();
        if i == 2 {
            // Building the fans is part of this check.
            elapsed += corpus_time;
        }
        if elapsed > *limit {
            outcome = fail(format!(
                "{} (took {elapsed:.2?}, limit {limit:?})",
                outcome.detail
            ));
        }
        all_ok &= outcome.ok;
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {}. {name}: {} ({elapsed:.2?})",
            i + 1,
            outcome.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
