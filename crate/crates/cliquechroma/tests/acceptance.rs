//! Acceptance suite: each test pins one advertised guarantee of the toolkit
//! at its stated tolerance and prints one PASS line when it holds.

mod common;

use std::sync::Mutex;

use cliquechroma::bitset::VertexSet;
use cliquechroma::bounds::{expected_dominating_cliques, ceiling_palette_bound};
use cliquechroma::budget::Budget;
use cliquechroma::cliques::{count_dominating_cliques, is_clique};
use cliquechroma::coloring::{
    audit_coloring, brute_force_chi_c, exact_chi_c, greedy_clique_coloring,
    verify_clique_coloring, AuditOutcome, Coloring,
};
use cliquechroma::graph::{gen_random_graph, GenParams, Graph};
use cliquechroma::probcheck::estimate_bad_event_probability;

use common::{brute_force_chromatic, graph6_from_mask, petersen};

fn budget() -> Budget {
    Budget::default()
}

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    gen_random_graph(&GenParams::new(n, p, seed).unwrap())
}

/// Criterion 1: the exact solver agrees with the assignment-enumeration
/// oracle on every labeled 6-vertex graph and on 500 random graphs with
/// 7 or 8 vertices. Tolerance: exact equality.
#[test]
fn acceptance_1_oracle_equivalence_exhaustive() {
    let budget = budget();
    for mask in 0u32..(1 << 15) {
        let g = graph6_from_mask(mask);
        let (exact, _) = exact_chi_c(&g, 6, 2, &budget).unwrap();
        let brute = brute_force_chi_c(&g, 2).unwrap();
        assert_eq!(exact, brute, "mismatch on 6-vertex graph mask {mask}");
    }
    for seed in 0..500u64 {
        let n = 7 + (seed % 2) as usize;
        let g = random_graph(n, 0.5, 40_000 + seed);
        let (exact, _) = exact_chi_c(&g, n as u32, 2, &budget).unwrap();
        let brute = brute_force_chi_c(&g, 2).unwrap();
        assert_eq!(exact, brute, "mismatch at n={n} seed={seed}");
    }
    println!("ACCEPTANCE 1 (oracle equivalence, exhaustive n=6 + 500 random n=7..8): PASS");
}

/// Criterion 2: χ_c(K_n) = 2 for n = 2..20, and χ_c = χ = 3 on the
/// triangle-free witnesses C5, C7, Petersen. Exact equality.
#[test]
fn acceptance_2_named_values() {
    let budget = budget();
    for n in 2..=20usize {
        let (chi_c, w) = exact_chi_c(&Graph::complete(n), n as u32, 2, &budget).unwrap();
        assert_eq!(chi_c, 2, "K_{n}");
        assert!(verify_clique_coloring(&Graph::complete(n), &w, 2, &budget)
            .unwrap()
            .is_valid());
    }
    for (g, name) in [
        (Graph::cycle(5), "C5"),
        (Graph::cycle(7), "C7"),
        (petersen(), "Petersen"),
    ] {
        let (chi_c, _) = exact_chi_c(&g, g.n() as u32, 2, &budget).unwrap();
        assert_eq!(chi_c, 3, "χ_c({name})");
        assert_eq!(brute_force_chromatic(&g), 3, "χ({name})");
    }
    println!("ACCEPTANCE 2 (named values: K_n, triangle-free identity): PASS");
}

/// Criterion 3: the greedy coloring verifies Valid on 1000 random graphs
/// with n in [5,200] and p in {0.2, 0.5, 0.8}. 100% pass required.
#[test]
fn acceptance_3_greedy_soundness() {
    let budget = budget();
    let cases: Vec<(usize, f64, u64)> = (0..1000u64)
        .map(|i| {
            let p = [0.2, 0.5, 0.8][(i % 3) as usize];
            let n = 5 + (i as usize * 7) % 196; // covers [5, 200]
            (n, p, 70_000 + i)
        })
        .collect();
    let next = Mutex::new(0usize);
    let failures = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..2 {
            scope.spawn(|| loop {
                let idx = {
                    let mut g = next.lock().unwrap();
                    let i = *g;
                    *g += 1;
                    i
                };
                let Some(&(n, p, seed)) = cases.get(idx) else { break };
                let g = random_graph(n, p, seed);
                let (c, _) = greedy_clique_coloring(&g, None, 2, &budget).unwrap();
                let ok = verify_clique_coloring(&g, &c, 2, &budget).unwrap().is_valid();
                if !ok {
                    failures.lock().unwrap().push((n, p, seed));
                }
            });
        }
    });
    let failures = failures.into_inner().unwrap();
    assert!(failures.is_empty(), "greedy produced invalid colorings: {failures:?}");
    println!("ACCEPTANCE 3 (greedy soundness on 1000 random graphs): PASS");
}

/// Criterion 4: greedy never beats the exact optimum, and on G(8,1/2) the
/// greedy palette is within optimum+2 on at least 90% of instances (band
/// frozen from a pilot run that measured 96.5%).
#[test]
fn acceptance_4_greedy_vs_exact() {
    let budget = budget();
    for seed in 0..200u64 {
        let n = 4 + (seed % 5) as usize; // 4..8
        let g = random_graph(n, 0.5, 52_000 + seed);
        let (exact, _) = exact_chi_c(&g, n as u32, 2, &budget).unwrap();
        let (c, _) = greedy_clique_coloring(&g, None, 2, &budget).unwrap();
        assert!(
            c.palette() >= exact,
            "greedy {} below optimum {exact} at n={n} seed={seed}",
            c.palette()
        );
    }
    let total = 200usize;
    let mut within = 0usize;
    for seed in 0..total as u64 {
        let g = random_graph(8, 0.5, 9_000 + seed);
        let (exact, _) = exact_chi_c(&g, 8, 2, &budget).unwrap();
        let (c, _) = greedy_clique_coloring(&g, None, 2, &budget).unwrap();
        if c.palette() <= exact + 2 {
            within += 1;
        }
    }
    let fraction = within as f64 / total as f64;
    assert!(
        fraction >= 0.90,
        "only {within}/{total} G(8,1/2) instances within optimum+2"
    );
    println!(
        "ACCEPTANCE 4 (greedy ≥ exact on 200 instances; within exact+2 on {:.1}% ≥ 90%): PASS",
        100.0 * fraction
    );
}

/// Criterion 5: the sample mean of the dominating-clique count over 10^5
/// draws of G(40,1/2) with m=12, k=3 lies within 3 standard errors of the
/// closed form C(12,3)·(1/2)^3·(7/8)^28 ≈ 0.654.
#[test]
fn acceptance_5_expectation_cross_check() {
    let budget = budget();
    let trials = 100_000u64;
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for seed in 0..trials {
        let g = random_graph(40, 0.5, 300_000 + seed);
        let count = count_dominating_cliques(&g, 12, 3, &budget).unwrap() as f64;
        sum += count;
        sum_sq += count * count;
    }
    let mean = sum / trials as f64;
    let var = (sum_sq / trials as f64 - mean * mean).max(0.0);
    let se = (var / trials as f64).sqrt();
    let expected = expected_dominating_cliques(40, 12, 3).unwrap();
    assert!((expected - 0.6539705305808532).abs() < 1e-10);
    assert!(
        (mean - expected).abs() <= 3.0 * se,
        "mean {mean} vs expected {expected} (3se = {})",
        3.0 * se
    );
    println!(
        "ACCEPTANCE 5 (E X_k cross-check: mean {mean:.4} within 3se={:.4} of {expected:.4}): PASS",
        3.0 * se
    );
}

/// Criterion 6: mean greedy palette over 100 seeds is non-decreasing across
/// n = 2^10..2^13 (within 1 color slack) and sits between 2 and the ceiling
/// bound at every n.
#[test]
fn acceptance_6_trend_check() {
    let budget = budget();
    let sizes = [1usize << 10, 1 << 11, 1 << 12, 1 << 13];
    let seeds = 100u64;
    let mut means = Vec::new();
    for &n in &sizes {
        let jobs: Vec<u64> = (0..seeds).collect();
        let next = Mutex::new(0usize);
        let palettes = Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..2 {
                scope.spawn(|| loop {
                    let idx = {
                        let mut g = next.lock().unwrap();
                        let i = *g;
                        *g += 1;
                        i
                    };
                    let Some(&seed) = jobs.get(idx) else { break };
                    let g = random_graph(n, 0.5, 600_000 + seed);
                    let (c, _) = greedy_clique_coloring(&g, None, 2, &budget).unwrap();
                    palettes.lock().unwrap().push(c.palette());
                });
            }
        });
        let palettes = palettes.into_inner().unwrap();
        assert_eq!(palettes.len(), seeds as usize);
        let mean = palettes.iter().map(|&p| p as f64).sum::<f64>() / seeds as f64;
        let cap = ceiling_palette_bound(n as u64).unwrap() as f64;
        assert!(
            (2.0..=cap).contains(&mean),
            "mean palette {mean} outside [2, {cap}] at n={n}"
        );
        means.push(mean);
    }
    for w in means.windows(2) {
        assert!(
            w[1] >= w[0] - 1.0,
            "mean palette decreased beyond slack: {means:?}"
        );
    }
    println!("ACCEPTANCE 6 (trend: means {means:?} monotone within 1, inside [2, ceiling]): PASS");
}

/// Criterion 7: on 50 seeds of G(100,1/2) the audit convicts the all-one-color
/// coloring with a certified monochromatic maximal clique, and exhausts on
/// the greedy (valid) coloring. 100% each.
#[test]
fn acceptance_7_audit_soundness() {
    let budget = budget();
    for seed in 0..50u64 {
        let g = random_graph(100, 0.5, 81_000 + seed);

        let trace = audit_coloring(&g, &Coloring::monochrome(100), None, 2, &budget).unwrap();
        match &trace.outcome {
            AuditOutcome::Violation { certificate, .. } => {
                assert!(is_clique(&g, certificate), "certificate not a clique");
                assert!(certificate.len() >= 2);
                let mut common = VertexSet::full(100);
                for v in certificate.iter() {
                    common.intersect_with(g.neighbors(v));
                }
                assert!(common.is_empty(), "certificate not maximal");
                // One color class, so the certificate is monochromatic.
            }
            other => panic!("expected violation at seed {seed}, got {other:?}"),
        }

        let (c, _) = greedy_clique_coloring(&g, None, 2, &budget).unwrap();
        let trace = audit_coloring(&g, &c, None, 2, &budget).unwrap();
        assert!(
            !trace.is_violation(),
            "audit convicted a valid greedy coloring at seed {seed}"
        );
    }
    println!("ACCEPTANCE 7 (audit: 50/50 violations on monochrome, 50/50 exhausted on greedy): PASS");
}

/// Exhaustive bad-event probability over all 2^10 graphs on 5 vertices with
/// Y = {0,1,2}, evaluated straight from the definitions.
fn exhaustive_bad_event_fraction(k: usize, threshold: usize) -> f64 {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|u| ((u + 1)..5).map(move |v| (u, v)))
        .collect();
    let y = [0usize, 1, 2];
    let outside = [3usize, 4];
    let mut bad = 0u64;
    for mask in 0u32..(1 << pairs.len()) {
        let mut adj = [[false; 5]; 5];
        for (b, &(u, v)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        let min_ok = outside
            .iter()
            .all(|&v| y.iter().filter(|&&u| !adj[v][u]).count() >= threshold);
        let mut dominated = false;
        let subsets: Vec<Vec<usize>> = match k {
            1 => y.iter().map(|&a| vec![a]).collect(),
            2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
            _ => unreachable!(),
        };
        for s in subsets {
            let clique = s
                .iter()
                .enumerate()
                .all(|(i, &a)| s[i + 1..].iter().all(|&b| adj[a][b]));
            if clique && outside.iter().all(|&v| s.iter().any(|&u| !adj[v][u])) {
                dominated = true;
                break;
            }
        }
        if min_ok && !dominated {
            bad += 1;
        }
    }
    bad as f64 / f64::from(1u32 << pairs.len())
}

/// Criterion 8: at n=5, y=3, threshold=1 and k in {1,2}, the Monte Carlo
/// estimator over 10^4 trials matches the exhaustive enumeration over all
/// 2^10 labeled graphs within 3 standard errors.
#[test]
fn acceptance_8_estimator_matches_exhaustive() {
    let budget = budget();
    let trials = 10_000u64;
    for (k, frozen) in [(1usize, 192.0 / 1024.0), (2usize, 188.0 / 1024.0)] {
        let truth = exhaustive_bad_event_fraction(k, 1);
        assert!(
            (truth - frozen).abs() < 1e-12,
            "exhaustive oracle moved: k={k} gave {truth}, expected {frozen}"
        );
        let est = estimate_bad_event_probability(5, 3, k, 1.0, trials, 123_000, &budget).unwrap();
        assert_eq!(est.censored, 0);
        let se = (truth * (1.0 - truth) / trials as f64).sqrt();
        assert!(
            (est.fraction - truth).abs() <= 3.0 * se,
            "k={k}: estimate {} vs exhaustive {truth} (3se = {})",
            est.fraction,
            3.0 * se
        );
    }
    println!("ACCEPTANCE 8 (estimator matches 2^10-graph exhaustive enumeration, k=1,2): PASS");
}
