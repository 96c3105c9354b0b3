use proptest::prelude::*;
use std::collections::BTreeSet;
use tricolor::randmod::{
    check_concentration, check_property_p, combinations, equitable_partition, gen_gnp,
    neighborhoods, CheckMode, ConcentrationConfig, ImplicitGnp, PropertyPConfig, Verdict,
};
use tricolor::{Adjacency, Graph};

#[test]
fn implicit_and_materialized_graphs_agree() {
    let imp = ImplicitGnp::new(300, 0.37, 11).unwrap();
    let g = gen_gnp(300, 0.37, 11).unwrap();
    assert_eq!(g, imp.materialize());
    for u in 0..300 {
        for v in 0..300 {
            assert_eq!(imp.adjacent(u, v), g.has_edge(u, v) && u != v);
        }
    }
    assert_ne!(g, gen_gnp(300, 0.37, 12).unwrap());
}

#[test]
fn edge_counts_follow_the_binomial() {
    for (seed, p) in [(1u64, 0.1), (2, 0.5), (3, 0.9)] {
        let t = 1500;
        let g = gen_gnp(t, p, seed).unwrap();
        let m = (t * (t - 1) / 2) as f64;
        let sd = (m * p * (1.0 - p)).sqrt();
        assert!((g.edge_count() as f64 - m * p).abs() < 6.0 * sd, "p={p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equitable_partitions_are_balanced(t in 1usize..200, n in 1usize..20, seed in 0u64..1000) {
        prop_assume!(n <= t);
        let blocks = equitable_partition(t, n, seed).unwrap();
        prop_assert_eq!(blocks.len(), n);
        let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
        let mut all: Vec<usize> = blocks.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..t).collect::<Vec<_>>());
    }

    #[test]
    fn neighborhoods_match_definitions(seed in 0u64..1000, k in 0usize..5) {
        let g = gen_gnp(30, 0.4, seed).unwrap();
        let s: Vec<usize> = (0..k).map(|i| (i * 7 + seed as usize) % 30).collect::<BTreeSet<_>>().into_iter().collect();
        let (common, joint) = neighborhoods(&g, &s);
        for v in 0..30 {
            prop_assert_eq!(common.contains(v), s.iter().all(|&x| g.has_edge(x, v)));
            prop_assert_eq!(joint.contains(v), s.iter().any(|&x| g.has_edge(x, v)));
        }
    }
}

/// Largest `|e/P − 1/2|` over every unordered pair of `s`-subsets, from an
/// explicit set of vertex pairs.
fn worst_by_enumeration(g: &Graph, s: usize) -> f64 {
    let subsets = combinations(g.order(), s);
    let mut worst: f64 = 0.0;
    for (i, x) in subsets.iter().enumerate() {
        for y in &subsets[i..] {
            let pairs: BTreeSet<(usize, usize)> = x
                .iter()
                .flat_map(|&a| {
                    y.iter()
                        .filter(move |&&b| a != b)
                        .map(move |&b| (a.min(b), a.max(b)))
                })
                .collect();
            if pairs.is_empty() {
                continue;
            }
            let e = pairs.iter().filter(|&&(a, b)| g.has_edge(a, b)).count();
            worst = worst.max((e as f64 / pairs.len() as f64 - 0.5).abs());
        }
    }
    worst
}

#[test]
fn exhaustive_worst_deviation_matches_enumeration() {
    for seed in 0..10 {
        let g = gen_gnp(9, 0.5, seed).unwrap();
        let cfg = PropertyPConfig {
            mode: CheckMode::Exhaustive,
            ..PropertyPConfig::default()
        };
        let rep = check_property_p(&g, &cfg).unwrap();
        assert_eq!(rep.subset_size, 3);
        assert!(!rep.statistical);
        assert!((rep.worst_deviation_value - worst_by_enumeration(&g, 3)).abs() < 1e-12);
    }
}

#[test]
fn small_orders_always_pass_exhaustively() {
    // Below 256 the threshold exceeds 1/2, the largest possible deviation.
    let cfg = PropertyPConfig {
        mode: CheckMode::Exhaustive,
        ..PropertyPConfig::default()
    };
    for t in 2..=12 {
        for g in [
            Graph::empty(t),
            Graph::complete(t),
            gen_gnp(t, 0.5, t as u64).unwrap(),
        ] {
            let rep = check_property_p(&g, &cfg).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass, "t={t}");
        }
    }
}

#[test]
fn exhaustive_verdicts_below_256_follow_from_the_threshold() {
    let cfg = PropertyPConfig {
        mode: CheckMode::Exhaustive,
        ..PropertyPConfig::default()
    };
    for t in [20, 100, 255] {
        // The empty graph has every deviation equal to 1/2, the worst case.
        let rep = check_property_p(&Graph::empty(t), &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.by_bound);
        assert!(0.5 < (t as f64).powf(-0.125));
    }
    assert!(check_property_p(&Graph::empty(256), &cfg).is_err());
    let small = check_property_p(&Graph::empty(9), &cfg).unwrap();
    assert!(!small.by_bound);
    assert_eq!(small.worst_deviation, "1/2");
}

#[test]
fn sampled_check_on_a_large_implicit_graph() {
    let t = 1 << 16;
    for seed in 0..3 {
        let g = ImplicitGnp::new(t, 0.5, seed).unwrap();
        let cfg = PropertyPConfig {
            samples: 10_000,
            seed,
            ..PropertyPConfig::default()
        };
        let rep = check_property_p(&g, &cfg).unwrap();
        assert_eq!(rep.subset_size, 256);
        assert_eq!(rep.threshold, 0.25);
        assert!(rep.statistical);
        assert!(rep.pass_rate >= 0.99, "seed {seed}: {}", rep.pass_rate);
    }
}

#[test]
fn sampled_check_fails_on_extremal_graphs() {
    let g = Graph::empty(300);
    let rep = check_property_p(
        &g,
        &PropertyPConfig {
            samples: 50,
            ..PropertyPConfig::default()
        },
    )
    .unwrap();
    assert_eq!(rep.verdict, Verdict::Fail);
    assert_eq!(rep.passed, 0);
    assert!(rep.witness.is_some());
}

/// `P(Bin(n, q) ∉ [lo, hi])`.
fn binomial_tail(n: u64, q: f64, lo: f64, hi: f64) -> f64 {
    let mut log_pmf = n as f64 * (1.0 - q).ln();
    let mut inside = 0.0;
    for k in 0..=n {
        if k > 0 {
            log_pmf += ((n - k + 1) as f64 / k as f64).ln() + (q / (1.0 - q)).ln();
        }
        if (k as f64) >= lo && (k as f64) <= hi {
            inside += log_pmf.exp();
        }
    }
    1.0 - inside
}

#[test]
fn codegree_failures_match_the_binomial_tail() {
    let (n, p, eps) = (4096usize, 0.1, 0.3);
    let g = gen_gnp(n, p, 5).unwrap();
    let cfg = ConcentrationConfig {
        p,
        epsilon: eps,
        s_max: 3,
        mode: CheckMode::Sampled,
        samples: 4000,
        seed: 5,
    };
    let rep = check_concentration(&g, &cfg).unwrap();
    let mu = p * p * n as f64;
    let q = binomial_tail((n - 2) as u64, p * p, (1.0 - eps) * mu, (1.0 + eps) * mu);
    let rate = rep.event_a.failures as f64 / rep.event_a.checked as f64;
    let se = (q * (1.0 - q) / rep.event_a.checked as f64).sqrt();
    assert!(
        (rate - q).abs() < 6.0 * se + 0.005,
        "rate {rate}, predicted {q}"
    );
    // The predicted rate is far from zero, so event A does not pass here.
    assert!(q > 0.01);
    assert!(!rep.event_a.pass);
}

#[test]
fn concentration_passes_on_dense_graphs() {
    let g = gen_gnp(2000, 0.5, 9).unwrap();
    let cfg = ConcentrationConfig {
        p: 0.5,
        epsilon: 0.4,
        s_max: 1,
        mode: CheckMode::Exhaustive,
        samples: 2000,
        seed: 9,
    };
    let rep = check_concentration(&g, &cfg).unwrap();
    assert_eq!(rep.event_a.checked, 2000 * 1999 / 2);
    assert!(rep.event_a.pass);
    assert!(rep.event_b.pass);
}
