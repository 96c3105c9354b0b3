use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tricolor::randmod::gen_gnp;
use tricolor::verify::{
    arrow_check, find_good_copy, graphs_up_to_iso, ramsey_delta_number, strongly_induced_check,
    verify_good_copy, ArrowMode, ArrowVerdict, Holds, RamseyConfig,
};
use tricolor::{triangles, Color, Graph, TriangleColoring, TripleSystem};

fn k4_minus_e() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

fn random_coloring(g: &Graph, seed: u64) -> TriangleColoring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TriangleColoring::from_fn(triangles(g), |_| {
        if rng.gen_bool(0.5) {
            Color::Red
        } else {
            Color::Blue
        }
    })
}

/// Every injective map, checked directly.
fn brute_force_good_copy(g: &Graph, f: &Graph, chi: &TriangleColoring) -> bool {
    let n = f.order();
    let mut map = vec![0; n];
    fn rec(i: usize, map: &mut Vec<usize>, g: &Graph, f: &Graph, chi: &TriangleColoring) -> bool {
        if i == map.len() {
            return verify_good_copy(g, f, chi, map);
        }
        for v in 0..g.order() {
            if !map[..i].contains(&v) {
                map[i] = v;
                if rec(i + 1, map, g, f, chi) {
                    return true;
                }
            }
        }
        false
    }
    rec(0, &mut map, g, f, chi)
}

#[test]
fn good_copy_search_matches_brute_force() {
    let patterns = [
        Graph::complete(3),
        k4_minus_e(),
        Graph::path(3),
        Graph::cycle(4),
    ];
    for seed in 0..40 {
        let g = gen_gnp(7, 0.6, seed).unwrap();
        let chi = random_coloring(&g, seed);
        for f in &patterns {
            let found = find_good_copy(&g, f, &chi).unwrap();
            assert_eq!(
                found.is_some(),
                brute_force_good_copy(&g, f, &chi),
                "seed {seed}"
            );
            if let Some(copy) = found {
                assert!(verify_good_copy(&g, f, &chi, &copy.map));
            }
        }
    }
}

#[test]
fn k4_minus_e_two_color_coloring_has_no_good_copy() {
    let f = k4_minus_e();
    let chi = TriangleColoring::new(triangles(&f), vec![Color::Red, Color::Blue]).unwrap();
    assert!(find_good_copy(&f, &f, &chi).unwrap().is_none());
}

#[test]
fn refutations_reverify_from_json() {
    let f = k4_minus_e();
    let v = arrow_check(&f, &f, ArrowMode::default(), false).unwrap();
    assert_eq!(v.holds, Holds::No);
    assert_eq!(v.colorings_total, Some(2));
    let json = serde_json::to_string(&v).unwrap();
    let back: ArrowVerdict = serde_json::from_str(&json).unwrap();
    let chi = back.refutation.unwrap();
    let chi = TriangleColoring::parse_for(&chi.to_text(), &triangles(&f)).unwrap();
    assert!(find_good_copy(&f, &f, &chi).unwrap().is_none());
    assert!(find_good_copy(&f, &f, &chi.swapped()).unwrap().is_none());
}

#[test]
fn swapped_refutations_still_refute() {
    let f = Graph::complete(3);
    for seed in 0..30 {
        let g = gen_gnp(6, 0.5, seed).unwrap();
        if triangles(&g).len() > 20 {
            continue;
        }
        let pattern = if seed % 2 == 0 {
            f.clone()
        } else {
            k4_minus_e()
        };
        let v = arrow_check(&g, &pattern, ArrowMode::default(), false).unwrap();
        if let Some(chi) = v.refutation {
            assert!(find_good_copy(&g, &pattern, &chi.swapped())
                .unwrap()
                .is_none());
        }
    }
}

#[test]
fn isolated_vertices_preserve_verdicts() {
    let f = k4_minus_e();
    for g in graphs_up_to_iso(5) {
        if triangles(&g).len() > 10 {
            continue;
        }
        let a = arrow_check(&g, &f, ArrowMode::default(), false)
            .unwrap()
            .holds;
        let b = arrow_check(&g.with_isolated(2), &f, ArrowMode::default(), false)
            .unwrap()
            .holds;
        assert_eq!(a, b);
    }
}

#[test]
fn witnesses_cover_every_coloring() {
    let g = Graph::complete(5);
    let f = Graph::complete(3);
    let v = arrow_check(&g, &f, ArrowMode::default(), true).unwrap();
    assert_eq!(v.holds, Holds::Yes);
    let witnesses = v.witnesses.unwrap();
    assert_eq!(witnesses.len() as u64, v.colorings_total.unwrap());
    let k3 = triangles(&g);
    for w in witnesses.iter().step_by(17) {
        let chi = TriangleColoring::from_mask(k3.clone(), w.coloring << 1 | 1);
        assert!(verify_good_copy(&g, &f, &chi, &w.witness.map));
    }
}

#[test]
fn adversarial_never_contradicts_exhaustive() {
    let f = k4_minus_e();
    for seed in 0..20 {
        let g = gen_gnp(6, 0.7, seed).unwrap();
        if triangles(&g).len() > 16 {
            continue;
        }
        let exact = arrow_check(&g, &f, ArrowMode::default(), false)
            .unwrap()
            .holds;
        let mode = ArrowMode::Adversarial {
            restarts: 5,
            steps: 200,
            seed,
        };
        let guess = arrow_check(&g, &f, mode, false).unwrap();
        if exact == Holds::Yes {
            assert_ne!(guess.holds, Holds::No);
        }
        if guess.holds == Holds::No {
            assert!(find_good_copy(&g, &f, guess.refutation.as_ref().unwrap())
                .unwrap()
                .is_none());
        }
    }
}

#[test]
fn triangle_free_patterns_are_vacuous() {
    let v = arrow_check(
        &Graph::cycle(5),
        &Graph::path(3),
        ArrowMode::default(),
        false,
    )
    .unwrap();
    assert!(v.vacuous_triangle_condition);
    assert_eq!(v.holds, Holds::Yes);
    let v = arrow_check(
        &Graph::complete(4),
        &Graph::path(3),
        ArrowMode::default(),
        false,
    )
    .unwrap();
    assert_eq!(v.holds, Holds::No);
}

#[test]
fn over_budget_hosts_are_refused() {
    let g = Graph::complete(7);
    assert!(arrow_check(&g, &Graph::complete(3), ArrowMode::default(), false).is_err());
}

#[test]
fn strongly_induced_copies_in_random_systems() {
    let k = TripleSystem::new(4, [[0, 1, 2], [0, 2, 3]]).unwrap();
    let map = [3, 5, 7, 9];
    let base = TripleSystem::new(12, [[3, 5, 7], [3, 7, 9]]).unwrap();
    assert!(strongly_induced_check(&base, &k, &map));
    // Far-away triples never matter.
    let far = TripleSystem::new(12, [[3, 5, 7], [3, 7, 9], [0, 1, 2], [3, 10, 11]]).unwrap();
    assert!(strongly_induced_check(&far, &k, &map));
    // A triple through a copy pair leaving the copy is fatal.
    let leak = TripleSystem::new(12, [[3, 5, 7], [3, 7, 9], [5, 7, 11]]).unwrap();
    assert!(!strongly_induced_check(&leak, &k, &map));
    // An extra triple inside the copy breaks inducedness.
    let extra = TripleSystem::new(12, [[3, 5, 7], [3, 7, 9], [5, 7, 9]]).unwrap();
    assert!(!strongly_induced_check(&extra, &k, &map));
    assert!(!strongly_induced_check(&base, &k, &[3, 5, 7, 7]));
}

#[test]
fn ramsey_numbers_of_tiny_patterns() {
    let cfg = RamseyConfig::default();
    let r = ramsey_delta_number(&Graph::complete(3), 4, &cfg).unwrap();
    assert_eq!(r.value, Some(3));
    assert!(r.exact);
    let r = ramsey_delta_number(&k4_minus_e(), 6, &cfg).unwrap();
    match r.value {
        Some(v) => {
            let host = r.host.unwrap();
            assert_eq!(host.order(), v);
            assert_eq!(
                arrow_check(&host, &k4_minus_e(), ArrowMode::default(), false)
                    .unwrap()
                    .holds,
                Holds::Yes
            );
        }
        None => {
            assert!(!r.exact);
            assert_eq!(r.orders.len(), 3);
        }
    }
}
