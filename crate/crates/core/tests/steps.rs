use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tricolor::randmod::gen_gnp;
use tricolor::steps::{
    er_select, mono_triangle_clique, verify_step_state, CliqueOutcome, SelectOutcome,
};
use tricolor::{triangles, Color, Graph, TriangleColoring};

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

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Lexicographic rank of `a < b < c` among the 3-subsets of `0..n`.
fn rank(n: usize, [a, b, c]: [usize; 3]) -> usize {
    let before_a: usize = (0..a).map(|x| binom(n - 1 - x, 2)).sum();
    let before_b: usize = (a + 1..b).map(|y| n - 1 - y).sum();
    before_a + before_b + (c - b - 1)
}

/// Recomputes the colors of a clique in `K_n` from the raw random draws.
fn redraw_check(n: usize, seed: u64, vs: &[usize], c: Color) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<bool> = (0..binom(n, 3)).map(|_| rng.gen_bool(0.5)).collect();
    let mut vs = vs.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let k = vs.len();
    (0..k).all(|a| {
        (a + 1..k)
            .all(|b| (b + 1..k).all(|z| draws[rank(n, [vs[a], vs[b], vs[z]])] == (c == Color::Red)))
    })
}

#[test]
fn k64_monochromatic_triangles_always_found() {
    let g = Graph::complete(64);
    let failures: usize = (0..1000u64)
        .into_par_iter()
        .filter(|&seed| {
            let chi = random_coloring(&g, seed);
            match mono_triangle_clique(&g, &chi, 3, Some(3)).unwrap() {
                CliqueOutcome::Found(w) => {
                    !(w.verified
                        && w.vertices.len() == 3
                        && redraw_check(64, seed, &w.vertices, w.color))
                }
                _ => true,
            }
        })
        .count();
    assert_eq!(failures, 0);
}

#[test]
fn larger_cliques_reverify() {
    let g = Graph::complete(40);
    for seed in 0..20 {
        let chi = random_coloring(&g, seed);
        if let CliqueOutcome::Found(w) = mono_triangle_clique(&g, &chi, 4, None).unwrap() {
            assert_eq!(w.vertices.len(), 4);
            assert!(redraw_check(40, seed, &w.vertices, w.color));
        }
    }
}

#[test]
fn short_prefixes_are_rejected() {
    let g = Graph::complete(8);
    let chi = random_coloring(&g, 0);
    assert!(mono_triangle_clique(&g, &chi, 4, Some(3)).is_err());
    assert!(mono_triangle_clique(&g, &chi, 1, None).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn selection_states_rescan(seed in 0u64..10_000, p in 0.3f64..1.0, ell in 2usize..7) {
        let g = gen_gnp(24, p, seed).unwrap();
        let chi = random_coloring(&g, seed ^ 0xabc);
        let (state, trace, ok) = match er_select(&g, &chi, ell).unwrap() {
            SelectOutcome::Success { state, trace } => (state, trace, true),
            SelectOutcome::Failure { state, trace, step } => {
                prop_assert_eq!(state.prefix.len(), step);
                (state, trace, false)
            }
        };
        prop_assert!(verify_step_state(&g, &chi, &state).is_ok());
        if ok {
            prop_assert_eq!(state.prefix.len(), ell);
        }
        for (i, r) in trace.iter().enumerate() {
            prop_assert!(r.candidates_after <= r.neighbors_in_candidates);
            prop_assert!(r.neighbors_in_candidates < r.candidates_before);
            // The largest class holds at least a 2^{-r} share.
            prop_assert!(r.candidates_after << i >= r.neighbors_in_candidates);
        }
        // Prefix vertices form a clique.
        for (a, &u) in state.prefix.iter().enumerate() {
            for &v in &state.prefix[a + 1..] {
                prop_assert!(g.has_edge(u, v));
            }
        }
    }
}
