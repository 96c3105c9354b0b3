use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use tricolor::biphost::{
    construct_host, decompose_bn, enlarge, extract, find_blowup, phi_coloring, BnDecomposition,
    ExtractConfig, ExtractOutcome, HostGraph,
};
use tricolor::randmod::gen_gnp;
use tricolor::verify::{find_good_copy, graphs_up_to_iso, verify_good_copy};
use tricolor::{triangles, Color, Graph, TriangleColoring, Triple};

fn small_bases(m: usize) -> Vec<Graph> {
    if m <= 5 {
        graphs_up_to_iso(m)
    } else {
        vec![
            Graph::empty(m),
            Graph::complete(m),
            Graph::path(m),
            gen_gnp(m, 0.5, m as u64).unwrap(),
        ]
    }
}

#[test]
fn host_counts_and_apex_neighbourhoods() {
    for m in 1..=12 {
        for block in 1..=12usize / m {
            if block.pow(m as u32) > 5000 {
                continue;
            }
            for base in small_bases(m) {
                let host = construct_host(&base, block).unwrap();
                let g = host.materialize(10_000).unwrap();
                assert_eq!(g.order(), m * block + block.pow(m as u32));
                assert_eq!(
                    g.edge_count(),
                    base.edge_count() * block * block + m * block.pow(m as u32)
                );
                assert_eq!(g.edge_count() as u128, host.edge_count());
                for u in m * block..g.order() {
                    let tuple = host.apex_tuple(u).unwrap();
                    let expected: Vec<usize> = tuple
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| i * block + x)
                        .collect();
                    assert_eq!(g.neighbors(u).to_vec(), expected);
                }
            }
        }
    }
}

#[test]
fn edgeless_base_has_no_block_edges() {
    let host = construct_host(&Graph::empty(3), 2).unwrap();
    assert_eq!(host.e1_count(), 0);
    let single = construct_host(&Graph::complete(2), 1).unwrap();
    let g = single.materialize(10).unwrap();
    assert_eq!(g.order(), 3);
    assert_eq!(g.edge_count(), 3);
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

/// Finds the apex of a tuple by scanning for the vertex whose neighbourhood
/// is exactly the tuple's block vertices.
fn apex_by_scan(host: &HostGraph, g: &Graph, tuple: &[usize]) -> usize {
    let want: Vec<usize> = tuple
        .iter()
        .enumerate()
        .map(|(i, &x)| i * host.block_size() + x)
        .collect();
    (0..g.order())
        .find(|&u| host.block_of(u).is_none() && g.neighbors(u).to_vec() == want)
        .unwrap()
}

#[test]
fn phi_agrees_with_direct_lookup() {
    let base = Graph::complete(3);
    let host = construct_host(&base, 2).unwrap();
    let g = host.materialize(1000).unwrap();
    for seed in 0..10 {
        let chi = random_coloring(&g, seed);
        let lookup = |t: &Triple| chi.color_of(t);
        for idx in 0..host.tuple_count() {
            let tuple = host.tuple_at(idx);
            let phi = phi_coloring(&host, &lookup, &tuple).unwrap();
            let u = apex_by_scan(&host, &g, &tuple);
            for (k, &(i, j)) in base.edges().iter().enumerate() {
                let c = chi
                    .color_of_vertices(2 * i + tuple[i], 2 * j + tuple[j], u)
                    .unwrap();
                assert_eq!(phi[k], c);
            }
        }
    }
}

#[test]
fn phi_follows_flips_through_one_apex() {
    let base = Graph::complete(2);
    let host = construct_host(&base, 3).unwrap();
    let g = host.materialize(1000).unwrap();
    let flipped = host.apex(&[1, 2]);
    let chi = TriangleColoring::from_fn(triangles(&g), |t| {
        if t.contains(&flipped) {
            Color::Blue
        } else {
            Color::Red
        }
    });
    let lookup = |t: &Triple| chi.color_of(t);
    for idx in 0..host.tuple_count() {
        let tuple = host.tuple_at(idx);
        let phi = phi_coloring(&host, &lookup, &tuple).unwrap();
        let expected = if tuple == [1, 2] {
            Color::Blue
        } else {
            Color::Red
        };
        assert_eq!(phi, vec![expected]);
    }
}

#[test]
fn decomposition_search_matches_bipartition_scan() {
    for n in 1..=5 {
        for f in graphs_up_to_iso(n) {
            let any = (0u32..1 << n).any(|b| {
                let bs: Vec<usize> = (0..n).filter(|&v| b >> v & 1 == 1).collect();
                let a: Vec<usize> = (0..n).filter(|&v| b >> v & 1 == 0).collect();
                let independent = bs.iter().all(|&u| bs.iter().all(|&v| !f.has_edge(u, v)));
                independent && triangles(&f.induced(&a)).is_empty()
            });
            let found = decompose_bn(&f, 20).unwrap();
            assert_eq!(found.is_some(), any);
            if let Some(r) = found {
                assert!(r.decomposition.has_distinct_neighborhoods());
                assert_eq!(r.graph.induced(&(0..n).collect::<Vec<_>>()), f);
            }
        }
    }
}

#[test]
fn enlargement_keeps_original_induced() {
    let c4 = Graph::cycle(4);
    let d = BnDecomposition::new(&c4, vec![0, 2], vec![1, 3]).unwrap();
    assert!(!d.has_distinct_neighborhoods());
    let r = enlarge(&c4, &d).unwrap();
    assert!(r.enlarged);
    assert_eq!(r.added, vec![4]);
    assert!(r.graph.has_edge(3, 4));
    assert_eq!(r.graph.induced(&[0, 1, 2, 3]), c4);
}

fn naive_blowup(edges: &BTreeSet<Vec<usize>>, k: usize, size: usize) -> bool {
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|x| (x + 1..size).map(move |y| (x, y)))
        .collect();
    let choices = pairs.len().pow(k as u32);
    (0..choices).any(|mut c| {
        let chosen: Vec<(usize, usize)> = (0..k)
            .map(|_| {
                let p = pairs[c % pairs.len()];
                c /= pairs.len();
                p
            })
            .collect();
        (0..1u32 << k).all(|mask| {
            let t: Vec<usize> = (0..k)
                .map(|j| {
                    if mask >> j & 1 == 0 {
                        chosen[j].0
                    } else {
                        chosen[j].1
                    }
                })
                .collect();
            edges.contains(&t)
        })
    })
}

#[test]
fn blowup_finder_matches_naive_scan() {
    let mut hits = 0;
    for seed in 0..60 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 3;
        let size = 5;
        let density = rng.gen_range(0.3..0.8);
        let mut edges = BTreeSet::new();
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if rng.gen_bool(density) {
                        edges.insert(vec![a, b, c]);
                    }
                }
            }
        }
        let list: Vec<Vec<usize>> = edges.iter().cloned().collect();
        let found = find_blowup(&list, k, 1 << 20).unwrap();
        assert_eq!(
            found.is_some(),
            naive_blowup(&edges, k, size),
            "seed {seed}"
        );
        if let Some(pairs) = found {
            hits += 1;
            for mask in 0..8u32 {
                let t: Vec<usize> = (0..k).map(|j| pairs[j][(mask >> j & 1) as usize]).collect();
                assert!(edges.contains(&t));
            }
        }
    }
    assert!(hits > 0 && hits < 60);
}

fn k3_split() -> (Graph, BnDecomposition) {
    let k3 = Graph::complete(3);
    let d = BnDecomposition::new(&k3, vec![0, 1], vec![2]).unwrap();
    (k3, d)
}

#[test]
fn extraction_on_random_colorings_reverifies() {
    let (k3, d) = k3_split();
    let host = construct_host(&Graph::complete(2), 4).unwrap();
    let g = host.materialize(1000).unwrap();
    let mut successes = 0;
    for seed in 0..100 {
        let chi = random_coloring(&g, seed);
        let lookup = |t: &Triple| chi.color_of(t);
        let report = extract(&host, &lookup, &k3, &d, &ExtractConfig::default()).unwrap();
        match report.outcome {
            ExtractOutcome::Success { witness, .. } => {
                successes += 1;
                assert!(verify_good_copy(&g, &k3, &chi, &witness.map));
                assert!(find_good_copy(&g, &k3, &chi).unwrap().is_some());
            }
            ExtractOutcome::Failure { .. } => {}
        }
    }
    assert!(successes > 0);
}

#[test]
fn distinct_neighbourhoods_give_distinct_apexes() {
    // a0 - a1 with b0 ~ {a0, a1}, b1 ~ {a0}, b2 ~ {}.
    let f = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
    let d = BnDecomposition::new(&f, vec![0, 1], vec![2, 3, 4]).unwrap();
    assert!(d.has_distinct_neighborhoods());
    let host = construct_host(&Graph::complete(2), 3).unwrap();
    let g = host.materialize(1000).unwrap();
    let chi = TriangleColoring::constant(triangles(&g), Color::Red);
    let lookup = |t: &Triple| chi.color_of(t);
    let report = extract(&host, &lookup, &f, &d, &ExtractConfig::default()).unwrap();
    let ExtractOutcome::Success {
        witness,
        apex_tuples,
        ..
    } = report.outcome
    else {
        panic!("{:?}", report.outcome)
    };
    let apexes: BTreeSet<usize> = [2, 3, 4].iter().map(|&b| witness.map[b]).collect();
    assert_eq!(apexes.len(), 3);
    assert_eq!(apex_tuples.len(), 3);
    assert!(verify_good_copy(&g, &f, &chi, &witness.map));
}

#[test]
fn sampled_extraction_on_a_larger_host() {
    let (k3, d) = k3_split();
    let host = construct_host(&Graph::complete(2), 64).unwrap();
    let lookup = |_: &Triple| Some(Color::Blue);
    let cfg = ExtractConfig {
        tuple_budget: 1000,
        samples: 2000,
        ..ExtractConfig::default()
    };
    let report = extract(&host, &lookup, &k3, &d, &cfg).unwrap();
    assert!(report.sampled);
    assert!(matches!(report.outcome, ExtractOutcome::Success { .. }));
}
