//! Brute-force oracles for `G ⇒ (F)^Δ`, strongly induced copies and tiny
//! values of the induced triangle Ramsey number.

use crate::coloring::{Color, TriangleColoring};
use crate::embed::EmbeddingWitness;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::{find_induced_copy, induced_copies, is_induced_copy, InducedSearch};
use crate::rng::stream;
use crate::triples::{triangles, triple, Triple, TripleSystem};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

/// An induced copy of `F` whose triangles share one color. `color` is
/// `None` when `F` has no triangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodCopy {
    pub map: Vec<usize>,
    pub color: Option<Color>,
}

impl GoodCopy {
    pub fn witness(&self) -> EmbeddingWitness {
        EmbeddingWitness {
            map: self.map.clone(),
        }
    }
}

fn check_domain(g: &Graph, chi: &TriangleColoring) -> Result<TripleSystem> {
    let k3 = triangles(g);
    if chi.domain() != &k3 {
        return Err(Error::InvalidInput(
            "coloring domain is not the triangle set of the host".into(),
        ));
    }
    Ok(k3)
}

/// Searches for an induced copy of `F` in `G` all of whose triangles get
/// the same color under `χ`.
pub fn find_good_copy(g: &Graph, f: &Graph, chi: &TriangleColoring) -> Result<Option<GoodCopy>> {
    check_domain(g, chi)?;
    let f_triangles = triangles(f);
    if f_triangles.is_empty() {
        return Ok(find_induced_copy(f, g).map(|map| GoodCopy { map, color: None }));
    }
    // Triangles of F that close when a given vertex is placed.
    let search = InducedSearch::new(f, g);
    let mut rank = vec![0; f.order()];
    for (i, &v) in search.order().iter().enumerate() {
        rank[v] = i;
    }
    let mut closing: Vec<Vec<Triple>> = vec![Vec::new(); f.order()];
    for t in f_triangles.edges() {
        let last = *t.iter().max_by_key(|&&v| rank[v]).unwrap();
        closing[last].push(*t);
    }
    for target in Color::BOTH {
        let mut found = None;
        search.run(
            |map, v| {
                closing[v]
                    .iter()
                    .all(|t| chi.color_of_vertices(map[t[0]], map[t[1]], map[t[2]]) == Some(target))
            },
            |map| {
                found = Some(map.to_vec());
                true
            },
        );
        if let Some(map) = found {
            return Ok(Some(GoodCopy {
                map,
                color: Some(target),
            }));
        }
    }
    Ok(None)
}

/// Independent check of a claimed good copy: induced, and every triangle of
/// `F` maps to a triangle of one common color.
pub fn verify_good_copy(g: &Graph, f: &Graph, chi: &TriangleColoring, map: &[usize]) -> bool {
    if !is_induced_copy(f, g, map) {
        return false;
    }
    let mut seen = None;
    for t in triangles(f).edges() {
        match chi.color_of_vertices(map[t[0]], map[t[1]], map[t[2]]) {
            None => return false,
            Some(c) if seen.is_some_and(|s| s != c) => return false,
            Some(c) => seen = Some(c),
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ArrowMode {
    /// All colorings with the first triangle red; refused when `K₃(G)` has
    /// more than `budget` triangles.
    Exhaustive { budget: usize },
    /// Seeded local search for a refutation.
    Adversarial {
        restarts: u32,
        steps: u32,
        seed: u64,
    },
}

pub const DEFAULT_TRIANGLE_BUDGET: usize = 24;

impl Default for ArrowMode {
    fn default() -> Self {
        ArrowMode::Exhaustive {
            budget: DEFAULT_TRIANGLE_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Holds {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedWitness {
    pub coloring: u64,
    pub witness: EmbeddingWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowVerdict {
    pub holds: Holds,
    /// `F` has no triangles, so any induced copy qualifies.
    pub vacuous_triangle_condition: bool,
    pub host_triangles: usize,
    pub induced_copies: usize,
    /// Index of the refuting coloring: bit `i+1` of the index is the color
    /// of triangle `i+1` (set = red); triangle 0 is red.
    pub refutation_index: Option<u64>,
    #[serde(with = "coloring_text")]
    pub refutation: Option<TriangleColoring>,
    pub witnesses: Option<Vec<IndexedWitness>>,
    pub colorings_checked: u64,
    pub colorings_total: Option<u64>,
}

mod coloring_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        c: &Option<TriangleColoring>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        c.as_ref().map(TriangleColoring::to_text).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<TriangleColoring>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| {
            let n = t
                .lines()
                .flat_map(|l| l.split_whitespace().skip(1).take(3))
                .filter_map(|w| w.parse::<usize>().ok())
                .max()
                .map_or(0, |m| m + 1);
            TriangleColoring::parse(&t, n).map_err(serde::de::Error::custom)
        })
        .transpose()
    }
}

/// Triangle-index sets of the induced copies of `F`, one per distinct set,
/// together with a map realizing it.
fn copy_masks(g: &Graph, f: &Graph, k3: &TripleSystem) -> Vec<(Vec<usize>, Vec<usize>)> {
    let ft = triangles(f);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for map in induced_copies(f, g) {
        let mut idx: Vec<usize> = ft
            .edges()
            .iter()
            .map(|t| {
                k3.index_of(&triple(map[t[0]], map[t[1]], map[t[2]]))
                    .expect("image of a triangle")
            })
            .collect();
        idx.sort_unstable();
        if seen.insert(idx.clone()) {
            out.push((idx, map));
        }
    }
    out
}

/// Decides `G ⇒ (F)^Δ` by exhaustive enumeration, or hunts for a refutation
/// by local search.
pub fn arrow_check(
    g: &Graph,
    f: &Graph,
    mode: ArrowMode,
    with_witnesses: bool,
) -> Result<ArrowVerdict> {
    let k3 = triangles(g);
    let vacuous = triangles(f).is_empty();
    let copies = copy_masks(g, f, &k3);
    let mut verdict = ArrowVerdict {
        holds: Holds::Unknown,
        vacuous_triangle_condition: vacuous,
        host_triangles: k3.len(),
        induced_copies: copies.len(),
        refutation_index: None,
        refutation: None,
        witnesses: None,
        colorings_checked: 0,
        colorings_total: None,
    };
    match mode {
        ArrowMode::Exhaustive { budget } => {
            if k3.len() > budget || k3.len() > 63 {
                return Err(Error::budget(
                    "host triangles",
                    k3.len() as u128,
                    budget as u128,
                ));
            }
            let total = 1u64 << k3.len().saturating_sub(1);
            verdict.colorings_total = Some(total);
            let masks: Vec<u64> = copies
                .iter()
                .map(|(idx, _)| idx.iter().fold(0u64, |m, &i| m | 1 << i))
                .collect();
            let good = |c: u64| masks.iter().position(|&m| c & m == 0 || c & m == m);
            let to_mask = |i: u64| if k3.is_empty() { 0 } else { i << 1 | 1 };
            match (0..total)
                .into_par_iter()
                .find_first(|&i| good(to_mask(i)).is_none())
            {
                Some(i) => {
                    verdict.holds = Holds::No;
                    verdict.colorings_checked = i + 1;
                    verdict.refutation_index = Some(i);
                    verdict.refutation = Some(TriangleColoring::from_mask(k3.clone(), to_mask(i)));
                }
                None => {
                    verdict.holds = Holds::Yes;
                    verdict.colorings_checked = total;
                    if with_witnesses {
                        verdict.witnesses = Some(
                            (0..total)
                                .into_par_iter()
                                .map(|i| IndexedWitness {
                                    coloring: i,
                                    witness: EmbeddingWitness {
                                        map: copies[good(to_mask(i)).expect("good copy")].1.clone(),
                                    },
                                })
                                .collect(),
                        );
                    }
                }
            }
        }
        ArrowMode::Adversarial {
            restarts,
            steps,
            seed,
        } => {
            let (checked, refutation) = local_search(k3.len(), &copies, restarts, steps, seed);
            verdict.colorings_checked = checked;
            if let Some(colors) = refutation {
                verdict.holds = Holds::No;
                verdict.refutation = Some(TriangleColoring::new(k3.clone(), colors)?);
            }
        }
    }
    if let Some(chi) = &verdict.refutation {
        if find_good_copy(g, f, chi)?.is_some() {
            return Err(Error::Internal("refutation admits a good copy".into()));
        }
    }
    Ok(verdict)
}

/// Greedy flips minimizing the number of good copies, with random kicks at
/// local minima. Returns the number of colorings visited and a refutation
/// if one was reached.
fn local_search(
    k: usize,
    copies: &[(Vec<usize>, Vec<usize>)],
    restarts: u32,
    steps: u32,
    seed: u64,
) -> (u64, Option<Vec<Color>>) {
    if copies.is_empty() {
        return (1, Some(vec![Color::Red; k]));
    }
    let mut through = vec![Vec::new(); k];
    for (c, (idx, _)) in copies.iter().enumerate() {
        for &t in idx {
            through[t].push(c);
        }
    }
    let mut visited = 0u64;
    for r in 0..restarts {
        let mut rng = stream(seed, r as u64);
        let mut red: Vec<bool> = (0..k).map(|_| rng.gen()).collect();
        let mut reds: Vec<usize> = copies
            .iter()
            .map(|(idx, _)| idx.iter().filter(|&&t| red[t]).count())
            .collect();
        let is_good = |reds: usize, size: usize| reds == 0 || reds == size;
        for _ in 0..steps {
            visited += 1;
            let good: Vec<usize> = (0..copies.len())
                .filter(|&c| is_good(reds[c], copies[c].0.len()))
                .collect();
            if good.is_empty() {
                let colors = red
                    .iter()
                    .map(|&b| if b { Color::Red } else { Color::Blue })
                    .collect();
                return (visited, Some(colors));
            }
            let delta = |t: usize| -> i64 {
                through[t]
                    .iter()
                    .map(|&c| {
                        let size = copies[c].0.len();
                        let after = if red[t] { reds[c] - 1 } else { reds[c] + 1 };
                        is_good(after, size) as i64 - is_good(reds[c], size) as i64
                    })
                    .sum()
            };
            let best = (0..k).map(|t| (delta(t), t)).min();
            let flip = match best {
                Some((d, t)) if d < 0 => t,
                _ => {
                    let c = *good.choose(&mut rng).unwrap();
                    match copies[c].0.choose(&mut rng) {
                        Some(&t) => t,
                        // A good copy with no triangles can never be spoiled.
                        None => return (visited, None),
                    }
                }
            };
            for &c in &through[flip] {
                if red[flip] {
                    reds[c] -= 1;
                } else {
                    reds[c] += 1;
                }
            }
            red[flip] = !red[flip];
        }
    }
    (visited, None)
}

/// Checks that `map` places `K` in `H` as a strongly induced copy: the
/// image spans exactly the images of `K`'s edges, and every edge of `H`
/// through two image vertices is one of them.
pub fn strongly_induced_check(h: &TripleSystem, k: &TripleSystem, map: &[usize]) -> bool {
    if map.len() != k.order() || map.iter().any(|&v| v >= h.order()) {
        return false;
    }
    let mut seen = HashSet::new();
    if !map.iter().all(|v| seen.insert(*v)) {
        return false;
    }
    let images: HashSet<Triple> = k
        .edges()
        .iter()
        .map(|t| triple(map[t[0]], map[t[1]], map[t[2]]))
        .collect();
    if !images.iter().all(|t| h.contains(t)) {
        return false;
    }
    h.edges().iter().all(|e| {
        let inside = e.iter().filter(|v| seen.contains(v)).count();
        inside < 2 || images.contains(e)
    })
}

/// Canonical code of a graph on at most 11 vertices: the smallest upper
/// triangle bit string over orderings that respect a degree-based vertex
/// invariant.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.order();
    assert!(n <= 11, "canonical codes support at most 11 vertices");
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut cells: BTreeMap<&(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        cells.entry(&inv[v]).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    permute_cells(g, &cells, 0, &mut order, &mut best);
    best
}

fn permute_cells(
    g: &Graph,
    cells: &[Vec<usize>],
    i: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if i == cells.len() {
        let n = order.len();
        let mut code = 0u64;
        for a in 0..n {
            for b in a + 1..n {
                code = code << 1 | g.has_edge(order[a], order[b]) as u64;
            }
        }
        *best = (*best).min(code);
        return;
    }
    let mut cell = cells[i].clone();
    permutations(&mut cell, 0, &mut |p| {
        let len = order.len();
        order.extend_from_slice(p);
        permute_cells(g, cells, i + 1, order, best);
        order.truncate(len);
    });
}

fn permutations(items: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}

/// One graph per isomorphism class on `n` vertices, ordered by canonical
/// code.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0)];
    for order in 1..=n {
        let mut next: BTreeMap<u64, Graph> = BTreeMap::new();
        for g in &level {
            for mask in 0u64..1 << (order - 1) {
                let mut h = g.with_isolated(1);
                for u in 0..order - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, order - 1);
                    }
                }
                next.entry(canonical_code(&h)).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    level
}

pub const MAX_ISOMORPH_FREE_ORDER: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyConfig {
    /// Hosts with more triangles than this are skipped.
    pub triangle_budget: usize,
    /// Random `G(N,1/2)` candidates tried per order above the isomorph-free
    /// range.
    pub random_candidates: usize,
    pub seed: u64,
}

impl Default for RamseyConfig {
    fn default() -> Self {
        RamseyConfig {
            triangle_budget: DEFAULT_TRIANGLE_BUDGET,
            random_candidates: 50,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSummary {
    pub order: usize,
    pub hosts_checked: usize,
    /// Hosts over the triangle budget, left undecided.
    pub hosts_skipped: usize,
    /// Every isomorphism class on this order was considered.
    pub isomorph_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyDeltaReport {
    pub value: Option<usize>,
    pub host: Option<Graph>,
    /// The value is the true minimum: every smaller order was searched over
    /// all isomorphism classes with nothing skipped.
    pub exact: bool,
    pub vacuous_triangle_condition: bool,
    pub orders: Vec<OrderSummary>,
}

/// The least `N ≤ max_n` admitting a host `G` on `N` vertices with
/// `G ⇒ (F)^Δ`, searched over isomorphism classes up to 7 vertices and over
/// random and complete candidates beyond.
pub fn ramsey_delta_number(
    f: &Graph,
    max_n: usize,
    cfg: &RamseyConfig,
) -> Result<RamseyDeltaReport> {
    let mut report = RamseyDeltaReport {
        value: None,
        host: None,
        exact: true,
        vacuous_triangle_condition: triangles(f).is_empty(),
        orders: Vec::new(),
    };
    for n in f.order().max(1)..=max_n {
        let isomorph_free = n <= MAX_ISOMORPH_FREE_ORDER;
        let candidates = if isomorph_free {
            graphs_up_to_iso(n)
        } else {
            let mut c = vec![Graph::complete(n)];
            c.extend((0..cfg.random_candidates).map(|i| {
                crate::randmod::gen_gnp(n, 0.5, crate::rng::mix64(cfg.seed ^ i as u64))
                    .expect("valid G(n,1/2) parameters")
            }));
            c
        };
        let mut summary = OrderSummary {
            order: n,
            hosts_checked: 0,
            hosts_skipped: 0,
            isomorph_free,
        };
        let mut winner = None;
        for g in candidates {
            if triangles(&g).len() > cfg.triangle_budget {
                summary.hosts_skipped += 1;
                continue;
            }
            summary.hosts_checked += 1;
            if find_induced_copy(f, &g).is_none() {
                continue;
            }
            let mode = ArrowMode::Exhaustive {
                budget: cfg.triangle_budget,
            };
            if arrow_check(&g, f, mode, false)?.holds == Holds::Yes {
                winner = Some(g);
                break;
            }
        }
        let clean = summary.isomorph_free && summary.hosts_skipped == 0;
        report.orders.push(summary);
        if let Some(g) = winner {
            report.value = Some(n);
            report.host = Some(g);
            return Ok(report);
        }
        report.exact &= clean;
    }
    report.exact = false;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_minus_e() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn trivial_arrows() {
        let k3 = Graph::complete(3);
        assert_eq!(
            arrow_check(&k3, &k3, ArrowMode::default(), false)
                .unwrap()
                .holds,
            Holds::Yes
        );
        let k4 = Graph::complete(4);
        assert_eq!(
            arrow_check(&k4, &k3, ArrowMode::default(), true)
                .unwrap()
                .holds,
            Holds::Yes
        );
        let f = k4_minus_e();
        let v = arrow_check(&f, &f, ArrowMode::default(), false).unwrap();
        assert_eq!(v.holds, Holds::No);
        let chi = v.refutation.unwrap();
        assert_ne!(chi.color_at(0), chi.color_at(1));
    }

    #[test]
    fn adversarial_finds_the_two_triangle_refutation() {
        let f = k4_minus_e();
        let mode = ArrowMode::Adversarial {
            restarts: 4,
            steps: 20,
            seed: 3,
        };
        assert_eq!(arrow_check(&f, &f, mode, false).unwrap().holds, Holds::No);
    }

    #[test]
    fn good_copies() {
        let k3 = Graph::complete(3);
        let chi = TriangleColoring::constant(triangles(&k3), Color::Blue);
        let copy = find_good_copy(&k3, &k3, &chi).unwrap().unwrap();
        assert_eq!(copy.color, Some(Color::Blue));
        assert!(verify_good_copy(&k3, &k3, &chi, &copy.map));
        let c5 = Graph::cycle(5);
        let empty = TriangleColoring::constant(triangles(&c5), Color::Red);
        assert!(find_good_copy(&c5, &k3, &empty).unwrap().is_none());
    }

    #[test]
    fn strongly_induced() {
        let k = TripleSystem::new(3, [[0, 1, 2]]).unwrap();
        let exact = TripleSystem::new(4, [[0, 1, 2]]).unwrap();
        assert!(strongly_induced_check(&exact, &k, &[0, 1, 2]));
        let leaky = TripleSystem::new(4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert!(!strongly_induced_check(&leaky, &k, &[0, 1, 2]));
        let k5 = triangles(&Graph::complete(5));
        let k4 = triangles(&Graph::complete(4));
        assert!(!strongly_induced_check(&k5, &k4, &[0, 1, 2, 3]));
    }

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn tiny_ramsey_values() {
        let cfg = RamseyConfig::default();
        let r = ramsey_delta_number(&Graph::complete(3), 4, &cfg).unwrap();
        assert_eq!((r.value, r.exact), (Some(3), true));
        let r = ramsey_delta_number(&Graph::path(3), 4, &cfg).unwrap();
        assert_eq!(r.value, Some(3));
        assert!(r.vacuous_triangle_condition);
    }
}
