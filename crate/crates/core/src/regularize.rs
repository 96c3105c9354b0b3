//! Weak regularization of `r`-partite `r`-graphs by density increment, the
//! `(ε,d)`-dense checker, the monochromatic clique hypergraph `H_n` and its
//! projection to triples.

use crate::bitset::VertexSet;
use crate::coloring::{Color, TriangleColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partite::{full_mask, LocalView, PartiteFamily};
use crate::rational::{ceil_mul, fmt_q, serde_q, serde_q_vec, to_f64, Q};
use crate::rng::stream;
use crate::triples::{triple, Triple, TripleSystem};
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ScanMode {
    /// Every sub-tuple is examined; refuses when the number of candidate
    /// prefixes exceeds `budget`.
    Exhaustive { budget: u128 },
    /// Greedy deletion from the full tuple and from `restarts` random
    /// starting tuples; may miss sparse tuples.
    Heuristic { restarts: u32, seed: u64 },
}

impl ScanMode {
    pub const DEFAULT_BUDGET: u128 = 100_000_000;

    pub fn exhaustive() -> Self {
        ScanMode::Exhaustive {
            budget: Self::DEFAULT_BUDGET,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, ScanMode::Exhaustive { .. })
    }
}

/// Sub-blocks `W_i ⊆ U_i` with `|W_i| ≥ ⌈ε|U_i|⌉` and density below the
/// threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub blocks: Vec<Vec<usize>>,
    pub edges: u64,
    #[serde(with = "serde_q")]
    pub density: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum ScanResult {
    Found(Violation),
    /// Exhaustive scan: no violation exists.
    Absent,
    /// Heuristic scan: none was found.
    NotFound,
}

impl ScanResult {
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            ScanResult::Found(v) => Some(v),
            _ => None,
        }
    }
}

/// Looks for `W_i ⊆ U_i`, `|W_i| ≥ ε|U_i|`, with `d(W₁,…,W_r) < d/2`.
pub fn find_violation(
    family: &PartiteFamily,
    blocks: &[Vec<usize>],
    epsilon: &Q,
    d: &Q,
    mode: ScanMode,
) -> Result<ScanResult> {
    check_params(epsilon, d)?;
    find_sparse_tuple(family, blocks, epsilon, &(*d / Q::from_integer(2)), mode)
}

fn check_params(epsilon: &Q, d: &Q) -> Result<()> {
    if epsilon.is_zero() || *epsilon >= Q::one() {
        return Err(Error::InvalidInput(format!(
            "epsilon must lie in (0,1), got {}",
            fmt_q(epsilon)
        )));
    }
    if d.is_zero() || *d > Q::one() {
        return Err(Error::InvalidInput(format!(
            "d must lie in (0,1], got {}",
            fmt_q(d)
        )));
    }
    Ok(())
}

/// Sub-tuple search with an arbitrary density threshold `theta`: finds
/// `|W_i| ≥ ⌈ε|U_i|⌉` with `d(W) < theta`.
pub fn find_sparse_tuple(
    family: &PartiteFamily,
    blocks: &[Vec<usize>],
    epsilon: &Q,
    theta: &Q,
    mode: ScanMode,
) -> Result<ScanResult> {
    let view = LocalView::new(family, blocks)?;
    let mins: Vec<usize> = (0..view.r())
        .map(|i| ceil_mul(epsilon, view.size(i)).max(1))
        .collect();
    let found = match mode {
        ScanMode::Exhaustive { budget } => exhaustive_scan(&view, &mins, theta, budget)?,
        ScanMode::Heuristic { restarts, seed } => {
            heuristic_scan(&view, &mins, theta, restarts, seed)
        }
    };
    Ok(match found {
        Some(masks) => {
            let edges = view.count(&masks);
            let prod: u128 = masks.iter().map(|m| m.count_ones() as u128).product();
            let density = Q::new(edges as u128, prod);
            if density >= *theta {
                return Err(Error::Internal("reported tuple is not sparse".into()));
            }
            ScanResult::Found(Violation {
                blocks: masks
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| view.globals(i, m))
                    .collect(),
                edges,
                density,
            })
        }
        None if mode.is_exhaustive() => ScanResult::Absent,
        None => ScanResult::NotFound,
    })
}

/// Masks over `k` bits with at least `min` bits set, ordered by size then
/// value.
fn masks_at_least(k: usize, min: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for size in min..=k {
        for c in crate::randmod::combinations(k, size) {
            out.push(c.iter().fold(0u64, |m, &b| m | 1 << b));
        }
    }
    out
}

fn subset_count(k: usize, min: usize) -> u128 {
    (min..=k)
        .map(|s| crate::randmod::binomial(k as u128, s as u128))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Enumerates `W₁,…,W_{r−1}` and optimises the last block directly: the
/// smallest average of per-vertex counts over sets of size `≥ m` is always
/// attained by the `m` smallest counts.
fn exhaustive_scan(
    view: &LocalView,
    mins: &[usize],
    theta: &Q,
    budget: u128,
) -> Result<Option<Vec<u64>>> {
    let r = view.r();
    let head = r - 1;
    let total = (0..head)
        .map(|i| subset_count(view.size(i), mins[i]))
        .fold(1u128, |a, b| a.saturating_mul(b));
    if total > budget {
        return Err(Error::budget("sub-tuples", total, budget));
    }
    let lists: Vec<Vec<u64>> = (0..head)
        .map(|i| masks_at_least(view.size(i), mins[i]))
        .collect();
    let last = view.size(head);
    let m = mins[head];
    let probe = |idx: usize| -> Option<Vec<u64>> {
        let mut masks = vec![0u64; r];
        let mut rest = idx;
        for i in (0..head).rev() {
            masks[i] = lists[i][rest % lists[i].len()];
            rest /= lists[i].len();
        }
        let mut counts = vec![0u64; last];
        for e in &view.edges {
            if (0..head).all(|i| masks[i] >> e[i] & 1 == 1) {
                counts[e[head] as usize] += 1;
            }
        }
        let mut order: Vec<usize> = (0..last).collect();
        order.sort_by_key(|&v| (counts[v], v));
        let sum: u64 = order[..m].iter().map(|&v| counts[v]).sum();
        let prod: u128 = masks[..head]
            .iter()
            .map(|w| w.count_ones() as u128)
            .product::<u128>()
            * m as u128;
        if Q::new(sum as u128, prod) < *theta {
            masks[head] = order[..m].iter().fold(0u64, |a, &v| a | 1 << v);
            Some(masks)
        } else {
            None
        }
    };
    Ok((0..total as usize).into_par_iter().find_map_first(probe))
}

fn density_of(view: &LocalView, masks: &[u64]) -> Q {
    let prod: u128 = masks.iter().map(|m| m.count_ones() as u128).product();
    Q::new(view.count(masks) as u128, prod)
}

/// Greedy deletion: repeatedly drop the vertex whose removal gives the
/// smallest density, while every block stays at or above its minimum size.
fn greedy_descent(
    view: &LocalView,
    mins: &[usize],
    theta: &Q,
    mut masks: Vec<u64>,
) -> Option<Vec<u64>> {
    loop {
        if density_of(view, &masks) < *theta {
            return Some(masks);
        }
        let mut best: Option<(Q, usize, u32)> = None;
        for i in 0..view.r() {
            if (masks[i].count_ones() as usize) <= mins[i] {
                continue;
            }
            for b in 0..view.size(i) as u32 {
                if masks[i] >> b & 1 == 0 {
                    continue;
                }
                masks[i] &= !(1 << b);
                let dens = density_of(view, &masks);
                masks[i] |= 1 << b;
                if best.as_ref().is_none_or(|(q, _, _)| dens < *q) {
                    best = Some((dens, i, b));
                }
            }
        }
        let (_, i, b) = best?;
        masks[i] &= !(1 << b);
    }
}

fn heuristic_scan(
    view: &LocalView,
    mins: &[usize],
    theta: &Q,
    restarts: u32,
    seed: u64,
) -> Option<Vec<u64>> {
    let r = view.r();
    let full: Vec<u64> = (0..r).map(|i| full_mask(view.size(i))).collect();
    if let Some(m) = greedy_descent(view, mins, theta, full) {
        return Some(m);
    }
    (0..restarts).into_par_iter().find_map_first(|k| {
        let mut rng = stream(seed, k as u64);
        let start: Vec<u64> = (0..r)
            .map(|i| {
                let size = rng.gen_range(mins[i]..=view.size(i));
                let picks = rand::seq::index::sample(&mut rng, view.size(i), size);
                picks.iter().fold(0u64, |a, v| a | 1 << v)
            })
            .collect();
        greedy_descent(view, mins, theta, start)
    })
}

/// One round of the increment loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncrementStep {
    pub violation: Vec<Vec<usize>>,
    #[serde(with = "serde_q")]
    pub violation_density: Q,
    /// `w ∈ {0,1}^r`: 0 keeps `W_i`, 1 keeps `U_i ∖ W_i`.
    pub vector: Vec<u8>,
    #[serde(with = "serde_q")]
    pub density_before: Q,
    #[serde(with = "serde_q")]
    pub density_after: Q,
    /// `density_after ≥ density_before·(1 + ε^r/2)`.
    pub gain_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseCertificate {
    /// The input family restricted to the final blocks `U₁,…,U_r`.
    pub family: PartiteFamily,
    pub original_sizes: Vec<usize>,
    #[serde(with = "serde_q")]
    pub epsilon: Q,
    #[serde(with = "serde_q")]
    pub d: Q,
    pub mode: ScanMode,
    /// False for heuristic runs: no density guarantee is claimed.
    pub guaranteed: bool,
    pub steps: usize,
    /// `⌈4·ln(1/d)/ε^r⌉`.
    pub step_bound: u64,
    /// `|U_i| / |V_i|`.
    #[serde(with = "serde_q_vec")]
    pub size_ratios: Vec<Q>,
    /// `d^{(4/ε^r)·ln(1/ε)}`.
    pub size_floor: f64,
    pub size_bound_holds: bool,
    #[serde(with = "serde_q")]
    pub final_density: Q,
    pub trace: Vec<IncrementStep>,
}

/// `⌈4·ln(1/d)/ε^r⌉`.
pub fn step_bound(epsilon: &Q, d: &Q, r: usize) -> u64 {
    let (e, d) = (to_f64(epsilon), to_f64(d));
    (4.0 * (1.0 / d).ln() / e.powi(r as i32)).ceil().max(0.0) as u64
}

/// `d^{(4/ε^r)·ln(1/ε)}`.
pub fn size_floor(epsilon: &Q, d: &Q, r: usize) -> f64 {
    let (e, d) = (to_f64(epsilon), to_f64(d));
    d.powf(4.0 / e.powi(r as i32) * (1.0 / e).ln())
}

fn pow_q(q: &Q, k: usize) -> Q {
    (0..k).fold(Q::one(), |a, _| a * *q)
}

/// Shrinks `V₁,…,V_r` until the tuple is `(ε, d/2)`-dense: while a sparse
/// sub-tuple `W` exists, split each block into `W_i` and `U_i ∖ W_i` and move
/// to the densest of the `2^r − 1` nonzero combinations.
pub fn density_increment(
    family: &PartiteFamily,
    blocks: &[Vec<usize>],
    epsilon: &Q,
    d: &Q,
    mode: ScanMode,
) -> Result<DenseCertificate> {
    check_params(epsilon, d)?;
    let r = blocks.len();
    let start = crate::partite::partite_density(family, blocks)?;
    if start < *d {
        return Err(Error::Precondition(format!(
            "initial density {} is below d = {}",
            fmt_q(&start),
            fmt_q(d)
        )));
    }
    let gain = Q::one() + pow_q(epsilon, r) / Q::from_integer(2);
    let bound = step_bound(epsilon, d, r);
    let mut cur: Vec<Vec<usize>> = blocks.iter().map(|b| sorted(b)).collect();
    let mut density = start;
    let mut trace = Vec::new();
    loop {
        let scan = find_violation(family, &cur, epsilon, d, mode)?;
        let Some(v) = scan.violation() else { break };
        if trace.len() as u64 >= bound {
            return Err(Error::Internal(format!(
                "a violation remains after {bound} increment steps"
            )));
        }
        let parts: Vec<[Vec<usize>; 2]> = cur
            .iter()
            .zip(&v.blocks)
            .map(|(u, w)| {
                let rest = u
                    .iter()
                    .copied()
                    .filter(|x| w.binary_search(x).is_err())
                    .collect();
                [w.clone(), rest]
            })
            .collect();
        let mut best: Option<(Q, Vec<u8>)> = None;
        for code in 1u64..1 << r {
            // Bit r−1−i of `code` is w_i, so increasing codes are increasing
            // vectors in lexicographic order.
            let vec: Vec<u8> = (0..r).map(|i| (code >> (r - 1 - i) & 1) as u8).collect();
            let tuple: Vec<Vec<usize>> =
                (0..r).map(|i| parts[i][vec[i] as usize].clone()).collect();
            if tuple.iter().any(Vec::is_empty) {
                continue;
            }
            let dens = crate::partite::partite_density(family, &tuple)?;
            if best.as_ref().is_none_or(|(b, _)| dens > *b) {
                best = Some((dens, vec));
            }
        }
        let (next, vector) =
            best.ok_or_else(|| Error::Internal("every nonzero split has an empty block".into()))?;
        let gain_holds = next >= density * gain;
        trace.push(IncrementStep {
            violation: v.blocks.clone(),
            violation_density: v.density,
            vector: vector.clone(),
            density_before: density,
            density_after: next,
            gain_holds,
        });
        if !gain_holds {
            return Err(Error::Internal(format!(
                "step {}: density {} → {} is below the guaranteed gain",
                trace.len(),
                fmt_q(&density),
                fmt_q(&next)
            )));
        }
        cur = (0..r)
            .map(|i| parts[i][vector[i] as usize].clone())
            .collect();
        density = next;
    }
    let size_ratios: Vec<Q> = cur
        .iter()
        .zip(blocks)
        .map(|(u, v)| Q::new(u.len() as u128, v.len() as u128))
        .collect();
    let floor = size_floor(epsilon, d, r);
    let size_bound_holds = size_ratios.iter().all(|q| to_f64(q) >= floor);
    Ok(DenseCertificate {
        family: family.restrict(&cur)?,
        original_sizes: blocks.iter().map(Vec::len).collect(),
        epsilon: *epsilon,
        d: *d,
        mode,
        guaranteed: mode.is_exhaustive(),
        steps: trace.len(),
        step_bound: bound,
        size_ratios,
        size_floor: floor,
        size_bound_holds,
        final_density: density,
        trace,
    })
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// What an independent re-check of a certificate found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub dense: bool,
    pub steps_within_bound: bool,
    pub gains_hold: bool,
    pub violation: Option<Violation>,
}

impl CertificateCheck {
    pub fn ok(&self) -> bool {
        self.dense && self.steps_within_bound && self.gains_hold
    }
}

/// Re-verifies a certificate from its contents alone: an exhaustive scan of
/// the stored family for a sparse sub-tuple, the step count, and every
/// recorded density gain.
pub fn verify_certificate(cert: &DenseCertificate, budget: u128) -> Result<CertificateCheck> {
    let blocks = cert.family.blocks().to_vec();
    let r = blocks.len();
    let scan = find_violation(
        &cert.family,
        &blocks,
        &cert.epsilon,
        &cert.d,
        ScanMode::Exhaustive { budget },
    )?;
    let gain = Q::one() + pow_q(&cert.epsilon, r) / Q::from_integer(2);
    let gains_hold = cert
        .trace
        .iter()
        .all(|s| s.density_after >= s.density_before * gain)
        && cert
            .trace
            .windows(2)
            .all(|w| w[0].density_after == w[1].density_before);
    Ok(CertificateCheck {
        dense: scan.violation().is_none(),
        steps_within_bound: cert.steps == cert.trace.len()
            && cert.steps as u64 <= step_bound(&cert.epsilon, &cert.d, r),
        gains_hold,
        violation: scan.violation().cloned(),
    })
}

/// All `n`-vertex cliques of `g` whose triangles all have color `c`, each
/// sorted, in lexicographic order.
pub fn build_clique_hypergraph(
    g: &Graph,
    chi: &TriangleColoring,
    n: usize,
    c: Color,
) -> Result<Vec<Vec<usize>>> {
    fn go(
        g: &Graph,
        chi: &TriangleColoring,
        n: usize,
        c: Color,
        cur: &mut Vec<usize>,
        cand: &VertexSet,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if cur.len() == n {
            out.push(cur.clone());
            return Ok(());
        }
        if cur.len() + cand.len() < n {
            return Ok(());
        }
        for v in cand.iter() {
            let mut ok = true;
            'pairs: for (a, &x) in cur.iter().enumerate() {
                for &y in &cur[a + 1..] {
                    let col = chi.color_of_vertices(x, y, v).ok_or_else(|| {
                        Error::InvalidInput(format!("coloring misses triangle {{{x},{y},{v}}}"))
                    })?;
                    if col != c {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut next = cand.intersection(g.neighbors(v));
            for u in cand.iter().take_while(|&u| u <= v) {
                next.remove(u);
            }
            cur.push(v);
            go(g, chi, n, c, cur, &next, out)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    if n == 0 {
        return Ok(vec![vec![]]);
    }
    go(
        g,
        chi,
        n,
        c,
        &mut Vec::new(),
        &VertexSet::full(g.order()),
        &mut out,
    )?;
    Ok(out)
}

/// The crossing edges of `H_n` with respect to `blocks` (one vertex in each
/// block) as an `n`-partite family.
pub fn crossing_family(
    order: usize,
    edges: &[Vec<usize>],
    blocks: &[Vec<usize>],
) -> Result<PartiteFamily> {
    let mut block_of = vec![usize::MAX; order];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            block_of[v] = i;
        }
    }
    let keep = edges
        .iter()
        .filter(|e| {
            let mut seen = vec![false; blocks.len()];
            e.len() == blocks.len()
                && e.iter().all(|&v| {
                    let b = block_of[v];
                    b != usize::MAX && !std::mem::replace(&mut seen[b], true)
                })
        })
        .cloned()
        .collect();
    PartiteFamily::new(order, blocks.to_vec(), blocks.len(), keep)
}

/// Triples contained in some edge of `H_n`; every edge must be transversal
/// with respect to `blocks`.
pub fn project_blue_triples(
    order: usize,
    edges: &[Vec<usize>],
    blocks: &[Vec<usize>],
) -> Result<TripleSystem> {
    let mut block_of = vec![usize::MAX; order];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if v >= order {
                return Err(Error::InvalidInput(format!("vertex {v} out of range")));
            }
            block_of[v] = i;
        }
    }
    let mut set: BTreeSet<Triple> = BTreeSet::new();
    for e in edges {
        let mut seen = BTreeSet::new();
        for &v in e {
            if v >= order || block_of[v] == usize::MAX || !seen.insert(block_of[v]) {
                return Err(Error::InvalidInput(format!(
                    "edge {e:?} is not transversal"
                )));
            }
        }
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                for c in b + 1..e.len() {
                    set.insert(triple(e[a], e[b], e[c]));
                }
            }
        }
    }
    TripleSystem::new(order, set)
}
