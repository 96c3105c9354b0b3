//! Transversal embeddings of a graph `F` together with a linear triangle
//! system `T ⊆ K₃(F)` into an `n`-partite graph `G` and triple system `H`.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partite::PartiteFamily;
use crate::rational::{fmt_q, serde_q, Q};
use crate::regularize::{find_sparse_tuple, ScanMode, Violation};
use crate::rng::stream;
use crate::triples::{triangles, triple, TripleSystem};
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `F` on `[n]`, `T ⊆ K₃(F)`, an `n`-partite graph given as a 2-uniform
/// family over blocks `V₁,…,V_n`, and `H ⊆ K₃(G)` made of transversal
/// triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct SystemInstance {
    pattern: Graph,
    system: TripleSystem,
    host: PartiteFamily,
    hyper: TripleSystem,
    graph: Graph,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    pattern: Graph,
    system: TripleSystem,
    host: PartiteFamily,
    hyper: TripleSystem,
}

impl TryFrom<RawInstance> for SystemInstance {
    type Error = Error;
    fn try_from(r: RawInstance) -> Result<Self> {
        SystemInstance::new(r.pattern, r.system, r.host, r.hyper)
    }
}

impl From<SystemInstance> for RawInstance {
    fn from(s: SystemInstance) -> Self {
        RawInstance {
            pattern: s.pattern,
            system: s.system,
            host: s.host,
            hyper: s.hyper,
        }
    }
}

impl SystemInstance {
    pub fn new(
        pattern: Graph,
        system: TripleSystem,
        host: PartiteFamily,
        hyper: TripleSystem,
    ) -> Result<Self> {
        let n = pattern.order();
        if system.order() != n {
            return Err(Error::InvalidInput(
                "T and F have different vertex counts".into(),
            ));
        }
        let k3 = triangles(&pattern);
        if let Some(t) = system.edges().iter().find(|t| !k3.contains(t)) {
            return Err(Error::InvalidInput(format!(
                "T edge {t:?} is not a triangle of F"
            )));
        }
        if host.uniformity() != 2 || host.blocks().len() != n {
            return Err(Error::InvalidInput(format!(
                "host must be a 2-uniform family on {n} blocks"
            )));
        }
        let mut graph = Graph::empty(host.order());
        for e in host.edges() {
            graph.add_edge(e[0], e[1]);
        }
        if hyper.order() != host.order() {
            return Err(Error::InvalidInput(
                "H and G have different vertex counts".into(),
            ));
        }
        for t in hyper.edges() {
            let bs: Vec<Option<usize>> = t.iter().map(|&v| host.block_of(v)).collect();
            let transversal = bs.iter().all(Option::is_some)
                && bs[0] != bs[1]
                && bs[0] != bs[2]
                && bs[1] != bs[2];
            if !transversal {
                return Err(Error::InvalidInput(format!(
                    "H edge {t:?} is not transversal"
                )));
            }
            if !(graph.has_edge(t[0], t[1])
                && graph.has_edge(t[0], t[2])
                && graph.has_edge(t[1], t[2]))
            {
                return Err(Error::InvalidInput(format!(
                    "H edge {t:?} is not a triangle of G"
                )));
            }
        }
        Ok(SystemInstance {
            pattern,
            system,
            host,
            hyper,
            graph,
        })
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn system(&self) -> &TripleSystem {
        &self.system
    }

    pub fn host(&self) -> &PartiteFamily {
        &self.host
    }

    pub fn hyper(&self) -> &TripleSystem {
        &self.hyper
    }

    /// The host family as a plain graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.pattern.order()
    }

    /// Same instance with a different `T` (must still lie in `K₃(F)`).
    pub fn with_system(&self, system: TripleSystem) -> Result<Self> {
        SystemInstance::new(
            self.pattern.clone(),
            system,
            self.host.clone(),
            self.hyper.clone(),
        )
    }

    /// Same instance with a different `H`.
    pub fn with_hyper(&self, hyper: TripleSystem) -> Result<Self> {
        SystemInstance::new(
            self.pattern.clone(),
            self.system.clone(),
            self.host.clone(),
            hyper,
        )
    }

    /// A random instance: consecutive blocks of `block_size`, each cross
    /// pair an edge with probability `p_edge`, each transversal triangle of
    /// `G` kept in `H` with probability `p_triple`.
    pub fn random(
        pattern: Graph,
        system: TripleSystem,
        block_size: usize,
        p_edge: f64,
        p_triple: f64,
        seed: u64,
    ) -> Result<Self> {
        let n = pattern.order();
        let order = n * block_size;
        let blocks: Vec<Vec<usize>> = (0..n)
            .map(|i| (i * block_size..(i + 1) * block_size).collect())
            .collect();
        let mut rng = stream(seed, 0);
        let mut edges = Vec::new();
        for u in 0..order {
            for v in u + 1..order {
                if u / block_size != v / block_size && rng.gen_bool(p_edge) {
                    edges.push(vec![u, v]);
                }
            }
        }
        let host = PartiteFamily::new(order, blocks, 2, edges)?;
        let mut g = Graph::empty(order);
        for e in host.edges() {
            g.add_edge(e[0], e[1]);
        }
        let kept: Vec<_> = triangles(&g)
            .edges()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(p_triple))
            .collect();
        let hyper = TripleSystem::new(order, kept)?;
        SystemInstance::new(pattern, system, host, hyper)
    }

    fn blocks_as_sets(&self) -> Vec<VertexSet> {
        self.host
            .blocks()
            .iter()
            .map(|b| VertexSet::from_iter(self.host.order(), b.iter().copied()))
            .collect()
    }

    fn check_budget(&self, budget: u128) -> Result<()> {
        let total = self
            .host
            .blocks()
            .iter()
            .fold(1u128, |a, b| a.saturating_mul(b.len() as u128));
        if total > budget {
            return Err(Error::budget("transversal maps", total, budget));
        }
        Ok(())
    }
}

/// `x_i ↦ map[i] ∈ V_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub map: Vec<usize>,
}

/// Induced adjacency equality plus `T`-edge membership in `H`.
pub fn verify_system_embedding(inst: &SystemInstance, w: &EmbeddingWitness) -> bool {
    let n = inst.n();
    if w.map.len() != n {
        return false;
    }
    for (i, &v) in w.map.iter().enumerate() {
        if inst.host.block_of(v) != Some(i) {
            return false;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if inst.pattern.has_edge(i, j) != inst.graph.has_edge(w.map[i], w.map[j]) {
                return false;
            }
        }
    }
    inst.system.edges().iter().all(|t| {
        inst.hyper
            .contains(&triple(w.map[t[0]], w.map[t[1]], w.map[t[2]]))
    })
}

pub const DEFAULT_TRANSVERSAL_BUDGET: u128 = 100_000_000;

/// Transversal maps inducing `F`, counted by plain enumeration of
/// `V₁ × ⋯ × V_n`.
pub fn count_transversal_induced(
    pattern: &Graph,
    host: &PartiteFamily,
    budget: u128,
) -> Result<u128> {
    let inst = SystemInstance::new(
        pattern.clone(),
        TripleSystem::empty(pattern.order()),
        host.clone(),
        TripleSystem::empty(host.order()),
    )?;
    inst.check_budget(budget)?;
    let n = inst.n();
    let blocks = inst.host.blocks();
    if n == 0 {
        return Ok(1);
    }
    let total: u128 = blocks[1..].iter().map(|b| b.len() as u128).product();
    Ok(blocks[0]
        .par_iter()
        .map(|&first| {
            let mut count = 0u128;
            let mut map = vec![first; n];
            for mut idx in 0..total {
                for i in (1..n).rev() {
                    let len = blocks[i].len() as u128;
                    map[i] = blocks[i][(idx % len) as usize];
                    idx /= len;
                }
                let induced = (0..n).all(|i| {
                    (i + 1..n)
                        .all(|j| pattern.has_edge(i, j) == inst.graph.has_edge(map[i], map[j]))
                });
                count += induced as u128;
            }
            count
        })
        .sum())
}

struct Search<'a> {
    inst: &'a SystemInstance,
    blocks: Vec<VertexSet>,
    /// For each pattern vertex, the `T` edges through it.
    through: Vec<Vec<[usize; 2]>>,
    map: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a SystemInstance) -> Self {
        let n = inst.n();
        let mut through = vec![Vec::new(); n];
        for t in inst.system.edges() {
            through[t[0]].push([t[1], t[2]]);
            through[t[1]].push([t[0], t[2]]);
            through[t[2]].push([t[0], t[1]]);
        }
        Search {
            inst,
            blocks: inst.blocks_as_sets(),
            through,
            map: vec![None; n],
        }
    }

    /// Images for `i` consistent with the partial map.
    fn candidates(&self, i: usize) -> VertexSet {
        let g = &self.inst.graph;
        let mut c = self.blocks[i].clone();
        for (j, img) in self.map.iter().enumerate() {
            if let Some(v) = *img {
                if self.inst.pattern.has_edge(i, j) {
                    c.intersect_with(g.neighbors(v));
                } else {
                    c.difference_with(g.neighbors(v));
                }
            }
        }
        for &[a, b] in &self.through[i] {
            if let (Some(x), Some(y)) = (self.map[a], self.map[b]) {
                for v in c.clone().iter() {
                    if !self.inst.hyper.contains(&triple(v, x, y)) {
                        c.remove(v);
                    }
                }
            }
        }
        c
    }

    /// Unassigned vertex with the fewest candidates (smallest index on ties).
    fn most_constrained(&self) -> Option<(usize, VertexSet)> {
        let mut best: Option<(usize, VertexSet)> = None;
        for i in 0..self.map.len() {
            if self.map[i].is_some() {
                continue;
            }
            let c = self.candidates(i);
            if best.as_ref().is_none_or(|(_, b)| c.len() < b.len()) {
                best = Some((i, c));
            }
        }
        best
    }

    fn count(&mut self) -> u128 {
        let Some((i, cand)) = self.most_constrained() else {
            return 1;
        };
        let mut total = 0;
        for v in cand.iter() {
            self.map[i] = Some(v);
            total += self.count();
        }
        self.map[i] = None;
        total
    }

    fn find(&mut self, deepest: &mut Vec<Option<usize>>) -> bool {
        let depth = self.map.iter().flatten().count();
        if depth > deepest.iter().flatten().count() {
            deepest.clone_from(&self.map);
        }
        let Some((i, cand)) = self.most_constrained() else {
            return true;
        };
        for v in cand.iter() {
            self.map[i] = Some(v);
            if self.find(deepest) {
                return true;
            }
        }
        self.map[i] = None;
        false
    }
}

/// Copies of the system `(F, T)`: transversal, induced in `G`, with every
/// `T` edge landing in `H`. Counted by most-constrained-first search with
/// candidate filtering.
pub fn count_system_copies(inst: &SystemInstance, budget: u128) -> Result<u128> {
    inst.check_budget(budget)?;
    if inst.n() == 0 {
        return Ok(1);
    }
    let first = inst.host.blocks()[0].clone();
    Ok(first
        .par_iter()
        .map(|&v| {
            let mut s = Search::new(inst);
            s.map[0] = Some(v);
            s.count()
        })
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisStatus {
    /// `ε < d^{n²}`, when both were supplied.
    pub epsilon_below_d_power: Option<bool>,
    /// `|V_i| > 1/ε` for every block, when `ε` was supplied.
    pub blocks_exceed_inverse_epsilon: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum EmbedOutcome {
    Found {
        witness: EmbeddingWitness,
        hypotheses: HypothesisStatus,
    },
    Failed {
        /// The largest partial map reached (`null` for unplaced vertices).
        deepest: Vec<Option<usize>>,
        hypotheses: HypothesisStatus,
    },
}

type BigQ = Ratio<BigUint>;

fn big(q: &Q) -> BigQ {
    BigQ::new(BigUint::from(*q.numer()), BigUint::from(*q.denom()))
}

fn hypothesis_status(
    inst: &SystemInstance,
    epsilon: Option<&Q>,
    d: Option<&Q>,
) -> HypothesisStatus {
    let n = inst.n();
    HypothesisStatus {
        epsilon_below_d_power: match (epsilon, d) {
            (Some(e), Some(d)) => {
                let pow = (0..n * n).fold(BigQ::one(), |a, _| a * big(d));
                Some(big(e) < pow)
            }
            _ => None,
        },
        blocks_exceed_inverse_epsilon: epsilon.map(|e| {
            inst.host
                .blocks()
                .iter()
                .all(|b| Q::from_integer(b.len() as u128) * *e > Q::one())
        }),
    }
}

/// Backtracking embedder for linear `T`. The counting-bound hypotheses
/// are recorded but not required.
pub fn greedy_embed(
    inst: &SystemInstance,
    epsilon: Option<&Q>,
    d: Option<&Q>,
) -> Result<EmbedOutcome> {
    if let Some((a, b)) = inst.system.linearity_violation() {
        return Err(Error::NotLinear(a, b));
    }
    let hypotheses = hypothesis_status(inst, epsilon, d);
    let mut s = Search::new(inst);
    let mut deepest = vec![None; inst.n()];
    if s.find(&mut deepest) {
        let witness = EmbeddingWitness {
            map: s.map.iter().map(|v| v.expect("complete map")).collect(),
        };
        if !verify_system_embedding(inst, &witness) {
            return Err(Error::Internal(format!(
                "embedding {:?} fails verification",
                witness.map
            )));
        }
        Ok(EmbedOutcome::Found {
            witness,
            hypotheses,
        })
    } else {
        Ok(EmbedOutcome::Failed {
            deepest,
            hypotheses,
        })
    }
}

/// Sub-blocks `A ⊆ V_i`, `B ⊆ V_j` whose density is at least `ε` away from
/// `1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularPair {
    pub blocks: [usize; 2],
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    #[serde(with = "serde_q")]
    pub density: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseTriple {
    pub blocks: [usize; 3],
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    #[serde(with = "serde_q")]
    pub epsilon: Q,
    #[serde(with = "serde_q")]
    pub d: Q,
    pub block_sizes: Vec<usize>,
    pub system_edges: usize,
    /// Every block pair `(ε,1/2)`-regular and every block triple
    /// `(ε,d)`-dense, both established by exhaustive scans.
    pub hypotheses_hold: bool,
    pub irregular_pair: Option<IrregularPair>,
    pub sparse_triple: Option<SparseTriple>,
    pub side_conditions: HypothesisStatus,
    pub exact_count: u128,
    /// `(1−ε)(d/2)^{e(T)}(1/2)^{C(n,2)}Π|V_i|` as an exact fraction.
    pub lower_bound: String,
    pub lower_bound_value: f64,
    pub count_meets_bound: bool,
}

/// Exhaustive `(ε,1/2)`-regularity check of `(X, Y)`: for each `A ⊆ X` with
/// `|A| ≥ ⌈ε|X|⌉`, the extreme densities over large `B ⊆ Y` come from the
/// vertices of `Y` with the fewest and most neighbours in `A`.
pub fn find_irregular_subpair(
    g: &Graph,
    x: &[usize],
    y: &[usize],
    epsilon: &Q,
    budget: u128,
) -> Result<Option<(Vec<usize>, Vec<usize>, Q)>> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyBlock(0));
    }
    if x.len() > 64 {
        return Err(Error::InvalidInput(
            "regularity scans support blocks of at most 64 vertices".into(),
        ));
    }
    let ka = crate::rational::ceil_mul(epsilon, x.len()).max(1);
    let kb = crate::rational::ceil_mul(epsilon, y.len()).max(1);
    let count: u128 = (ka..=x.len())
        .map(|s| crate::randmod::binomial(x.len() as u128, s as u128))
        .fold(0, |a, b| a.saturating_add(b));
    if count > budget {
        return Err(Error::budget("regularity subsets", count, budget));
    }
    let half = Q::new(1, 2);
    let subsets: Vec<Vec<usize>> = (ka..=x.len())
        .flat_map(|s| crate::randmod::combinations(x.len(), s))
        .collect();
    let probe = |sub: &Vec<usize>| -> Option<(Vec<usize>, Vec<usize>, Q)> {
        let a: Vec<usize> = sub.iter().map(|&i| x[i]).collect();
        let set = VertexSet::from_iter(g.order(), a.iter().copied());
        let mut counts: Vec<(usize, usize)> = y
            .iter()
            .map(|&v| (g.neighbors(v).intersection_len(&set), v))
            .collect();
        counts.sort_unstable();
        let denom = (a.len() * kb) as u128;
        let low: usize = counts[..kb].iter().map(|c| c.0).sum();
        let high: usize = counts[counts.len() - kb..].iter().map(|c| c.0).sum();
        let lo = Q::new(low as u128, denom);
        let hi = Q::new(high as u128, denom);
        if half - lo.min(half) >= *epsilon {
            let mut b: Vec<usize> = counts[..kb].iter().map(|c| c.1).collect();
            b.sort_unstable();
            return Some((a, b, lo));
        }
        if hi - hi.min(half) >= *epsilon {
            let mut b: Vec<usize> = counts[counts.len() - kb..].iter().map(|c| c.1).collect();
            b.sort_unstable();
            return Some((a, b, hi));
        }
        None
    };
    Ok(subsets.par_iter().find_map_first(probe))
}

/// Checks the counting hypotheses exhaustively and compares the exact
/// number of system copies with the lower bound.
pub fn check_counting_bound(
    inst: &SystemInstance,
    epsilon: &Q,
    d: &Q,
    budget: u128,
) -> Result<CountingReport> {
    if epsilon.is_zero() || *epsilon >= Q::one() || d.is_zero() || *d > Q::one() {
        return Err(Error::InvalidInput("need 0 < ε < 1 and 0 < d ≤ 1".into()));
    }
    let n = inst.n();
    let blocks = inst.host.blocks();
    let mut irregular_pair = None;
    'pairs: for i in 0..n {
        for j in i + 1..n {
            if let Some((a, b, density)) =
                find_irregular_subpair(&inst.graph, &blocks[i], &blocks[j], epsilon, budget)?
            {
                irregular_pair = Some(IrregularPair {
                    blocks: [i, j],
                    a,
                    b,
                    density,
                });
                break 'pairs;
            }
        }
    }
    let mut sparse_triple = None;
    'triples: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let sub = vec![blocks[i].clone(), blocks[j].clone(), blocks[k].clone()];
                let edges: Vec<Vec<usize>> = inst
                    .hyper
                    .edges()
                    .iter()
                    .filter(|t| t.iter().all(|&v| matches!(inst.host.block_of(v), Some(b) if b == i || b == j || b == k)))
                    .map(|t| t.to_vec())
                    .collect();
                let fam = PartiteFamily::new(inst.host.order(), sub.clone(), 3, edges)?;
                let scan =
                    find_sparse_tuple(&fam, &sub, epsilon, d, ScanMode::Exhaustive { budget })?;
                if let Some(v) = scan.violation() {
                    sparse_triple = Some(SparseTriple {
                        blocks: [i, j, k],
                        violation: v.clone(),
                    });
                    break 'triples;
                }
            }
        }
    }
    let exact_count = count_system_copies(inst, budget)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let mut bound = (BigQ::one() - big(epsilon))
        * BigQ::from_integer(blocks.iter().map(|b| BigUint::from(b.len())).product());
    for _ in 0..inst.system.len() {
        bound = bound * big(d) / BigQ::from_integer(BigUint::from(2u32));
    }
    for _ in 0..pairs {
        bound /= BigQ::from_integer(BigUint::from(2u32));
    }
    let count_meets_bound = BigQ::from_integer(BigUint::from(exact_count)) >= bound;
    let lower_bound_value = big_to_f64(&bound);
    let lower_bound = if bound.is_zero() {
        "0".to_string()
    } else {
        format!("{}/{}", bound.numer(), bound.denom())
    };
    Ok(CountingReport {
        epsilon: *epsilon,
        d: *d,
        block_sizes: blocks.iter().map(Vec::len).collect(),
        system_edges: inst.system.len(),
        hypotheses_hold: irregular_pair.is_none() && sparse_triple.is_none(),
        irregular_pair,
        sparse_triple,
        side_conditions: hypothesis_status(inst, Some(epsilon), Some(d)),
        exact_count,
        lower_bound,
        lower_bound_value,
        count_meets_bound,
    })
}

fn big_to_f64(q: &BigQ) -> f64 {
    use num_traits::ToPrimitive;
    // Scale down so both parts fit comfortably in an f64.
    let shift = q.denom().bits().max(q.numer().bits()).saturating_sub(1000);
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Formats the exact lower bound for messages.
pub fn describe_bound(report: &CountingReport) -> String {
    format!(
        "count {} vs bound {} (ε = {}, d = {})",
        report.exact_count,
        report.lower_bound,
        fmt_q(&report.epsilon),
        fmt_q(&report.d)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_partite(n: usize, size: usize) -> PartiteFamily {
        let blocks: Vec<Vec<usize>> = (0..n)
            .map(|i| (i * size..(i + 1) * size).collect())
            .collect();
        let mut edges = vec![];
        for u in 0..n * size {
            for v in u + 1..n * size {
                if u / size != v / size {
                    edges.push(vec![u, v]);
                }
            }
        }
        PartiteFamily::new(n * size, blocks, 2, edges).unwrap()
    }

    #[test]
    fn transversal_counts() {
        let edge = Graph::complete(2);
        assert_eq!(
            count_transversal_induced(&edge, &complete_partite(2, 3), 1000).unwrap(),
            9
        );
        let blocks = vec![vec![0, 1, 2], vec![3, 4, 5]];
        let none = PartiteFamily::new(6, blocks, 2, vec![]).unwrap();
        assert_eq!(
            count_transversal_induced(&Graph::empty(2), &none, 1000).unwrap(),
            9
        );
        let k3 = Graph::complete(3);
        assert_eq!(
            count_transversal_induced(&k3, &complete_partite(3, 2), 1000).unwrap(),
            8
        );
        assert!(count_transversal_induced(&k3, &complete_partite(3, 2), 7).is_err());
    }

    fn triangle_instance(all: bool) -> SystemInstance {
        let f = Graph::complete(3);
        let t = triangles(&f);
        let host = complete_partite(3, 2);
        let mut g = Graph::empty(6);
        for e in host.edges() {
            g.add_edge(e[0], e[1]);
        }
        let h = if all {
            triangles(&g)
        } else {
            TripleSystem::empty(6)
        };
        SystemInstance::new(f, t, host, h).unwrap()
    }

    #[test]
    fn triangle_system_embeds() {
        let inst = triangle_instance(true);
        assert_eq!(count_system_copies(&inst, 1000).unwrap(), 8);
        let EmbedOutcome::Found { witness, .. } = greedy_embed(&inst, None, None).unwrap() else {
            panic!()
        };
        assert!(verify_system_embedding(&inst, &witness));
        let empty = triangle_instance(false);
        assert_eq!(count_system_copies(&empty, 1000).unwrap(), 0);
        assert!(matches!(
            greedy_embed(&empty, None, None).unwrap(),
            EmbedOutcome::Failed { .. }
        ));
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = triangle_instance(true);
        let json = serde_json::to_string(&inst).unwrap();
        let back: SystemInstance = serde_json::from_str(&json).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn complete_host_is_irregular() {
        let f = Graph::complete(3);
        let inst = SystemInstance::new(
            f.clone(),
            triangles(&f),
            complete_partite(3, 2),
            TripleSystem::empty(6),
        )
        .unwrap();
        let rep = check_counting_bound(&inst, &Q::new(1, 4), &Q::new(1, 8), 1 << 30).unwrap();
        assert!(!rep.hypotheses_hold);
        let pair = rep.irregular_pair.unwrap();
        assert_eq!(pair.density, Q::one());
    }
}
