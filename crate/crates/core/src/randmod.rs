//! Random graphs, equitable partitions, property 𝒫 and the neighbourhood
//! concentration events used for tight-tree hosts.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{pair_stats, Adjacency, Graph, PairStats};
use crate::rng::{pair_hash, probability_cut, stream};
use num_bigint::BigUint;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `G(t, p)` that is never stored: `{u,v}` is an edge iff its pair hash
/// falls below `p·2⁶⁴`.
#[derive(Clone, Copy, Debug)]
pub struct ImplicitGnp {
    t: usize,
    cut: u128,
    seed: u64,
}

impl ImplicitGnp {
    pub fn new(t: usize, p: f64, seed: u64) -> Result<Self> {
        check_probability(p)?;
        Ok(ImplicitGnp {
            t,
            cut: probability_cut(p),
            seed,
        })
    }

    pub fn materialize(&self) -> Graph {
        let mut g = Graph::empty(self.t);
        for u in 0..self.t {
            for v in u + 1..self.t {
                if self.adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

impl Adjacency for ImplicitGnp {
    fn order(&self) -> usize {
        self.t
    }

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && (pair_hash(self.seed, u, v) as u128) < self.cut
    }

    fn count_adjacent(&self, x: usize, ys: &[usize]) -> usize {
        let mut c = 0;
        for &y in ys {
            c += self.adjacent(x, y) as usize;
        }
        c
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("probability {p} not in [0,1]")));
    }
    Ok(())
}

/// Each pair independently an edge with probability `p`; a pure function of
/// `(t, p, seed)`.
pub fn gen_gnp(t: usize, p: f64, seed: u64) -> Result<Graph> {
    if t == 0 {
        return Err(Error::InvalidInput("graph order must be at least 1".into()));
    }
    Ok(ImplicitGnp::new(t, p, seed)?.materialize())
}

/// A uniformly random partition of `0..t` into `n` blocks whose sizes differ
/// by at most one; the first `t mod n` blocks are the larger ones.
pub fn equitable_partition(t: usize, n: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if n == 0 || n > t {
        return Err(Error::InvalidInput(format!(
            "need 1 ≤ parts ≤ t, got parts={n}, t={t}"
        )));
    }
    let mut perm: Vec<usize> = (0..t).collect();
    perm.shuffle(&mut stream(seed, 0));
    let (base, extra) = (t / n, t % n);
    let mut blocks = Vec::with_capacity(n);
    let mut at = 0;
    for i in 0..n {
        let size = base + usize::from(i < extra);
        let mut b = perm[at..at + size].to_vec();
        b.sort_unstable();
        blocks.push(b);
        at += size;
    }
    Ok(blocks)
}

/// Common neighbourhood `N(S)` and joint neighbourhood `Γ(S)`, with
/// `N(∅) = V(G)` and `Γ(∅) = ∅`.
pub fn neighborhoods(g: &Graph, s: &[usize]) -> (VertexSet, VertexSet) {
    let n = g.order();
    let mut common = VertexSet::full(n);
    let mut joint = VertexSet::new(n);
    for &v in s {
        common.intersect_with(g.neighbors(v));
        joint.union_with(g.neighbors(v));
    }
    (common, joint)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub pairs: u64,
    pub edges: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyPReport {
    pub t: usize,
    pub mode: CheckMode,
    /// True for sampled runs: the verdict is an estimate, not a certificate.
    pub statistical: bool,
    /// `t^{-1/8}`, for display; the check itself is exact.
    pub threshold: f64,
    pub subset_size: usize,
    pub samples: u64,
    /// Checked pairs with `P(X,Y) = 0`, whose ratio is undefined.
    pub skipped: u64,
    pub passed: u64,
    pub pass_rate: f64,
    /// Largest `|e/P − 1/2|` seen, as an exact fraction and as a float.
    pub worst_deviation: String,
    pub worst_deviation_value: f64,
    pub verdict: Verdict,
    pub witness: Option<PairWitness>,
    /// Exhaustive verdict obtained without enumeration: below `t = 256` the
    /// threshold exceeds 1/2, the largest possible deviation.
    /// `worst_deviation` is then that upper bound.
    #[serde(default)]
    pub by_bound: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct PropertyPConfig {
    pub mode: CheckMode,
    /// Pair count for sampled mode.
    pub samples: u64,
    /// Maximum number of subset pairs for exhaustive mode.
    pub budget: u128,
    pub seed: u64,
}

impl Default for PropertyPConfig {
    fn default() -> Self {
        PropertyPConfig {
            mode: CheckMode::Sampled,
            samples: 10_000,
            budget: 10_000_000,
            seed: 0,
        }
    }
}

/// `⌈√t⌉`.
pub fn ceil_sqrt(t: usize) -> usize {
    let mut r = (t as f64).sqrt() as usize;
    while r * r > t {
        r -= 1;
    }
    while r * r < t {
        r += 1;
    }
    r
}

/// `|e/P − 1/2| < t^{-1/8}`, i.e. `t·|2e − P|⁸ < (2P)⁸`, exactly.
pub fn within_threshold(t: usize, s: &PairStats) -> bool {
    let num = (2 * s.edges).abs_diff(s.pairs);
    let lhs = BigUint::from(t) * BigUint::from(num).pow(8);
    let rhs = BigUint::from(2 * s.pairs).pow(8);
    lhs < rhs
}

/// Deviation `|2e − P| / 2P` as a numerator/denominator pair.
fn deviation(s: &PairStats) -> (u128, u128) {
    ((2 * s.edges).abs_diff(s.pairs) as u128, 2 * s.pairs as u128)
}

fn larger(a: (u128, u128), b: (u128, u128)) -> bool {
    a.0 * b.1 > b.0 * a.1
}

/// `C(n,k)`, saturating at `u128::MAX` when an intermediate overflows.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Clone, Copy)]
struct Tally {
    worst: (u128, u128),
    passed: u64,
    skipped: u64,
    /// Smallest pair index that fails the bound.
    first_fail: Option<u64>,
}

impl Tally {
    const ZERO: Tally = Tally {
        worst: (0, 1),
        passed: 0,
        skipped: 0,
        first_fail: None,
    };

    fn merge(self, o: Tally) -> Tally {
        Tally {
            worst: if larger(o.worst, self.worst) {
                o.worst
            } else {
                self.worst
            },
            passed: self.passed + o.passed,
            skipped: self.skipped + o.skipped,
            first_fail: match (self.first_fail, o.first_fail) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }
}

fn tally_pair<A: Adjacency + ?Sized>(g: &A, k: u64, xs: &[usize], ys: &[usize]) -> Result<Tally> {
    let mut out = Tally::ZERO;
    match pair_stats(g, xs, ys) {
        Ok(s) => {
            out.worst = deviation(&s);
            if within_threshold(g.order(), &s) {
                out.passed = 1;
            } else {
                out.first_fail = Some(k);
            }
        }
        Err(Error::UndefinedRatio) => out.skipped = 1,
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn sampled_pair(t: usize, s: usize, seed: u64, k: u64) -> (Vec<usize>, Vec<usize>) {
    let mut rng = stream(seed, k);
    let mut xs = index::sample(&mut rng, t, s).into_vec();
    let mut ys = index::sample(&mut rng, t, s).into_vec();
    xs.sort_unstable();
    ys.sort_unstable();
    (xs, ys)
}

/// Checks property 𝒫 on pairs of subsets of size exactly `⌈√t⌉`.
pub fn check_property_p<A: Adjacency + ?Sized>(
    g: &A,
    cfg: &PropertyPConfig,
) -> Result<PropertyPReport> {
    let t = g.order();
    let s = ceil_sqrt(t).min(t);
    let total: u64;
    let tally: Tally;
    let pair_at: Box<dyn Fn(u64) -> (Vec<usize>, Vec<usize>)>;
    match cfg.mode {
        CheckMode::Exhaustive => {
            let c = binomial(t as u128, s as u128);
            let count = c.saturating_mul(c.saturating_add(1)) / 2;
            if count > cfg.budget && t < 256 {
                return Ok(PropertyPReport {
                    t,
                    mode: cfg.mode,
                    statistical: false,
                    threshold: (t as f64).powf(-0.125),
                    subset_size: s,
                    samples: count.min(u64::MAX as u128) as u64,
                    skipped: 0,
                    passed: count.min(u64::MAX as u128) as u64,
                    pass_rate: 1.0,
                    worst_deviation: "1/2".into(),
                    worst_deviation_value: 0.5,
                    verdict: Verdict::Pass,
                    witness: None,
                    by_bound: true,
                });
            }
            if count > cfg.budget {
                return Err(Error::budget("subset pairs", count, cfg.budget));
            }
            let subsets = combinations(t, s);
            let c = subsets.len() as u64;
            // Pair (i, j), i ≤ j, gets index i·c + j.
            tally = (0..c)
                .into_par_iter()
                .map(|i| {
                    let mut acc = Tally::ZERO;
                    for j in i..c {
                        let tl =
                            tally_pair(g, i * c + j, &subsets[i as usize], &subsets[j as usize])?;
                        acc = acc.merge(tl);
                    }
                    Ok::<Tally, Error>(acc)
                })
                .try_reduce(|| Tally::ZERO, |a, b| Ok(a.merge(b)))?;
            total = count as u64;
            pair_at = Box::new(move |k| {
                (
                    subsets[(k / c) as usize].clone(),
                    subsets[(k % c) as usize].clone(),
                )
            });
        }
        CheckMode::Sampled => {
            let seed = cfg.seed;
            tally = (0..cfg.samples)
                .into_par_iter()
                .map(|k| {
                    let (xs, ys) = sampled_pair(t, s, seed, k);
                    tally_pair(g, k, &xs, &ys)
                })
                .try_reduce(|| Tally::ZERO, |a, b| Ok(a.merge(b)))?;
            total = cfg.samples;
            pair_at = Box::new(move |k| sampled_pair(t, s, seed, k));
        }
    }
    let witness = match tally.first_fail {
        Some(k) => {
            let (xs, ys) = pair_at(k);
            let st = pair_stats(g, &xs, &ys)?;
            Some(PairWitness {
                xs,
                ys,
                pairs: st.pairs,
                edges: st.edges,
            })
        }
        None => None,
    };
    let checked = total - tally.skipped;
    let worst = tally.worst;
    let worst_q = crate::rational::Q::new(worst.0, worst.1);
    Ok(PropertyPReport {
        t,
        mode: cfg.mode,
        statistical: cfg.mode == CheckMode::Sampled,
        threshold: (t as f64).powf(-0.125),
        subset_size: s,
        samples: total,
        skipped: tally.skipped,
        passed: tally.passed,
        pass_rate: if checked == 0 {
            1.0
        } else {
            tally.passed as f64 / checked as f64
        },
        worst_deviation: crate::rational::fmt_q(&worst_q),
        worst_deviation_value: worst.0 as f64 / worst.1 as f64,
        verdict: if witness.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        witness,
        by_bound: false,
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventSample {
    pub x: usize,
    pub y: usize,
    pub s: Vec<usize>,
    pub observed: u64,
    pub expected: f64,
    pub relative_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventReport {
    pub checked: u64,
    pub failures: u64,
    pub pass: bool,
    pub worst: Option<EventSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub order: usize,
    pub p: f64,
    pub epsilon: f64,
    pub s_max: usize,
    pub event_a_mode: CheckMode,
    /// Event B is always sampled, and event A too in sampled mode.
    pub statistical: bool,
    pub event_a: EventReport,
    pub event_b: EventReport,
}

#[derive(Clone, Copy, Debug)]
pub struct ConcentrationConfig {
    pub p: f64,
    pub epsilon: f64,
    pub s_max: usize,
    pub mode: CheckMode,
    pub samples: u64,
    pub seed: u64,
}

fn sample_event(x: usize, y: usize, s: Vec<usize>, observed: u64, expected: f64) -> EventSample {
    let relative_deviation = if expected > 0.0 {
        (observed as f64 - expected).abs() / expected
    } else if observed == 0 {
        0.0
    } else {
        f64::MAX
    };
    EventSample {
        x,
        y,
        s,
        observed,
        expected,
        relative_deviation,
    }
}

fn summarize(samples: Vec<EventSample>, eps: f64) -> EventReport {
    let mut failures = 0;
    let mut worst: Option<EventSample> = None;
    let checked = samples.len() as u64;
    for smp in samples {
        let lo = (1.0 - eps) * smp.expected;
        let hi = (1.0 + eps) * smp.expected;
        let obs = smp.observed as f64;
        if obs < lo || obs > hi {
            failures += 1;
        }
        if worst
            .as_ref()
            .is_none_or(|w| smp.relative_deviation > w.relative_deviation)
        {
            worst = Some(smp);
        }
    }
    EventReport {
        checked,
        failures,
        pass: failures == 0,
        worst,
    }
}

/// Checks `|N({x,y})| = (1±ε)p²N` (event A) and
/// `|N({x,y}) ∖ Γ(S)| = (1±ε)p²(1−p)^{|S|}N` for `|S| ≤ s_max` (event B).
pub fn check_concentration(g: &Graph, cfg: &ConcentrationConfig) -> Result<ConcentrationReport> {
    check_probability(cfg.p)?;
    if !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) {
        return Err(Error::InvalidInput("epsilon must lie in (0,1)".into()));
    }
    let n = g.order();
    if n < 2 {
        return Err(Error::InvalidInput("need at least two vertices".into()));
    }
    let mu = cfg.p * cfg.p * n as f64;
    let common = |x: usize, y: usize| g.neighbors(x).intersection(g.neighbors(y));
    let random_pair = |rng: &mut rand_chacha::ChaCha8Rng| {
        let v = index::sample(rng, n, 2).into_vec();
        (v[0].min(v[1]), v[0].max(v[1]))
    };

    let a_samples: Vec<EventSample> = match cfg.mode {
        CheckMode::Exhaustive => (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                (x + 1..n).map(move |y| sample_event(x, y, vec![], common(x, y).len() as u64, mu))
            })
            .collect(),
        CheckMode::Sampled => (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                let (x, y) = random_pair(&mut stream(cfg.seed, i));
                sample_event(x, y, vec![], common(x, y).len() as u64, mu)
            })
            .collect(),
    };

    let b_samples: Vec<EventSample> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            // Offset the stream so event B never reuses event A's draws.
            let mut rng = stream(cfg.seed, (1 << 63) | i);
            let (x, y) = random_pair(&mut rng);
            let size = rng.gen_range(0..=cfg.s_max.min(n - 2));
            let pool: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
            let mut s: Vec<usize> = pool.choose_multiple(&mut rng, size).copied().collect();
            s.sort_unstable();
            let (_, joint) = neighborhoods(g, &s);
            let mut c = common(x, y);
            c.difference_with(&joint);
            let expected = mu * (1.0 - cfg.p).powi(s.len() as i32);
            sample_event(x, y, s, c.len() as u64, expected)
        })
        .collect();

    Ok(ConcentrationReport {
        order: n,
        p: cfg.p,
        epsilon: cfg.epsilon,
        s_max: cfg.s_max,
        event_a_mode: cfg.mode,
        statistical: true,
        event_a: summarize(a_samples, cfg.epsilon),
        event_b: summarize(b_samples, cfg.epsilon),
    })
}
