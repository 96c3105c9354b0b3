//! Partite hypergraphs `H[V₁,…,V_ℓ]` and their exact densities.

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rng::stream;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Ordered, pairwise-disjoint blocks plus an `r`-uniform edge set whose
/// edges meet each block at most once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct PartiteFamily {
    order: usize,
    blocks: Vec<Vec<usize>>,
    uniformity: usize,
    edges: Vec<Vec<usize>>,
    block_of: Vec<Option<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawFamily {
    order: usize,
    uniformity: usize,
    blocks: Vec<Vec<usize>>,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawFamily> for PartiteFamily {
    type Error = Error;
    fn try_from(r: RawFamily) -> Result<Self> {
        PartiteFamily::new(r.order, r.blocks, r.uniformity, r.edges)
    }
}

impl From<PartiteFamily> for RawFamily {
    fn from(f: PartiteFamily) -> Self {
        RawFamily {
            order: f.order,
            uniformity: f.uniformity,
            blocks: f.blocks,
            edges: f.edges,
        }
    }
}

impl PartiteFamily {
    pub fn new(
        order: usize,
        blocks: Vec<Vec<usize>>,
        uniformity: usize,
        edges: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut block_of = vec![None; order];
        let mut blocks = blocks;
        for (i, b) in blocks.iter_mut().enumerate() {
            b.sort_unstable();
            for &v in b.iter() {
                if v >= order {
                    return Err(Error::InvalidInput(format!("vertex {v} out of range")));
                }
                if block_of[v].replace(i).is_some() {
                    return Err(Error::InvalidInput(format!(
                        "vertex {v} appears in two blocks or twice"
                    )));
                }
            }
        }
        if uniformity == 0 || uniformity > blocks.len() {
            return Err(Error::InvalidInput(format!(
                "uniformity {uniformity} incompatible with {} blocks",
                blocks.len()
            )));
        }
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != uniformity {
                return Err(Error::InvalidInput(format!("edge {e:?} has wrong size")));
            }
            let mut seen = vec![false; blocks.len()];
            for &v in &e {
                let b = block_of.get(v).copied().flatten().ok_or_else(|| {
                    Error::InvalidInput(format!("edge vertex {v} not in a block"))
                })?;
                if std::mem::replace(&mut seen[b], true) {
                    return Err(Error::InvalidInput(format!(
                        "edge {e:?} meets block {b} twice"
                    )));
                }
            }
            e.sort_unstable();
            out.push(e);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("duplicate edge {:?}", w[0])));
        }
        Ok(PartiteFamily {
            order,
            blocks,
            uniformity,
            edges: out,
            block_of,
        })
    }

    /// `r` consecutive blocks of `size` vertices, each transversal an edge
    /// independently with probability `p`.
    pub fn random(r: usize, size: usize, p: f64, seed: u64) -> Result<PartiteFamily> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidInput(format!("probability {p} not in [0,1]")));
        }
        if r == 0 || size == 0 {
            return Err(Error::InvalidInput(
                "need at least one nonempty block".into(),
            ));
        }
        let total = (size as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
        if total > 1 << 24 {
            return Err(Error::budget("random transversals", total, 1 << 24));
        }
        let mut rng = stream(seed, 0);
        let blocks: Vec<Vec<usize>> = (0..r)
            .map(|i| (i * size..(i + 1) * size).collect())
            .collect();
        let mut edges = Vec::new();
        for idx in 0..total as usize {
            if rng.gen_bool(p) {
                let mut rest = idx;
                let mut e = vec![0; r];
                for i in (0..r).rev() {
                    e[i] = i * size + rest % size;
                    rest /= size;
                }
                edges.push(e);
            }
        }
        PartiteFamily::new(r * size, blocks, r, edges)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.block_of.get(v).copied().flatten()
    }

    /// Edges whose vertices all lie in the given sub-blocks (one per block,
    /// `r` = number of blocks), re-expressed as a family on those sub-blocks.
    pub fn restrict(&self, sub: &[Vec<usize>]) -> Result<PartiteFamily> {
        self.check_subblocks(sub)?;
        let mut inside = vec![false; self.order];
        for s in sub {
            for &v in s {
                inside[v] = true;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| inside[v]))
            .cloned()
            .collect();
        PartiteFamily::new(self.order, sub.to_vec(), self.uniformity, edges)
    }

    fn check_subblocks(&self, sub: &[Vec<usize>]) -> Result<()> {
        if sub.len() != self.blocks.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} sub-blocks, got {}",
                self.blocks.len(),
                sub.len()
            )));
        }
        for (i, w) in sub.iter().enumerate() {
            if let Some(&v) = w.iter().find(|&&v| self.block_of(v) != Some(i)) {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} is not in block {i}"
                )));
            }
        }
        Ok(())
    }

    /// Number of edges with every vertex inside the corresponding `W_i`.
    pub fn edges_between(&self, ws: &[Vec<usize>]) -> Result<u64> {
        self.check_subblocks(ws)?;
        let mut inside = vec![false; self.order];
        for w in ws {
            for &v in w {
                inside[v] = true;
            }
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| inside[v]))
            .count() as u64)
    }
}

/// `e(W₁,…,W_r) / Π|W_i|`, exactly. Requires `r` equal to the number of
/// blocks and every `W_i` nonempty.
pub fn partite_density(family: &PartiteFamily, ws: &[Vec<usize>]) -> Result<Q> {
    if family.uniformity() != family.blocks().len() {
        return Err(Error::InvalidInput(
            "density needs an r-partite r-uniform family".into(),
        ));
    }
    let mut ws: Vec<Vec<usize>> = ws.to_vec();
    for (i, w) in ws.iter_mut().enumerate() {
        w.sort_unstable();
        w.dedup();
        if w.is_empty() {
            return Err(Error::EmptyBlock(i));
        }
    }
    let e = family.edges_between(&ws)?;
    let prod: u128 = ws.iter().map(|w| w.len() as u128).product();
    Ok(Q::new(e as u128, prod))
}

/// Block-local view used by the subset scans: every block re-indexed to
/// `0..|U_i|` (at most 64 vertices per block) and each edge stored as its
/// tuple of local indices in block order.
#[derive(Clone, Debug)]
pub(crate) struct LocalView {
    pub members: Vec<Vec<usize>>,
    pub edges: Vec<Vec<u8>>,
}

impl LocalView {
    pub fn new(family: &PartiteFamily, sub: &[Vec<usize>]) -> Result<LocalView> {
        if family.uniformity() != family.blocks().len() {
            return Err(Error::InvalidInput(
                "subset scans need an r-partite r-uniform family".into(),
            ));
        }
        family.check_subblocks(sub)?;
        let mut local = vec![usize::MAX; family.order()];
        for (i, s) in sub.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptyBlock(i));
            }
            if s.len() > 64 {
                return Err(Error::InvalidInput(format!(
                    "block {i} has {} vertices; subset scans support at most 64",
                    s.len()
                )));
            }
            for (j, &v) in s.iter().enumerate() {
                local[v] = j;
            }
        }
        let r = sub.len();
        let mut edges = Vec::new();
        'edge: for e in family.edges() {
            let mut tup = vec![0u8; r];
            for &v in e {
                if local[v] == usize::MAX {
                    continue 'edge;
                }
                tup[family.block_of(v).unwrap()] = local[v] as u8;
            }
            edges.push(tup);
        }
        Ok(LocalView {
            members: sub.to_vec(),
            edges,
        })
    }

    pub fn r(&self) -> usize {
        self.members.len()
    }

    pub fn size(&self, i: usize) -> usize {
        self.members[i].len()
    }

    pub fn count(&self, masks: &[u64]) -> u64 {
        self.edges
            .iter()
            .filter(|e| e.iter().zip(masks).all(|(&x, m)| m >> x & 1 == 1))
            .count() as u64
    }

    pub fn globals(&self, i: usize, mask: u64) -> Vec<usize> {
        (0..self.size(i))
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| self.members[i][j])
            .collect()
    }
}

pub(crate) fn full_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}
