//! Red/blue colorings of triangle systems.

use crate::error::{Error, Result};
use crate::graph::content_lines;
use crate::rng::{probability_cut, triple_hash};
use crate::triples::{triple, Triple, TripleSystem};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];
}

pub fn random_color(seed: u64, p_red: f64, t: &Triple) -> Color {
    if (triple_hash(seed, t) as u128) < probability_cut(p_red) {
        Color::Red
    } else {
        Color::Blue
    }
}

/// A total map from the edges of a triple system to {red, blue}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleColoring {
    domain: TripleSystem,
    colors: Vec<Color>,
}

impl TriangleColoring {
    pub fn new(domain: TripleSystem, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != domain.len() {
            return Err(Error::InvalidInput(format!(
                "{} colors for {} triples",
                colors.len(),
                domain.len()
            )));
        }
        Ok(TriangleColoring { domain, colors })
    }

    pub fn constant(domain: TripleSystem, c: Color) -> Self {
        let colors = vec![c; domain.len()];
        TriangleColoring { domain, colors }
    }

    pub fn from_fn(domain: TripleSystem, mut f: impl FnMut(&Triple) -> Color) -> Self {
        let colors = domain.edges().iter().map(&mut f).collect();
        TriangleColoring { domain, colors }
    }

    /// Each triple red with probability `p_red`, decided by
    /// [`random_color`] so the same triple gets the same color in any host.
    pub fn random(domain: TripleSystem, p_red: f64, seed: u64) -> Self {
        Self::from_fn(domain, |t| random_color(seed, p_red, t))
    }

    /// Bit `i` of `mask` set means edge `i` is red.
    pub fn from_mask(domain: TripleSystem, mask: u64) -> Self {
        Self::from_fn_indexed(domain, |i| {
            if mask >> i & 1 == 1 {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }

    pub fn from_fn_indexed(domain: TripleSystem, f: impl Fn(usize) -> Color) -> Self {
        let colors = (0..domain.len()).map(f).collect();
        TriangleColoring { domain, colors }
    }

    pub fn domain(&self) -> &TripleSystem {
        &self.domain
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_at(&self, i: usize) -> Color {
        self.colors[i]
    }

    pub fn color_of(&self, t: &Triple) -> Option<Color> {
        self.domain.index_of(t).map(|i| self.colors[i])
    }

    pub fn color_of_vertices(&self, a: usize, b: usize, c: usize) -> Option<Color> {
        self.color_of(&triple(a, b, c))
    }

    pub fn count(&self, c: Color) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }

    /// Triples of a given color as a triple system.
    pub fn class(&self, c: Color) -> TripleSystem {
        let edges = self
            .domain
            .edges()
            .iter()
            .zip(&self.colors)
            .filter(|(_, &x)| x == c)
            .map(|(e, _)| *e)
            .collect();
        TripleSystem::from_sorted(self.domain.order(), edges)
    }

    pub fn swapped(&self) -> Self {
        TriangleColoring {
            domain: self.domain.clone(),
            colors: self.colors.iter().map(|c| c.other()).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for ([a, b, c], col) in self.domain.edges().iter().zip(&self.colors) {
            let _ = writeln!(s, "c {a} {b} {c} {}", col.letter());
        }
        s
    }

    /// Parses the line format, building the domain from the listed triples.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut entries: Vec<(Triple, Color)> = Vec::new();
        for (ln, line) in content_lines(text) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 || toks[0] != "c" {
                return Err(Error::parse(ln, "expected `c <a> <b> <c> <R|B>`"));
            }
            let mut v = [0usize; 3];
            for (slot, tok) in v.iter_mut().zip(&toks[1..4]) {
                *slot = tok.parse().map_err(|_| Error::parse(ln, "bad vertex id"))?;
                if *slot >= n {
                    return Err(Error::parse(ln, format!("vertex out of range 0..{n}")));
                }
            }
            let col = match toks[4] {
                "R" => Color::Red,
                "B" => Color::Blue,
                _ => return Err(Error::parse(ln, "color must be R or B")),
            };
            let t = triple(v[0], v[1], v[2]);
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::parse(ln, "repeated vertex in triple"));
            }
            entries.push((t, col));
        }
        entries.sort_unstable();
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::parse(0, format!("duplicate triple {:?}", w[0].0)));
        }
        let domain = TripleSystem::from_sorted(n, entries.iter().map(|e| e.0).collect());
        let colors = entries.iter().map(|e| e.1).collect();
        Ok(TriangleColoring { domain, colors })
    }

    /// Parses and checks that the listed triples are exactly `domain`.
    pub fn parse_for(text: &str, domain: &TripleSystem) -> Result<Self> {
        let c = Self::parse(text, domain.order())?;
        if c.domain.edges() != domain.edges() {
            return Err(Error::InvalidInput(
                "coloring is not defined on exactly the expected triangles".into(),
            ));
        }
        Ok(c)
    }
}
