//! Symbolic parameter block of the tower-type construction.
//!
//! Quantities such as `N = 2^2^2^{40n}` are never expanded. Each one is
//! stored through its base-2 logarithm written as a power tower of twos
//! capped by an integer, e.g. `log₂ m = 2^8` is the stack `[2, 8]`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// `2^2^…^2^top` with `height` twos (height 0 is just `top`).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tower {
    pub height: u32,
    pub top: u64,
}

impl Tower {
    pub fn new(height: u32, top: u64) -> Self {
        Tower { height, top }
    }

    /// Folds small levels into `top` so that equal values compare equal.
    fn normalized(mut self) -> Self {
        while self.height > 0 && self.top < 64 {
            self.top = 1u64 << self.top;
            self.height -= 1;
        }
        self
    }

    /// Exponent stack, base first: `[2, …, 2, top]`.
    pub fn stack(&self) -> Vec<u64> {
        let mut s = vec![2; self.height as usize];
        s.push(self.top);
        s
    }

    /// The exact value when it fits in 128 bits.
    pub fn value(&self) -> Option<u128> {
        let t = self.normalized();
        match t.height {
            0 => Some(t.top as u128),
            1 if t.top < 128 => Some(1u128 << t.top),
            _ => None,
        }
    }

    /// `log₂` of the tower; exact only for height ≥ 1.
    pub fn log2(&self) -> Option<Tower> {
        if self.height == 0 {
            return None;
        }
        Some(Tower {
            height: self.height - 1,
            top: self.top,
        })
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Tower {}

impl PartialOrd for Tower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tower {
    fn cmp(&self, other: &Self) -> Ordering {
        // After normalisation a taller tower has top ≥ 64 on every level, so
        // it dominates any shorter one.
        let (a, b) = (self.normalized(), other.normalized());
        a.height.cmp(&b.height).then(a.top.cmp(&b.top))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterSchedule {
    pub n: u64,
    /// `log₂ N` for `N = 2^2^2^{40n}`.
    pub log_n: Tower,
    /// `log₂ m` for `m = 2^2^{4n}`.
    pub log_m: Tower,
    /// `log₂(1/ε)` for `ε = 2^{-2^{16n}}`.
    pub log_inv_eps: Tower,
    /// `log₂(1/d)` for `d = 2^{-2^{32n}}`.
    pub log_inv_d: Tower,
}

impl ParameterSchedule {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!(
                "schedule needs n ≥ 2, got {n}"
            )));
        }
        Ok(ParameterSchedule {
            n,
            log_n: Tower::new(2, 40 * n),
            log_m: Tower::new(1, 4 * n),
            log_inv_eps: Tower::new(1, 16 * n),
            log_inv_d: Tower::new(1, 32 * n),
        })
    }

    /// `log₂ log₂ log₂ N = 40n`.
    pub fn log3_n(&self) -> u64 {
        40 * self.n
    }

    /// `log₂ log₂ m = 4n`.
    pub fn log2_log2_m(&self) -> u64 {
        4 * self.n
    }

    /// Default Erdős–Rado prefix length `R(n−1)+1` for known diagonal
    /// Ramsey numbers, else the bound `4ⁿ − 1`.
    pub fn prefix_length(&self) -> Option<u128> {
        default_prefix_length(self.n as usize).map(|l| l as u128)
    }

    /// Inequalities between the parameters that the argument relies on,
    /// evaluated on logarithms (never on the towers themselves).
    pub fn relations(&self) -> Vec<Relation> {
        let n = self.n as f64;
        // Second logarithms: log₂log₂N = 2^{40n}, log₂log₂(1/ε) = 16n,
        // log₂log₂(1/d) = 32n.
        let ll_n = 40.0 * n; // log₂ of log₂log₂N
        vec![
            Relation {
                name: "n < log log log N".into(),
                holds: n < 40.0 * n,
            },
            Relation {
                // log(1/2d) = 2^{32n} − 1 ≤ 2^{2^{40n}} = log log N.
                name: "2d >= 1/log N".into(),
                holds: 32.0 * n <= 2f64.powf(ll_n.min(1000.0)),
            },
            Relation {
                // ε N^{0.9} ≥ √N ⇔ 2^{16n} ≤ 0.4·2^{2^{40n}}.
                name: "eps * N^0.9 >= sqrt(N)".into(),
                holds: 16.0 * n <= 0.4f64.log2() + 2f64.powf(ll_n.min(1000.0)),
            },
            Relation {
                // ε < d^{n²} ⇔ 2^{16n} > n²·2^{32n}.
                name: "eps < d^(n^2)".into(),
                holds: 16.0 * n > 2.0 * n.log2() + 32.0 * n,
            },
            Relation {
                // (4/εⁿ)·ln(1/ε) < 2^{2^{32n}}, compared after one log₂.
                name: "(4/eps^n) ln(1/eps) < 2^(2^(32n))".into(),
                holds: {
                    let lhs = 2.0 + n * 2f64.powf(16.0 * n) + 16.0 * n + 2f64.ln().log2();
                    lhs < 2f64.powf(32.0 * n)
                },
            },
            Relation {
                name: "2^(2^(32n)) < sqrt(log N)".into(),
                holds: 32.0 * n < ll_n,
            },
        ]
    }
}

/// `R(k)` for the diagonal two-color graph Ramsey numbers known exactly.
pub fn known_ramsey(k: usize) -> Option<usize> {
    match k {
        0 => Some(0),
        1 => Some(1),
        2 => Some(2),
        3 => Some(6),
        4 => Some(18),
        _ => None,
    }
}

/// `ℓ = R(n−1)+1` when known, otherwise `4ⁿ − 1` (saturating).
pub fn default_prefix_length(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    Some(match known_ramsey(n - 1) {
        Some(r) => r + 1,
        None => 4usize.checked_pow(n as u32).map_or(usize::MAX, |p| p - 1),
    })
}
