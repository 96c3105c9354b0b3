//! Exact rational arithmetic helpers.
//!
//! Densities, thresholds and slack parameters are carried as [`Q`] so that
//! every certificate can be re-checked without rounding.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

pub type Q = Ratio<u128>;

pub fn q(numer: u128, denom: u128) -> Q {
    Q::new(numer, denom)
}

/// Parses `"3/8"`, `"0.45"` or `"2"` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a nonnegative rational: {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: u128 = a.trim().parse().map_err(|_| bad())?;
        let b: u128 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Q::new(a, b));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 30 || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u128 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let denom = 10u128.pow(frac.len() as u32);
        let frac: u128 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        return Ok(Q::new(int * denom + frac, denom));
    }
    Ok(Q::from_integer(s.parse().map_err(|_| bad())?))
}

/// `⌈q·n⌉` computed exactly.
pub fn ceil_mul(q: &Q, n: usize) -> usize {
    let num = q.numer() * n as u128;
    num.div_ceil(*q.denom()) as usize
}

pub fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn fmt_q(q: &Q) -> String {
    if q.is_zero() {
        "0".to_string()
    } else if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapter writing rationals as `"a/b"` strings.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_q_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
