//! The growth sequences behind `G_Int`.
//!
//! `d~_0 = 30`, `d~_n = exp(d~_{n-1})`; `P~_n = f^{2n+1}(30)` for a tenth
//! root `f` of `exp`; `P_n` is the least prime in `[P~_n, 2 P~_n)`;
//! `d_0 = 30` and `d_{n+1}` is `d_n` times the shortest primorial reaching
//! `d~_{n+1}`; `q_n` is the product of `P_{5n-5+2k}` for `k = 0..=8`, with
//! `P_i = 3` for negative `i`.
//!
//! Only `d_0`, `d_1` and the first few `P_n` are materialised. Later terms
//! are tower-scale descriptors.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::froot::CompRoot;
use super::interval::{compare_with_exp, Interval};
use super::logscale::LogScaleNumber;
use crate::error::{Error, Result};
use crate::numtheory::primes::{self, next_prime_big, Primality};

pub const D0: u64 = 30;

/// Tower height beyond which no descriptor is produced.
pub const SYMBOLIC_HEIGHT_CAP: u32 = 3;

/// `d~_n` on the tower scale.
pub fn d_tilde(n: usize) -> Result<LogScaleNumber> {
    let mut x = LogScaleNumber::from_f64(D0 as f64);
    for _ in 0..n {
        x = x.exp();
    }
    if x.height() > SYMBOLIC_HEIGHT_CAP {
        return Err(Error::pre(format!(
            "d~_{n} has tower height {} above the cap {SYMBOLIC_HEIGHT_CAP}",
            x.height()
        )));
    }
    Ok(x)
}

/// `P~_n = f^{2n+1}(d_0)` on the tower scale.
pub fn p_tilde(root: &CompRoot, n: usize) -> LogScaleNumber {
    root.iterate_log(LogScaleNumber::from_f64(D0 as f64), 2 * n as u32 + 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DTerm {
    Exact {
        index: usize,
        value: BigUint,
        /// Largest prime of the primorial factor `d_n / d_{n-1}`.
        m: Option<u64>,
    },
    Symbolic {
        index: usize,
        /// `d~_n`, the lower end of the window `d_n` lies in.
        tilde: LogScaleNumber,
    },
}

impl DTerm {
    pub fn index(&self) -> usize {
        match self {
            DTerm::Exact { index, .. } | DTerm::Symbolic { index, .. } => *index,
        }
    }

    pub fn value(&self) -> Option<&BigUint> {
        match self {
            DTerm::Exact { value, .. } => Some(value),
            DTerm::Symbolic { .. } => None,
        }
    }
}

impl fmt::Display for DTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DTerm::Exact { value, .. } => write!(f, "{value}"),
            DTerm::Symbolic { tilde, .. } => write!(f, "~{tilde}"),
        }
    }
}

/// Greedy step: multiply `d` by `2, 3, 5, ...` until it reaches `exp(d)`,
/// then check the result stays below `exp(4 d / 3)`.
pub fn next_d(d: &BigUint) -> Result<(BigUint, u64)> {
    let target = BigRational::from_integer(BigInt::from(d.clone()));
    let mut acc = d.clone();
    for p in primes::primes() {
        acc *= p;
        if compare_with_exp(&acc, &target)?.is_ge() {
            let cap = &target * BigRational::new(4.into(), 3.into());
            if !compare_with_exp(&acc, &cap)?.is_lt() {
                return Err(Error::Invariant(format!("d = {acc} overshoots exp(4/3 * {d})")));
            }
            return Ok((acc, p));
        }
    }
    unreachable!("primes are unbounded")
}

/// `d_0, ..., d_{count-1}`: exact for indices 0 and 1, descriptors after.
pub fn build_d(count: usize) -> Result<Vec<DTerm>> {
    if count > 0 {
        d_tilde(count - 1)?;
    }
    let mut out = Vec::with_capacity(count);
    let mut prev = BigUint::from(D0);
    for index in 0..count {
        match index {
            0 => out.push(DTerm::Exact { index, value: prev.clone(), m: None }),
            1 => {
                let (value, m) = next_d(&prev)?;
                prev = value.clone();
                out.push(DTerm::Exact { index, value, m: Some(m) });
            }
            _ => out.push(DTerm::Symbolic { index, tilde: d_tilde(index)? }),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PTerm {
    Exact {
        index: usize,
        /// `P~_n` rounded to a double.
        tilde: f64,
        prime: BigUint,
        /// `false` when primality rests on a probabilistic test.
        proven: bool,
    },
    Symbolic {
        index: usize,
        tilde: LogScaleNumber,
    },
}

impl PTerm {
    pub fn index(&self) -> usize {
        match self {
            PTerm::Exact { index, .. } | PTerm::Symbolic { index, .. } => *index,
        }
    }

    pub fn prime(&self) -> Option<&BigUint> {
        match self {
            PTerm::Exact { prime, .. } => Some(prime),
            PTerm::Symbolic { .. } => None,
        }
    }
}

fn certified_tilde(root: &CompRoot, n: usize, magnitude: f64) -> Result<(Interval, BigInt)> {
    let start = BigRational::from_integer(D0.into());
    let mut bits = magnitude.log2().max(0.0) as u32 + 16;
    for _ in 0..4 {
        let iv = root.iterate_certified(&start, 2 * n as u32 + 1, bits)?;
        if let Some(c) = iv.common_ceil() {
            return Ok((iv, c));
        }
        bits += 64;
    }
    Err(Error::SearchExhausted { what: format!("precision to round P~_{n}"), bound: bits as u64 })
}

/// `P_0, ..., P_{count-1}`. Terms whose `P~_n` fits a double are found
/// exactly from a certified enclosure of `P~_n`; later terms are
/// descriptors.
pub fn build_p(root: &CompRoot, count: usize) -> Result<Vec<PTerm>> {
    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let tilde = p_tilde(root, index);
        let Some(approx) = tilde.to_f64() else {
            if tilde.height() > SYMBOLIC_HEIGHT_CAP {
                return Err(Error::pre(format!("P~_{index} is beyond tower height {SYMBOLIC_HEIGHT_CAP}")));
            }
            out.push(PTerm::Symbolic { index, tilde });
            continue;
        };
        let (iv, ceil) = certified_tilde(root, index, approx)?;
        let start = ceil.to_biguint().expect("P~ is positive");
        let (prime, grade) = next_prime_big(&start);
        let doubled = &iv.lo * BigRational::from_integer(2.into());
        if BigRational::from_integer(BigInt::from(prime.clone())) >= doubled {
            return Err(Error::Invariant(format!("no prime found in [P~_{index}, 2 P~_{index})")));
        }
        out.push(PTerm::Exact { index, tilde: approx, prime, proven: grade == Primality::Prime });
    }
    Ok(out)
}

/// The nine `P`-indices whose product is `q_n`.
pub fn q_indices(n: i64) -> [i64; 9] {
    std::array::from_fn(|k| 5 * n - 5 + 2 * k as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFactor {
    pub index: i64,
    /// `None` when `P_index` is not materialised.
    pub prime: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QTerm {
    Exact { n: i64, value: BigUint, factors: Vec<QFactor> },
    Symbolic { n: i64, factors: Vec<QFactor> },
}

impl QTerm {
    pub fn factors(&self) -> &[QFactor] {
        match self {
            QTerm::Exact { factors, .. } | QTerm::Symbolic { factors, .. } => factors,
        }
    }

    pub fn value(&self) -> Option<&BigUint> {
        match self {
            QTerm::Exact { value, .. } => Some(value),
            QTerm::Symbolic { .. } => None,
        }
    }
}

impl fmt::Display for QTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors()
            .iter()
            .map(|q| match &q.prime {
                Some(p) => p.to_string(),
                None => format!("P_{}", q.index),
            })
            .collect();
        write!(f, "{}", parts.join(" * "))?;
        if let Some(v) = self.value() {
            write!(f, " = {v}")?;
        }
        Ok(())
    }
}

/// `q_n` from whatever prefix of `P` is available.
pub fn build_q(n: i64, ps: &[PTerm]) -> QTerm {
    let factors: Vec<QFactor> = q_indices(n)
        .into_iter()
        .map(|index| {
            let prime = if index < 0 {
                Some(BigUint::from(3u32))
            } else {
                ps.get(index as usize).and_then(|p| p.prime().cloned())
            };
            QFactor { index, prime }
        })
        .collect();
    if factors.iter().all(|f| f.prime.is_some()) {
        let value = factors.iter().fold(BigUint::one(), |acc, f| acc * f.prime.as_ref().unwrap());
        QTerm::Exact { n, value, factors }
    } else {
        QTerm::Symbolic { n, factors }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn root() -> CompRoot {
        CompRoot::equally_spaced(10).unwrap()
    }

    #[test]
    fn d_terms() {
        let d = build_d(3).unwrap();
        assert_eq!(d[0].value(), Some(&BigUint::from(30u32)));
        assert_eq!(d[1].value(), Some(&BigUint::from(222_622_144_044_300u64)));
        assert!(matches!(d[1], DTerm::Exact { m: Some(37), .. }));
        match &d[2] {
            DTerm::Symbolic { tilde, .. } => {
                assert_eq!(tilde.height(), 1);
                assert!((tilde.mantissa() / 30f64.exp() - 1.0).abs() < 1e-12);
            }
            other => panic!("expected a descriptor, got {other:?}"),
        }
        assert!(build_d(5).is_ok());
        assert!(build_d(6).is_err());
    }

    #[test]
    fn p_terms() {
        let ps = build_p(&root(), 4).unwrap();
        let got: Vec<u64> = ps.iter().map(|p| p.prime().unwrap().to_u64().unwrap()).collect();
        assert_eq!(got[0], 53);
        for (p, t) in got.iter().zip(&ps) {
            let PTerm::Exact { tilde, proven, .. } = t else { unreachable!() };
            assert!(*proven);
            assert!((*p as f64) >= *tilde && (*p as f64) < 2.0 * tilde);
        }
        assert!(got.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn p_terms_past_doubles_are_symbolic() {
        // P~_6 = exp^4(0.5021...) ~ e^497 still fits a double, P~_7 does not
        let ps = build_p(&root(), 8).unwrap();
        assert!(matches!(ps[6], PTerm::Exact { .. }));
        assert!(matches!(ps[7], PTerm::Symbolic { .. }));
        let PTerm::Symbolic { tilde, .. } = ps[7] else { unreachable!() };
        assert_eq!(tilde.height(), 1);
    }

    #[test]
    fn q_index_arithmetic() {
        assert_eq!(q_indices(0), [-5, -3, -1, 1, 3, 5, 7, 9, 11]);
        assert_eq!(q_indices(1), [0, 2, 4, 6, 8, 10, 12, 14, 16]);
        let ps = build_p(&root(), 4).unwrap();
        let q0 = build_q(0, &ps);
        assert!(q0.value().is_none());
        let known: Vec<_> = q0.factors().iter().filter_map(|f| f.prime.clone()).collect();
        assert_eq!(known.len(), 5);
        assert_eq!(known[..3], [BigUint::from(3u32), BigUint::from(3u32), BigUint::from(3u32)]);
        assert_eq!(&known[3], ps[1].prime().unwrap());
    }
}
