//! Numeric scans of the growth claims: `f` beats every polynomial
//! eventually, `f^{n-1}(x) < exp(x^eps)` eventually, and the divisibility
//! and 2-adic properties of the `d` sequence.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::froot::CompRoot;
use super::interval::compare_with_exp_exp;
use super::logscale::LogScaleNumber;
use crate::error::Result;
use crate::numtheory::primes;

/// Points `exp^level(j / per_level)` for `level < levels`, ascending.
pub fn tower_grid(levels: u32, per_level: usize) -> Vec<LogScaleNumber> {
    let mut out = Vec::with_capacity(levels as usize * per_level);
    for level in 0..levels {
        for j in 0..per_level {
            out.push(LogScaleNumber::from_tower(level, j as f64 / per_level as f64).expect("frac in [0, 1)"));
        }
    }
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntermediateReport {
    pub poly_degree: u32,
    pub eps: f64,
    pub points: usize,
    /// `f` strictly increasing along the grid.
    pub monotone: bool,
    /// `f(x) > x` at every grid point.
    pub above_identity: bool,
    /// Smallest `f(x) - x` over grid points where both fit a double.
    pub min_gap: f64,
    /// Least grid point from which `f(x) > x^degree` holds to the end.
    pub poly_crossover: Option<LogScaleNumber>,
    pub poly_violations: usize,
    /// Least grid point from which `f^{n-1}(x) < exp(x^eps)` holds to the end.
    pub eps_threshold: Option<LogScaleNumber>,
    pub eps_violations: usize,
}

fn pow_log(x: LogScaleNumber, e: f64) -> LogScaleNumber {
    match x.to_f64() {
        Some(v) if v <= 1.0 => LogScaleNumber::from_f64(v.powf(e)),
        _ => x.ln().expect("x > 1").mul_scalar(e).exp(),
    }
}

fn tail_start(holds: &[bool], grid: &[LogScaleNumber]) -> Option<LogScaleNumber> {
    let last_fail = holds.iter().rposition(|h| !h);
    match last_fail {
        None => grid.first().copied(),
        Some(i) => grid.get(i + 1).copied(),
    }
}

/// Scan `f` over `grid` (sorted internally). `f^{n-1}` is evaluated as
/// `f^{-1}(exp(x))`.
pub fn check_intermediate(root: &CompRoot, poly_degree: u32, eps: f64, grid: &[LogScaleNumber]) -> IntermediateReport {
    let mut grid = grid.to_vec();
    grid.sort();
    grid.dedup();
    let rows: Vec<(LogScaleNumber, bool, bool)> = grid
        .par_iter()
        .map(|&x| {
            let fx = root.eval_log(x);
            let poly = fx > pow_log(x, poly_degree as f64);
            let lhs = root.inverse_log(x.exp()).expect("exp(x) >= 1 > f(0)");
            let rhs = pow_log(x, eps).exp();
            (fx, poly, lhs < rhs)
        })
        .collect();

    let monotone = rows.windows(2).all(|w| w[0].0 < w[1].0);
    let above_identity = rows.iter().zip(&grid).all(|(r, x)| r.0 > *x);
    let min_gap = rows
        .iter()
        .zip(&grid)
        .filter_map(|(r, x)| Some(r.0.to_f64()? - x.to_f64()?))
        .fold(f64::INFINITY, f64::min);
    let poly: Vec<bool> = rows.iter().map(|r| r.1).collect();
    let eps_ok: Vec<bool> = rows.iter().map(|r| r.2).collect();

    IntermediateReport {
        poly_degree,
        eps,
        points: grid.len(),
        monotone,
        above_identity,
        min_gap,
        poly_crossover: tail_start(&poly, &grid),
        poly_violations: poly.iter().filter(|h| !**h).count(),
        eps_threshold: tail_start(&eps_ok, &grid),
        eps_violations: eps_ok.iter().filter(|h| !**h).count(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaRow {
    pub n: usize,
    pub d: BigUint,
    pub nu2: u32,
    /// `2^nu2 < 2 ln ln d`, decided with certified enclosures.
    pub two_power_ok: bool,
    /// `m` with `d_n / d_{n-1}` the product of the primes up to `m`.
    pub ratio_primorial: Option<u64>,
    /// Largest prime `p <= bound` such that every prime up to `p` divides `d_n`.
    pub prime_cover: Option<u64>,
    /// `prime_cover / sqrt(d_{n-1})`: the constant for which every prime
    /// below `c sqrt(d_{n-1})` divides `d_n`.
    pub c_measured: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub rows: Vec<LemmaRow>,
    pub all_ok: bool,
}

fn primorial_index(ratio: &BigUint) -> Option<u64> {
    let mut rest = ratio.clone();
    let mut last = None;
    for p in primes::primes() {
        if rest == BigUint::from(1u32) {
            return last;
        }
        if !(&rest % p).is_zero() {
            return None;
        }
        rest /= p;
        last = Some(p);
    }
    unreachable!()
}

fn prime_cover(d: &BigUint, bound: u64) -> Option<u64> {
    primes::primes().take_while(|&p| p <= bound).take_while(|&p| (d % p).is_zero()).last()
}

/// Check the `d` terms: `2^{nu_2(d_n)} < 2 ln ln d_n`, consecutive ratios
/// are primorials, and how far the prime cover of `d_n` reaches relative to
/// `sqrt(d_{n-1})`. Prime scans stop at `prime_bound`.
pub fn check_sequence_lemmas(d: &[BigUint], prime_bound: u64) -> Result<LemmaReport> {
    let mut rows = Vec::with_capacity(d.len());
    for (n, dn) in d.iter().enumerate() {
        let signed = BigInt::from(dn.clone());
        let nu2 = if dn.is_zero() { 0 } else { primes::valuation(&signed, 2) };
        // 2^k < 2 ln ln d  <=>  exp(exp(2^(k-1))) < d
        let half_power = BigRational::new(BigInt::from(1u64 << nu2.min(62)), 2.into());
        let two_power_ok = !dn.is_zero() && compare_with_exp_exp(dn, &half_power)?.is_gt();
        let (ratio_primorial, c_measured) = if n == 0 {
            (None, None)
        } else {
            let prev = &d[n - 1];
            let ratio = (!prev.is_zero() && (dn % prev).is_zero()).then(|| dn / prev);
            let cover = prime_cover(dn, prime_bound);
            let c = cover.map(|p| p as f64 / prev.sqrt().to_f64().unwrap_or(f64::INFINITY).max(1.0));
            (ratio.as_ref().and_then(primorial_index), c)
        };
        rows.push(LemmaRow {
            n,
            d: dn.clone(),
            nu2,
            two_power_ok,
            ratio_primorial,
            prime_cover: prime_cover(dn, prime_bound),
            c_measured,
        });
    }
    let all_ok = rows.iter().all(|r| r.two_power_ok && (r.n == 0 || r.ratio_primorial.is_some()));
    Ok(LemmaReport { rows, all_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root() -> CompRoot {
        CompRoot::equally_spaced(10).unwrap()
    }

    #[test]
    fn degree_two_crossover() {
        let grid = tower_grid(7, 200);
        let rep = check_intermediate(&root(), 2, 0.3, &grid);
        assert!(rep.monotone);
        assert!(rep.above_identity);
        assert!((rep.min_gap - 0.1).abs() < 1e-9);
        let x0 = rep.poly_crossover.unwrap();
        assert!(rep.poly_violations > 0);
        assert!(x0 > LogScaleNumber::from_f64(1e6));
        let t = rep.eps_threshold.unwrap();
        assert!(rep.eps_violations > 0);
        assert!(t > LogScaleNumber::from_f64(10.0));
    }

    #[test]
    fn degree_one_holds_everywhere() {
        let rep = check_intermediate(&root(), 1, 0.5, &tower_grid(6, 50));
        assert_eq!(rep.poly_violations, 0);
        assert_eq!(rep.poly_crossover, Some(LogScaleNumber::from_f64(0.0)));
    }

    #[test]
    fn lemmas_on_real_prefix() {
        let d = [BigUint::from(30u32), BigUint::from(222_622_144_044_300u64)];
        let rep = check_sequence_lemmas(&d, 1000).unwrap();
        assert!(rep.all_ok);
        assert_eq!(rep.rows[1].nu2, 2);
        assert_eq!(rep.rows[1].ratio_primorial, Some(37));
        assert_eq!(rep.rows[1].prime_cover, Some(37));
    }

    #[test]
    fn planted_violations_are_reported() {
        let small = [BigUint::from(2u32), BigUint::from(4u32)];
        assert!(!check_sequence_lemmas(&small, 100).unwrap().all_ok);
        let not_primorial = [BigUint::from(30u32), BigUint::from(30u32 * 7)];
        let rep = check_sequence_lemmas(&not_primorial, 100).unwrap();
        assert_eq!(rep.rows[1].ratio_primorial, None);
        assert!(!rep.all_ok);
    }
}
