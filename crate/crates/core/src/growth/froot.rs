//! Piecewise compositional `n`-th roots of `exp`.
//!
//! Given breakpoints `0 = c_0 < c_1 < ... < c_n = 1`, the base map `f0`
//! sends `[c_i, c_{i+1}]` linearly onto `[c_{i+1}, c_{i+2}]` for `i <= n - 2`
//! and `[c_{n-1}, 1]` onto `[1, e^{c_1}]` via
//! `y -> exp(c_0 + (c_1 - c_0) / (1 - c_{n-1}) * (y - c_{n-1}))`.
//! On `[exp^k(0), exp^k(1)]` the root is `exp^k . f0 . log^k`, and applying
//! it `n` times gives `exp`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{exp_bounds, rational_to_f64, Interval, PRECISION_LADDER};
use super::logscale::LogScaleNumber;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CompRoot {
    breakpoints: Vec<BigRational>,
    fb: Vec<f64>,
}

impl CompRoot {
    pub fn new(breakpoints: Vec<BigRational>) -> Result<Self> {
        if breakpoints.len() < 3 {
            return Err(Error::pre("a compositional root needs order n >= 2"));
        }
        if !breakpoints[0].is_zero() || !breakpoints.last().unwrap().is_one() {
            return Err(Error::pre("breakpoints must start at 0 and end at 1"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::pre("breakpoints must be strictly increasing"));
        }
        let fb = breakpoints.iter().map(rational_to_f64).collect();
        Ok(CompRoot { breakpoints, fb })
    }

    /// Breakpoints `c_i = i / n`.
    pub fn equally_spaced(n: u32) -> Result<Self> {
        let n = n.max(1) as i64;
        Self::new((0..=n).map(|i| BigRational::new(i.into(), n.into())).collect())
    }

    /// The `n` with `f^n = exp`.
    pub fn order(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    fn last_slope_f64(&self) -> f64 {
        let n = self.order();
        (self.fb[1] - self.fb[0]) / (1.0 - self.fb[n - 1])
    }

    /// The base map on `[0, 1]`.
    pub fn f0(&self, y: f64) -> f64 {
        let c = &self.fb;
        let n = self.order();
        if y >= c[n - 1] {
            return (c[0] + self.last_slope_f64() * (y - c[n - 1])).exp();
        }
        let i = c.partition_point(|&ci| ci <= y).saturating_sub(1).min(n - 2);
        c[i + 1] + (c[i + 2] - c[i + 1]) / (c[i + 1] - c[i]) * (y - c[i])
    }

    /// Inverse of [`Self::f0`] on its range `[c_1, e^{c_1}]`.
    pub fn f0_inverse(&self, w: f64) -> f64 {
        let c = &self.fb;
        let n = self.order();
        if w > 1.0 {
            return c[n - 1] + (w.ln() - c[0]) / self.last_slope_f64();
        }
        // w in [c_{i+1}, c_{i+2}] with i <= n - 2
        let j = c.partition_point(|&ci| ci <= w).saturating_sub(1).clamp(1, n - 1);
        let i = j - 1;
        c[i] + (w - c[i + 1]) * (c[i + 1] - c[i]) / (c[i + 2] - c[i + 1])
    }

    /// `f(x)` in double precision; fails when the value leaves the `f64`
    /// range (use [`Self::eval_log`] there).
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::pre(format!("argument must be >= 0, got {x}")));
        }
        let v = self.eval_log(LogScaleNumber::from_f64(x));
        v.to_f64().ok_or_else(|| Error::pre("value exceeds the f64 range"))
    }

    pub fn iterate(&self, x: f64, times: u32) -> Result<f64> {
        let mut v = x;
        for _ in 0..times {
            v = self.eval(v)?;
        }
        Ok(v)
    }

    pub fn eval_log(&self, x: LogScaleNumber) -> LogScaleNumber {
        let one = LogScaleNumber::from_f64(1.0);
        let mut y = x;
        let mut k = 0;
        while y > one {
            y = y.ln().expect("value above 1");
            k += 1;
        }
        let mut out = LogScaleNumber::from_f64(self.f0(y.mantissa().clamp(0.0, 1.0)));
        for _ in 0..k {
            out = out.exp();
        }
        out
    }

    pub fn iterate_log(&self, x: LogScaleNumber, times: u32) -> LogScaleNumber {
        (0..times).fold(x, |v, _| self.eval_log(v))
    }

    /// `f^{-1}(z)`, defined for `z >= f(0) = c_1`.
    pub fn inverse_log(&self, z: LogScaleNumber) -> Result<LogScaleNumber> {
        let c1 = self.fb[1];
        if z < LogScaleNumber::from_f64(c1) {
            return Err(Error::pre("argument below f(0)"));
        }
        let top = LogScaleNumber::from_f64(c1.exp());
        let mut w = z;
        let mut k = 0;
        while w > top {
            w = w.ln().expect("value above 1");
            k += 1;
        }
        let y = self.f0_inverse(w.mantissa()).clamp(0.0, 1.0);
        let mut out = LogScaleNumber::from_f64(y);
        for _ in 0..k {
            out = out.exp();
        }
        Ok(out)
    }

    fn f0_point(&self, y: &BigRational, prec: u32) -> Interval {
        let c = &self.breakpoints;
        let n = self.order();
        if y >= &c[n - 1] {
            let slope = (&c[1] - &c[0]) / (BigRational::one() - &c[n - 1]);
            return exp_bounds(&(&c[0] + slope * (y - &c[n - 1])), prec);
        }
        let i = c.partition_point(|ci| ci <= y).saturating_sub(1).min(n - 2);
        let v = &c[i + 1] + (&c[i + 2] - &c[i + 1]) / (&c[i + 1] - &c[i]) * (y - &c[i]);
        Interval::point(v)
    }

    /// Enclosure of `f(x)` at an exact point, or `None` when `x` sits too
    /// close to a tower boundary for this precision.
    pub fn eval_point(&self, x: &BigRational, prec: u32) -> Result<Option<Interval>> {
        if x.is_negative() {
            return Err(Error::pre("argument must be >= 0"));
        }
        let one = BigRational::one();
        let mut y = Interval::point(x.clone());
        let mut k = 0;
        loop {
            if y.hi <= one {
                break;
            }
            if y.lo <= one {
                return Ok(None);
            }
            y = y.ln(prec)?;
            k += 1;
        }
        if y.lo.is_negative() {
            y.lo = BigRational::zero();
        }
        let mut out = Interval::new(self.f0_point(&y.lo, prec).lo, self.f0_point(&y.hi, prec).hi);
        for _ in 0..k {
            out = out.exp(prec);
        }
        Ok(Some(out))
    }

    /// Enclosure of `f^times(x)` with relative width below `2^-bits`,
    /// raising the working precision as needed.
    pub fn iterate_certified(&self, x: &BigRational, times: u32, bits: u32) -> Result<Interval> {
        let start = PRECISION_LADDER.iter().position(|&p| p >= bits + 32).unwrap_or(PRECISION_LADDER.len() - 1);
        'ladder: for &prec in &PRECISION_LADDER[start..] {
            let mut cur = Interval::point(x.clone());
            for _ in 0..times {
                let lo = self.eval_point(&cur.lo, prec)?;
                let hi = self.eval_point(&cur.hi, prec)?;
                match (lo, hi) {
                    (Some(lo), Some(hi)) => cur = Interval::new(lo.lo, hi.hi),
                    _ => continue 'ladder,
                }
            }
            if cur.is_tight(bits) {
                return Ok(cur);
            }
        }
        Err(Error::SearchExhausted { what: "working precision".into(), bound: 4096 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root() -> CompRoot {
        CompRoot::equally_spaced(10).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(CompRoot::new(vec![BigRational::zero(), BigRational::one()]).is_err());
        let half = BigRational::new(1.into(), 2.into());
        assert!(CompRoot::new(vec![BigRational::zero(), half.clone(), half.clone(), BigRational::one()]).is_err());
        assert!(CompRoot::new(vec![BigRational::zero(), half, BigRational::one()]).is_ok());
        assert_eq!(root().order(), 10);
    }

    #[test]
    fn base_values() {
        let r = root();
        assert!((r.eval(0.0).unwrap() - 0.1).abs() < 1e-15);
        assert!((r.iterate(0.0, 10).unwrap() - 1.0).abs() < 1e-9);
        assert!(r.eval(-1.0).is_err());
    }

    #[test]
    fn value_at_thirty() {
        // equal spacing: f = exp^3(log^3(x) + 1/10) while log^3(x) <= 9/10
        let direct = (30f64.ln().ln().ln() + 0.1).exp().exp().exp();
        let got = root().eval(30.0).unwrap();
        assert!((got - direct).abs() < 1e-10 * direct);
        assert!((got - 47.8711).abs() < 1e-3);
        let cert = root().iterate_certified(&BigRational::from_integer(30.into()), 1, 80).unwrap();
        // 47.871141790154365802354... from an independent 50-digit evaluation
        let scale = BigRational::from_integer(10i64.pow(18).into());
        let lo = BigRational::new(47_871_141_790_154_365_802i128.into(), 1.into()) / &scale;
        let hi = BigRational::new(47_871_141_790_154_365_803i128.into(), 1.into()) / &scale;
        assert!(cert.lo >= lo && cert.hi <= hi);
    }

    #[test]
    fn continuity_at_breakpoints_and_tower_boundaries() {
        let r = root();
        let mut points: Vec<f64> = (1..10).map(|i| i as f64 / 10.0).collect();
        points.extend([1.0, 1f64.exp(), 1f64.exp().exp()]);
        for p in points {
            let l = r.eval(p * (1.0 - 1e-13)).unwrap();
            let h = r.eval(p * (1.0 + 1e-13)).unwrap();
            assert!((l - h).abs() < 1e-9 * h.max(1.0), "jump at {p}: {l} vs {h}");
        }
    }

    #[test]
    fn inverse_round_trip() {
        let r = root();
        for x in [0.0, 0.05, 0.95, 1.0, 2.5, 30.0, 1e6] {
            let fx = r.eval_log(LogScaleNumber::from_f64(x));
            let back = r.inverse_log(fx).unwrap().to_f64().unwrap();
            assert!((back - x).abs() < 1e-9 * x.max(1.0), "{x} -> {back}");
        }
        assert!(r.inverse_log(LogScaleNumber::from_f64(0.05)).is_err());
    }

    #[test]
    fn ninth_iterate_is_inverse_of_exp() {
        let r = root();
        for x in [0.5, 2.0, 7.0] {
            let direct = r.iterate(x, 9).unwrap();
            let via = r.inverse_log(LogScaleNumber::from_f64(x).exp()).unwrap().to_f64().unwrap();
            assert!((direct - via).abs() < 1e-9 * via, "{x}: {direct} vs {via}");
        }
    }

    #[test]
    fn unequal_breakpoints_still_give_a_root() {
        let bp = [0, 5, 30, 31, 60, 100]
            .iter()
            .map(|&i| BigRational::new(i.into(), 100.into()))
            .collect();
        let r = CompRoot::new(bp).unwrap();
        for x in [0.0, 0.3, 1.2, 2.9] {
            let v = r.iterate(x, 5).unwrap();
            assert!((v - f64::exp(x)).abs() < 1e-9 * f64::exp(x));
        }
    }
}
