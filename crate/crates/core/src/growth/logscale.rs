//! Non-negative reals too large for `f64`, stored as `exp^h(m)`.
//!
//! Canonical form: height 0 holds any finite `m >= 0`; height `h >= 1`
//! holds `m > ln(f64::MAX)`, so every value has exactly one representation
//! and the order is lexicographic on `(height, mantissa)`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ln(f64::MAX)`: the largest mantissa whose exponential still fits.
pub const LN_F64_MAX: f64 = 709.782712893384;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScaleNumber {
    height: u32,
    mantissa: f64,
}

impl LogScaleNumber {
    pub fn new(height: u32, mantissa: f64) -> Result<Self> {
        if !mantissa.is_finite() || mantissa < 0.0 {
            return Err(Error::pre(format!("mantissa must be finite and >= 0, got {mantissa}")));
        }
        let mut x = LogScaleNumber { height, mantissa };
        while x.height > 0 && x.mantissa <= LN_F64_MAX {
            x.mantissa = x.mantissa.exp();
            x.height -= 1;
        }
        Ok(x)
    }

    /// Panics on negative or non-finite input.
    pub fn from_f64(x: f64) -> Self {
        Self::new(0, x).expect("finite non-negative value")
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn to_f64(&self) -> Option<f64> {
        (self.height == 0).then_some(self.mantissa)
    }

    /// `exp(self)`.
    pub fn exp(&self) -> Self {
        if self.height == 0 && self.mantissa <= LN_F64_MAX {
            LogScaleNumber { height: 0, mantissa: self.mantissa.exp() }
        } else {
            LogScaleNumber { height: self.height + 1, mantissa: self.mantissa }
        }
    }

    /// `ln(self)`, defined for values `>= 1`.
    pub fn ln(&self) -> Option<Self> {
        match self.height {
            0 if self.mantissa >= 1.0 => Some(LogScaleNumber { height: 0, mantissa: self.mantissa.ln() }),
            0 => None,
            h => Some(LogScaleNumber { height: h - 1, mantissa: self.mantissa }),
        }
    }

    /// `c * self` for `c > 0`. At height 2 and above the factor is below the
    /// mantissa resolution and is dropped.
    pub fn mul_scalar(&self, c: f64) -> Self {
        assert!(c > 0.0);
        match self.height {
            0 => {
                let v = self.mantissa * c;
                if v.is_finite() {
                    LogScaleNumber { height: 0, mantissa: v }
                } else {
                    Self::new(1, self.mantissa.ln() + c.ln()).expect("finite")
                }
            }
            1 => Self::new(1, self.mantissa + c.ln()).expect("finite"),
            _ => *self,
        }
    }

    /// `exp^k(frac)` for `0 <= frac <= 1`: the tower coordinate `k + frac`.
    pub fn from_tower(level: u32, frac: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&frac) {
            return Err(Error::pre("tower fraction must lie in [0, 1]"));
        }
        let mut x = LogScaleNumber::from_f64(frac);
        for _ in 0..level {
            x = x.exp();
        }
        Ok(x)
    }
}

impl Eq for LogScaleNumber {}

impl PartialOrd for LogScaleNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogScaleNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height.cmp(&other.height).then(self.mantissa.total_cmp(&other.mantissa))
    }
}

impl fmt::Display for LogScaleNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.height == 0 && self.mantissa < 1e6 {
            write!(f, "{}", self.mantissa)
        } else if self.height == 0 {
            write!(f, "{:e}", self.mantissa)
        } else {
            write!(f, "exp^{}({:e})", self.height, self.mantissa)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        let x = LogScaleNumber::new(1, 30.0).unwrap();
        assert_eq!(x.height(), 0);
        assert!((x.mantissa() - 30f64.exp()).abs() < 1.0);
        let big = LogScaleNumber::new(1, 1.0686e13).unwrap();
        assert_eq!(big.height(), 1);
        assert_eq!(big.ln().unwrap().to_f64(), Some(1.0686e13));
        assert!(LogScaleNumber::new(0, -1.0).is_err());
        assert!(LogScaleNumber::new(0, f64::NAN).is_err());
    }

    #[test]
    fn exp_crosses_into_height_one() {
        let x = LogScaleNumber::from_f64(800.0).exp();
        assert_eq!((x.height(), x.mantissa()), (1, 800.0));
        assert!(x > LogScaleNumber::from_f64(f64::MAX));
        assert_eq!(x.ln().unwrap(), LogScaleNumber::from_f64(800.0));
    }

    #[test]
    fn tower_coordinates() {
        let x = LogScaleNumber::from_tower(3, 0.0).unwrap();
        assert!((x.to_f64().unwrap() - 1f64.exp().exp()).abs() < 1e-12);
        assert_eq!(LogScaleNumber::from_tower(5, 0.5).unwrap().height(), 1);
        assert_eq!(LogScaleNumber::from_tower(6, 0.5).unwrap().height(), 2);
    }

    proptest! {
        #[test]
        fn order_agrees_with_float(a in 0.0f64..1e300, b in 0.0f64..1e300) {
            let x = LogScaleNumber::from_f64(a);
            let y = LogScaleNumber::from_f64(b);
            prop_assert_eq!(x.cmp(&y), a.total_cmp(&b));
        }

        #[test]
        fn order_agrees_with_integers(a in 0u64..(1 << 53), b in 0u64..(1 << 53)) {
            let x = LogScaleNumber::from_f64(a as f64);
            let y = LogScaleNumber::from_f64(b as f64);
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
        }

        #[test]
        fn exp_is_monotone(a in 0.0f64..2000.0, b in 0.0f64..2000.0) {
            let x = LogScaleNumber::from_f64(a).exp().exp();
            let y = LogScaleNumber::from_f64(b).exp().exp();
            prop_assert!(a > b || x <= y);
        }
    }
}
