//! Lower-bound probe for `G_d`: the element `g = c_1^L`, `L = lcm(1..n)`,
//! scanned against the periodic quotients `PeriodicQuotient(d, T, M, q)`.
//!
//! Any `q` that separates `g` must miss some prime power up to `n`, so the
//! image of `c_1` has order at least `n + 1`, and `t` must have order at
//! least `3^{f(n)}` (the period of `d mod q`). The probe records both and
//! checks them against every separating quotient it finds.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dfunc::{lcm_upto, period_mod, DFunction, GrowthFn};
use crate::error::{Error, Result};
use crate::hall::{GroupElement, QuotientSpec};
use crate::witness::PeriodicQuotient;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeEntry {
    pub q: u64,
    /// Certified period of `d mod q`, the order of `t` in the quotient.
    pub period: u64,
    pub separates: bool,
    /// Order of the image of `c_1`.
    pub c1_order: u64,
    #[serde(with = "crate::witness::decimal")]
    pub order: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub n: u64,
    pub d: String,
    pub lcm: String,
    pub element: String,
    /// `2 L + 6`, the norm bound for `g`.
    pub norm_bound: String,
    /// `g` is non-trivial in `G_d`.
    pub separable: bool,
    /// `3^{f(n)}`, for fast-growth `d`.
    pub t_order_bound: Option<String>,
    pub entries: Vec<ProbeEntry>,
    /// Smallest quotient order among separating entries.
    pub min_order: Option<String>,
    /// Every separating entry meets both mechanism bounds.
    pub bounds_hold: bool,
}

fn growth_of(d: &DFunction) -> Option<&GrowthFn> {
    match d {
        DFunction::FastGrowth(fg) => Some(&fg.f),
        _ => None,
    }
}

/// Scan `q = 2..=q_max`. Moduli with no period up to `period_bound` are
/// skipped. The `t`-order bound is only checked for fast-growth `d`.
pub fn rf_lower_probe(d: Arc<DFunction>, n: u64, q_max: u64, period_bound: u64) -> Result<ProbeReport> {
    if n == 0 {
        return Err(Error::pre("n must be >= 1"));
    }
    let spec = QuotientSpec::CyclicCenter { d: d.clone() };
    let l = lcm_upto(n);
    let g = GroupElement::c_pow(&spec, 1, l.clone());
    let t_bound = growth_of(&d).map(|f| BigInt::from(3u32).pow(f.eval(n).min(u32::MAX as u128) as u32));
    let mut report = ProbeReport {
        n,
        d: d.descriptor(),
        lcm: l.to_string(),
        element: g.to_string(),
        norm_bound: (&l * 2u32 + 6u32).to_string(),
        separable: !g.is_identity(),
        t_order_bound: t_bound.as_ref().map(|b| b.to_string()),
        entries: Vec::new(),
        min_order: None,
        bounds_hold: true,
    };
    if !report.separable {
        return Ok(report);
    }
    let mut min: Option<BigUint> = None;
    for q in 2..=q_max {
        let Some(cert) = period_mod(&d, q, period_bound)? else { continue };
        let m = if q % 2 == 0 { 2 * q } else { q };
        let quotient = PeriodicQuotient::new(d.clone(), cert.period, m, q)?;
        let image = quotient.phi(&g)?;
        let separates = image != quotient.identity();
        let expected = !(&l % q).is_zero();
        if separates != expected {
            return Err(Error::Invariant(format!("image of {g} mod {q} disagrees with L mod q")));
        }
        let order = quotient.order();
        if separates {
            let ok = q > n && t_bound.as_ref().is_none_or(|b| BigInt::from(cert.period) >= *b);
            report.bounds_hold &= ok;
            if min.as_ref().is_none_or(|m| &order < m) {
                min = Some(order.clone());
            }
        }
        report.entries.push(ProbeEntry { q, period: cert.period, separates, c1_order: q, order });
    }
    report.min_order = min.map(|m| m.to_string());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fast_identity() -> Arc<DFunction> {
        Arc::new(DFunction::fast_growth(GrowthFn::Identity).unwrap())
    }

    #[test]
    fn identity_growth_n3() {
        let rep = rf_lower_probe(fast_identity(), 3, 9, 100_000).unwrap();
        assert_eq!(rep.lcm, "6");
        assert!(rep.separable);
        assert_eq!(rep.t_order_bound.as_deref(), Some("27"));
        assert!(rep.bounds_hold);
        let sep: Vec<u64> = rep.entries.iter().filter(|e| e.separates).map(|e| e.q).collect();
        assert_eq!(sep, vec![4, 5, 7, 8, 9]);
        assert!(rep.entries.iter().filter(|e| e.separates).all(|e| e.period >= 27));
    }

    #[test]
    fn n1_is_separable() {
        let rep = rf_lower_probe(fast_identity(), 1, 5, 10_000).unwrap();
        assert_eq!(rep.element, "c_1");
        assert!(rep.min_order.is_some());
        assert!(rep.bounds_hold);
    }

    #[test]
    fn trivial_centre_is_not_separable() {
        let rep = rf_lower_probe(Arc::new(DFunction::Zero), 2, 5, 1000).unwrap();
        assert!(!rep.separable);
        assert!(rep.entries.is_empty());
        assert_eq!(rep.min_order, None);
    }
}
