//! Integer Laurent polynomials reduced modulo `X^L - 1`, and the search for a
//! small odd prime `q` that keeps a polynomial outside `M + <X^lcm(q,m0) - 1>`
//! where `M` is the free span of a few exempt monomials.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::primes;
use crate::error::{Error, Result};

/// Finitely supported map from degree to non-zero integer coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(deg: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(deg, &coeff.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, &c.into());
        }
        p
    }

    pub fn add_term(&mut self, deg: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(deg).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, deg: i64) -> BigInt {
        self.coeffs.get(&deg).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c);
        }
        out
    }

    /// Largest `|degree|` in the support (0 for the zero polynomial).
    pub fn radius(&self) -> i64 {
        self.coeffs.keys().map(|d| d.abs()).max().unwrap_or(0)
    }
}

/// Coefficientwise reduction modulo `X^L - 1`: class `r` collects every
/// coefficient of degree `= r (mod L)`. Zero classes are omitted.
pub fn laurent_fold(f: &LaurentPoly, modulus: u64) -> Result<BTreeMap<u64, BigInt>> {
    if modulus == 0 {
        return Err(Error::pre("fold modulus must be >= 1"));
    }
    let l = modulus as i128;
    let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (d, c) in f.terms() {
        let r = (d as i128).rem_euclid(l) as u64;
        *out.entry(r).or_default() += c;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn exempt_classes(exempt: &BTreeSet<i64>, modulus: u64) -> Result<BTreeSet<u64>> {
    let mut classes = BTreeSet::new();
    for &l in exempt {
        let r = (l as i128).rem_euclid(modulus as i128) as u64;
        if !classes.insert(r) {
            return Err(Error::pre(format!(
                "exempt degrees collide modulo {modulus} (class {r})"
            )));
        }
    }
    Ok(classes)
}

/// Whether `f` lies in `M + <X^L - 1>` with `M = sum_{l in exempt} Z X^l`.
/// Since `M` has free integer coefficients this holds exactly when every
/// fold class outside the exempt classes is zero.
pub fn membership_in_m_plus_iq(
    f: &LaurentPoly,
    exempt: &BTreeSet<i64>,
    modulus: u64,
) -> Result<bool> {
    let classes = exempt_classes(exempt, modulus)?;
    let fold = laurent_fold(f, modulus)?;
    Ok(fold.keys().all(|r| classes.contains(r)))
}

/// Certificate that `f` survives modulo `X^lcm(q, m0) - 1` outside `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub q: u64,
    pub m0: u64,
    pub modulus: u64,
    /// A fold class outside the exempt classes with non-zero coefficient.
    pub surviving_class: u64,
    pub surviving_coeff: BigInt,
    /// Upper end of the guaranteed search range (see [`sum_threshold_prime`]).
    pub guaranteed_bound: u64,
}

/// Smallest odd prime `Q` such that the odd primes `q <= Q` satisfy
/// `sum (q - 1) > span`. Products of the corresponding cyclotomic polynomials
/// have degree exceeding `span`, so among those primes one always separates a
/// polynomial of degree span `span` from `M`.
pub fn sum_threshold_prime(span: u64) -> u64 {
    let mut total = 0u64;
    for q in primes::primes().skip(1) {
        total += q - 1;
        if total > span {
            return q;
        }
    }
    unreachable!()
}

/// Smallest odd prime `q` with `f` outside `M + <X^lcm(q, m0) - 1>`.
///
/// Preconditions: `f != 0`, support in `[-n, n]`, `f` not in `M`, exempt
/// degrees pairwise distinct modulo `m0`. The search never needs to pass
/// [`sum_threshold_prime`] of the degree span; reaching it is reported as an
/// invariant failure.
pub fn find_reduction_prime(
    f: &LaurentPoly,
    exempt: &BTreeSet<i64>,
    m0: u64,
    n: i64,
) -> Result<ReductionCertificate> {
    if f.is_zero() {
        return Err(Error::pre("f must be non-zero"));
    }
    if m0 == 0 {
        return Err(Error::pre("m0 must be positive"));
    }
    if f.radius() > n {
        return Err(Error::pre(format!("support of f exceeds [-{n}, {n}]")));
    }
    if f.support().all(|d| exempt.contains(&d)) {
        return Err(Error::pre("f lies in M"));
    }
    exempt_classes(exempt, m0)?;

    let lo = f.support().chain(exempt.iter().copied()).min().unwrap_or(0);
    let hi = f.support().chain(exempt.iter().copied()).max().unwrap_or(0);
    let bound = sum_threshold_prime((hi - lo) as u64);

    for q in primes::primes().skip(1).take_while(|&q| q <= bound) {
        let modulus = q.lcm(&m0);
        let classes = exempt_classes(exempt, modulus)?;
        let fold = laurent_fold(f, modulus)?;
        if let Some((&r, c)) = fold.iter().find(|(r, _)| !classes.contains(r)) {
            return Ok(ReductionCertificate {
                q,
                m0,
                modulus,
                surviving_class: r,
                surviving_coeff: c.clone(),
                guaranteed_bound: bound,
            });
        }
    }
    Err(Error::Invariant(format!(
        "no odd prime up to the guaranteed bound {bound} separates f from M"
    )))
}

/// Re-check a certificate against the membership criterion.
pub fn verify_reduction(
    f: &LaurentPoly,
    exempt: &BTreeSet<i64>,
    cert: &ReductionCertificate,
) -> Result<bool> {
    if cert.modulus != cert.q.lcm(&cert.m0) || cert.q % 2 == 0 || !primes::is_prime(cert.q) {
        return Ok(false);
    }
    let fold = laurent_fold(f, cert.modulus)?;
    let coeff_ok = fold.get(&cert.surviving_class) == Some(&cert.surviving_coeff);
    Ok(coeff_ok && !membership_in_m_plus_iq(f, exempt, cert.modulus)? && {
        let classes = exempt_classes(exempt, cert.modulus)?;
        !classes.contains(&cert.surviving_class)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(xs: &[i64]) -> BTreeSet<i64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn fold_examples() {
        let f = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
        let fold = laurent_fold(&f, 12).unwrap();
        assert_eq!(fold, BTreeMap::from([(1, BigInt::from(1)), (11, BigInt::from(-1))]));

        let g = LaurentPoly::from_terms([(5, 1), (-7, 1)]);
        assert_eq!(laurent_fold(&g, 12).unwrap(), BTreeMap::from([(5, BigInt::from(2))]));
    }

    #[test]
    fn membership_examples() {
        let exempt = set(&[0, 2]);
        assert!(membership_in_m_plus_iq(&LaurentPoly::monomial(2, 1), &exempt, 12).unwrap());
        let f = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
        assert!(!membership_in_m_plus_iq(&f, &exempt, 12).unwrap());
        assert!(membership_in_m_plus_iq(&LaurentPoly::zero(), &exempt, 12).unwrap());
        assert!(membership_in_m_plus_iq(&f, &set(&[0, 12]), 12).is_err());
    }

    #[test]
    fn reduction_prime_examples() {
        let f = LaurentPoly::from_terms([(1, 1), (-1, -1)]);
        // 2 and -2 share a class mod 4, so the symmetric set needs m0 = 8
        assert!(find_reduction_prime(&f, &set(&[0, 2, -2]), 4, 2).is_err());
        let exempt = set(&[0, 2]);
        let cert = find_reduction_prime(&f, &exempt, 4, 2).unwrap();
        assert_eq!(cert.q, 3);
        assert_eq!(cert.modulus, 12);
        assert!(verify_reduction(&f, &exempt, &cert).unwrap());

        let in_m = LaurentPoly::monomial(2, 5);
        assert!(find_reduction_prime(&in_m, &exempt, 4, 2).is_err());
        assert!(find_reduction_prime(&LaurentPoly::zero(), &exempt, 4, 2).is_err());
    }

    #[test]
    fn threshold_prime() {
        // 2 + 4 = 6 > 5, and 2 <= 5
        assert_eq!(sum_threshold_prime(5), 5);
        assert_eq!(sum_threshold_prime(1), 3);
        assert_eq!(sum_threshold_prime(6), 7);
    }

    fn poly(n: i64) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-n..=n, -5i64..=5), 0..8).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn fold_is_linear(f in poly(30), g in poly(30), l in 1u64..40) {
            let lhs = laurent_fold(&f.add(&g), l).unwrap();
            let mut rhs = laurent_fold(&f, l).unwrap();
            for (r, c) in laurent_fold(&g, l).unwrap() {
                *rhs.entry(r).or_default() += c;
            }
            rhs.retain(|_, c| !c.is_zero());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
