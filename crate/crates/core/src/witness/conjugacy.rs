//! Conjugacy tools for the cyclic-centre groups `G_d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dfunc::{nu3, DFunction, HallD, PrimeFunction};
use crate::error::{Error, Result};
use crate::hall::{enumerate_ball, ball_layers, CentralValue, GroupElement, QuotientSpec};
use crate::numtheory::primes;

fn cyclic_value(g: &GroupElement) -> Result<BigInt> {
    match g.central_value() {
        CentralValue::Cyclic(x) if g.is_central() => Ok(x),
        _ => Err(Error::pre(format!("{g} is not a central element of a cyclic-centre group"))),
    }
}

fn nu3_or_inf(x: i64) -> u32 {
    if x == 0 { u32::MAX } else { nu3(x) }
}

/// Exponent of `c_1` in `[a_0 a_{n0} ... a_{(3^i - 1) n0}, a_j]`, in closed
/// form: `d(jt - j)` where `jt` is the series index congruent to `j` modulo
/// `3^{i + nu3(n0)}`.
pub fn comm_with_series(n0: i64, i: u32, j: i64, d: &DFunction) -> Result<BigInt> {
    if n0 <= 0 {
        return Err(Error::pre("n0 must be positive"));
    }
    let v = nu3(n0);
    if nu3_or_inf(j) < v {
        return Err(Error::pre(format!("nu3({n0}) > nu3({j})")));
    }
    let len = 3i64.checked_pow(i).ok_or(Error::IndexOverflow)?;
    let modulus = len.checked_mul(3i64.pow(v)).ok_or(Error::IndexOverflow)?;
    let m = (0..len)
        .find(|m| (m * n0 - j).rem_euclid(modulus) == 0)
        .ok_or_else(|| Error::Invariant("no series index matches j".into()))?;
    Ok(d.eval(m * n0 - j))
}

/// The same exponent, computed by multiplying out in `G_d`.
pub fn comm_with_series_direct(n0: i64, i: u32, j: i64, spec: &QuotientSpec) -> Result<BigInt> {
    let len = 3i64.checked_pow(i).ok_or(Error::IndexOverflow)?;
    let mut g = GroupElement::identity(spec);
    for m in 0..len {
        g = g.mul(&GroupElement::a(spec, m * n0))?;
    }
    cyclic_value(&g.commutator(&GroupElement::a(spec, j))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConjVerdict {
    /// `P'(hit) = p` for some `hit > i`.
    Conjugate { hit: u64 },
    NotConjugate,
    Unknown,
}

/// Decide whether `g1 = a_0 a_1 ... a_{3^i - 1}` and `g1 c_1^{n(i)/p^i}` are
/// conjugate in `G_d` by looking for `P'(j) = p` with `j > i`.
pub fn conj_membership_test(i: u32, p: u64, pf: &PrimeFunction, search_bound: u64) -> Result<ConjVerdict> {
    if !primes::is_prime(p) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    if primes::prime_index(p).is_none_or(|k| k as u32 >= i) {
        return Err(Error::pre(format!("{p} does not divide n0({i})")));
    }
    if let Some(hit) = (i as u64 + 1..=search_bound).find(|&j| pf.reduced(j) == p) {
        return Ok(ConjVerdict::Conjugate { hit });
    }
    Ok(if pf.silent_after(p, search_bound) { ConjVerdict::NotConjugate } else { ConjVerdict::Unknown })
}

/// The pair `(g1, g2)` that [`conj_membership_test`] is about.
pub fn membership_pair(i: u32, p: u64, d: &HallD, spec: &QuotientSpec) -> Result<(GroupElement, GroupElement)> {
    let len = 3i64.pow(i);
    let mut g1 = GroupElement::identity(spec);
    for m in 0..len {
        g1 = g1.mul(&GroupElement::a(spec, m))?;
    }
    let n = d.n(i);
    let pi = BigInt::from(p).pow(i);
    if !(&n % &pi).is_zero() {
        return Err(Error::pre(format!("p^i does not divide n({i})")));
    }
    let g2 = g1.mul(&GroupElement::c_pow(spec, 1, n / pi))?;
    Ok((g1, g2))
}

/// `x` with `x g1 x^-1 = g2` and `||x|| <= radius`, least in norm then in
/// canonical order.
pub fn bounded_conjugacy_search(g1: &GroupElement, g2: &GroupElement, radius: u32) -> Result<Option<GroupElement>> {
    if g1.spec() != g2.spec() {
        return Err(Error::SpecMismatch { left: g1.spec().descriptor(), right: g2.spec().descriptor() });
    }
    for layer in ball_layers(g1.spec(), radius)? {
        for x in layer {
            if &g1.conjugate_by(&x)? == g2 {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

/// Result of [`conjugacy_in_n_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NConjugacy {
    /// gcd of `[a_k, g1]` over the scanned `k`.
    pub commutator_gcd: BigInt,
    /// Exponent `e` with `g2 = g1 c_1^e`, when the a- and t-parts agree.
    pub target: Option<BigInt>,
    /// Verified conjugator `prod a_k^{m_k}`.
    pub conjugator: Option<GroupElement>,
}

/// Conjugators from `N`: `x g1 x^-1 = [x, g1] g1` and `[x, g1]` is linear
/// in the a-part of `x`, so `g2` is reachable exactly when its central
/// offset lies in the span of the `[a_k, g1]`. Scans `|k| <= index_bound`.
pub fn conjugacy_in_n_search(g1: &GroupElement, g2: &GroupElement, index_bound: i64) -> Result<NConjugacy> {
    let spec = g1.spec();
    if !matches!(spec, QuotientSpec::CyclicCenter { .. }) {
        return Err(Error::pre("needs a cyclic-centre group"));
    }
    let offset = g2.mul(&g1.inverse()?)?;
    let target = if offset.is_central() { Some(cyclic_value(&offset)?) } else { None };
    let mut gcd = BigInt::zero();
    let mut combo: Vec<(i64, BigInt)> = Vec::new();
    for k in -index_bound..=index_bound {
        let eps = cyclic_value(&GroupElement::a(spec, k).commutator(g1)?)?;
        if eps.is_zero() || (!gcd.is_zero() && (&eps % &gcd).is_zero()) {
            continue;
        }
        let ext = gcd.extended_gcd(&eps);
        for (_, m) in combo.iter_mut() {
            *m *= &ext.x;
        }
        combo.push((k, ext.y));
        gcd = ext.gcd;
        if gcd.is_one() {
            break;
        }
    }
    let mut conjugator = None;
    if let Some(e) = &target {
        if !gcd.is_zero() && (e % &gcd).is_zero() {
            let scale = e / &gcd;
            let mut x = GroupElement::identity(spec);
            for (k, m) in &combo {
                x = x.mul(&GroupElement::a_pow(spec, *k, m * &scale))?;
            }
            if &g1.conjugate_by(&x)? != g2 {
                return Err(Error::Invariant("Bezout conjugator failed to verify".into()));
            }
            conjugator = Some(x);
        } else if e.is_zero() {
            conjugator = Some(GroupElement::identity(spec));
        }
    }
    Ok(NConjugacy { commutator_gcd: gcd.abs(), target, conjugator })
}

/// `I = P q (4 delta + 2) max(1, |n_t|)`.
pub fn modulus_formula(period: u64, q: u64, delta: u64, n_t: i64) -> u64 {
    period * q * (4 * delta + 2) * n_t.unsigned_abs().max(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SeparationOutcome {
    /// Centre mod `q`, indices mod `i_mod`.
    Separated { q: u64, delta: u64, n_t: i64, i_mod: u64, commutator_gcd: String },
    /// The found commutators already reach `c`.
    Conjugate { commutator_gcd: String },
    Unknown,
}

/// Parameters `(q, I)` of a finite quotient in which `g1` and `g1 c` stay
/// non-conjugate, for `G_d` with `d mod q` of period `period`. The
/// commutator span `[Z, g1]` is approximated by `x` in the ball of the given
/// radius together with `a_k`, `|k| <= index_radius`.
pub fn separating_parameters(
    g1: &GroupElement,
    c: &GroupElement,
    period: u64,
    radius: u32,
    index_radius: i64,
) -> Result<SeparationOutcome> {
    let spec = g1.spec();
    if !matches!(spec, QuotientSpec::CyclicCenter { .. }) {
        return Err(Error::pre("needs a cyclic-centre group"));
    }
    let e = cyclic_value(c)?;
    if e.is_zero() {
        return Err(Error::pre("c must be non-trivial"));
    }
    let mut gcd = BigInt::zero();
    let mut xs = enumerate_ball(spec, radius)?;
    xs.extend((-index_radius..=index_radius).map(|k| GroupElement::a(spec, k)));
    for x in &xs {
        let k = x.commutator(g1)?;
        if k.is_central() {
            gcd = gcd.gcd(&cyclic_value(&k)?);
        }
    }
    if gcd.is_zero() && !g1.is_central() {
        return Ok(SeparationOutcome::Unknown);
    }
    if !gcd.is_zero() && (&e % &gcd).is_zero() {
        return Ok(SeparationOutcome::Conjugate { commutator_gcd: gcd.to_string() });
    }
    let q = (2u64..)
        .find(|&q| !(&e % gcd.gcd(&BigInt::from(q))).is_zero())
        .expect("q = 2|e| + 1 never divides e");
    let delta = g1.a_part().radius().unsigned_abs();
    let n_t = g1.t_exp();
    Ok(SeparationOutcome::Separated {
        q,
        delta,
        n_t,
        i_mod: modulus_formula(period, q, delta, n_t),
        commutator_gcd: gcd.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dfunc::ExponentConvention;
    use crate::witness::PeriodicQuotient;

    #[test]
    fn series_example() {
        let d = DFunction::hall_trivial();
        let spec = QuotientSpec::cyclic(d.clone());
        assert_eq!(comm_with_series(1, 1, 3, &d).unwrap(), BigInt::from(-4));
        assert_eq!(comm_with_series_direct(1, 1, 3, &spec).unwrap(), BigInt::from(-4));
        for j in -20..=20 {
            assert_eq!(comm_with_series(1, 0, j, &d).unwrap(), d.eval(-j));
        }
        assert!(comm_with_series(3, 1, 1, &d).is_err());
    }

    #[test]
    fn series_matches_direct_small() {
        let d = DFunction::hall_trivial();
        let spec = QuotientSpec::cyclic(d.clone());
        for n0 in 1..=3 {
            for i in 0..=2 {
                for j in -15..=15i64 {
                    if nu3_or_inf(j) < nu3(n0) {
                        continue;
                    }
                    assert_eq!(
                        comm_with_series(n0, i, j, &d).unwrap(),
                        comm_with_series_direct(n0, i, j, &spec).unwrap(),
                        "n0={n0} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn membership_preconditions() {
        assert!(conj_membership_test(1, 3, &PrimeFunction::Trivial, 10).is_err());
        assert!(conj_membership_test(1, 4, &PrimeFunction::Trivial, 10).is_err());
        assert_eq!(conj_membership_test(1, 2, &PrimeFunction::Trivial, 10).unwrap(), ConjVerdict::NotConjugate);
        let pf = PrimeFunction::KthPrime { lag: 3 };
        assert_eq!(conj_membership_test(1, 2, &pf, 10).unwrap(), ConjVerdict::Conjugate { hit: 3 });
        assert_eq!(conj_membership_test(3, 2, &pf, 10).unwrap(), ConjVerdict::NotConjugate);
        let late = PrimeFunction::Scripted { entries: vec![(50, 2)] };
        assert_eq!(conj_membership_test(1, 2, &late, 10).unwrap(), ConjVerdict::Unknown);
    }

    #[test]
    fn bounded_search_examples() {
        let spec = QuotientSpec::FreeCenter;
        let g1 = GroupElement::parse("a_0 a_2^3", &spec).unwrap();
        let t = GroupElement::t(&spec);
        let g2 = g1.conjugate_by(&t).unwrap();
        let x = bounded_conjugacy_search(&g1, &g2, 3).unwrap().unwrap();
        assert_eq!(g1.conjugate_by(&x).unwrap(), g2);
        assert!(bounded_conjugacy_search(&g1, &g1, 0).unwrap().unwrap().is_identity());
        // a_1 a_0 a_1^-1 = a_0 c_1, while [x, a_0^2] has even exponents
        let a0 = GroupElement::a(&spec, 0);
        let c1 = GroupElement::c(&spec, 1);
        let a0c = a0.mul(&c1).unwrap();
        assert_eq!(a0.conjugate_by(&GroupElement::a(&spec, 1)).unwrap(), a0c);
        let x = bounded_conjugacy_search(&a0, &a0c, 3).unwrap().unwrap();
        assert_eq!(a0.conjugate_by(&x).unwrap(), a0c);
        let sq = a0.pow(2).unwrap();
        assert!(bounded_conjugacy_search(&sq, &sq.mul(&c1).unwrap(), 6).unwrap().is_none());
    }

    #[test]
    fn membership_ground_truth() {
        for (i, p, hit_gcd, e) in [(1u32, 2u64, 1i64, 2i64), (2, 3, 8, 24)] {
            let hit = PrimeFunction::Scripted { entries: vec![(i as u64 + 2, p)] };
            let control = PrimeFunction::Trivial;
            for (pf, conj) in [(hit, true), (control, false)] {
                let hd = HallD::new(pf.clone(), ExponentConvention::JPlusOne);
                let spec = QuotientSpec::cyclic(DFunction::Hall(hd.clone()));
                let (g1, g2) = membership_pair(i, p, &hd, &spec).unwrap();
                let r = conjugacy_in_n_search(&g1, &g2, 3i64.pow(i + 3)).unwrap();
                assert_eq!(r.target, Some(BigInt::from(e)));
                assert_eq!(r.conjugator.is_some(), conj);
                if conj {
                    assert_eq!(r.commutator_gcd, BigInt::from(hit_gcd));
                }
                let verdict = conj_membership_test(i, p, &pf, 40).unwrap();
                assert_eq!(matches!(verdict, ConjVerdict::Conjugate { .. }), conj);
            }
        }
    }

    #[test]
    fn separating_parameters_examples() {
        let d = DFunction::hall_trivial();
        let spec = QuotientSpec::cyclic(d);
        for p in [2i64, 3, 5] {
            let g1 = GroupElement::a_pow(&spec, 0, p);
            let c = GroupElement::c(&spec, 1);
            match separating_parameters(&g1, &c, 3, 2, 10).unwrap() {
                SeparationOutcome::Separated { q, .. } => assert_eq!(q as i64, p),
                other => panic!("{other:?}"),
            }
        }
        assert_eq!(modulus_formula(2, 3, 0, 1), 12);
    }

    #[test]
    fn tiny_instance_separates() {
        let d = Arc::new(DFunction::Periodic { values: vec![0, 1, -1] });
        let spec = QuotientSpec::CyclicCenter { d: d.clone() };
        let g1 = GroupElement::a_pow(&spec, 1, 3);
        let c = GroupElement::c(&spec, 1);
        let SeparationOutcome::Separated { q, delta, n_t, i_mod, .. } =
            separating_parameters(&g1, &c, 3, 3, 12).unwrap()
        else {
            panic!()
        };
        assert_eq!((q, delta, n_t, i_mod), (3, 1, 0, 54));
        let pq = PeriodicQuotient::new(d, i_mod, 2 * q, q).unwrap();
        let x = pq.phi(&g1).unwrap();
        let y = pq.phi(&g1.mul(&c).unwrap()).unwrap();
        assert!(!pq.is_conjugate(&x, &y).unwrap());
        assert!(pq.is_conjugate(&x, &x).unwrap());
    }
}
