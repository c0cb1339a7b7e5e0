//! Separating `G_{p,q}` quotients for central elements of the
//! relation-centre groups.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::finite_hall::FiniteHall;
use super::{WitnessKind, WitnessQuotient};
use crate::error::{Error, Result};
use crate::hall::{GroupElement, QuotientSpec};
use crate::numtheory::primes::small_prime_divisors;
use crate::numtheory::{find_reduction_prime, LaurentPoly, ReductionCertificate};
use crate::params::SequenceParams;

/// Largest `2q` tried when growing the index modulus.
const MAX_INDEX_MODULUS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GintCase {
    /// Support inside `{d_j}`.
    SupportOnRelations,
    /// Some support index outside `{d_j}`.
    Reduction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GintCertificate {
    pub case: GintCase,
    pub k: usize,
    pub witness: WitnessQuotient,
    pub reduction: Option<ReductionCertificate>,
}

fn odd_prime_divisors(x: &BigInt) -> Result<Vec<u64>> {
    let (ps, rest) = small_prime_divisors(x, 1 << 20);
    if rest != num_bigint::BigUint::from(1u32) {
        return Err(Error::ParamsTooSmall(format!("cannot factor relation order {x}")));
    }
    Ok(ps.into_iter().filter(|p| *p != 2).collect())
}

fn certify(g: &GroupElement, p: u64, q: u64, params: &SequenceParams) -> Result<Option<WitnessQuotient>> {
    let fh = FiniteHall::new(p, q, params)?;
    let img = fh.phi(g)?;
    if img.is_identity() {
        return Ok(None);
    }
    if fh.order() > fh.order_bound() {
        return Err(Error::Invariant(format!("|G_{{{p},{q}}}| exceeds 2q p^(4q)")));
    }
    Ok(Some(WitnessQuotient {
        kind: WitnessKind::HallFinite { p, q },
        image: img.to_string(),
        order: fh.order(),
    }))
}

/// A `G_{p,q}` in which the central element `g != 1` survives.
pub fn gint_witness(g: &GroupElement) -> Result<GintCertificate> {
    let QuotientSpec::RelationCenter { params } = g.spec() else {
        return Err(Error::pre("g must live in a relation-centre group"));
    };
    if !g.is_central() {
        return Err(Error::pre("g must be central"));
    }
    if g.is_identity() {
        return Err(Error::pre("g is trivial"));
    }
    let c = g.c_part();
    let on_relations = c.entries().all(|(i, _)| params.relation_at(i).is_some());

    if on_relations {
        let (k, gamma) = c
            .entries()
            .filter_map(|(i, v)| params.relation_at(i).map(|(j, _)| (j, v.clone())))
            .min_by_key(|(j, _)| *j)
            .unwrap();
        let p = odd_prime_divisors(&params.q[k])?
            .into_iter()
            .find(|p| !(&gamma % p).is_zero())
            .ok_or_else(|| {
                Error::ParamsTooSmall(format!("every odd prime of q_{k} divides {gamma}"))
            })?;
        let mut q = 1u64 << (k + 1);
        while 2 * q <= MAX_INDEX_MODULUS {
            if let Some(witness) = certify(g, p, q, params)? {
                return Ok(GintCertificate { case: GintCase::SupportOnRelations, k, witness, reduction: None });
            }
            q *= 2;
        }
        return Err(Error::Invariant(format!("no power-of-two q up to {MAX_INDEX_MODULUS} separates {g}")));
    }

    let n = c.max_index().unwrap();
    let k = params.d.iter().position(|&d| d > n).ok_or_else(|| {
        Error::ParamsTooSmall(format!("no relation index d_k exceeds the support bound {n}"))
    })?;
    let mut f = LaurentPoly::zero();
    for (i, v) in c.entries() {
        f.add_term(i, v);
        f.add_term(-i, &-v);
    }
    let exempt: BTreeSet<i64> =
        std::iter::once(0).chain(params.d.iter().flat_map(|&d| [d, -d])).collect();
    let mut m0 = 1u64 << (k + 1);
    while exempt.iter().map(|l| l.rem_euclid(m0 as i64)).collect::<BTreeSet<_>>().len() < exempt.len() {
        m0 *= 2;
        if m0 > MAX_INDEX_MODULUS {
            return Err(Error::ParamsTooSmall("relation indices do not separate modulo powers of two".into()));
        }
    }
    let red = find_reduction_prime(&f, &exempt, m0, n)?;
    let bar = red.surviving_coeff.abs();
    let p = odd_prime_divisors(&params.q[k])?
        .into_iter()
        .find(|p| BigInt::from(*p) > bar)
        .ok_or_else(|| {
            Error::ParamsTooSmall(format!("q_{k} = {} has no odd prime divisor above {bar}", params.q[k]))
        })?;
    let q = red.modulus / 2;
    let witness = certify(g, p, q, params)?.ok_or_else(|| {
        Error::Invariant(format!("G_{{{p},{q}}} does not separate {g}"))
    })?;
    Ok(GintCertificate { case: GintCase::Reduction, k, witness, reduction: Some(red) })
}

/// `|gamma|` bound used when sizing parameters: the largest central exponent.
pub fn max_exponent(g: &GroupElement) -> u64 {
    g.c_part().entries().map(|(_, v)| v.abs().to_u64().unwrap_or(u64::MAX)).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall::CentralVector;
    use crate::witness::verify_witness;

    fn toy() -> QuotientSpec {
        QuotientSpec::relation(SequenceParams::toy())
    }

    #[test]
    fn case_one_on_d0() {
        let spec = toy();
        let g = GroupElement::c_pow(&spec, 2, 3);
        let cert = gint_witness(&g).unwrap();
        assert_eq!(cert.case, GintCase::SupportOnRelations);
        assert_eq!(cert.k, 0);
        let WitnessKind::HallFinite { p, .. } = cert.witness.kind else { panic!() };
        assert_eq!(p, 5);
        assert!(verify_witness(&g, &cert.witness).unwrap().nontrivial);
    }

    #[test]
    fn case_two_on_c1() {
        let spec = toy();
        let g = GroupElement::c(&spec, 1);
        let cert = gint_witness(&g).unwrap();
        assert_eq!(cert.case, GintCase::Reduction);
        assert!(verify_witness(&g, &cert.witness).unwrap().nontrivial);
    }

    #[test]
    fn trivial_and_non_central_rejected() {
        let spec = toy();
        assert!(gint_witness(&GroupElement::c_pow(&spec, 2, 35)).is_err());
        assert!(gint_witness(&GroupElement::a(&spec, 0)).is_err());
    }

    #[test]
    fn too_small_params_reported() {
        let spec = toy();
        let g = GroupElement::central(&spec, CentralVector::from_entries([(5, 1)]));
        assert!(matches!(gint_witness(&g), Err(Error::ParamsTooSmall(_))));
    }
}
