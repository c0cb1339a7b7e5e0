//! Finite quotients that separate a given element from the identity or a
//! pair of elements from conjugacy, each shipped with a verification.

mod centralizer;
mod conjugacy;
mod finite_hall;
mod gint;
mod lamplighter;
mod periodic;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use centralizer::{
    centralizer_generators, enumerate_centralizer, generated_subgroup, Centralizer, Wreath, WreathElement,
};
pub use conjugacy::{
    bounded_conjugacy_search, comm_with_series, membership_pair, comm_with_series_direct, conj_membership_test,
    conjugacy_in_n_search, modulus_formula, separating_parameters, ConjVerdict, NConjugacy,
    SeparationOutcome,
};
pub use finite_hall::{build_cpq_basis, FiniteHall, FiniteHallElement};
pub use gint::{gint_witness, max_exponent, GintCase, GintCertificate};
pub use lamplighter::{lamplighter_witness, LampGroup, LampImage};
pub use periodic::{PeriodicQuotient, PeriodicElement};

/// Kind of finite quotient a witness names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessKind {
    /// `Z/p ⋊ Z/r`, `t` acting by `(1 + s)^k` where `s^2 = 2 (mod p)`.
    Lamplighter { p: u64, s: u64, k: i64, r: u64 },
    /// `G_{p,q}`: indices mod `2q`, exponents mod `p`.
    HallFinite { p: u64, q: u64 },
    /// `Z/p` through the `t`-exponent.
    CyclicZ { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessQuotient {
    #[serde(flatten)]
    pub kind: WitnessKind,
    /// Rendering of the separated element's image.
    pub image: String,
    #[serde(with = "decimal")]
    pub order: BigUint,
}

/// Outcome of evaluating a witness homomorphism on an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub nontrivial: bool,
    pub image: String,
    pub order: BigUint,
}

/// Evaluate the quotient map named by `w` on `g`.
pub fn verify_witness(g: &crate::hall::GroupElement, w: &WitnessQuotient) -> crate::Result<WitnessCheck> {
    match &w.kind {
        WitnessKind::Lamplighter { .. } | WitnessKind::CyclicZ { .. } => lamplighter::verify(g, &w.kind),
        WitnessKind::HallFinite { p, q } => finite_hall::verify(g, *p, *q),
    }
}

pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
