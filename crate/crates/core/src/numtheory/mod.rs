//! Number theory used by the separation witnesses.

pub mod laurent;
pub mod primes;
pub mod quad;

pub use laurent::{
    find_reduction_prime, laurent_fold, membership_in_m_plus_iq, verify_reduction, LaurentPoly,
    ReductionCertificate,
};
pub use quad::{
    find_small_prime_not_dividing, find_split_prime_avoiding, multiplicative_order, QuadInt,
    SplitPrimeWitness,
};
