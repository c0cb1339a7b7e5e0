//! Separating quotients of `Z wr Z` of the form `Z/p ⋊ Z/r`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{WitnessCheck, WitnessKind, WitnessQuotient};
use crate::error::{Error, Result};
use crate::hall::GroupElement;
use crate::numtheory::primes::pow_mod;
use crate::numtheory::quad::{multiplicative_order, split_primes_from};
use crate::numtheory::{find_small_prime_not_dividing, SplitPrimeWitness};

/// `Z/p ⋊ Z/r` with `(x, n)(y, m) = (x + mu^n y, n + m)`, `mu^r = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LampGroup {
    pub p: u64,
    pub r: u64,
    pub mu: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LampImage {
    pub x: u64,
    pub n: u64,
}

impl LampGroup {
    pub fn identity(&self) -> LampImage {
        LampImage { x: 0, n: 0 }
    }

    pub fn mul(&self, g: LampImage, h: LampImage) -> LampImage {
        let act = pow_mod(self.mu, g.n, self.p);
        let x = (g.x as u128 + act as u128 * h.x as u128) % self.p as u128;
        LampImage { x: x as u64, n: (g.n + h.n) % self.r }
    }

    pub fn pow(&self, g: LampImage, e: &BigInt) -> LampImage {
        let inv = self.inverse(g);
        let (base, e) = if e.sign() == num_bigint::Sign::Minus { (inv, -e) } else { (g, e.clone()) };
        let mut acc = self.identity();
        let mut b = base;
        let mut e = e.to_biguint().unwrap();
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, g: LampImage) -> LampImage {
        let n = (self.r - g.n) % self.r;
        // (x, n)^-1 = (-mu^{-n} x, -n)
        let scaled = (pow_mod(self.mu, n, self.p) as u128 * g.x as u128 % self.p as u128) as u64;
        LampImage { x: (self.p - scaled) % self.p, n }
    }

    pub fn order(&self) -> u64 {
        self.p * self.r
    }
}

fn lambda_pow(w: &SplitPrimeWitness, k: i64, i: i64) -> u64 {
    let lam = w.unit_residue();
    let e = (k as i128 * i as i128).rem_euclid((w.p - 1) as i128) as u64;
    pow_mod(lam, e, w.p)
}

/// `sum gamma_i lambda^{k i} (mod p)`.
fn series_residue(g: &GroupElement, w: &SplitPrimeWitness, k: i64) -> u64 {
    let p = BigInt::from(w.p);
    let mut acc = BigInt::zero();
    for (i, v) in g.a_part().entries() {
        acc += v * lambda_pow(w, k, i);
    }
    acc.mod_floor(&p).to_u64().unwrap()
}

/// `k = 0, 1, -1, 2, -2, ...` up to `|k| <= bound`.
fn k_order(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|m| [m, -m]))
}

/// Smallest separating quotient in the order (p, then k, then r); `g` is
/// read through its image in `Z wr Z`.
pub fn lamplighter_witness(g: &GroupElement) -> Result<WitnessQuotient> {
    let g = g.project_to_lamplighter();
    if g.is_identity() {
        return Err(Error::pre("g must be non-trivial in Z wr Z"));
    }
    let kind = if g.t_exp() != 0 {
        WitnessKind::CyclicZ { p: find_small_prime_not_dividing(&BigInt::from(g.t_exp()))? }
    } else {
        let n = g.a_part().radius();
        let mut found = None;
        for w in split_primes_from(3) {
            if let Some(k) = k_order(n + 1).find(|&k| series_residue(&g, &w, k) != 0) {
                let mu = lambda_pow(&w, k, 1);
                found = Some(WitnessKind::Lamplighter {
                    p: w.p,
                    s: w.s,
                    k,
                    r: multiplicative_order(mu, w.p)?,
                });
                break;
            }
        }
        found.expect("some split prime separates a non-zero polynomial")
    };
    let check = verify(&g, &kind)?;
    if !check.nontrivial {
        return Err(Error::Invariant(format!("witness {kind:?} does not separate {g}")));
    }
    Ok(WitnessQuotient { kind, image: check.image, order: check.order })
}

pub(super) fn verify(g: &GroupElement, kind: &WitnessKind) -> Result<WitnessCheck> {
    let g = g.project_to_lamplighter();
    match *kind {
        WitnessKind::CyclicZ { p } => {
            if p < 2 || !crate::numtheory::primes::is_prime(p) {
                return Err(Error::MalformedWitness(format!("{p} is not prime")));
            }
            let x = g.t_exp().rem_euclid(p as i64);
            Ok(WitnessCheck {
                nontrivial: x != 0,
                image: format!("{x} mod {p}"),
                order: BigUint::from(p),
            })
        }
        WitnessKind::Lamplighter { p, s, k, r } => {
            let w = SplitPrimeWitness { p, s };
            if !w.is_valid() {
                return Err(Error::MalformedWitness(format!("{s}^2 != 2 mod {p}")));
            }
            let mu = lambda_pow(&w, k, 1);
            if r == 0 || multiplicative_order(mu, p)? != r {
                return Err(Error::MalformedWitness(format!("r = {r} is not the order of {mu} mod {p}")));
            }
            let group = LampGroup { p, r, mu };
            let t_img = LampImage { x: 0, n: 1 % r };
            let mut img = group.pow(t_img, &BigInt::from(g.t_exp()));
            for (i, v) in g.a_part().entries() {
                let a_img = LampImage { x: lambda_pow(&w, k, i), n: 0 };
                img = group.mul(img, group.pow(a_img, v));
            }
            Ok(WitnessCheck {
                nontrivial: img != group.identity(),
                image: format!("({}, {})", img.x, img.n),
                order: BigUint::from(group.order()),
            })
        }
        WitnessKind::HallFinite { .. } => Err(Error::MalformedWitness("not a lamplighter witness".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall::QuotientSpec;
    use crate::witness::verify_witness;

    fn ll(text: &str) -> GroupElement {
        GroupElement::parse(text, &QuotientSpec::TrivialCenter).unwrap()
    }

    #[test]
    fn examples() {
        let w = lamplighter_witness(&ll("t^3")).unwrap();
        assert_eq!(w.kind, WitnessKind::CyclicZ { p: 2 });
        let g = ll("a_0 a_1^-1");
        let w = lamplighter_witness(&g).unwrap();
        assert_eq!(w.kind, WitnessKind::Lamplighter { p: 7, s: 3, k: 1, r: 3 });
        assert_eq!(w.order, BigUint::from(21u32));
        let check = verify_witness(&g, &w).unwrap();
        assert!(check.nontrivial);
        let w0 = lamplighter_witness(&ll("a")).unwrap();
        assert!(matches!(w0.kind, WitnessKind::Lamplighter { p: 7, .. }));
        assert!(!verify_witness(&ll("1"), &w).unwrap().nontrivial);
        assert!(lamplighter_witness(&ll("1")).is_err());
    }

    #[test]
    fn malformed_witness_rejected() {
        let g = ll("a");
        let bad = WitnessQuotient {
            kind: WitnessKind::Lamplighter { p: 7, s: 2, k: 1, r: 3 },
            image: String::new(),
            order: BigUint::from(21u32),
        };
        assert!(matches!(verify_witness(&g, &bad), Err(Error::MalformedWitness(_))));
    }

    #[test]
    fn witness_map_is_a_homomorphism() {
        let spec = QuotientSpec::TrivialCenter;
        let ball = crate::hall::enumerate_ball(&spec, 5).unwrap();
        let w = SplitPrimeWitness { p: 17, s: 6 };
        assert!(w.is_valid());
        let mu = lambda_pow(&w, 2, 1);
        let r = multiplicative_order(mu, 17).unwrap();
        let kind = WitnessKind::Lamplighter { p: 17, s: 6, k: 2, r };
        let group = LampGroup { p: 17, r, mu };
        let image = |g: &GroupElement| -> LampImage {
            let text = verify(g, &kind).unwrap().image;
            let nums: Vec<u64> =
                text.trim_matches(|c| c == '(' || c == ')').split(", ").map(|x| x.parse().unwrap()).collect();
            LampImage { x: nums[0], n: nums[1] }
        };
        for (x, g) in ball.iter().enumerate().take(1000) {
            let h = &ball[(x * 31 + 11) % ball.len()];
            assert_eq!(image(&g.mul(h).unwrap()), group.mul(image(g), image(h)));
        }
    }
}
