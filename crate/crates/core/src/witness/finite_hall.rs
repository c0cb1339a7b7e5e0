//! The finite quotients `G_{p,q}` of the relation-centre groups: indices
//! mod `2q`, `t^{2q} = a_i^p = c_i^p = 1`, plus the relations
//! `c_{d_j}^{q_j} = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::WitnessCheck;
use crate::error::{Error, Result};
use crate::hall::{GroupElement, QuotientSpec};
use crate::numtheory::primes;
use crate::numtheory::LaurentPoly;
use crate::params::SequenceParams;

/// Indices `i in [1, q-1]` with `i != +-d_j (mod 2q)` whenever `p` does not
/// divide `q_j`; these `c_i` form a `Z/p` basis of the centre of `G_{p,q}`.
pub fn build_cpq_basis(p: u64, q: u64, params: &SequenceParams) -> Result<Vec<u64>> {
    check_pq(p, q)?;
    let killed = killed_residues(p, q, params);
    Ok((1..q).filter(|i| !killed[*i as usize]).collect())
}

fn check_pq(p: u64, q: u64) -> Result<()> {
    if p < 3 || !primes::is_prime(p) {
        return Err(Error::pre(format!("p = {p} must be an odd prime")));
    }
    if q < 2 {
        return Err(Error::pre(format!("q = {q} must be at least 2")));
    }
    Ok(())
}

/// `killed[r]` for `r in [0, 2q)`.
fn killed_residues(p: u64, q: u64, params: &SequenceParams) -> Vec<bool> {
    let m = 2 * q as i64;
    let mut killed = vec![false; m as usize];
    for (d, qj) in params.d.iter().zip(&params.q) {
        if !(qj % p).is_zero() {
            killed[d.rem_euclid(m) as usize] = true;
            killed[(-d).rem_euclid(m) as usize] = true;
        }
    }
    killed
}

#[derive(Debug, Clone)]
pub struct FiniteHall {
    p: u64,
    q: u64,
    basis: Vec<u64>,
    killed: Vec<bool>,
}

/// `t^t * prod a_i^{a[i]} * prod c_i^{c[i]}` with `i` taken in `[0, 2q)`;
/// `c` is indexed by `[0, q)` and vanishes off the basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteHallElement {
    pub t: u64,
    pub a: Vec<u64>,
    pub c: Vec<u64>,
}

impl FiniteHallElement {
    pub fn is_identity(&self) -> bool {
        self.t == 0 && self.a.iter().all(|x| *x == 0) && self.c.iter().all(|x| *x == 0)
    }

    pub fn is_central(&self) -> bool {
        self.t == 0 && self.a.iter().all(|x| *x == 0)
    }
}

impl fmt::Display for FiniteHallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.t != 0 {
            parts.push(format!("t^{}", self.t));
        }
        for (i, e) in self.a.iter().enumerate().filter(|(_, e)| **e != 0) {
            parts.push(format!("a_{i}^{e}"));
        }
        for (i, e) in self.c.iter().enumerate().filter(|(_, e)| **e != 0) {
            parts.push(format!("c_{i}^{e}"));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl FiniteHall {
    pub fn new(p: u64, q: u64, params: &SequenceParams) -> Result<Self> {
        check_pq(p, q)?;
        let killed = killed_residues(p, q, params);
        let basis = (1..q).filter(|i| !killed[*i as usize]).collect();
        Ok(FiniteHall { p, q, basis, killed })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    fn m(&self) -> u64 {
        2 * self.q
    }

    /// `|G_{p,q}| = 2q * p^{2q + |basis|}`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.m()) * BigUint::from(self.p).pow((self.m() + self.basis.len() as u64) as u32)
    }

    /// The bound `2q p^{4q}`.
    pub fn order_bound(&self) -> BigUint {
        BigUint::from(self.m()) * BigUint::from(self.p).pow(4 * self.q as u32)
    }

    pub fn identity(&self) -> FiniteHallElement {
        FiniteHallElement { t: 0, a: vec![0; self.m() as usize], c: vec![0; self.q as usize] }
    }

    fn modp(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Add `e * c_idx` to a centre vector, applying `c_{-i} = c_i^-1`,
    /// `c_0 = c_q = 1` and the killed indices.
    fn add_central(&self, c: &mut [u64], idx: i64, e: u64) {
        let m = self.m() as i64;
        let r = idx.rem_euclid(m) as u64;
        if r == 0 || r == self.q || self.killed[r as usize] {
            return;
        }
        let (r, e) = if r > self.q { (self.m() - r, (self.p - e % self.p) % self.p) } else { (r, e % self.p) };
        c[r as usize] = (c[r as usize] + e) % self.p;
    }

    /// `(v, c) * (w, c')` inside `N_{p,q}`.
    fn n_mul(&self, v: &[u64], c: &[u64], w: &[u64], c2: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let p = self.p;
        let mut out_c: Vec<u64> = c.iter().zip(c2).map(|(x, y)| (x + y) % p).collect();
        for (j, wj) in w.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (i, vi) in v.iter().enumerate().skip(j + 1).filter(|(_, x)| **x != 0) {
                let e = (*vi as u128 * *wj as u128 % p as u128) as u64;
                self.add_central(&mut out_c, (i - j) as i64, e);
            }
        }
        let out_a = v.iter().zip(w).map(|(x, y)| (x + y) % p).collect();
        (out_a, out_c)
    }

    /// `t^s (v, c) t^-s`, by re-multiplying the shifted generator powers.
    fn n_shift(&self, v: &[u64], c: &[u64], s: i64) -> (Vec<u64>, Vec<u64>) {
        let m = self.m() as i64;
        let mut acc_a = vec![0; self.m() as usize];
        let mut acc_c = c.to_vec();
        let zero_c = vec![0; self.q as usize];
        for (i, vi) in v.iter().enumerate().filter(|(_, x)| **x != 0) {
            let mut gen = vec![0; self.m() as usize];
            gen[(i as i64 + s).rem_euclid(m) as usize] = *vi;
            (acc_a, acc_c) = self.n_mul(&acc_a, &acc_c, &gen, &zero_c);
        }
        (acc_a, acc_c)
    }

    pub fn mul(&self, g: &FiniteHallElement, h: &FiniteHallElement) -> FiniteHallElement {
        // t^k n t^k' n' = t^{k+k'} (t^-k' n t^k') n'
        let (v, c) = self.n_shift(&g.a, &g.c, -(h.t as i64));
        let (a, c) = self.n_mul(&v, &c, &h.a, &h.c);
        FiniteHallElement { t: (g.t + h.t) % self.m(), a, c }
    }

    pub fn t_pow(&self, k: i64) -> FiniteHallElement {
        FiniteHallElement { t: k.rem_euclid(self.m() as i64) as u64, ..self.identity() }
    }

    pub fn a_pow(&self, i: i64, e: &BigInt) -> FiniteHallElement {
        let mut g = self.identity();
        g.a[i.rem_euclid(self.m() as i64) as usize] = self.modp(e);
        g
    }

    pub fn c_pow(&self, i: i64, e: &BigInt) -> FiniteHallElement {
        let mut g = self.identity();
        let e = self.modp(e);
        self.add_central(&mut g.c, i, e);
        g
    }

    /// The quotient map, evaluated as the product of generator images.
    pub fn phi(&self, x: &GroupElement) -> Result<FiniteHallElement> {
        if !matches!(x.spec(), QuotientSpec::FreeCenter | QuotientSpec::RelationCenter { .. }) {
            return Err(Error::pre("G_{p,q} is a quotient of G0 and of the relation-centre groups only"));
        }
        let mut g = self.t_pow(x.t_exp());
        for (i, v) in x.a_part().entries() {
            g = self.mul(&g, &self.a_pow(i, v));
        }
        for (i, v) in x.c_part().entries() {
            g = self.mul(&g, &self.c_pow(i, v));
        }
        Ok(g)
    }

    /// `delta(c_i) = c_i - c_{-i}` into the module on `[-q+1, q-1]`.
    pub fn delta(&self, c: &[u64]) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for (i, e) in c.iter().enumerate().filter(|(_, e)| **e != 0) {
            out.insert(i as i64, *e);
            out.insert(-(i as i64), self.p - e);
        }
        out
    }

    /// `X^i -> c_{i'}` with `i' = i (mod 2q)` in `(-q, q]`, then reduced to
    /// the basis of the signed module.
    pub fn pi_tilde(&self, f: &LaurentPoly) -> BTreeMap<i64, u64> {
        let m = self.m() as i64;
        let q = self.q as i64;
        let mut acc: BTreeMap<i64, u64> = BTreeMap::new();
        for (i, v) in f.terms() {
            let mut r = i.rem_euclid(m);
            if r > q {
                r -= m;
            }
            if r == 0 || r == q || self.killed[r.rem_euclid(m) as usize] {
                continue;
            }
            let slot = acc.entry(r).or_insert(0);
            *slot = (*slot + self.modp(v)) % self.p;
        }
        acc.retain(|_, v| *v != 0);
        acc
    }
}

pub(super) fn verify(g: &GroupElement, p: u64, q: u64) -> Result<WitnessCheck> {
    let params = match g.spec() {
        QuotientSpec::RelationCenter { params } => params.clone(),
        QuotientSpec::FreeCenter => Arc::new(SequenceParams { d: vec![], q: vec![] }),
        other => return Err(Error::MalformedWitness(format!("G_{{p,q}} is not a quotient of {other}"))),
    };
    let fh = FiniteHall::new(p, q, &params).map_err(|e| Error::MalformedWitness(e.to_string()))?;
    let img = fh.phi(g)?;
    Ok(WitnessCheck { nontrivial: !img.is_identity(), image: img.to_string(), order: fh.order() })
}
