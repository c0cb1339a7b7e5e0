//! Finite quotients of `G_d` when `d mod q` is periodic: indices mod `I`,
//! a-exponents mod `M` (a multiple of `q`), centre `Z/q`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::dfunc::DFunction;
use crate::error::{Error, Result};
use crate::hall::{GroupElement, QuotientSpec};

#[derive(Debug, Clone)]
pub struct PeriodicQuotient {
    d: Arc<DFunction>,
    i_mod: u64,
    m: u64,
    q: u64,
    dvals: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicElement {
    pub t: u64,
    pub a: Vec<u64>,
    pub c: u64,
}

impl fmt::Display for PeriodicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.t != 0 {
            parts.push(format!("t^{}", self.t));
        }
        for (i, e) in self.a.iter().enumerate().filter(|(_, e)| **e != 0) {
            parts.push(format!("a_{i}^{e}"));
        }
        if self.c != 0 {
            parts.push(format!("c_1^{}", self.c));
        }
        if parts.is_empty() { f.write_str("1") } else { f.write_str(&parts.join(" ")) }
    }
}

impl PeriodicQuotient {
    /// Checks `d(i + I) = d(i) (mod q)` for `i` in `[-I, 2I)`; exact for
    /// periodic `d`, windowed evidence otherwise.
    pub fn new(d: Arc<DFunction>, i_mod: u64, m: u64, q: u64) -> Result<Self> {
        if i_mod == 0 || q < 2 || m == 0 || m % q != 0 {
            return Err(Error::pre("need I >= 1, q >= 2 and q | M"));
        }
        if q % 2 == 0 && m % (2 * q) != 0 {
            return Err(Error::pre("even q needs 2q | M"));
        }
        let qb = BigInt::from(q);
        let res = |i: i64| d.eval(i).mod_floor(&qb).to_u64().unwrap();
        let il = i_mod as i64;
        if (-il..2 * il).any(|i| res(i) != res(i + il)) {
            return Err(Error::pre(format!("d mod {q} is not {i_mod}-periodic")));
        }
        let dvals = (0..il).map(res).collect();
        Ok(PeriodicQuotient { d, i_mod, m, q, dvals })
    }

    pub fn order(&self) -> num_bigint::BigUint {
        num_bigint::BigUint::from(self.m).pow(self.i_mod as u32) * self.i_mod * self.q
    }

    pub fn identity(&self) -> PeriodicElement {
        PeriodicElement { t: 0, a: vec![0; self.i_mod as usize], c: 0 }
    }

    fn n_mul(&self, v: &[u64], c: u64, w: &[u64], c2: u64) -> (Vec<u64>, u64) {
        let q = self.q as u128;
        let mut acc = (c as u128 + c2 as u128) % q;
        for (j, wj) in w.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (i, vi) in v.iter().enumerate().skip(j + 1).filter(|(_, x)| **x != 0) {
                acc = (acc + (*vi as u128 % q) * (*wj as u128 % q) % q * self.dvals[i - j] as u128) % q;
            }
        }
        (v.iter().zip(w).map(|(x, y)| (x + y) % self.m).collect(), acc as u64)
    }

    fn n_shift(&self, v: &[u64], c: u64, s: i64) -> (Vec<u64>, u64) {
        let len = self.i_mod as i64;
        let mut acc = (vec![0; len as usize], c);
        for (i, vi) in v.iter().enumerate().filter(|(_, x)| **x != 0) {
            let mut gen = vec![0; len as usize];
            gen[(i as i64 + s).rem_euclid(len) as usize] = *vi;
            acc = self.n_mul(&acc.0, acc.1, &gen, 0);
        }
        acc
    }

    pub fn mul(&self, g: &PeriodicElement, h: &PeriodicElement) -> PeriodicElement {
        let (v, c) = self.n_shift(&g.a, g.c, -(h.t as i64));
        let (a, c) = self.n_mul(&v, c, &h.a, h.c);
        PeriodicElement { t: (g.t + h.t) % self.i_mod, a, c }
    }

    pub fn inverse(&self, g: &PeriodicElement) -> PeriodicElement {
        let neg: Vec<u64> = g.a.iter().map(|x| (self.m - x) % self.m).collect();
        // (v, c)^-1 = (-v, -c + beta(v, v))
        let (_, bvv) = self.n_mul(&g.a, 0, &g.a, 0);
        let c = (2 * self.q - g.c % self.q + bvv) % self.q;
        let (a, c) = self.n_shift(&neg, c, g.t as i64);
        PeriodicElement { t: (self.i_mod - g.t) % self.i_mod, a, c }
    }

    pub fn phi(&self, x: &GroupElement) -> Result<PeriodicElement> {
        match x.spec() {
            QuotientSpec::CyclicCenter { d } if **d == *self.d => {}
            other => return Err(Error::SpecMismatch { left: other.descriptor(), right: self.d.descriptor() }),
        }
        let modulo = |v: &BigInt, m: u64| v.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        let mut g = PeriodicElement { t: x.t_exp().rem_euclid(self.i_mod as i64) as u64, ..self.identity() };
        for (i, v) in x.a_part().entries() {
            let mut a = self.identity();
            a.a[i.rem_euclid(self.i_mod as i64) as usize] = modulo(v, self.m);
            g = self.mul(&g, &a);
        }
        g.c = (g.c + modulo(&x.c_part().get(1), self.q)) % self.q;
        Ok(g)
    }

    fn conj(&self, g: &PeriodicElement, x: &PeriodicElement) -> PeriodicElement {
        self.mul(&self.mul(x, g), &self.inverse(x))
    }

    /// Exact conjugacy test for `g1` with trivial `t`-part: conjugators are
    /// `t^s n`, and `n` contributes exactly the subgroup of `Z/q`
    /// generated by the commutators `[a_k, g1]`.
    pub fn is_conjugate(&self, g1: &PeriodicElement, g2: &PeriodicElement) -> Result<bool> {
        if g1.t != 0 {
            return Err(Error::pre("the linear test needs g1 with trivial t-part"));
        }
        if g2.t != 0 {
            return Ok(false);
        }
        let mut span = self.q;
        for k in 0..self.i_mod {
            let mut ak = self.identity();
            ak.a[k as usize] = 1;
            let comm = self.mul(&self.conj(g1, &ak), &self.inverse(g1));
            debug_assert!(comm.t == 0 && comm.a.iter().all(|x| *x == 0));
            span = span.gcd(&comm.c);
        }
        for s in 0..self.i_mod {
            let ts = PeriodicElement { t: s, ..self.identity() };
            let moved = self.conj(g1, &ts);
            if moved.a != g2.a {
                continue;
            }
            let diff = (g2.c + self.q - moved.c) % self.q;
            if diff % span == 0 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Conjugacy by scanning the whole group; only for small quotients.
    pub fn is_conjugate_brute_force(&self, g1: &PeriodicElement, g2: &PeriodicElement) -> Result<bool> {
        if self.order() > num_bigint::BigUint::from(2_000_000u32) {
            return Err(Error::pre("quotient too large for exhaustive search"));
        }
        let len = self.i_mod as usize;
        let mut a = vec![0u64; len];
        loop {
            for t in 0..self.i_mod {
                let x = PeriodicElement { t, a: a.clone(), c: 0 };
                if &self.conj(g1, &x) == g2 {
                    return Ok(true);
                }
            }
            let mut pos = 0;
            while pos < len {
                a[pos] += 1;
                if a[pos] < self.m {
                    break;
                }
                a[pos] = 0;
                pos += 1;
            }
            if pos == len {
                return Ok(false);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi3() -> Arc<DFunction> {
        Arc::new(DFunction::Periodic { values: vec![0, 1, -1] })
    }

    #[test]
    fn phi_is_a_homomorphism() {
        let d = chi3();
        let spec = QuotientSpec::CyclicCenter { d: d.clone() };
        let pq = PeriodicQuotient::new(d, 6, 6, 3).unwrap();
        let ball = crate::hall::enumerate_ball(&spec, 4).unwrap();
        for (x, g) in ball.iter().enumerate() {
            let h = &ball[(x * 13 + 7) % ball.len()];
            assert_eq!(pq.phi(&g.mul(h).unwrap()).unwrap(), pq.mul(&pq.phi(g).unwrap(), &pq.phi(h).unwrap()));
            let gi = pq.phi(g).unwrap();
            assert_eq!(pq.mul(&gi, &pq.inverse(&gi)), pq.identity());
        }
    }

    #[test]
    fn rejects_non_periodic() {
        let d = Arc::new(DFunction::Identity);
        assert!(PeriodicQuotient::new(d.clone(), 4, 6, 3).is_err());
        assert!(PeriodicQuotient::new(d, 3, 6, 3).is_ok());
        assert!(PeriodicQuotient::new(chi3(), 3, 4, 3).is_err());
    }

    #[test]
    fn linear_test_matches_brute_force() {
        let d = chi3();
        let pq = PeriodicQuotient::new(d.clone(), 3, 3, 3).unwrap();
        let spec = QuotientSpec::CyclicCenter { d };
        let ball = crate::hall::enumerate_ball(&spec, 3).unwrap();
        let c = GroupElement::c(&spec, 1);
        for g in ball.iter().filter(|g| g.t_exp() == 0) {
            let g1 = pq.phi(g).unwrap();
            for extra in [GroupElement::identity(&spec), c.clone(), GroupElement::a(&spec, 1)] {
                let g2 = pq.phi(&g.mul(&extra).unwrap()).unwrap();
                assert_eq!(pq.is_conjugate(&g1, &g2).unwrap(), pq.is_conjugate_brute_force(&g1, &g2).unwrap(), "{g}");
            }
        }
    }
}
