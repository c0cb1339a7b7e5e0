//! Centralisers in `B wr Z/I` for `B = Z` or `Z/m`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `B wr (Z/I)` with `B = Z` (`base_modulus = 0`) or `Z/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wreath {
    pub base_modulus: u64,
    pub i: u64,
}

/// `(h, n)` with `(h, n)(h', n') = (h + sigma^n h', n + n')` and
/// `(sigma^n h)_j = h_{j-n}`; `t = (0, 1)`, `a_j = (e_j, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub h: Vec<i64>,
    pub n: u64,
}

impl Wreath {
    pub fn new(base_modulus: u64, i: u64) -> Result<Self> {
        if i == 0 {
            return Err(Error::pre("I must be positive"));
        }
        if base_modulus == 1 {
            return Err(Error::pre("base modulus 1 gives the trivial base"));
        }
        Ok(Wreath { base_modulus, i })
    }

    fn norm(&self, x: i64) -> i64 {
        if self.base_modulus == 0 { x } else { x.rem_euclid(self.base_modulus as i64) }
    }

    pub fn element(&self, h: Vec<i64>, n: i64) -> Result<WreathElement> {
        if h.len() as u64 != self.i {
            return Err(Error::pre(format!("base vector needs {} entries", self.i)));
        }
        Ok(WreathElement {
            h: h.into_iter().map(|x| self.norm(x)).collect(),
            n: n.rem_euclid(self.i as i64) as u64,
        })
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement { h: vec![0; self.i as usize], n: 0 }
    }

    pub fn t(&self) -> WreathElement {
        WreathElement { h: vec![0; self.i as usize], n: 1 % self.i }
    }

    pub fn a(&self, j: i64) -> WreathElement {
        let mut h = vec![0; self.i as usize];
        h[j.rem_euclid(self.i as i64) as usize] = self.norm(1);
        WreathElement { h, n: 0 }
    }

    /// `sigma^s h`.
    fn shift(&self, h: &[i64], s: u64) -> Vec<i64> {
        let len = self.i as usize;
        (0..len).map(|j| h[(j + len - s as usize % len) % len]).collect()
    }

    pub fn mul(&self, g: &WreathElement, k: &WreathElement) -> WreathElement {
        let moved = self.shift(&k.h, g.n);
        WreathElement {
            h: g.h.iter().zip(&moved).map(|(x, y)| self.norm(x + y)).collect(),
            n: (g.n + k.n) % self.i,
        }
    }

    pub fn inverse(&self, g: &WreathElement) -> WreathElement {
        let n = (self.i - g.n) % self.i;
        let h = self.shift(&g.h, n).into_iter().map(|x| self.norm(-x)).collect();
        WreathElement { h, n }
    }

    pub fn commutes(&self, g: &WreathElement, k: &WreathElement) -> bool {
        self.mul(g, k) == self.mul(k, g)
    }

    /// Orbits of `j -> j + n` on `Z/I`, each listed from its least element.
    fn orbits(&self, n: u64) -> Vec<Vec<usize>> {
        let len = self.i as usize;
        let mut seen = vec![false; len];
        let mut out = Vec::new();
        for start in 0..len {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                orbit.push(j);
                j = (j + n as usize) % len;
            }
            out.push(orbit);
        }
        out
    }

    /// Solve `(1 - sigma^n) y = x`, if possible.
    fn solve_coboundary(&self, n: u64, x: &[i64]) -> Option<Vec<i64>> {
        let mut y = vec![0; self.i as usize];
        for orbit in self.orbits(n) {
            let total: i64 = orbit.iter().map(|&j| x[j]).sum();
            if self.norm(total) != 0 {
                return None;
            }
            // y_j - y_{j-n} = x_j along the orbit, starting from y = 0
            for w in orbit.windows(2) {
                y[w[1]] = self.norm(y[w[0]] + x[w[1]]);
            }
        }
        Some(y)
    }
}

/// `Z(g) = <orbit_sums, g_prime>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Centralizer {
    /// `a_j a_{j+n} ... a_{j-n}`, one per orbit of `<n>` on `Z/I`.
    pub orbit_sums: Vec<WreathElement>,
    /// `(h', n')` with `n'` the least positive shift of any element of
    /// `Z(g)`; `n'` divides `n`.
    pub g_prime: WreathElement,
}

impl Centralizer {
    pub fn generators(&self) -> Vec<WreathElement> {
        let mut out = self.orbit_sums.clone();
        out.push(self.g_prime.clone());
        out
    }
}

pub fn centralizer_generators(w: &Wreath, g: &WreathElement) -> Result<Centralizer> {
    let len = w.i as usize;
    if g.h.len() != len {
        return Err(Error::pre("element does not belong to this wreath product"));
    }
    let orbit_sums = w
        .orbits(g.n)
        .into_iter()
        .map(|orbit| {
            let mut h = vec![0; len];
            for j in orbit {
                h[j] = w.norm(1);
            }
            WreathElement { h, n: 0 }
        })
        .collect();
    for n_prime in 1..=w.i {
        let s = n_prime % w.i;
        // need (1 - sigma^n) h' = (1 - sigma^{n'}) h
        let moved = w.shift(&g.h, s);
        let x: Vec<i64> = g.h.iter().zip(&moved).map(|(a, b)| w.norm(a - b)).collect();
        if let Some(h_prime) = w.solve_coboundary(g.n, &x) {
            let g_prime = WreathElement { h: h_prime, n: s };
            debug_assert!(w.commutes(g, &g_prime));
            return Ok(Centralizer { orbit_sums, g_prime });
        }
    }
    unreachable!("n' = I always solves")
}

const ENUMERATION_LIMIT: u128 = 4_000_000;

/// Every element commuting with `g`, by exhaustive scan (finite base only).
pub fn enumerate_centralizer(w: &Wreath, g: &WreathElement) -> Result<Vec<WreathElement>> {
    if w.base_modulus == 0 {
        return Err(Error::pre("exhaustive enumeration needs a finite base"));
    }
    let size = (w.base_modulus as u128).checked_pow(w.i as u32).map(|x| x * w.i as u128);
    if size.is_none_or(|s| s > ENUMERATION_LIMIT) {
        return Err(Error::pre("wreath product too large to enumerate"));
    }
    let m = w.base_modulus as i64;
    let len = w.i as usize;
    let mut out = Vec::new();
    let mut h = vec![0i64; len];
    loop {
        for n in 0..w.i {
            let k = WreathElement { h: h.clone(), n };
            if w.commutes(g, &k) {
                out.push(k);
            }
        }
        let mut pos = 0;
        while pos < len {
            h[pos] += 1;
            if h[pos] < m {
                break;
            }
            h[pos] = 0;
            pos += 1;
        }
        if pos == len {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Subgroup generated by `gens` (finite base only), sorted.
pub fn generated_subgroup(w: &Wreath, gens: &[WreathElement]) -> Vec<WreathElement> {
    let mut seen: BTreeSet<WreathElement> = BTreeSet::from([w.identity()]);
    let mut queue = VecDeque::from([w.identity()]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = w.mul(&x, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centralizer_of_t_in_small_wreath() {
        let w = Wreath::new(2, 3).unwrap();
        let t = w.t();
        let z = centralizer_generators(&w, &t).unwrap();
        assert_eq!(z.orbit_sums, vec![w.element(vec![1, 1, 1], 0).unwrap()]);
        assert_eq!(z.g_prime, t);
        let all = enumerate_centralizer(&w, &t).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(generated_subgroup(&w, &z.generators()), all);
    }

    #[test]
    fn identity_centralizes_everything() {
        let w = Wreath::new(2, 3).unwrap();
        let z = centralizer_generators(&w, &w.identity()).unwrap();
        assert_eq!(generated_subgroup(&w, &z.generators()).len(), 24);
    }

    #[test]
    fn exhaustive_small_cases() {
        for (m, i) in [(2u64, 3u64), (2, 4), (3, 3), (2, 6), (3, 4), (5, 2)] {
            let w = Wreath::new(m, i).unwrap();
            let mut count = 0;
            let mut h = vec![0i64; i as usize];
            'outer: loop {
                for n in 0..i {
                    let g = WreathElement { h: h.clone(), n };
                    let z = centralizer_generators(&w, &g).unwrap();
                    for s in z.generators() {
                        assert!(w.commutes(&g, &s));
                    }
                    let n_prime = if z.g_prime.n == 0 { i } else { z.g_prime.n };
                    assert_eq!(i % n_prime, 0);
                    assert_eq!(n % n_prime, 0);
                    assert_eq!(generated_subgroup(&w, &z.generators()), enumerate_centralizer(&w, &g).unwrap());
                    count += 1;
                }
                let mut pos = 0;
                loop {
                    if pos == i as usize {
                        break 'outer;
                    }
                    h[pos] += 1;
                    if h[pos] < m as i64 {
                        break;
                    }
                    h[pos] = 0;
                    pos += 1;
                }
            }
            assert_eq!(count as u64, m.pow(i as u32) * i);
        }
    }

    #[test]
    fn integer_base_generators_commute() {
        let w = Wreath::new(0, 6).unwrap();
        for n in 0..6 {
            let g = w.element(vec![3, -1, 0, 2, 5, -4], n).unwrap();
            let z = centralizer_generators(&w, &g).unwrap();
            for s in z.generators() {
                assert!(w.commutes(&g, &s));
            }
        }
    }
}
