use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::spec::{reduce_central, CentralValue, QuotientSpec};
use super::word::{Generator, Word};
use crate::error::{Error, Result};

fn bump(map: &mut BTreeMap<i64, BigInt>, i: i64, v: &BigInt) {
    if v.is_zero() {
        return;
    }
    let slot = map.entry(i).or_default();
    *slot += v;
    if slot.is_zero() {
        map.remove(&i);
    }
}

/// Exponents of `prod_{i ascending} a_i^{v_i}`; zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AVector(BTreeMap<i64, BigInt>);

impl AVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_entries<C: Into<BigInt>>(entries: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut v = Self::zero();
        for (i, e) in entries {
            v.add(i, &e.into());
        }
        v
    }

    pub fn add(&mut self, i: i64, v: &BigInt) {
        bump(&mut self.0, i, v);
    }

    pub fn get(&self, i: i64) -> BigInt {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.0.iter().map(|(i, v)| (*i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Relabel index `i` as `i + s`.
    pub fn shift(&self, s: i64) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (i, v) in &self.0 {
            out.insert(i.checked_add(s).ok_or(Error::IndexOverflow)?, v.clone());
        }
        Ok(AVector(out))
    }

    pub fn neg(&self) -> Self {
        AVector(self.0.iter().map(|(i, v)| (*i, -v)).collect())
    }

    /// Largest `|i|` in the support, 0 when empty.
    pub fn radius(&self) -> i64 {
        self.0.keys().map(|i| i.abs()).max().unwrap_or(0)
    }

    pub fn min_index(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn sum(&self) -> BigInt {
        self.0.values().sum()
    }
}

/// Central exponents at indices `>= 1`. Index normalisation happens on
/// insertion: `c_{-i}` becomes `c_i^-1` and `c_0` is dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralVector(BTreeMap<i64, BigInt>);

impl CentralVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(i: i64, v: impl Into<BigInt>) -> Self {
        let mut c = Self::zero();
        c.add(i, &v.into());
        c
    }

    pub fn from_entries<C: Into<BigInt>>(entries: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut c = Self::zero();
        for (i, e) in entries {
            c.add(i, &e.into());
        }
        c
    }

    pub fn add(&mut self, i: i64, v: &BigInt) {
        match i.cmp(&0) {
            Ordering::Greater => bump(&mut self.0, i, v),
            Ordering::Less => bump(&mut self.0, -i, &-v),
            Ordering::Equal => {}
        }
    }

    pub fn add_vector(&mut self, other: &CentralVector) {
        for (i, v) in other.entries() {
            bump(&mut self.0, i, v);
        }
    }

    pub fn neg(&self) -> Self {
        CentralVector(self.0.iter().map(|(i, v)| (*i, -v)).collect())
    }

    pub fn get(&self, i: i64) -> BigInt {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.0.iter().map(|(i, v)| (*i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    /// `sum |f_j|`.
    pub fn mass(&self) -> BigInt {
        self.0.values().map(|v| v.abs()).sum()
    }
}

/// `sum_{i > j} v_i w_j c_{i-j}`: the central correction when the
/// concatenation of two ascending a-products is put back in ascending order.
pub(crate) fn beta(v: &AVector, w: &AVector) -> Result<CentralVector> {
    let mut out = CentralVector::zero();
    for (j, wj) in w.entries() {
        for (i, vi) in v.entries().rev() {
            if i <= j {
                break;
            }
            let idx = i.checked_sub(j).ok_or(Error::IndexOverflow)?;
            out.add(idx, &(vi * wj));
        }
    }
    Ok(out)
}

/// Normal form `t^k * a-part * c-part` in a fixed quotient of `G0`.
#[derive(Debug, Clone)]
pub struct GroupElement {
    spec: QuotientSpec,
    t: i64,
    a: AVector,
    c: CentralVector,
}

impl GroupElement {
    pub fn new(spec: &QuotientSpec, t: i64, a: AVector, c: CentralVector) -> Self {
        let c = spec.reduce(c);
        GroupElement { spec: spec.clone(), t, a, c }
    }

    pub fn identity(spec: &QuotientSpec) -> Self {
        GroupElement { spec: spec.clone(), t: 0, a: AVector::zero(), c: CentralVector::zero() }
    }

    pub fn t(spec: &QuotientSpec) -> Self {
        Self::t_pow(spec, 1)
    }

    pub fn t_pow(spec: &QuotientSpec, k: i64) -> Self {
        GroupElement { t: k, ..Self::identity(spec) }
    }

    pub fn a(spec: &QuotientSpec, i: i64) -> Self {
        Self::a_pow(spec, i, 1)
    }

    pub fn a_pow(spec: &QuotientSpec, i: i64, e: impl Into<BigInt>) -> Self {
        Self::new(spec, 0, AVector::from_entries([(i, e)]), CentralVector::zero())
    }

    pub fn c(spec: &QuotientSpec, i: i64) -> Self {
        Self::c_pow(spec, i, 1)
    }

    pub fn c_pow(spec: &QuotientSpec, i: i64, e: impl Into<BigInt>) -> Self {
        Self::central(spec, CentralVector::monomial(i, e))
    }

    pub fn central(spec: &QuotientSpec, c: CentralVector) -> Self {
        Self::new(spec, 0, AVector::zero(), c)
    }

    pub fn generator_pow(spec: &QuotientSpec, g: Generator, e: i64) -> Self {
        match g {
            Generator::T => Self::t_pow(spec, e),
            Generator::A(i) => Self::a_pow(spec, i, e),
            Generator::C(i) => Self::c_pow(spec, i, e),
        }
    }

    /// Left-to-right product of the word's generator powers.
    pub fn evaluate(word: &Word, spec: &QuotientSpec) -> Result<Self> {
        let mut g = Self::identity(spec);
        for &(gen, e) in &word.tokens {
            g.mul_gen_assign(gen, e)?;
        }
        Ok(g)
    }

    pub fn parse(text: &str, spec: &QuotientSpec) -> Result<Self> {
        Self::evaluate(&super::word::parse_word(text)?, spec)
    }

    pub fn spec(&self) -> &QuotientSpec {
        &self.spec
    }

    pub fn t_exp(&self) -> i64 {
        self.t
    }

    pub fn a_part(&self) -> &AVector {
        &self.a
    }

    pub fn c_part(&self) -> &CentralVector {
        &self.c
    }

    pub fn central_value(&self) -> CentralValue {
        match &self.spec {
            QuotientSpec::CyclicCenter { .. } => CentralValue::Cyclic(self.c.get(1)),
            _ => CentralValue::Vector(self.c.clone()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.t == 0 && self.a.is_zero() && self.c.is_zero()
    }

    pub fn is_central(&self) -> bool {
        self.t == 0 && self.a.is_zero()
    }

    /// Member of `N = <a_i, c_i>`.
    pub fn in_n(&self) -> bool {
        self.t == 0
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch {
                left: self.spec.descriptor(),
                right: other.spec.descriptor(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        // t^k v c * t^k' w c' = t^{k+k'} (t^-k' v t^k') w c c'
        let v = self.a.shift(-other.t)?;
        let mut c = beta(&v, &other.a)?;
        c.add_vector(&self.c);
        c.add_vector(&other.c);
        let mut a = v;
        for (i, e) in other.a.entries() {
            a.add(i, e);
        }
        let t = self.t.checked_add(other.t).ok_or(Error::IndexOverflow)?;
        Ok(Self::new(&self.spec, t, a, c))
    }

    /// Right multiplication by a single generator power, in place.
    pub fn mul_gen_assign(&mut self, g: Generator, e: i64) -> Result<()> {
        match g {
            Generator::T => {
                self.a = self.a.shift(-e)?;
                self.t = self.t.checked_add(e).ok_or(Error::IndexOverflow)?;
            }
            Generator::A(j) => {
                let e = BigInt::from(e);
                let mut extra = CentralVector::zero();
                for (i, vi) in self.a.entries().rev() {
                    if i <= j {
                        break;
                    }
                    extra.add(i.checked_sub(j).ok_or(Error::IndexOverflow)?, &(vi * &e));
                }
                self.a.add(j, &e);
                if !extra.is_zero() {
                    let mut c = std::mem::take(&mut self.c);
                    c.add_vector(&extra);
                    self.c = self.spec.reduce(c);
                }
            }
            Generator::C(i) => {
                let mut c = std::mem::take(&mut self.c);
                c.add(i, &BigInt::from(e));
                self.c = self.spec.reduce(c);
            }
        }
        Ok(())
    }

    pub fn mul_gen(&self, g: Generator, e: i64) -> Result<Self> {
        let mut out = self.clone();
        out.mul_gen_assign(g, e)?;
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        // (t^k v c)^-1 = t^-k shift_k(v^-1) c^-1; get the central part of
        // v^-1 by cancelling against self.
        let h = GroupElement {
            spec: self.spec.clone(),
            t: self.t.checked_neg().ok_or(Error::IndexOverflow)?,
            a: self.a.neg().shift(self.t)?,
            c: CentralVector::zero(),
        };
        let z = self.mul(&h)?;
        debug_assert!(z.is_central());
        Ok(Self::new(&self.spec, h.t, h.a, z.c.neg()))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut n = n.unsigned_abs();
        let mut acc = Self::identity(&self.spec);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `[g, h] = g h g^-1 h^-1`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.mul(&self.inverse()?)?.mul(&other.inverse()?)
    }

    /// `h g h^-1`.
    pub fn conjugate_by(&self, h: &Self) -> Result<Self> {
        h.mul(self)?.mul(&h.inverse()?)
    }

    /// Image in `Z wr Z` (centre killed).
    pub fn project_to_lamplighter(&self) -> Self {
        GroupElement {
            spec: QuotientSpec::TrivialCenter,
            t: self.t,
            a: self.a.clone(),
            c: CentralVector::zero(),
        }
    }

    /// Image of an element of `G0` in a central quotient (the identity map
    /// when the specs already agree).
    pub fn map_to(&self, target: &QuotientSpec) -> Result<Self> {
        if &self.spec == target {
            return Ok(self.clone());
        }
        match (&self.spec, target) {
            (QuotientSpec::FreeCenter, _) | (_, QuotientSpec::TrivialCenter) => {
                Ok(Self::new(target, self.t, self.a.clone(), self.c.clone()))
            }
            _ => Err(Error::SpecMismatch {
                left: self.spec.descriptor(),
                right: target.descriptor(),
            }),
        }
    }

    /// Sum over `|f_j|` of the central part, reduced under the spec.
    pub fn central_reduced(&self) -> CentralValue {
        reduce_central(&self.c, &self.spec)
    }

    fn key(&self) -> (i64, &AVector, &CentralVector) {
        (self.t, &self.a, &self.c)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key() && self.spec == other.spec
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: `t` exponent, then a-part, then c-part.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

fn write_pow(f: &mut fmt::Formatter<'_>, first: &mut bool, base: &str, e: &BigInt) -> fmt::Result {
    if !*first {
        f.write_str(" ")?;
    }
    *first = false;
    if e.is_one() {
        write!(f, "{base}")
    } else {
        write!(f, "{base}^{e}")
    }
}

/// `t^k a_i^e ... c_j^f ...`, ascending indices; `1` for the identity.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        if self.t != 0 {
            write_pow(f, &mut first, "t", &BigInt::from(self.t))?;
        }
        for (i, e) in self.a.entries() {
            write_pow(f, &mut first, &format!("a_{i}"), e)?;
        }
        for (i, e) in self.c.entries() {
            write_pow(f, &mut first, &format!("c_{i}"), e)?;
        }
        Ok(())
    }
}
