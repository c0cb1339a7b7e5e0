use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::element::CentralVector;
use crate::dfunc::DFunction;
use crate::params::SequenceParams;

/// Which central quotient of `G0` is in force.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "center", rename_all = "snake_case")]
pub enum QuotientSpec {
    /// `G0` itself.
    FreeCenter,
    /// `G_d`: `c_i = c_1^{d(i)}`.
    CyclicCenter { d: Arc<DFunction> },
    /// `c_{d_j}^{q_j} = 1`.
    RelationCenter { params: Arc<SequenceParams> },
    /// `Z wr Z`.
    TrivialCenter,
}

/// Result of [`reduce_central`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralValue {
    Vector(CentralVector),
    /// The exponent of `c_1` in a cyclic centre.
    Cyclic(BigInt),
}

impl QuotientSpec {
    pub fn cyclic(d: DFunction) -> Self {
        QuotientSpec::CyclicCenter { d: Arc::new(d) }
    }

    pub fn relation(params: SequenceParams) -> Self {
        QuotientSpec::RelationCenter { params: Arc::new(params) }
    }

    pub fn descriptor(&self) -> String {
        match self {
            QuotientSpec::FreeCenter => "G0".into(),
            QuotientSpec::CyclicCenter { d } => format!("G_d[{}]", d.descriptor()),
            QuotientSpec::RelationCenter { params } => format!("G_rel[{}]", params.descriptor()),
            QuotientSpec::TrivialCenter => "Z wr Z".into(),
        }
    }

    /// Reduce central data into this quotient's canonical storage. Cyclic
    /// centres keep their single exponent at index 1.
    pub(crate) fn reduce(&self, c: CentralVector) -> CentralVector {
        match reduce_central(&c, self) {
            CentralValue::Vector(v) => v,
            CentralValue::Cyclic(x) => CentralVector::monomial(1, x),
        }
    }
}

impl PartialEq for QuotientSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (QuotientSpec::FreeCenter, QuotientSpec::FreeCenter)
            | (QuotientSpec::TrivialCenter, QuotientSpec::TrivialCenter) => true,
            (QuotientSpec::CyclicCenter { d: x }, QuotientSpec::CyclicCenter { d: y }) => {
                Arc::ptr_eq(x, y) || x == y
            }
            (QuotientSpec::RelationCenter { params: x }, QuotientSpec::RelationCenter { params: y }) => {
                Arc::ptr_eq(x, y) || x == y
            }
            _ => false,
        }
    }
}

impl Eq for QuotientSpec {}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

pub fn reduce_central(c: &CentralVector, spec: &QuotientSpec) -> CentralValue {
    match spec {
        QuotientSpec::FreeCenter => CentralValue::Vector(c.clone()),
        QuotientSpec::TrivialCenter => CentralValue::Vector(CentralVector::zero()),
        QuotientSpec::CyclicCenter { d } => {
            let mut total = BigInt::default();
            for (i, v) in c.entries() {
                total += v * d.eval(i);
            }
            CentralValue::Cyclic(total)
        }
        QuotientSpec::RelationCenter { params } => {
            let mut out = CentralVector::zero();
            for (i, v) in c.entries() {
                match params.relation_at(i) {
                    Some((_, q)) => out.add(i, &v.mod_floor(q)),
                    None => out.add(i, v),
                }
            }
            CentralValue::Vector(out)
        }
    }
}
