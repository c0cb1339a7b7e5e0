//! Relation data `c_{d_i}^{q_i} = 1` for the relation-centre quotients
//! (`G_Int` and its toy stand-ins).

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Materialised prefix of the sequences `(d_i)` and `(q_i)`.
///
/// Only exact terms live here. The true sequences have one materialisable
/// relation index (`d_0 = 30`, `d_1 = 222622144044300`) and symbolic `q`s, so
/// all group computations run on toy parameters; see
/// [`crate::growth::sequences`] for the symbolic side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequenceParams {
    pub d: Vec<i64>,
    pub q: Vec<BigInt>,
}

impl SequenceParams {
    pub fn new(d: Vec<i64>, q: Vec<BigInt>) -> Result<Self> {
        let params = SequenceParams { d, q };
        params.validate()?;
        Ok(params)
    }

    pub fn from_u64(d: &[i64], q: &[u64]) -> Result<Self> {
        Self::new(d.to_vec(), q.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.d.len() != self.q.len() {
            return Err(Error::Config("d and q sequences differ in length".into()));
        }
        if self.d.iter().any(|&x| x <= 0) {
            return Err(Error::Config("d terms must be positive".into()));
        }
        if self.d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("d must be strictly increasing".into()));
        }
        if self.q.iter().any(|x| x.abs() <= BigInt::one() || x.is_negative()) {
            return Err(Error::Config("q terms must exceed 1".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Relation order attached to central index `i`, if `i` is some `d_j`.
    pub fn relation_at(&self, index: i64) -> Option<(usize, &BigInt)> {
        self.d.binary_search(&index).ok().map(|j| (j, &self.q[j]))
    }

    /// The toy parameters used throughout the examples: `d = (2, 4)`,
    /// `q = (35, 7)`.
    pub fn toy() -> Self {
        Self::from_u64(&[2, 4], &[35, 7]).expect("valid toy params")
    }

    pub fn descriptor(&self) -> String {
        let d: Vec<String> = self.d.iter().map(|x| x.to_string()).collect();
        let q: Vec<String> = self.q.iter().map(|x| x.to_string()).collect();
        format!("d=({}),q=({})", d.join(","), q.join(","))
    }
}
