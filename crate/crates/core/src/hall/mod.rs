//! Normal-form arithmetic in `G0 = <t, a_i, c_i>` and its central quotients.
//!
//! Relations: `t a_i t^-1 = a_{i+1}`, `[a_i, a_j] = c_{i-j}` (so
//! `a_1 a_0 = c_1 a_0 a_1`) and the `c_i` central, with `c_0 = 1` and
//! `c_{-i} = c_i^-1`. Every element is stored as
//! `t^k * prod_{i ascending} a_i^{v_i} * prod_j c_j^{f_j}`.

mod ball;
mod element;
mod spec;
mod word;

pub use ball::{ball_layers, enumerate_ball, word_norm, DEFAULT_RADIUS_CAP};
pub use element::{AVector, CentralVector, GroupElement};
pub use spec::{reduce_central, CentralValue, QuotientSpec};
pub use word::{parse_word, Generator, Word};
