//! Compositional roots of `exp`, numbers on a tower scale and the sequences
//! `d~, P~, P, d, q` built from them.

pub mod checks;
pub mod froot;
pub mod interval;
pub mod logscale;
pub mod sequences;

pub use checks::{check_intermediate, check_sequence_lemmas, tower_grid, IntermediateReport, LemmaReport, LemmaRow};
pub use froot::CompRoot;
pub use interval::Interval;
pub use logscale::LogScaleNumber;
pub use sequences::{build_d, build_p, build_q, d_tilde, p_tilde, q_indices, DTerm, PTerm, QFactor, QTerm};
