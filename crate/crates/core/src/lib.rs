//! Exact arithmetic in Hall's group `G0` (a central extension of the
//! lamplighter group `Z wr Z`) and in its central quotients, together with
//! constructive finite-quotient witnesses for residual finiteness and
//! conjugacy separability.
//!
//! Module map:
//!
//! * [`hall`]: normal forms, word parsing, collection, word norm and balls.
//! * [`dfunc`]: the `d`-functions that define cyclic-centre quotients `G_d`
//!   and the periodicity certificates that decide their separability.
//! * [`numtheory`]: `Z[sqrt 2]` arithmetic, split-prime search, primes and
//!   Laurent-polynomial folding.
//! * [`witness`]: separating finite quotients and conjugacy tooling.
//! * [`growth`]: compositional roots of `exp` and the growth sequences.
//! * [`harness`]: residual-finiteness tables, lower-bound probes and
//!   certificate records.

pub mod dfunc;
pub mod error;
pub mod growth;
pub mod hall;
pub mod harness;
pub mod numtheory;
pub mod params;
pub mod witness;

pub use error::{Error, Result};

/// Library version embedded in every emitted certificate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
