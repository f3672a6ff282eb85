//! Pooling designs for nonadaptive group testing.
//!
//! A design is an `N x t` binary incidence matrix: row `n` is the pool of
//! samples tested together in test `n`, column `u` is the codeword of sample
//! `u`. This crate builds such matrices (trivial codes, Reed-Solomon
//! concatenation, a few fixed small codes), checks the combinatorial
//! properties that make them decodable, simulates three test models and
//! decodes result vectors:
//!
//! * **disjunct**: a test is positive iff its pool meets the defective set;
//! * **superset**: a test is positive iff its pool contains some part of a
//!   hidden antichain of subsets (a *complex*);
//! * **inhibitor**: a test is positive iff its pool meets the defective set and
//!   avoids every inhibitor.
//!
//! Indices in the Rust API are 0-based. Every text format (code files,
//! instance strings) is 1-based, matching the population `{1, ..., t}`.

pub mod bitcore;
pub mod combinat;
pub mod construct;
pub mod decode;
mod error;
pub mod galois;
pub mod models;
pub mod simulate;
pub mod verify;

pub use bitcore::{BinaryCode, BitVector};
pub use construct::{Builtin, MdsParams, QaryCode};
pub use error::{Error, Result};
pub use galois::{Field, FieldElement};
pub use models::{Complex, DefectiveSet, InhibitorInstance, ResultVector};
pub use verify::{Mode, VerifyReport, Witness};
