//! Average justified representation (AJR) for approval-based committee
//! elections, with analytics for random Erdős–Rényi approval profiles.
//!
//! * [`election`]: profiles, ballot histograms, committees, quotas.
//! * [`axioms`]: exact AJR / JR / EJR / PJR / core checkers and exhaustive PAV.
//! * [`theory`]: expected-satisfaction formulas, phase transition points,
//!   regime classification, inequality scans and constraint polyhedra.
//! * [`montecarlo`]: random profiles and AJR-existence frequency estimates.
//! * [`cli`]: the `ajr` command-line front end.

pub mod axioms;
pub mod cli;
pub mod election;
pub mod error;
pub mod fixtures;
pub mod montecarlo;
pub mod theory;

pub use election::{ApprovalProfile, BallotHistogram, CandidateSet, Committee, ElectionSpec};
pub use error::{Error, Result};
