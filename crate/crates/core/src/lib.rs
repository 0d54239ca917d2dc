//! Evolutionary search for self-dual and anti-self-dual bent Boolean
//! functions.
//!
//! The crate provides bit-packed truth tables with exact Walsh-Hadamard
//! analysis ([`spectrum`]), the duality-aware objectives ([`fitness`]), a
//! truth-table genome and a tree-GP genome ([`genome`]), secondary
//! constructions over seed functions ([`construction`]), a steady-state
//! evolutionary engine ([`engine`], [`problem`]), brute-force reference
//! implementations ([`oracle`]) and experiment persistence ([`experiment`]).
//!
//! ```
//! use bentsmith::{classify, TruthTable};
//!
//! // x1x2 is bent and equal to its own dual.
//! let f: TruthTable = "n:2;tt:1".parse().unwrap();
//! let report = classify(&f);
//! assert!(report.is_bent && report.is_self_dual);
//! assert_eq!(report.nonlinearity, 1);
//! ```

pub mod construction;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod fitness;
pub mod genome;
pub mod oracle;
pub mod problem;
pub mod spectrum;
pub mod truth_table;

pub use error::{Error, Result};
pub use fitness::{FitnessValue, Objective, ObjectiveKind};
pub use spectrum::{
    classify, dual, is_bent, nonlinearity, wht_fast, SpectralReport, WalshSpectrum,
};
pub use truth_table::TruthTable;
