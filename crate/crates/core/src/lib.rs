//! Single-winner voting rules that treat candidate alliances as first
//! class citizens: alliance-aware scores, two-round IW/SW variants of
//! Plurality, Maximin and Schulze, nested-alliance generalizations,
//! axiom checkers with counterexample search, preference culture
//! samplers and primary-election experiments.

pub mod alliance;
pub mod axioms;
pub mod cultures;
pub mod election;
pub mod experiment;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod laminar;
pub mod perturb;
pub mod pref;
pub mod reduced;
pub mod ruleid;
pub mod rules;
pub mod similar;

pub use alliance::{
    alliance_aware_score, alliance_aware_scores, iw_winner, sw_winner, AllianceAwareScores,
    BaseRule,
};
pub use election::{AllianceStructure, Ballot, Election};
pub use error::{Error, Result};
pub use pref::PrefMatrix;
pub use rules::{TallyResult, Trace};
