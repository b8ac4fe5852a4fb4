//! Finite groups, voltage lifts, canonical double covers.

pub mod double;
pub mod group;
pub mod search;
pub mod voltage;

pub use double::{canonical_double_cover, is_valid_target_via_cover, verify_target, VerifierMismatch};
pub use group::{builtin_families, Group, GroupError};
pub use search::{search_k13loop_lifts, LiftSearchResult, LiftWitness};
pub use voltage::{DartGraph, VoltageAssignment, VoltageError};
