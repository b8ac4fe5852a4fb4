//! Search and verification tools for regular graphs of prescribed girth
//! with no cycle one longer than the girth.

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod covers;
pub mod filter;
pub mod generator;
pub mod graph;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use generator::{generate_all, is_valid_target, GenerateOptions};
pub use graph::Graph;
