pub mod engine;
pub mod error;
pub mod graph;
pub mod group;
pub mod lab;
pub mod perm;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupElement};
pub use perm::Permutation;
