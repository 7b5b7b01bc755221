pub mod abelian;
pub mod blocks;
pub mod chains;
pub mod docs;
pub mod error;
pub mod factorize;
pub mod krull;
pub mod towers;
mod unionfind;

pub use abelian::{FinAbGroup, GroupElement};
pub use error::{Error, LatticeError, Result};
