//! Standard Young tableaux and Littlewood-Richardson tableaux, both in
//! filling form and as partition chains.

mod lr;
mod syt;

pub use lr::LrTableau;
pub use syt::{PartitionChain, StandardTableau};
