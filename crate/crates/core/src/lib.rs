//! Box and dominance orders on standard Young tableaux and rook-strip
//! Littlewood-Richardson tableaux, plus the invariant-subspace algebra used
//! to realize them: nilpotent operators over prime fields, poles, exact
//! sequences and Hom dimensions.
//!
//! Partitions are read as column heights throughout; see [`partition`].

pub mod embedding;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod nilpotent;
pub mod orders;
pub mod partition;
pub mod ses;
pub mod tableau;

pub use error::{Error, Result};
pub use partition::{Partition, SkewShape};
pub use tableau::{LrTableau, PartitionChain, StandardTableau};
