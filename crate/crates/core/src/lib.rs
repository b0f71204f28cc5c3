pub mod error;
pub mod partition;
pub mod tableau;

pub use error::{Error, Result};
pub use partition::{partitions, restricted_partitions, Dominance, LadderData, Node, Partition};
pub use tableau::{standard_tableaux, tableau_class, ResidueSequence, StandardTableau};
pub mod fock;
pub mod laurent;
pub mod par;
pub mod seminormal;
pub mod eigenspace;
pub mod verify;
