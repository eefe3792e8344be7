pub mod catalogue;
pub mod classify;
pub mod error;
pub mod ffield;
pub mod grpstruct;
pub mod linalg;
pub mod modrep;
pub mod ncgraph;
pub mod perm;
pub mod pi;

pub use error::{Error, Result};
pub use perm::{PermGroup, Permutation};
pub use pi::PiSet;
