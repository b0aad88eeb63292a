pub mod cli;
pub mod constructions;
pub mod envelope;
pub mod error;
pub mod matching;
pub mod oracle;
pub mod perm;
pub mod splitters;

pub use error::{Error, Result};
pub use matching::{m_of, matching_contains, perm_of, Arc, ArcRelation, Matching};
pub use perm::{contains, Embedding, Permutation, Symmetry};
