//! Decides whether a subgroup of a finite permutation group is a perfect code
//! in some Cayley graph of the group, with checkable certificates.
//!
//! Groups are materialized: every element is stored once, in lexicographic
//! order of image arrays, and referred to by its index in that order. Index 0
//! is always the identity.

pub mod cosets;
pub mod error;
pub mod field;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod linear;
pub mod maximal;
pub mod oracle;
pub mod perfect;
pub mod perm;
pub mod products;
pub mod quotient;
pub mod small;
pub mod structure;
pub mod subgroup;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use iso::{IsoKind, IsoType};
pub use perm::Permutation;
pub use subgroup::Subgroup;
