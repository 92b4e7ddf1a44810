//! Posets of `p`-subgroups of finite permutation groups, studied as finite
//! topological spaces.

pub mod bitset;
pub mod error;
pub mod finposet;
pub mod group;
pub mod homol;
pub mod perm;
pub mod hunt;
pub mod plattice;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use finposet::{BeatKind, Poset, RemovalPolicy, RemovalTrace};
pub use group::{Group, Subgroup};
pub use homol::{HomologySummary, SimplicialComplex};
pub use perm::Perm;
pub use plattice::{FamilyKind, PSubgroupFamily, ToriIntersectionFamily};
pub use hunt::{GroupFile, HomotopyReport};
