//! Rough sets over finite universes and the tri-valued algebra of partial
//! operation tables living on them.
//!
//! Elements are dense indices ([`Elem`]) into a labelled [`Universe`]; sets
//! are bitsets tied to their universe. Everything here is `no_std` with
//! `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod approx;
pub mod bitset;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod morphism;
pub mod rough;

pub use algebra::{
    CancellationFailure, Cell, Classification, CongruenceVerdict, Counts, Flags, Instance, LawId, LawStatus,
    LawVerdict, OpTable, ProductLawReport, ProductMode, ProductRelation, RelationOutcome, Side, Tri, Witnesses,
};
pub use approx::{same_universe, ApproxLaw, ApproxResult, ApproxSpace, Elem, LawOutcome, LawReport, Subset, Universe};
pub use bitset::BitSet;
pub use error::{Error, Result};
pub use morphism::{
    check_anti_group_hom, check_hom, check_rough_hom, compose, kernel, Mapping, MorphismKind, MorphismReport,
};
pub use rough::{
    check_intersection_relations, check_rough_anti_semigroup, check_rough_anti_subsemigroup, IntersectionRelation,
    IntersectionReport, RoughStructVerdict,
};
