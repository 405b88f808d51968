//! Exact computations for rational equivariant algebra over a finite group.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: finite groups, subgroup lattices, conjugacy classes, Weyl groups.
//! * [`gsets`]: finite G-sets, equivariant maps, pullbacks, marks and the orbit category.
//! * [`span`]: the span category of finite G-sets and its constrained subcategories.
//! * [`burnside`]: the rational Burnside ring and its primitive idempotents.
//! * [`mackey`]: rational Mackey functors, idempotent splitting and geometric fixed points.
//! * [`indexing`]: transfer systems, indexing systems and norm categories.
//! * [`normed`]: diagrams of graded-commutative algebras indexed by a norm category.
//!
//! All arithmetic is exact. Heavy enumerations run on rayon when the
//! `parallel` feature is enabled and fall back to plain iterators otherwise;
//! see [`par::Exec`].

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod burnside;
pub mod corpus;
pub mod error;
pub mod group;
pub mod gsets;
pub mod indexing;
pub mod linalg;
pub mod mackey;
pub mod normed;
pub mod par;
pub mod random;
pub mod span;

pub use error::{Error, Result};
pub use linalg::{Q, QMatrix};
