//! Finite multicategories, their K-theory Γ-objects and the homotopy
//! invariants that can be read off at small levels.

pub mod category;
pub mod document;
pub mod enumeration;
pub mod gamma;
pub mod homotopy;
pub mod multicat;
pub mod perm;
