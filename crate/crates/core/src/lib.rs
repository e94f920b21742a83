//! Convex presentations of the braid group on a disc with punctures at the
//! vertices of a convex polygon.
//!
//! Generators are convex rotations, swings and twists; every word is checked
//! against the Artin action on a free group.

pub mod abelian;
pub mod convex;
pub mod derivations;
pub mod error;
pub mod expand;
pub mod oracle;
pub mod presentations;
pub mod relations;
pub mod words;

pub use error::{Error, Result};
