//! Finite colored operads and finite categories over pointed finite sets.
//!
//! The crate builds categories of operators, the cocartesian envelope
//! `K^⊔` of a finite category, diagram operads, free operads on forests,
//! and decides the comparisons between them at the level of sets.

pub mod error;
pub mod fincat;
pub mod finstar;
pub mod operad;
pub mod dendroid;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
