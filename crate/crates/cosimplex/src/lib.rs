//! Exact-arithmetic machinery for the finite, truncated homotopy theory of
//! cosimplicial spaces: matching objects and inverse limits, cochain
//! cohomology of cosimplicial abelian groups through Smith normal form,
//! torsors for cosimplicial groupoids, and Dold-Kan/Postnikov constructions
//! for simplicial abelian groups.
//!
//! Everything is computed over the integers with arbitrary precision; all
//! enumeration orders are lexicographic on labels so outputs are
//! deterministic. Enumerations may fan out over threads (`parallel` feature,
//! on by default) but always produce the canonical sequential answer.

pub mod cosab;
pub mod cosimp;
pub mod error;
pub mod exec;
pub mod fgab;
pub mod gen;
pub mod gpd;
pub mod intmat;
pub mod json;
pub mod ordmap;
pub mod postnikov;
pub mod simp;
pub mod torsor;
pub mod verify;

pub use error::{Error, Result};
