//! Exact combinatorial-optimization and blowup-algebra invariants of
//! square-free monomial ideals, viewed through their clutters.

pub mod error;
pub mod checks;
pub mod clutter;
pub mod exact_math;
pub mod lattice;
pub mod monomial;
pub mod polyhedra;

pub use error::{Error, Result};
