//! Exact computer algebra toolkit: multi-modular computation with rational
//! reconstruction, Groebner-basis ideal operations, projective-scheme
//! predicates, and a finite-field coefficient-search harness.

pub mod error;
pub mod field;
pub mod numbers;
pub mod groebner;
pub mod idealops;
pub mod linalg;
pub mod parse;
pub mod polyring;
pub mod univar;

pub use error::{Error, Result};
