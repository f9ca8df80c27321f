//! Exact computations with Leibniz algebras carrying weighted Reynolds
//! operators: representations, bialgebras, Manin triples, the classical
//! Leibniz Yang-Baxter equation, and a classification harness for the
//! two-dimensional cases.

pub mod algebra;
pub mod bialgebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod rep;
pub mod verify;
pub mod ybe;

pub use error::{Error, Result};
