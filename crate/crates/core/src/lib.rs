//! Exact verification of dynamical difference operators for quantum loop
//! algebras and their degeneration to the trigonometric Casimir connection of
//! the Yangian, modulo ℏ².

pub mod affine_weyl;
pub mod cartan;
pub mod casimir;
pub mod degeneration;
pub mod dynamical;
pub mod error;
pub mod matrix;
pub mod replib;
pub mod report;
pub mod scalars;

pub use error::{Error, Result};
