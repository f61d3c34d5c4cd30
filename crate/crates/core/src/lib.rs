//! Exact combinatorics of simple closed curves on punctured surfaces.

pub mod classify;
pub mod commands;
pub mod cover;
pub mod curves;
pub mod duality;
pub mod error;
pub mod maps;
pub mod pants;
pub mod search;
pub mod suites;
pub mod surface;

pub use error::{Error, Result};
