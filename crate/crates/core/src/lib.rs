//! Exact lattice combinatorics for degree-2 del Pezzo surfaces.

pub mod arithmetic;
pub mod canon;
pub mod classes;
pub mod configuration;
pub mod curves;
pub mod lattice;
pub mod verify;
pub mod weyl;
