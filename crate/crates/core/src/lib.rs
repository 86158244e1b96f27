//! Generalized Denniston partial difference sets: construction, exact certification, codes and geometry.

pub mod arith;
pub mod cli;
pub mod coding;
pub mod construct;
pub mod error;
pub mod ff;
pub mod graph;
pub mod group;
pub mod io;
pub mod linalg;
pub mod params;
pub mod verify;
