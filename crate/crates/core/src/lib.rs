//! Stack-sorting, uniquely sorted permutations, canonical hook
//! configurations, lattice paths, and the bijections connecting them.

pub mod bijections;
pub mod chc;
pub mod enumeration;
pub mod error;
pub mod paths;
pub mod perm;
pub mod render;
pub mod serial;
pub mod series;
pub mod shapes;
pub mod stacksort;

pub use error::{Error, Result};
pub use perm::{PatternSet, Permutation, Point};
