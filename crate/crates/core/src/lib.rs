//! Enumeration of maximal common independent sets of two matroids and of
//! maximal matroid matchings, with polynomial delay under the independence
//! oracle model.

pub mod applications;
pub mod brute;
pub mod cli;
pub mod error;
pub mod exchange;
pub mod intersection;
pub mod io;
mod search;
pub mod stats;
pub mod fixtures;
pub mod graph;
pub mod matching;
pub mod matroid;
pub mod ranked;
pub mod set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use matroid::Matroid;
pub use set::{Element, ElementSet};
