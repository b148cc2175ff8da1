//! Exact computations on pebble trees: enumeration, contraction posets and
//! complexes, flip graphs, the pebble tree fan and polytope, and counting
//! recurrences.

pub mod complex;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod export;
pub mod fan;
pub mod linalg;
pub mod maps;
pub mod polytope;
pub mod tree;

pub use complex::{build_complex, build_poset, contract, flip_graph, lambda, Complex, FlipCase, FlipGraph, LabelSet, Poset};
pub use enumerate::{enumerate, enumerate_capped, for_each_tree, DEFAULT_CAP};
pub use error::{Error, Result};
pub use tree::{deserialize, pebble_default, serialize, validate, Color, Params, PebbleTree, Violation};
