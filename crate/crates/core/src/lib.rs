//! Exact invariants of weighted homogeneous surface singularities, computed
//! from their star-shaped resolution graphs.
//!
//! All arithmetic is exact: rationals are arbitrary-precision fractions and
//! lattice computations use fraction-free elimination.
//!
//! ```
//! use seifert_core::{graph_model::StarGraph, invariants};
//!
//! let e8: StarGraph = "star g=0 d=2 arms=2/1,3/2,5/4".parse().unwrap();
//! let inv = invariants::seifert_invariants(&e8).unwrap();
//! assert_eq!(inv.e.to_string(), "1/30");
//! assert_eq!(inv.alpha.to_string(), "0");
//! ```

pub mod classify;
pub mod error;
pub mod exact_arith;
pub mod graph_model;
pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod pinkham_demazure;

pub use error::{Error, Result};
pub use exact_arith::Rational;
pub use graph_model::{Arm, StarGraph};
