//! Executable combinatorics for perfect `H`-tilings.
//!
//! The crate computes the chromatic and divisibility invariants that govern
//! degree thresholds for `H`-tilings, checks degree-sequence conditions with
//! exact rational arithmetic, generates the standard extremal constructions
//! and bottle graphs, balances colour-class remainders modulo `|H|`, and
//! decides tiling questions on small hosts with an exact solver.

pub mod balancer;
pub mod constructions;
pub mod corpus;
pub mod experiment;
pub mod graph;
pub mod invariants;
pub mod scalar;
pub mod thresholds;
pub mod tiling;

pub use graph::{DegreeSequence, Graph, GraphBuilder, GraphError};
pub use scalar::ExactInt;

/// Exact rational over machine integers; the default scalar.
pub type Rational = num_rational::Ratio<i64>;

/// Arbitrary-precision rational for inputs that could overflow `i64`.
pub type BigRational = num_rational::Ratio<num_bigint::BigInt>;
