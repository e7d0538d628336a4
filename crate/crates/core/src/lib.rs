//! Computing the knot concordance invariant τ from combinatorial presentations.
//!
//! Exact values come from closed formulas on positive braids, torus knots,
//! odd pretzel knots and Whitehead doubles. Everything else is bounded by
//! [`deduce`], a monotone interval propagation engine over a base of knots
//! and relations that records a replayable certificate for every bound.

pub mod braid;
pub mod catalog;
pub mod cli;
pub mod deduce;
pub mod families;
pub mod grid;
pub mod permutation;
pub mod presentation;
pub mod report;

pub use braid::{parse_braid, BraidError, BraidWord};
pub use deduce::{FactBase, Interval};
pub use families::{DoubleSpec, PretzelParams, TorusParams};
pub use grid::{parse_grid, GridDiagram, GridError};
pub use permutation::Permutation;
pub use presentation::KnotPresentation;
