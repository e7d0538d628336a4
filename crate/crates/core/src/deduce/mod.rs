//! Monotone interval propagation over a base of knots and relations.
//!
//! Each knot carries four intervals: τ, g₄, g₃ and a lower bound on TB.
//! Input facts, presentation seeds and relations compile into narrowing
//! propagators (see [`rules`]). [`FactBase::propagate`] runs them to the least
//! fixpoint and records every narrowing as a certificate step, which
//! [`replay`] re-checks from the inputs alone.
//!
//! Nothing is pinned unless sound rules close the interval: the engine never
//! guesses equalities.

mod base;
mod certificate;
mod engine;
mod interval;
pub mod rules;

use thiserror::Error;

pub use base::{Fact, FactBase, FactKind, KnotEntry, KnotId, Quantity, Relation, Slot, SlotName};
pub use certificate::{describe_origin, replay, BrokenStep, Certificate, FactId, Premise, Step};
pub use engine::{KnotRecord, PropagateOptions, Propagated, Query, DEFAULT_STEP_BUDGET};
pub use interval::{Bound, Interval};
pub use rules::{Op, Origin, RuleId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeduceError {
    #[error("duplicate knot id {0:?}")]
    DuplicateId(String),
    #[error("unknown knot id {0:?}")]
    UnknownId(String),
    #[error(
        "presentation `{presentation}` of {knot} has {components} components, expected a knot"
    )]
    NotAKnot {
        knot: String,
        presentation: String,
        components: usize,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconsistent facts: {detail} (after {} certificate steps)", .certificate.len())]
    Inconsistent {
        detail: String,
        /// Steps derived before the contradiction surfaced.
        certificate: Box<Certificate>,
    },
    #[error("propagation budget of {budget} evaluations exhausted (after {} certificate steps)", .certificate.len())]
    BudgetExhausted {
        budget: u64,
        certificate: Box<Certificate>,
    },
}
