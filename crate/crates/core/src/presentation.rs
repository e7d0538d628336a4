//! Tagged knot presentations as they appear in fact files and on the command line.
//!
//! The text form is `<kind> <body>`: `braid 3: 1 2 1 2`, `grid 2 / X: 0 1 / O: 1 0`,
//! `torus 2 3`, `pretzel 3 -5 -7`, or `named <anything>`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::braid::{parse_braid, BraidError, BraidWord};
use crate::families::{FamilyError, PretzelParams, TorusParams};
use crate::grid::{parse_grid, GridDiagram, GridError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("unknown presentation kind {0:?} (expected braid, grid, torus, pretzel or named)")]
    UnknownKind(String),
    #[error("presentation syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotPresentation {
    Braid(BraidWord),
    Grid(GridDiagram),
    Torus(TorusParams),
    Pretzel(PretzelParams),
    /// A name or description with no computable content.
    Named(String),
}

fn parse_ints(body: &str) -> Result<Vec<i64>, PresentationError> {
    body.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| PresentationError::Syntax(format!("bad integer {t:?}")))
        })
        .collect()
}

impl KnotPresentation {
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let text = text.trim();
        let (kind, body) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let body = body.trim();
        match kind {
            "braid" => Ok(KnotPresentation::Braid(parse_braid(body)?)),
            "grid" => Ok(KnotPresentation::Grid(parse_grid(body)?)),
            "torus" => match parse_ints(body)?.as_slice() {
                &[p, q] => Ok(KnotPresentation::Torus(TorusParams::new(p, q)?)),
                other => Err(PresentationError::Syntax(format!(
                    "torus takes 2 parameters, got {}",
                    other.len()
                ))),
            },
            "pretzel" => Ok(KnotPresentation::Pretzel(PretzelParams::new(parse_ints(
                body,
            )?)?)),
            "named" => Ok(KnotPresentation::Named(body.to_string())),
            other => Err(PresentationError::UnknownKind(other.to_string())),
        }
    }

    /// Number of components, where it can be computed.
    pub fn components(&self) -> Option<usize> {
        match self {
            KnotPresentation::Braid(b) => Some(b.closure_components()),
            KnotPresentation::Grid(g) => Some(g.components()),
            KnotPresentation::Torus(_) => Some(1),
            KnotPresentation::Pretzel(p) => Some(pretzel_components(p.twists())),
            KnotPresentation::Named(_) => None,
        }
    }
}

/// Component count of a pretzel link. Odd tangles swap the two strands, even
/// tangles return them, so only the number of even tangles matters.
fn pretzel_components(twists: &[i64]) -> usize {
    let even = twists.iter().filter(|t| *t % 2 == 0).count();
    let k = twists.len();
    match even {
        // all odd: a knot for odd k, a 2-component link for even k
        0 if k % 2 == 1 => 1,
        0 => 2,
        1 => 1,
        _ => even,
    }
}

impl FromStr for KnotPresentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for KnotPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotPresentation::Braid(b) => write!(f, "braid {b}"),
            KnotPresentation::Grid(g) => write!(f, "grid {g}"),
            KnotPresentation::Torus(t) => write!(f, "torus {t}"),
            KnotPresentation::Pretzel(p) => write!(f, "pretzel {p}"),
            KnotPresentation::Named(s) => write!(f, "named {s}"),
        }
    }
}
