//! Fact files and the bundled knot catalog.
//!
//! A fact file is a JSON object with three optional arrays:
//!
//! ```json
//! {
//!   "knots": [{"id": "K", "presentations": ["braid 3: 1 1 1 2 -1 2 1 1 2 2"],
//!              "summary": {"strands": 3, "positive": 9, "negative": 1}}],
//!   "facts": [{"id": "K", "kind": "g3", "value": 3, "source": "knot tables"}],
//!   "relations": [{"kind": "mirror", "a": "K", "b": "mK"}]
//! }
//! ```
//!
//! A `summary` pins the shape of a braid word taken from an outside table: at
//! least one braid presentation of the knot must have exactly that many strands
//! and positive and negative letters.
//!
//! Pretzel twists follow the sign convention under which P(3, −5, −7) has τ = 1.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deduce::{DeduceError, FactBase, FactKind, Relation};
use crate::presentation::{KnotPresentation, PresentationError};

const BUNDLED: &str = include_str!("../data/catalog.json");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("fact file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("knot {knot}: cannot parse presentation {text:?}: {source}")]
    Presentation {
        knot: String,
        text: String,
        source: PresentationError,
    },
    #[error("knot {knot}: no braid presentation matches summary {expected}")]
    Summary { knot: String, expected: Summary },
    #[error(transparent)]
    Deduce(#[from] DeduceError),
}

/// Strand count and letter counts of a braid word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub strands: usize,
    pub positive: usize,
    pub negative: usize,
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} strands, {}+/{}-",
            self.strands, self.positive, self.negative
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    #[serde(default)]
    pub presentations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactEntry {
    pub id: String,
    pub kind: FactKind,
    pub value: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

/// The on-disk form of a [`FactBase`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactFile {
    #[serde(default)]
    pub knots: Vec<CatalogEntry>,
    #[serde(default)]
    pub facts: Vec<FactEntry>,
    #[serde(default)]
    pub relations: Vec<Relation<String>>,
}

impl FactFile {
    /// Parses JSON text. Empty or all-whitespace text is an empty file.
    pub fn parse(text: &str) -> Result<FactFile, CatalogError> {
        if text.trim().is_empty() {
            return Ok(FactFile::default());
        }
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fact files always serialize")
    }

    pub fn to_base(&self) -> Result<FactBase, CatalogError> {
        let mut base = FactBase::new();
        for entry in &self.knots {
            let presentations = entry
                .presentations
                .iter()
                .map(|text| {
                    KnotPresentation::parse(text).map_err(|source| CatalogError::Presentation {
                        knot: entry.id.clone(),
                        text: text.clone(),
                        source,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(expected) = entry.summary {
                check_summary(&entry.id, expected, &presentations)?;
            }
            base.add_knot(entry.id.clone(), presentations)?;
        }
        for fact in &self.facts {
            base.add_fact(&fact.id, fact.kind, fact.value, fact.source.clone())?;
        }
        for relation in &self.relations {
            base.add_relation(relation.clone())?;
        }
        Ok(base)
    }

    /// The fact file describing `base`. Braid summaries are not part of a base
    /// and are not reproduced.
    pub fn from_base(base: &FactBase) -> FactFile {
        FactFile {
            knots: base
                .knots()
                .map(|(_, k)| CatalogEntry {
                    id: k.name.clone(),
                    presentations: k.presentations.iter().map(|p| p.to_string()).collect(),
                    summary: None,
                })
                .collect(),
            facts: base
                .facts()
                .iter()
                .map(|f| FactEntry {
                    id: base.name(f.knot).to_string(),
                    kind: f.kind,
                    value: f.value,
                    source: f.source.clone(),
                })
                .collect(),
            relations: base
                .relations()
                .iter()
                .map(|r| {
                    r.clone()
                        .try_map(|k| Ok::<_, ()>(base.name(k).to_string()))
                        .expect("infallible")
                })
                .collect(),
        }
    }
}

fn check_summary(
    knot: &str,
    expected: Summary,
    presentations: &[KnotPresentation],
) -> Result<(), CatalogError> {
    let matches = presentations.iter().any(|p| match p {
        KnotPresentation::Braid(b) => {
            b.strands() == expected.strands
                && b.positive_count() == expected.positive
                && b.negative_count() == expected.negative
        }
        _ => false,
    });
    if matches {
        Ok(())
    } else {
        Err(CatalogError::Summary {
            knot: knot.to_string(),
            expected,
        })
    }
}

pub fn parse_fact_file(text: &str) -> Result<FactBase, CatalogError> {
    FactFile::parse(text)?.to_base()
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<FactBase, CatalogError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_fact_file(&text)
}

/// The fact file shipped with the crate.
pub fn bundled_file() -> FactFile {
    FactFile::parse(BUNDLED).expect("bundled catalog parses")
}

pub fn bundled() -> FactBase {
    bundled_file().to_base().expect("bundled catalog is valid")
}
