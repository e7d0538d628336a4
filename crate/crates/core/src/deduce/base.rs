use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::DeduceError;
use crate::presentation::KnotPresentation;

/// Index of a knot within its [`FactBase`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KnotId(pub usize);

/// A tracked quantity of a knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Tau,
    G4,
    G3,
    /// Lower bounds on the maximal Thurston–Bennequin number.
    Tb,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Quantity::Tau, Quantity::G4, Quantity::G3, Quantity::Tb];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Tau => "tau",
            Quantity::G4 => "g4",
            Quantity::G3 => "g3",
            Quantity::Tb => "tb",
        }
    }
}

/// One quantity of one knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Slot {
    pub knot: KnotId,
    pub quantity: Quantity,
}

impl Slot {
    pub fn new(knot: KnotId, quantity: Quantity) -> Self {
        Slot { knot, quantity }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactKind {
    /// Exact Seifert genus from an external table.
    G3,
    G4Upper,
    TbLower,
    TauLower,
    TauUpper,
}

impl FactKind {
    pub fn name(self) -> &'static str {
        match self {
            FactKind::G3 => "g3",
            FactKind::G4Upper => "g4_upper",
            FactKind::TbLower => "tb_lower",
            FactKind::TauLower => "tau_lower",
            FactKind::TauUpper => "tau_upper",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub knot: KnotId,
    pub kind: FactKind,
    pub value: i64,
    pub source: Option<String>,
}

/// A relation between knots. `K` is the knot reference: names on input,
/// [`KnotId`]s once stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Relation<K = KnotId> {
    /// `b = −a`.
    Mirror { a: K, b: K },
    /// `c = a # b`.
    Sum { a: K, b: K, c: K },
    /// `minus` is obtained from `plus` by changing one positive crossing to negative.
    CrossingChange { plus: K, minus: K },
    /// `g4(a # −b) ≤ genus`.
    Cobordism { a: K, b: K, genus: i64 },
    /// `knot` is unknotted by `positive` positive-to-negative and `negative`
    /// negative-to-positive crossing changes.
    Unknotting {
        knot: K,
        positive: i64,
        negative: i64,
    },
    /// `result` is the `iterations`-fold untwisted positive Whitehead double of `companion`.
    Double {
        companion: K,
        result: K,
        iterations: u32,
    },
}

impl<K> Relation<K> {
    pub fn kind(&self) -> &'static str {
        match self {
            Relation::Mirror { .. } => "mirror",
            Relation::Sum { .. } => "sum",
            Relation::CrossingChange { .. } => "crossing_change",
            Relation::Cobordism { .. } => "cobordism",
            Relation::Unknotting { .. } => "unknotting",
            Relation::Double { .. } => "double",
        }
    }

    pub fn try_map<L, E>(self, mut f: impl FnMut(K) -> Result<L, E>) -> Result<Relation<L>, E> {
        Ok(match self {
            Relation::Mirror { a, b } => Relation::Mirror { a: f(a)?, b: f(b)? },
            Relation::Sum { a, b, c } => Relation::Sum {
                a: f(a)?,
                b: f(b)?,
                c: f(c)?,
            },
            Relation::CrossingChange { plus, minus } => Relation::CrossingChange {
                plus: f(plus)?,
                minus: f(minus)?,
            },
            Relation::Cobordism { a, b, genus } => Relation::Cobordism {
                a: f(a)?,
                b: f(b)?,
                genus,
            },
            Relation::Unknotting {
                knot,
                positive,
                negative,
            } => Relation::Unknotting {
                knot: f(knot)?,
                positive,
                negative,
            },
            Relation::Double {
                companion,
                result,
                iterations,
            } => Relation::Double {
                companion: f(companion)?,
                result: f(result)?,
                iterations,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotEntry {
    pub name: String,
    pub presentations: Vec<KnotPresentation>,
}

/// Knots, input facts and relations. Nothing is derived until
/// [`FactBase::propagate`](super::FactBase::propagate) runs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactBase {
    knots: Vec<KnotEntry>,
    index: BTreeMap<String, KnotId>,
    facts: Vec<Fact>,
    relations: Vec<Relation>,
}

impl FactBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a knot. Every computable presentation must describe a knot, not a link.
    pub fn add_knot(
        &mut self,
        name: impl Into<String>,
        presentations: Vec<KnotPresentation>,
    ) -> Result<KnotId, DeduceError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(DeduceError::DuplicateId(name));
        }
        for p in &presentations {
            if let Some(components) = p.components().filter(|&c| c != 1) {
                return Err(DeduceError::NotAKnot {
                    knot: name,
                    presentation: p.to_string(),
                    components,
                });
            }
        }
        let id = KnotId(self.knots.len());
        self.index.insert(name.clone(), id);
        self.knots.push(KnotEntry {
            name,
            presentations,
        });
        Ok(id)
    }

    pub fn add_presentation(
        &mut self,
        knot: &str,
        presentation: KnotPresentation,
    ) -> Result<(), DeduceError> {
        let id = self.resolve(knot)?;
        if let Some(components) = presentation.components().filter(|&c| c != 1) {
            return Err(DeduceError::NotAKnot {
                knot: knot.to_string(),
                presentation: presentation.to_string(),
                components,
            });
        }
        self.knots[id.0].presentations.push(presentation);
        Ok(())
    }

    pub fn add_fact(
        &mut self,
        knot: &str,
        kind: FactKind,
        value: i64,
        source: Option<String>,
    ) -> Result<(), DeduceError> {
        let id = self.resolve(knot)?;
        if matches!(kind, FactKind::G3 | FactKind::G4Upper) && value < 0 {
            return Err(DeduceError::InvalidInput(format!(
                "{} of {knot} must be nonnegative, got {value}",
                kind.name()
            )));
        }
        self.facts.push(Fact {
            knot: id,
            kind,
            value,
            source,
        });
        Ok(())
    }

    pub fn add_relation<S: AsRef<str>>(
        &mut self,
        relation: Relation<S>,
    ) -> Result<(), DeduceError> {
        let relation = relation.try_map(|name| self.resolve(name.as_ref()))?;
        match &relation {
            Relation::Cobordism { genus, .. } if *genus < 0 => {
                return Err(DeduceError::InvalidInput(format!(
                    "cobordism genus must be nonnegative, got {genus}"
                )))
            }
            Relation::Unknotting {
                positive, negative, ..
            } if *positive < 0 || *negative < 0 => {
                return Err(DeduceError::InvalidInput(
                    "unknotting crossing counts must be nonnegative".into(),
                ))
            }
            Relation::Double { iterations: 0, .. } => {
                return Err(DeduceError::InvalidInput(
                    "Whitehead double needs at least one iteration".into(),
                ))
            }
            _ => {}
        }
        self.relations.push(relation);
        Ok(())
    }

    pub fn resolve(&self, name: &str) -> Result<KnotId, DeduceError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| DeduceError::UnknownId(name.to_string()))
    }

    pub fn knot(&self, id: KnotId) -> &KnotEntry {
        &self.knots[id.0]
    }

    pub fn name(&self, id: KnotId) -> &str {
        &self.knots[id.0].name
    }

    pub fn knots(&self) -> impl Iterator<Item = (KnotId, &KnotEntry)> {
        self.knots.iter().enumerate().map(|(i, k)| (KnotId(i), k))
    }

    pub fn knot_count(&self) -> usize {
        self.knots.len()
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn slot_name(&self, slot: Slot) -> SlotName<'_> {
        SlotName { base: self, slot }
    }
}

/// Displays a slot as `tau(10_139)`.
pub struct SlotName<'a> {
    base: &'a FactBase,
    slot: Slot,
}

impl fmt::Display for SlotName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({})",
            self.slot.quantity.name(),
            self.base.name(self.slot.knot)
        )
    }
}
