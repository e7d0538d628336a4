//! Derivation certificates and their independent replay.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::base::{FactBase, Slot};
use super::interval::Interval;
use super::rules::{compile, default_interval, Op, Origin, RuleId};

/// Identifier of a derived fact: the index of the step that concluded it.
pub type FactId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Premise {
    pub slot: Slot,
    /// `None` when the premise is still at its axiomatic default.
    pub fact: Option<FactId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub id: FactId,
    pub rule: RuleId,
    pub origin: Origin,
    pub op: Op,
    /// Human-readable statement of the rule instance.
    pub note: &'static str,
    pub target: Slot,
    pub premises: Vec<Premise>,
    /// The earlier fact about `target` this step sharpens, when that fact was
    /// needed to reach the conclusion.
    pub narrows: Option<FactId>,
    pub conclusion: Interval,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate step {position} (fact #{id}) is broken: {reason}")]
pub struct BrokenStep {
    pub position: usize,
    pub id: FactId,
    pub reason: String,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The steps needed to justify the given facts, in their original order.
    /// Requires `steps[i].id == i`, which holds for certificates built by the engine.
    pub fn support(&self, roots: impl IntoIterator<Item = FactId>) -> Certificate {
        let mut needed = BTreeSet::new();
        let mut stack: Vec<FactId> = roots.into_iter().collect();
        while let Some(id) = stack.pop() {
            if !needed.insert(id) {
                continue;
            }
            let step = &self.steps[id];
            debug_assert_eq!(step.id, id);
            stack.extend(step.premises.iter().filter_map(|p| p.fact));
            stack.extend(step.narrows);
        }
        Certificate {
            steps: needed
                .into_iter()
                .map(|id| self.steps[id].clone())
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, base: &'a FactBase) -> CertificateDisplay<'a> {
        CertificateDisplay { cert: self, base }
    }
}

/// Line-per-step text rendering of a certificate.
pub struct CertificateDisplay<'a> {
    cert: &'a Certificate,
    base: &'a FactBase,
}

impl fmt::Display for CertificateDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.cert.steps {
            write!(
                f,
                "#{} {} {} := {}",
                step.id,
                step.rule.label(),
                self.base.slot_name(step.target),
                step.conclusion
            )?;
            write!(f, "  by {}", step.op.describe())?;
            if !step.premises.is_empty() {
                let premises: Vec<String> = step
                    .premises
                    .iter()
                    .map(|p| match p.fact {
                        Some(id) => format!("{}#{id}", self.base.slot_name(p.slot)),
                        None => format!("{}#default", self.base.slot_name(p.slot)),
                    })
                    .collect();
                write!(f, " from {}", premises.join(", "))?;
            }
            if let Some(id) = step.narrows {
                write!(f, " narrowing #{id}")?;
            }
            writeln!(f, " [{}]", describe_origin(self.base, step.origin))?;
        }
        Ok(())
    }
}

pub fn describe_origin(base: &FactBase, origin: Origin) -> String {
    match origin {
        Origin::Fact(i) => {
            let fact = &base.facts()[i];
            let mut s = format!(
                "{} {} = {}",
                base.name(fact.knot),
                fact.kind.name(),
                fact.value
            );
            if let Some(src) = &fact.source {
                s.push_str(&format!(" ({src})"));
            }
            s
        }
        Origin::Relation(i) => {
            let rel = &base.relations()[i];
            format!("relation #{i} {}", rel.kind())
        }
        Origin::Knot(k) => format!("knot {}", base.name(k)),
        Origin::Presentation { knot, index } => {
            format!(
                "{} {}",
                base.name(knot),
                base.knot(knot).presentations[index]
            )
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct RuleKey<'a> {
    rule: RuleId,
    origin: Origin,
    target: Slot,
    premises: &'a [Slot],
    op: Op,
    note: &'a str,
}

/// Re-checks every step of `cert` against the rule instances of `base`.
///
/// A step passes when its rule instance exists in `base`, each premise names
/// an earlier fact about the stated slot (or the slot's default), and its
/// conclusion is exactly what the rule yields from those premises. Returns the
/// final interval of every slot the certificate touches.
pub fn replay(cert: &Certificate, base: &FactBase) -> Result<BTreeMap<Slot, Interval>, BrokenStep> {
    let compiled = compile(base);
    let legal: HashSet<RuleKey<'_>> = compiled
        .iter()
        .map(|p| RuleKey {
            rule: p.rule,
            origin: p.origin,
            target: p.target,
            premises: &p.premises,
            op: p.op,
            note: p.note,
        })
        .collect();

    let mut known: HashMap<FactId, (Slot, Interval)> = HashMap::new();
    let mut current: BTreeMap<Slot, Interval> = BTreeMap::new();

    for (position, step) in cert.steps.iter().enumerate() {
        let broken = |reason: String| BrokenStep {
            position,
            id: step.id,
            reason,
        };
        if known.contains_key(&step.id) {
            return Err(broken("fact id reused".into()));
        }
        let premise_slots: Vec<Slot> = step.premises.iter().map(|p| p.slot).collect();
        let key = RuleKey {
            rule: step.rule,
            origin: step.origin,
            target: step.target,
            premises: &premise_slots,
            op: step.op,
            note: step.note,
        };
        if !legal.contains(&key) {
            return Err(broken(format!(
                "no {} rule instance with this origin, target and premises",
                step.rule.label()
            )));
        }

        let lookup = |slot: Slot, fact: Option<FactId>| -> Result<Interval, BrokenStep> {
            match fact {
                None => Ok(default_interval(slot.quantity)),
                Some(id) => match known.get(&id) {
                    Some(&(s, v)) if s == slot => Ok(v),
                    Some(_) => Err(broken(format!("fact #{id} is about a different slot"))),
                    None => Err(broken(format!("fact #{id} is not established earlier"))),
                },
            }
        };
        let values = step
            .premises
            .iter()
            .map(|p| lookup(p.slot, p.fact))
            .collect::<Result<Vec<_>, _>>()?;
        let prior = lookup(step.target, step.narrows)?;

        let derived = step
            .op
            .eval(&values)
            .ok_or_else(|| broken("premises are contradictory".into()))?;
        let expected = prior
            .meet(&derived)
            .ok_or_else(|| broken("conclusion would be empty".into()))?;
        if expected != step.conclusion {
            return Err(broken(format!(
                "rule yields {expected}, certificate claims {}",
                step.conclusion
            )));
        }

        known.insert(step.id, (step.target, step.conclusion));
        let slot_now = current
            .entry(step.target)
            .or_insert_with(|| default_interval(step.target.quantity));
        *slot_now = slot_now
            .meet(&step.conclusion)
            .ok_or_else(|| broken("conclusion contradicts an earlier fact".into()))?;
    }
    Ok(current)
}
