//! Worklist fixpoint over the compiled propagators.

use std::collections::VecDeque;

use serde::Serialize;

use super::base::{FactBase, KnotId, Quantity, Slot};
use super::certificate::{Certificate, FactId, Premise, Step};
use super::interval::Interval;
use super::rules::{compile, default_interval, Propagator};
use super::DeduceError;
use crate::presentation::KnotPresentation;

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct PropagateOptions {
    /// Maximum number of propagator evaluations.
    pub budget: u64,
    /// Initial worklist order as a permutation of propagator indices.
    /// `None` uses compilation order.
    pub order: Option<Vec<usize>>,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        PropagateOptions {
            budget: DEFAULT_STEP_BUDGET,
            order: None,
        }
    }
}

/// Current knowledge about one knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotRecord {
    pub id: String,
    pub tau: Interval,
    pub g4: Interval,
    /// Seifert genus; exact when supplied as a fact, otherwise bounded by surfaces we know.
    pub g3: Interval,
    pub tb_lower: Option<i64>,
    #[serde(serialize_with = "presentation_strings")]
    pub presentations: Vec<KnotPresentation>,
}

fn presentation_strings<S: serde::Serializer>(
    v: &[KnotPresentation],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

#[derive(Clone, Debug)]
pub struct Query {
    pub record: KnotRecord,
    /// Steps supporting all of the record's intervals.
    pub certificate: Certificate,
}

/// The least fixpoint of a base together with its certificate.
#[derive(Clone, Debug)]
pub struct Propagated {
    base: FactBase,
    values: Vec<(Interval, Option<FactId>)>,
    certificate: Certificate,
    evaluations: u64,
}

fn slot_index(slot: Slot) -> usize {
    let q = match slot.quantity {
        Quantity::Tau => 0,
        Quantity::G4 => 1,
        Quantity::G3 => 2,
        Quantity::Tb => 3,
    };
    slot.knot.0 * 4 + q
}

impl FactBase {
    /// Number of rule instances; valid indices for [`PropagateOptions::order`].
    pub fn propagator_count(&self) -> usize {
        compile(self).len()
    }

    pub fn propagate(&self) -> Result<Propagated, DeduceError> {
        self.propagate_with(&PropagateOptions::default())
    }

    pub fn propagate_with(&self, options: &PropagateOptions) -> Result<Propagated, DeduceError> {
        let props = compile(self);
        let mut values: Vec<(Interval, Option<FactId>)> = (0..self.knot_count())
            .flat_map(|_| Quantity::ALL.map(|q| (default_interval(q), None)))
            .collect();

        let mut readers: Vec<Vec<usize>> = vec![Vec::new(); values.len()];
        for (i, p) in props.iter().enumerate() {
            for s in &p.premises {
                readers[slot_index(*s)].push(i);
            }
        }

        let initial: Vec<usize> = match &options.order {
            Some(order) => {
                let mut sorted = order.clone();
                sorted.sort_unstable();
                if sorted != (0..props.len()).collect::<Vec<_>>() {
                    return Err(DeduceError::InvalidInput(format!(
                        "worklist order must be a permutation of 0..{}",
                        props.len()
                    )));
                }
                order.clone()
            }
            None => (0..props.len()).collect(),
        };
        let mut queued = vec![true; props.len()];
        let mut queue: VecDeque<usize> = initial.into();
        let mut certificate = Certificate::default();
        let mut evaluations = 0u64;

        while let Some(i) = queue.pop_front() {
            queued[i] = false;
            evaluations += 1;
            if evaluations > options.budget {
                return Err(DeduceError::BudgetExhausted {
                    budget: options.budget,
                    certificate: Box::new(certificate),
                });
            }
            let p = &props[i];
            let premises: Vec<Premise> = p
                .premises
                .iter()
                .map(|&slot| Premise {
                    slot,
                    fact: values[slot_index(slot)].1,
                })
                .collect();
            let inputs: Vec<Interval> = p
                .premises
                .iter()
                .map(|&slot| values[slot_index(slot)].0)
                .collect();
            let (current, current_fact) = values[slot_index(p.target)];
            let Some(narrowed) =
                p.op.eval(&inputs)
                    .and_then(|d| current.meet(&d).map(|n| (d, n)))
            else {
                return Err(self.inconsistency(p, &inputs, current, certificate));
            };
            let (derived, next) = narrowed;
            if next == current {
                continue;
            }
            debug_assert!(next.is_subset_of(&current));

            // Cite the previous fact only when the rule alone does not give `next`.
            let alone = default_interval(p.target.quantity).meet(&derived);
            let narrows = if alone == Some(next) {
                None
            } else {
                current_fact
            };
            let id = certificate.steps.len();
            certificate.steps.push(Step {
                id,
                rule: p.rule,
                origin: p.origin,
                op: p.op,
                note: p.note,
                target: p.target,
                premises,
                narrows,
                conclusion: next,
            });
            values[slot_index(p.target)] = (next, Some(id));
            for &r in &readers[slot_index(p.target)] {
                if !queued[r] {
                    queued[r] = true;
                    queue.push_back(r);
                }
            }
        }

        Ok(Propagated {
            base: self.clone(),
            values,
            certificate,
            evaluations,
        })
    }

    fn inconsistency(
        &self,
        p: &Propagator,
        inputs: &[Interval],
        current: Interval,
        certificate: Certificate,
    ) -> DeduceError {
        let derived =
            p.op.eval(inputs)
                .map_or_else(|| "contradictory premises".to_string(), |d| d.to_string());
        DeduceError::Inconsistent {
            detail: format!(
                "{} ({}) on {}: current {current}, rule gives {derived}",
                p.rule.label(),
                p.note,
                self.slot_name(p.target),
            ),
            certificate: Box::new(certificate),
        }
    }
}

impl Propagated {
    pub fn base(&self) -> &FactBase {
        &self.base
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Number of propagator evaluations the fixpoint took.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn value(&self, slot: Slot) -> Interval {
        self.values[slot_index(slot)].0
    }

    /// The fact currently holding `slot`, if any rule has touched it.
    pub fn fact(&self, slot: Slot) -> Option<FactId> {
        self.values[slot_index(slot)].1
    }

    /// Minimal certificate for the current value of one slot.
    pub fn support(&self, slot: Slot) -> Certificate {
        self.certificate.support(self.fact(slot))
    }

    pub fn record(&self, knot: KnotId) -> KnotRecord {
        let v = |q| self.value(Slot::new(knot, q));
        let entry = self.base.knot(knot);
        KnotRecord {
            id: entry.name.clone(),
            tau: v(Quantity::Tau),
            g4: v(Quantity::G4),
            g3: v(Quantity::G3),
            tb_lower: v(Quantity::Tb).lo().finite(),
            presentations: entry.presentations.clone(),
        }
    }

    pub fn query(&self, name: &str) -> Result<Query, DeduceError> {
        let knot = self.base.resolve(name)?;
        let roots = Quantity::ALL
            .iter()
            .filter_map(|&q| self.fact(Slot::new(knot, q)));
        Ok(Query {
            record: self.record(knot),
            certificate: self.certificate.support(roots),
        })
    }

    pub fn records(&self) -> Vec<KnotRecord> {
        self.base.knots().map(|(k, _)| self.record(k)).collect()
    }

    /// Final interval of every slot, for comparing fixpoints.
    pub fn snapshot(&self) -> Vec<Interval> {
        self.values.iter().map(|v| v.0).collect()
    }
}
