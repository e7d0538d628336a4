//! The rule catalog, compiled into narrowing propagators.
//!
//! Each propagator reads some premise slots, evaluates an [`Op`] on their
//! intervals, and narrows one target slot to the meet of its current value and
//! the result. Every `Op` is monotone, so the fixpoint does not depend on the
//! order in which propagators fire.
//!
//! | rule | statement |
//! |------|-----------|
//! | R1 | τ(−K) = −τ(K), g₄(−K) = g₄(K), g₃(−K) = g₃(K) |
//! | R2 | −g₄(K) ≤ τ(K) ≤ g₄(K) ≤ g₃(K) |
//! | R3 | 0 ≤ τ(K₊) − τ(K₋) ≤ 1 |
//! | R4 | τ(a # b) = τ(a) + τ(b) |
//! | R5 | \|τ(a) − τ(b)\| ≤ g when g₄(a # −b) ≤ g |
//! | R6 | unknotting by p positive and m negative changes: −m ≤ τ ≤ p, g₄ ≤ p + m |
//! | R7 | closed-form seeds from presentations and Whitehead doubles |
//!
//! R5 follows from R1, R2 and R4 alone: τ(a) − τ(b) = τ(a # −b) and
//! |τ(a # −b)| ≤ g₄(a # −b). R6 is iterated R3, kept as its own rule so that
//! certificates stay short.

use serde::Serialize;

use super::base::{FactBase, FactKind, KnotId, Quantity, Relation, Slot};
use super::interval::{Bound, Interval};
use crate::presentation::KnotPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleId {
    Given,
    Mirror,
    GenusChain,
    CrossingChange,
    Additivity,
    Cobordism,
    Unknotting,
    Seed,
}

impl RuleId {
    pub fn label(self) -> &'static str {
        match self {
            RuleId::Given => "given",
            RuleId::Mirror => "R1",
            RuleId::GenusChain => "R2",
            RuleId::CrossingChange => "R3",
            RuleId::Additivity => "R4",
            RuleId::Cobordism => "R5",
            RuleId::Unknotting => "R6",
            RuleId::Seed => "R7",
        }
    }

    pub fn from_label(label: &str) -> Option<RuleId> {
        [
            RuleId::Given,
            RuleId::Mirror,
            RuleId::GenusChain,
            RuleId::CrossingChange,
            RuleId::Additivity,
            RuleId::Cobordism,
            RuleId::Unknotting,
            RuleId::Seed,
        ]
        .into_iter()
        .find(|r| r.label() == label)
    }
}

/// The input item a propagator was compiled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Fact(usize),
    Relation(usize),
    /// Per-knot rules (R2).
    Knot(KnotId),
    Presentation {
        knot: KnotId,
        index: usize,
    },
}

/// A monotone map from premise intervals to a bound on the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Const(Interval),
    Identity,
    Negate,
    /// `p + c`
    Shift(Interval),
    /// `p₀ + p₁`
    Add,
    /// `p₀ − p₁`
    Subtract,
    /// `[−hi, hi]`
    Symmetric,
    /// `[max(lo, −hi), ∞)`, i.e. at least `|x|` for every `x` in the premise.
    AbsLower,
    /// `(−∞, hi]`
    AtMostHi,
    /// `[lo, ∞)`
    AtLeastLo,
    /// The constant when the premise is certainly nonnegative, otherwise no information.
    IfNonnegative(Interval),
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Const(_) => 0,
            Op::Add | Op::Subtract => 2,
            _ => 1,
        }
    }

    /// Evaluates the op; `None` means the premises already contradict each other.
    pub fn eval(self, premises: &[Interval]) -> Option<Interval> {
        assert_eq!(
            premises.len(),
            self.arity(),
            "premise count mismatch for {self:?}"
        );
        let p = premises.first();
        match self {
            Op::Const(c) => Some(c),
            Op::Identity => p.copied(),
            Op::Negate => p.map(Interval::neg),
            Op::Shift(c) => p.map(|x| x.add(&c)),
            Op::Add => Some(premises[0].add(&premises[1])),
            Op::Subtract => Some(premises[0].sub(&premises[1])),
            Op::Symmetric => {
                let hi = p?.hi();
                let lo = match hi {
                    Bound::Finite(v) => v.checked_neg().map_or(Bound::NegInf, Bound::Finite),
                    _ => Bound::NegInf,
                };
                Interval::new(lo, hi)
            }
            Op::AbsLower => {
                let x = p?;
                let lo = x.lo().max(x.neg().lo());
                Interval::new(lo, Bound::PosInf)
            }
            Op::AtMostHi => Interval::new(Bound::NegInf, p?.hi()),
            Op::AtLeastLo => Interval::new(p?.lo(), Bound::PosInf),
            Op::IfNonnegative(c) => Some(if p?.lo() >= Bound::Finite(0) {
                c
            } else {
                Interval::TOP
            }),
        }
    }

    pub fn describe(self) -> String {
        match self {
            Op::Const(c) => c.to_string(),
            Op::Identity => "p".into(),
            Op::Negate => "-p".into(),
            Op::Shift(c) => format!("p + {c}"),
            Op::Add => "p0 + p1".into(),
            Op::Subtract => "p0 - p1".into(),
            Op::Symmetric => "[-hi(p), hi(p)]".into(),
            Op::AbsLower => "[|p|, inf]".into(),
            Op::AtMostHi => "[-inf, hi(p)]".into(),
            Op::AtLeastLo => "[lo(p), inf]".into(),
            Op::IfNonnegative(c) => format!("{c} if lo(p) >= 0"),
        }
    }
}

/// Axiomatic starting value of each slot: genera are nonnegative, nothing else is known.
pub fn default_interval(quantity: Quantity) -> Interval {
    match quantity {
        Quantity::Tau | Quantity::Tb => Interval::TOP,
        Quantity::G4 | Quantity::G3 => Interval::at_least(0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Propagator {
    pub rule: RuleId,
    pub origin: Origin,
    pub target: Slot,
    pub premises: Vec<Slot>,
    pub op: Op,
    /// Short human-readable name of the derived statement.
    pub note: &'static str,
}

struct Builder {
    out: Vec<Propagator>,
}

impl Builder {
    fn push(
        &mut self,
        rule: RuleId,
        origin: Origin,
        target: Slot,
        premises: Vec<Slot>,
        op: Op,
        note: &'static str,
    ) {
        debug_assert_eq!(premises.len(), op.arity());
        self.out.push(Propagator {
            rule,
            origin,
            target,
            premises,
            op,
            note,
        });
    }
}

fn tau(k: KnotId) -> Slot {
    Slot::new(k, Quantity::Tau)
}

fn g4(k: KnotId) -> Slot {
    Slot::new(k, Quantity::G4)
}

fn g3(k: KnotId) -> Slot {
    Slot::new(k, Quantity::G3)
}

fn tb(k: KnotId) -> Slot {
    Slot::new(k, Quantity::Tb)
}

/// Compiles every rule instance of a base, in a fixed order: given facts,
/// presentation seeds, relations, then the per-knot genus chain.
pub fn compile(base: &FactBase) -> Vec<Propagator> {
    let mut b = Builder { out: Vec::new() };

    for (i, fact) in base.facts().iter().enumerate() {
        let k = fact.knot;
        let (slot, interval) = match fact.kind {
            FactKind::G3 => (g3(k), Interval::exact(fact.value)),
            FactKind::G4Upper => (g4(k), Interval::at_most(fact.value)),
            FactKind::TbLower => (tb(k), Interval::at_least(fact.value)),
            FactKind::TauLower => (tau(k), Interval::at_least(fact.value)),
            FactKind::TauUpper => (tau(k), Interval::at_most(fact.value)),
        };
        b.push(
            RuleId::Given,
            Origin::Fact(i),
            slot,
            vec![],
            Op::Const(interval),
            fact.kind.name(),
        );
    }

    for (k, entry) in base.knots() {
        for (index, presentation) in entry.presentations.iter().enumerate() {
            let origin = Origin::Presentation { knot: k, index };
            seed_presentation(&mut b, origin, k, presentation);
        }
    }

    for (i, relation) in base.relations().iter().enumerate() {
        let origin = Origin::Relation(i);
        match *relation {
            Relation::Mirror { a, b: m } => {
                b.push(
                    RuleId::Mirror,
                    origin,
                    tau(m),
                    vec![tau(a)],
                    Op::Negate,
                    "tau(-K) = -tau(K)",
                );
                b.push(
                    RuleId::Mirror,
                    origin,
                    tau(a),
                    vec![tau(m)],
                    Op::Negate,
                    "tau(-K) = -tau(K)",
                );
                b.push(
                    RuleId::Mirror,
                    origin,
                    g4(m),
                    vec![g4(a)],
                    Op::Identity,
                    "g4(-K) = g4(K)",
                );
                b.push(
                    RuleId::Mirror,
                    origin,
                    g4(a),
                    vec![g4(m)],
                    Op::Identity,
                    "g4(-K) = g4(K)",
                );
                b.push(
                    RuleId::Mirror,
                    origin,
                    g3(m),
                    vec![g3(a)],
                    Op::Identity,
                    "g3(-K) = g3(K)",
                );
                b.push(
                    RuleId::Mirror,
                    origin,
                    g3(a),
                    vec![g3(m)],
                    Op::Identity,
                    "g3(-K) = g3(K)",
                );
            }
            Relation::Sum { a, b: s, c } => {
                let note = "tau(a # b) = tau(a) + tau(b)";
                b.push(
                    RuleId::Additivity,
                    origin,
                    tau(c),
                    vec![tau(a), tau(s)],
                    Op::Add,
                    note,
                );
                b.push(
                    RuleId::Additivity,
                    origin,
                    tau(a),
                    vec![tau(c), tau(s)],
                    Op::Subtract,
                    note,
                );
                b.push(
                    RuleId::Additivity,
                    origin,
                    tau(s),
                    vec![tau(c), tau(a)],
                    Op::Subtract,
                    note,
                );
            }
            Relation::CrossingChange { plus, minus } => {
                let note = "0 <= tau(K+) - tau(K-) <= 1";
                let up = Interval::range(0, 1).expect("nonempty");
                b.push(
                    RuleId::CrossingChange,
                    origin,
                    tau(plus),
                    vec![tau(minus)],
                    Op::Shift(up),
                    note,
                );
                b.push(
                    RuleId::CrossingChange,
                    origin,
                    tau(minus),
                    vec![tau(plus)],
                    Op::Shift(up.neg()),
                    note,
                );
            }
            Relation::Cobordism { a, b: other, genus } => {
                let note = "|tau(a) - tau(b)| <= g4(a # -b)";
                let band = Interval::range(-genus, genus).expect("genus is nonnegative");
                b.push(
                    RuleId::Cobordism,
                    origin,
                    tau(a),
                    vec![tau(other)],
                    Op::Shift(band),
                    note,
                );
                b.push(
                    RuleId::Cobordism,
                    origin,
                    tau(other),
                    vec![tau(a)],
                    Op::Shift(band),
                    note,
                );
            }
            Relation::Unknotting {
                knot,
                positive,
                negative,
            } => {
                let range = Interval::range(-negative, positive).expect("counts are nonnegative");
                b.push(
                    RuleId::Unknotting,
                    origin,
                    tau(knot),
                    vec![],
                    Op::Const(range),
                    "-m <= tau <= p",
                );
                let genus = Interval::range(0, positive + negative).expect("nonempty");
                b.push(
                    RuleId::Unknotting,
                    origin,
                    g4(knot),
                    vec![],
                    Op::Const(genus),
                    "g4 <= p + m",
                );
            }
            Relation::Double {
                companion, result, ..
            } => {
                let one = Interval::exact(1);
                // tau(Wh(K)) = g4(Wh(K)) = 1 and TB(Wh(K)) >= 1 whenever TB(K) >= 0
                b.push(
                    RuleId::Seed,
                    origin,
                    tau(result),
                    vec![tb(companion)],
                    Op::IfNonnegative(one),
                    "whitehead_double_tau",
                );
                b.push(
                    RuleId::Seed,
                    origin,
                    g4(result),
                    vec![tb(companion)],
                    Op::IfNonnegative(one),
                    "whitehead_double_g4",
                );
                b.push(
                    RuleId::Seed,
                    origin,
                    tb(result),
                    vec![tb(companion)],
                    Op::IfNonnegative(Interval::at_least(1)),
                    "whitehead_double_tb",
                );
            }
        }
    }

    for (k, _) in base.knots() {
        let origin = Origin::Knot(k);
        b.push(
            RuleId::GenusChain,
            origin,
            tau(k),
            vec![g4(k)],
            Op::Symmetric,
            "|tau| <= g4",
        );
        b.push(
            RuleId::GenusChain,
            origin,
            g4(k),
            vec![tau(k)],
            Op::AbsLower,
            "|tau| <= g4",
        );
        b.push(
            RuleId::GenusChain,
            origin,
            g4(k),
            vec![g3(k)],
            Op::AtMostHi,
            "g4 <= g3",
        );
        b.push(
            RuleId::GenusChain,
            origin,
            g3(k),
            vec![g4(k)],
            Op::AtLeastLo,
            "g4 <= g3",
        );
    }

    b.out
}

fn seed_presentation(b: &mut Builder, origin: Origin, k: KnotId, p: &KnotPresentation) {
    match p {
        KnotPresentation::Braid(word) => {
            if let Ok(v) = word.tau_positive_braid() {
                b.push(
                    RuleId::Seed,
                    origin,
                    tau(k),
                    vec![],
                    Op::Const(Interval::exact(v)),
                    "tau_positive_braid",
                );
            } else if let Ok(v) = word.slice_bennequin_lower() {
                b.push(
                    RuleId::Seed,
                    origin,
                    tau(k),
                    vec![],
                    Op::Const(Interval::at_least(v)),
                    "slice_bennequin_lower",
                );
            }
            if let Ok(v) = word.bennequin_genus() {
                b.push(
                    RuleId::Seed,
                    origin,
                    g3(k),
                    vec![],
                    Op::Const(Interval::at_most(v)),
                    "bennequin_genus",
                );
            }
        }
        KnotPresentation::Torus(t) => {
            b.push(
                RuleId::Seed,
                origin,
                tau(k),
                vec![],
                Op::Const(Interval::exact(t.tau())),
                "tau_torus",
            );
            if let Ok(v) = t.braid().bennequin_genus() {
                b.push(
                    RuleId::Seed,
                    origin,
                    g3(k),
                    vec![],
                    Op::Const(Interval::at_most(v)),
                    "bennequin_genus",
                );
            }
        }
        KnotPresentation::Pretzel(params) => {
            if let Some(v) = params.tau() {
                b.push(
                    RuleId::Seed,
                    origin,
                    tau(k),
                    vec![],
                    Op::Const(Interval::exact(v)),
                    "pretzel_tau",
                );
            }
        }
        KnotPresentation::Grid(g) => {
            if let Ok(v) = g.tb() {
                b.push(
                    RuleId::Seed,
                    origin,
                    tb(k),
                    vec![],
                    Op::Const(Interval::at_least(v)),
                    "grid_tb",
                );
            }
        }
        KnotPresentation::Named(_) => {}
    }
}
