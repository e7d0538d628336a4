//! Deterministic text and JSON reports of a propagation run.

use std::fmt::Write as _;

use serde::Serialize;

use crate::deduce::{
    replay, Certificate, DeduceError, FactBase, Interval, KnotId, Propagated, RuleId,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotReport {
    pub id: String,
    pub tau: Interval,
    pub g4: Interval,
    pub g3: Interval,
    pub tb_lower: Option<i64>,
    pub presentations: Vec<String>,
    /// Given facts and closed-form seeds the knot's intervals rest on.
    pub seeds: Vec<String>,
    /// Number of steps supporting the knot's intervals.
    pub certificate_length: usize,
}

/// Certificate steps refer to knots by their position in `knots`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub knots: Vec<KnotReport>,
    pub inconsistencies: Vec<String>,
    pub certificate: Certificate,
    /// Outcome of replaying `certificate`, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<String>,
    #[serde(skip)]
    base: FactBase,
}

impl Report {
    /// Reports every knot, or only `only`, with the supporting certificate.
    pub fn new(p: &Propagated, only: Option<KnotId>) -> Report {
        let base = p.base();
        let ids: Vec<KnotId> = match only {
            Some(k) => vec![k],
            None => base.knots().map(|(k, _)| k).collect(),
        };
        let knots = ids
            .iter()
            .map(|&k| {
                let q = p.query(base.name(k)).expect("knot is in the base");
                KnotReport {
                    id: q.record.id,
                    tau: q.record.tau,
                    g4: q.record.g4,
                    g3: q.record.g3,
                    tb_lower: q.record.tb_lower,
                    presentations: q
                        .record
                        .presentations
                        .iter()
                        .map(|p| p.to_string())
                        .collect(),
                    seeds: seeds(base, &q.certificate),
                    certificate_length: q.certificate.len(),
                }
            })
            .collect();
        let certificate = match only {
            Some(k) => {
                p.query(base.name(k))
                    .expect("knot is in the base")
                    .certificate
            }
            None => p.certificate().clone(),
        };
        Report {
            knots,
            inconsistencies: Vec::new(),
            certificate,
            replay: None,
            base: base.clone(),
        }
    }

    /// The report of a run that stopped on an error, carrying the partial certificate.
    pub fn failed(base: &FactBase, err: &DeduceError) -> Report {
        let certificate = match err {
            DeduceError::Inconsistent { certificate, .. }
            | DeduceError::BudgetExhausted { certificate, .. } => (**certificate).clone(),
            _ => Certificate::default(),
        };
        Report {
            knots: Vec::new(),
            inconsistencies: vec![err.to_string()],
            certificate,
            replay: None,
            base: base.clone(),
        }
    }

    /// Replays the certificate against the base and records the outcome.
    pub fn check(&mut self) -> bool {
        let outcome = replay(&self.certificate, &self.base);
        self.replay = Some(match &outcome {
            Ok(_) => "ok".to_string(),
            Err(e) => e.to_string(),
        });
        outcome.is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Plain-text table; with `certify`, followed by the certificate itself.
    pub fn to_text(&self, certify: bool) -> String {
        let mut rows = vec![[
            "knot".to_string(),
            "tau".into(),
            "g4".into(),
            "g3".into(),
            "tb>=".into(),
            "steps".into(),
            "seeds".into(),
        ]];
        for k in &self.knots {
            rows.push([
                k.id.clone(),
                number(k.tau),
                number(k.g4),
                number(k.g3),
                k.tb_lower.map_or("-".into(), |v| v.to_string()),
                k.certificate_length.to_string(),
                if k.seeds.is_empty() {
                    "-".into()
                } else {
                    k.seeds.join("; ")
                },
            ]);
        }
        let mut widths = [0usize; 7];
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }

        let mut out = String::new();
        if !self.knots.is_empty() {
            for row in &rows {
                let mut line = String::new();
                for (i, cell) in row.iter().enumerate() {
                    if i + 1 == row.len() {
                        line.push_str(cell);
                    } else {
                        let pad = widths[i] - cell.chars().count();
                        line.push_str(cell);
                        line.push_str(&" ".repeat(pad + 2));
                    }
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
        }
        if self.inconsistencies.is_empty() {
            out.push_str("inconsistencies: none\n");
        } else {
            for i in &self.inconsistencies {
                let _ = writeln!(out, "inconsistency: {i}");
            }
        }
        if certify {
            let _ = writeln!(out, "certificate: {} steps", self.certificate.len());
            let _ = write!(out, "{}", self.certificate.display(&self.base));
            if let Some(r) = &self.replay {
                let _ = writeln!(out, "replay: {r}");
            }
        }
        out
    }
}

/// An exact interval prints as its value, anything else as `[lo, hi]`.
pub fn number(i: Interval) -> String {
    i.as_exact()
        .map_or_else(|| i.to_string(), |v| v.to_string())
}

fn seeds(base: &FactBase, cert: &Certificate) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for step in &cert.steps {
        let label = match step.rule {
            RuleId::Seed => format!("{} -> {}", step.note, base.slot_name(step.target)),
            RuleId::Given => format!("given {} -> {}", step.note, base.slot_name(step.target)),
            _ => continue,
        };
        if !out.contains(&label) {
            out.push(label);
        }
    }
    out
}
