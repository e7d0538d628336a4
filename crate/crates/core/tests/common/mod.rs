//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tau_core::deduce::{FactBase, FactKind, Relation};
use tau_core::{BraidWord, GridDiagram, KnotPresentation};

/// Closure components by following each strand position through the word.
pub fn traced_components(strands: usize, letters: &[i64]) -> usize {
    let end_of = |start: usize| {
        letters.iter().fold(start, |pos, &l| {
            let i = l.unsigned_abs() as usize;
            if pos + 1 == i {
                i
            } else if pos == i {
                i - 1
            } else {
                pos
            }
        })
    };
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for s in 0..strands {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            p = end_of(p);
        }
    }
    cycles
}

pub fn random_word(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> (usize, Vec<i64>) {
    let n = rng.gen_range(1..=max_strands);
    if n == 1 {
        return (1, Vec::new());
    }
    let k = rng.gen_range(0..=max_len);
    let letters = (0..k)
        .map(|_| {
            let i = rng.gen_range(1..n as i64);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    (n, letters)
}

/// A random braid word whose closure is a knot, by rejection.
pub fn random_knot_word(rng: &mut ChaCha8Rng) -> BraidWord {
    loop {
        let (n, letters) = random_word(rng, 5, 24);
        if traced_components(n, &letters) == 1 {
            return BraidWord::new(n, letters).unwrap();
        }
    }
}

pub fn random_grid(rng: &mut ChaCha8Rng, max_size: usize) -> GridDiagram {
    loop {
        let n = rng.gen_range(2..=max_size);
        let mut xs: Vec<usize> = (0..n).collect();
        let mut os: Vec<usize> = (0..n).collect();
        xs.shuffle(rng);
        os.shuffle(rng);
        if let Ok(g) = GridDiagram::new(xs, os) {
            return g;
        }
    }
}

pub fn random_knot_grid(rng: &mut ChaCha8Rng, max_size: usize) -> GridDiagram {
    loop {
        let g = random_grid(rng, max_size);
        if grid_components(&g) == 1 {
            return g;
        }
    }
}

/// Components of a grid by walking X → O along rows and O → X along columns.
pub fn grid_components(g: &GridDiagram) -> usize {
    let n = g.size();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut row = start;
        while !seen[row] {
            seen[row] = true;
            // leave the row at its O, go up or down the column to its X
            let column = g.os()[row];
            row = (0..n).find(|&r| g.xs()[r] == column).unwrap();
        }
    }
    count
}

/// Writhe from a full table of segment cells: every cell where a horizontal
/// segment passes strictly through a vertical one is a crossing, signed by
/// the cross product of the over (horizontal) and under (vertical) directions.
pub fn brute_force_writhe(g: &GridDiagram) -> i64 {
    let n = g.size();
    let xs = g.xs();
    let os = g.os();
    let mut total = 0;
    for r in 0..n {
        // rows run from O to X
        let (from, to) = (os[r] as i64, xs[r] as i64);
        for c in 0..n {
            let x_row = (0..n).find(|&i| xs[i] == c).unwrap() as i64;
            let o_row = (0..n).find(|&i| os[i] == c).unwrap() as i64;
            let (c, r) = (c as i64, r as i64);
            let inside_row = from.min(to) < c && c < from.max(to);
            let inside_column = x_row.min(o_row) < r && r < x_row.max(o_row);
            if inside_row && inside_column {
                // columns run from X to O
                let over = ((to - from).signum(), 0);
                let under = (0, (o_row - x_row).signum());
                total += over.0 * under.1 - over.1 * under.0;
            }
        }
    }
    total
}

/// Hidden values a generated knot actually has.
#[derive(Clone, Copy, Debug)]
pub struct Truth {
    pub tau: i64,
    pub g4: i64,
    pub g3: i64,
}

/// A random base of `count` knots built from relations and facts that are all
/// true of a hidden assignment, returned alongside that assignment.
pub fn random_consistent_base(rng: &mut ChaCha8Rng, count: usize) -> (FactBase, Vec<Truth>) {
    let mut base = FactBase::new();
    let mut truth: Vec<Truth> = Vec::new();
    let name = |i: usize| format!("K{i}");

    for i in 0..count {
        let fresh = |rng: &mut ChaCha8Rng, tau: i64| {
            let g4 = tau.abs() + rng.gen_range(0..=2);
            Truth {
                tau,
                g4,
                g3: g4 + rng.gen_range(0..=2),
            }
        };
        let choice = if i < 2 { 0 } else { rng.gen_range(0..6) };
        match choice {
            1 => {
                let a = rng.gen_range(0..i);
                let t = truth[a];
                base.add_knot(name(i), vec![]).unwrap();
                truth.push(Truth { tau: -t.tau, ..t });
                base.add_relation(Relation::Mirror {
                    a: name(a),
                    b: name(i),
                })
                .unwrap();
            }
            2 => {
                let a = rng.gen_range(0..i);
                let b = rng.gen_range(0..i);
                let tau = truth[a].tau + truth[b].tau;
                base.add_knot(name(i), vec![]).unwrap();
                truth.push(fresh(rng, tau));
                base.add_relation(Relation::Sum {
                    a: name(a),
                    b: name(b),
                    c: name(i),
                })
                .unwrap();
            }
            3 => {
                let plus = rng.gen_range(0..i);
                let tau = truth[plus].tau - rng.gen_range(0..=1);
                base.add_knot(name(i), vec![]).unwrap();
                truth.push(fresh(rng, tau));
                base.add_relation(Relation::CrossingChange {
                    plus: name(plus),
                    minus: name(i),
                })
                .unwrap();
            }
            4 => {
                let a = rng.gen_range(0..i);
                let tau = rng.gen_range(-4..=4);
                let genus = (truth[a].tau - tau).abs() + rng.gen_range(0..=1);
                base.add_knot(name(i), vec![]).unwrap();
                truth.push(fresh(rng, tau));
                base.add_relation(Relation::Cobordism {
                    a: name(a),
                    b: name(i),
                    genus,
                })
                .unwrap();
            }
            5 => {
                let (p, q) = [(2, 3), (2, 5), (3, 4), (2, 7), (3, 5)][rng.gen_range(0..5)];
                let tau = (p - 1) * (q - 1) / 2;
                let presentation = KnotPresentation::parse(&format!("torus {p} {q}")).unwrap();
                base.add_knot(name(i), vec![presentation]).unwrap();
                truth.push(Truth {
                    tau,
                    g4: tau,
                    g3: tau,
                });
            }
            _ => {
                base.add_knot(name(i), vec![]).unwrap();
                let tau = rng.gen_range(-4..=4);
                truth.push(fresh(rng, tau));
            }
        }
    }

    for (i, t) in truth.iter().enumerate() {
        let id = name(i);
        if rng.gen_bool(0.3) {
            base.add_fact(&id, FactKind::TauLower, t.tau - rng.gen_range(0..=2), None)
                .unwrap();
        }
        if rng.gen_bool(0.3) {
            base.add_fact(&id, FactKind::TauUpper, t.tau + rng.gen_range(0..=2), None)
                .unwrap();
        }
        if rng.gen_bool(0.2) {
            base.add_fact(&id, FactKind::G4Upper, t.g4 + rng.gen_range(0..=1), None)
                .unwrap();
        }
        if rng.gen_bool(0.2) {
            base.add_fact(&id, FactKind::G3, t.g3, Some("generated".into()))
                .unwrap();
        }
        if rng.gen_bool(0.15) {
            let positive = t.tau.max(0) + rng.gen_range(0..=1);
            let negative = (-t.tau).max(0) + (t.g4 - positive).max(0) + rng.gen_range(0..=1);
            base.add_relation(Relation::Unknotting {
                knot: id,
                positive,
                negative,
            })
            .unwrap();
        }
    }
    (base, truth)
}
