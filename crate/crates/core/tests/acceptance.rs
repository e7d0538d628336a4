//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use tau_core::catalog::bundled;
use tau_core::cli::run_with_budget;
use tau_core::deduce::{
    replay, FactBase, FactKind, Interval, PropagateOptions, Quantity, Relation, RuleId, Slot,
};
use tau_core::families::{torus_braid, TorusParams};
use tau_core::{parse_braid, parse_grid, KnotPresentation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tau").chain(args.iter().copied());
    let code = run_with_budget(argv, None, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn pres(text: &str) -> KnotPresentation {
    KnotPresentation::parse(text).unwrap()
}

fn torus_sweep() -> Outcome {
    let mut checked = 0;
    for p in 2..=8i64 {
        for q in p + 1..=8 {
            let Ok(t) = TorusParams::new(p, q) else {
                continue;
            };
            let expected = (p - 1) * (q - 1) / 2;
            let (code, out) = cli(&["torus", &p.to_string(), &q.to_string()]);
            ensure!(
                code == 0 && out == format!("{expected}\n"),
                "T({p},{q}): cli printed {out:?}"
            );
            let via_braid = torus_braid(t)
                .tau_positive_braid()
                .map_err(|e| e.to_string())?;
            ensure!(via_braid == expected, "T({p},{q}): braid gives {via_braid}");
            checked += 1;
        }
    }
    Ok(format!("{checked} coprime pairs"))
}

fn example_10_139() -> Outcome {
    let word = parse_braid("3: 1 1 1 1 2 1 1 1 2 2").unwrap();
    ensure!(
        word.strands() == 3 && word.len() == 10 && word.is_positive() && word.is_knot(),
        "word shape"
    );
    let mut base = FactBase::new();
    base.add_knot("10_139", vec![KnotPresentation::Braid(word)])
        .unwrap();
    let r = base
        .propagate()
        .map_err(|e| e.to_string())?
        .query("10_139")
        .unwrap()
        .record;
    ensure!(
        r.tau == Interval::exact(4) && r.g4 == Interval::exact(4),
        "tau {} g4 {}",
        r.tau,
        r.g4
    );
    Ok("tau = g4 = 4".into())
}

fn example_10_161() -> Outcome {
    let word = parse_braid("3: 1 1 1 2 -1 2 1 1 2 2").unwrap();
    ensure!(
        (word.strands(), word.positive_count(), word.negative_count()) == (3, 9, 1),
        "word shape"
    );
    ensure!(
        word.slice_bennequin_lower() == Ok(3),
        "slice-Bennequin seed"
    );
    let mut base = FactBase::new();
    base.add_knot("-10_161", vec![KnotPresentation::Braid(word)])
        .unwrap();
    base.add_fact("-10_161", FactKind::G3, 3, Some("knot tables".into()))
        .unwrap();
    let p = base.propagate().map_err(|e| e.to_string())?;
    let q = p.query("-10_161").unwrap();
    ensure!(
        q.record.tau == Interval::exact(3) && q.record.g4 == Interval::exact(3),
        "tau {} g4 {}",
        q.record.tau,
        q.record.g4
    );
    replay(&q.certificate, &base).map_err(|e| e.to_string())?;
    Ok(format!(
        "tau = g4 = 3, certificate of {} steps replays",
        q.certificate.len()
    ))
}

fn example_10_145() -> Outcome {
    let word = parse_braid("4: 2 1 3 3 2 -1 -3 2 3 1 2").unwrap();
    ensure!(
        (word.strands(), word.positive_count(), word.negative_count()) == (4, 9, 2),
        "word shape"
    );
    ensure!(
        word.slice_bennequin_lower() == Ok(2),
        "slice-Bennequin seed"
    );
    let mut base = FactBase::new();
    base.add_knot("-10_145", vec![KnotPresentation::Braid(word)])
        .unwrap();
    base.add_relation(Relation::Unknotting {
        knot: "-10_145",
        positive: 2,
        negative: 0,
    })
    .unwrap();
    let p = base.propagate().map_err(|e| e.to_string())?;
    let q = p.query("-10_145").unwrap();
    ensure!(
        q.record.tau == Interval::exact(2) && q.record.g4 == Interval::exact(2),
        "tau {} g4 {}",
        q.record.tau,
        q.record.g4
    );
    replay(&q.certificate, &base).map_err(|e| e.to_string())?;
    Ok("tau = g4 = 2".into())
}

fn pretzel() -> Outcome {
    let (code, out) = cli(&["pretzel", "3", "-5", "-7"]);
    ensure!(code == 0 && out == "1\n", "P(3,-5,-7) printed {out:?}");
    let (code, out) = cli(&["pretzel", "3", "5", "-7"]);
    ensure!(
        code == 0 && out.starts_with("inapplicable"),
        "P(3,5,-7) printed {out:?}"
    );
    Ok("P(3,-5,-7) = 1, P(3,5,-7) inapplicable".into())
}

fn whitehead_doubles() -> Outcome {
    let grid = parse_grid("6\nX: 0 1 2 3 5 4\nO: 2 3 5 0 4 1").unwrap();
    ensure!(grid.tb() == Ok(0), "trefoil grid tb {:?}", grid.tb());
    ensure!(
        grid.writhe() == 3 && grid.crossings().len() == 3,
        "trefoil grid shape"
    );

    let mut base = FactBase::new();
    base.add_knot(
        "trefoil",
        vec![pres("torus 2 3"), KnotPresentation::Grid(grid)],
    )
    .unwrap();
    for n in 1..=5u32 {
        let id = format!("Wh_{n}");
        base.add_knot(id.clone(), vec![]).unwrap();
        base.add_relation(Relation::Double {
            companion: "trefoil".into(),
            result: id,
            iterations: n,
        })
        .unwrap();
    }
    let p = base.propagate().map_err(|e| e.to_string())?;
    ensure!(
        p.query("trefoil").unwrap().record.tb_lower == Some(0),
        "tb_lower of trefoil"
    );
    for n in 1..=5 {
        let q = p.query(&format!("Wh_{n}")).unwrap();
        ensure!(
            q.record.tau == Interval::exact(1),
            "Wh_{n}: tau {}",
            q.record.tau
        );
        replay(&q.certificate, &base).map_err(|e| e.to_string())?;
    }
    let catalog = bundled().propagate().map_err(|e| e.to_string())?;
    for n in 1..=5 {
        let t = catalog
            .query(&format!("Wh_{n}(trefoil)"))
            .unwrap()
            .record
            .tau;
        ensure!(t == Interval::exact(1), "catalog Wh_{n}(trefoil): {t}");
    }
    Ok("tau(Wh_n(trefoil)) = 1 for n = 1..5".into())
}

fn grid_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_917);
    let total = 600;
    for i in 0..total {
        let g = random_grid(&mut rng, 8);
        ensure!(
            g.corner_census().total() == 2 * g.size(),
            "#{i} {g}: census"
        );
        ensure!(g.writhe() == brute_force_writhe(&g), "#{i} {g}: writhe");
        let row = i % g.size();
        let s = g.stabilize_ne(row).map_err(|e| e.to_string())?;
        ensure!(
            s.tb_unchecked() == g.tb_unchecked() - 1,
            "#{i} {g}: stabilized tb"
        );
        if g.is_knot() {
            ensure!(
                s.tb() == Ok(g.tb().unwrap() - 1),
                "#{i} {g}: stabilized knot tb"
            );
        }
    }
    Ok(format!("{total} random grids up to 8x8"))
}

fn braid_parity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let total = 600;
    for i in 0..total {
        let b = random_knot_word(&mut rng);
        let n = b.strands() as i64;
        ensure!((b.len() as i64 - n + 1) % 2 == 0, "#{i} {b}: k - n + 1 odd");
        ensure!(
            (b.writhe() - n + 1) % 2 == 0,
            "#{i} {b}: k+ - k- - n + 1 odd"
        );
        let lower = b.slice_bennequin_lower().map_err(|e| e.to_string())?;
        let genus = b.bennequin_genus().map_err(|e| e.to_string())?;
        ensure!(lower <= genus, "#{i} {b}: {lower} > {genus}");
    }
    Ok(format!("{total} random knot-closure words"))
}

fn confluence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let (base, _) = random_consistent_base(&mut rng, 30);
    let reference = base.propagate().map_err(|e| e.to_string())?;
    replay(reference.certificate(), &base).map_err(|e| e.to_string())?;
    let n = base.propagator_count();
    for round in 0..20 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let p = base
            .propagate_with(&PropagateOptions {
                order: Some(order),
                ..Default::default()
            })
            .map_err(|e| e.to_string())?;
        ensure!(
            p.snapshot() == reference.snapshot(),
            "order {round}: different fixpoint"
        );
        replay(p.certificate(), &base).map_err(|e| format!("order {round}: {e}"))?;
    }
    Ok(format!("20 orders over {n} rule instances"))
}

fn crossing_change_chain() -> Outcome {
    let u = 5;
    let mut base = FactBase::new();
    for i in 0..u {
        base.add_knot(format!("K{i}"), vec![]).unwrap();
    }
    base.add_knot("unknot", vec![pres("braid 1:")]).unwrap();
    for i in 0..u {
        let minus = if i + 1 == u {
            "unknot".to_string()
        } else {
            format!("K{}", i + 1)
        };
        base.add_relation(Relation::CrossingChange {
            plus: format!("K{i}"),
            minus,
        })
        .unwrap();
    }
    let p = base.propagate().map_err(|e| e.to_string())?;
    let k0 = base.resolve("K0").unwrap();
    let tau = p.value(Slot::new(k0, Quantity::Tau));
    ensure!(tau == Interval::range(0, 5).unwrap(), "tau(K0) = {tau}");
    let support = p.support(Slot::new(k0, Quantity::Tau));
    ensure!(
        support.steps.iter().all(|s| match s.rule {
            RuleId::CrossingChange => true,
            RuleId::Seed => s.target.knot == base.resolve("unknot").unwrap(),
            _ => false,
        }),
        "support uses rules other than R3"
    );
    Ok(format!("tau(K0) = {tau} from {} steps", support.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("torus sweep", torus_sweep),
        ("10_139", example_10_139),
        ("-10_161", example_10_161),
        ("-10_145", example_10_145),
        ("pretzel", pretzel),
        ("Whitehead doubles", whitehead_doubles),
        ("grid properties", grid_properties),
        ("braid parity", braid_parity),
        ("engine confluence", confluence),
        ("crossing-change chain", crossing_change_chain),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
