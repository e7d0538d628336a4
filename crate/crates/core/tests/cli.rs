use std::path::PathBuf;
use std::process::Command;

use tau_core::cli::{run_with_budget, EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE};

fn tau(args: &[&str]) -> (i32, String, String) {
    tau_with_budget(args, None)
}

fn tau_with_budget(args: &[&str], budget: Option<&str>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tau").chain(args.iter().copied());
    let code = run_with_budget(argv, budget, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tau-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn torus() {
    assert_eq!(
        tau(&["torus", "3", "5"]),
        (EXIT_OK, "4\n".into(), String::new())
    );
    let (code, _, err) = tau(&["torus", "2", "4"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("coprime"), "{err}");
}

#[test]
fn braid() {
    let (code, out, _) = tau(&["braid", "2: 1 1 1", "--positive"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("tau: 1\ng4: 1\ng3: 1\n"), "{out}");

    let (code, out, _) = tau(&["braid", "3: 1 1 1 2 -1 2 1 1 2 2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("slice_bennequin_lower: 3"), "{out}");
    assert!(out.contains("tau: [3, 4]"), "{out}");

    assert_eq!(tau(&["braid", "2: 1 -1 1", "--positive"]).0, EXIT_USAGE);
    let (code, _, err) = tau(&["braid", "3: 1 1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("3 components"), "{err}");
    assert_eq!(tau(&["braid", "2: 5"]).0, EXIT_USAGE);
}

#[test]
fn pretzel() {
    assert_eq!(tau(&["pretzel", "3", "-5", "-7"]).1, "1\n");
    let (code, out, _) = tau(&["pretzel", "3", "5", "-7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("inapplicable"), "{out}");
    assert_eq!(tau(&["pretzel", "-1", "-3", "-5", "-7", "-9"]).1, "2\n");
    assert_eq!(tau(&["pretzel", "3", "5"]).0, EXIT_USAGE);
}

#[test]
fn double() {
    let base = ["double", "--companion", "trefoil", "--iterations", "4"];
    let with = |extra: &[&str]| {
        let mut args = base.to_vec();
        args.extend_from_slice(extra);
        tau(&args)
    };
    assert_eq!(with(&["--tb-lower", "0"]).1, "1\n");
    assert!(with(&["--tb-lower", "-1"]).1.starts_with("inapplicable"));
    assert_eq!(
        with(&["--tb-lower", "0", "--clasp", "negative"]).0,
        EXIT_USAGE
    );
    assert_eq!(with(&["--tb-lower", "0", "--twist", "2"]).0, EXIT_USAGE);
    assert_eq!(
        tau(&[
            "double",
            "--companion",
            "K",
            "--tb-lower",
            "0",
            "--iterations",
            "0"
        ])
        .0,
        EXIT_USAGE
    );
}

#[test]
fn grid() {
    let path = scratch("trefoil.grid", "6\nX: 0 1 2 3 5 4\nO: 2 3 5 0 4 1\n");
    let (code, out, _) = tau(&["grid", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("components: 1\n"), "{out}");
    assert!(out.contains("writhe: 3\n"), "{out}");
    assert!(out.contains("corners: NE 3 NW 3 SE 3 SW 3\n"), "{out}");
    assert!(out.ends_with("tb: 0\n"), "{out}");

    let bad = scratch("bad.grid", "3\nX: 0 1 2\nO: 0 2 1\n");
    assert_eq!(tau(&["grid", bad.to_str().unwrap()]).0, EXIT_USAGE);
    assert_eq!(tau(&["grid", "/nonexistent/tau.grid"]).0, EXIT_USAGE);
}

#[test]
fn catalog_pins_examples() {
    let (code, out, _) = tau(&["catalog"]);
    assert_eq!(code, EXIT_OK);
    let tau_of = |id: &str| {
        out.lines()
            .find(|l| l.split_whitespace().next() == Some(id))
            .and_then(|l| l.split_whitespace().nth(1))
            .unwrap_or_else(|| panic!("{id} missing from\n{out}"))
            .to_string()
    };
    assert_eq!(tau_of("10_139"), "4");
    assert_eq!(tau_of("-10_161"), "3");
    assert_eq!(tau_of("-10_145"), "2");
    assert_eq!(tau_of("P(3,-5,-7)"), "1");
    assert!(out.ends_with("inconsistencies: none\n"));
    assert_eq!(tau(&["catalog"]).1, out, "report must be reproducible");
}

#[test]
fn catalog_query_and_json() {
    let (code, out, _) = tau(&["catalog", "--query", "-10_161", "--certify"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("replay: ok"), "{out}");

    let (code, out, _) = tau(&["catalog", "--json", "--query", "10_139"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["knots"][0]["tau"], serde_json::json!([4, 4]));
    assert_eq!(v["knots"][0]["g4"], serde_json::json!([4, 4]));

    assert_eq!(tau(&["catalog", "--query", "nope"]).0, EXIT_USAGE);
}

#[test]
fn deduce_files() {
    let ok = scratch(
        "ok.json",
        r#"{"knots": [{"id": "a", "presentations": ["torus 2 5"]}, {"id": "b"}],
            "relations": [{"kind": "mirror", "a": "a", "b": "b"}]}"#,
    );
    let (code, out, _) = tau(&["deduce", ok.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["knots"][1]["tau"], serde_json::json!([-2, -2]));

    let bad = scratch(
        "inconsistent.json",
        r#"{"knots": [{"id": "a", "presentations": ["torus 2 5"]}],
            "facts": [{"id": "a", "kind": "g4_upper", "value": 1}]}"#,
    );
    let (code, _, err) = tau(&["deduce", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INCONSISTENT);
    assert!(err.contains("inconsistent"), "{err}");

    let unknown = scratch(
        "unknown.json",
        r#"{"knots": [{"id": "a"}], "relations": [{"kind": "ribbon", "a": "a"}]}"#,
    );
    let (code, _, err) = tau(&["deduce", unknown.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("ribbon"), "{err}");

    let empty = scratch("empty.json", "");
    let (code, out, _) = tau(&["deduce", empty.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "inconsistencies: none\n"));
}

#[test]
fn budget() {
    assert_eq!(tau_with_budget(&["catalog"], Some("3")).0, EXIT_BUDGET);
    assert_eq!(tau_with_budget(&["catalog"], Some("lots")).0, EXIT_USAGE);
    assert_eq!(tau_with_budget(&["catalog"], Some("100000")).0, EXIT_OK);
}

#[test]
fn usage_errors() {
    assert_eq!(tau(&[]).0, EXIT_USAGE);
    assert_eq!(tau(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(tau(&["torus", "3"]).0, EXIT_USAGE);
    let (code, out, _) = tau(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("catalog"));
}

#[test]
fn binary_exit_codes_and_budget_variable() {
    let bin = env!("CARGO_BIN_EXE_tau");
    let out = Command::new(bin)
        .args(["torus", "2", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1\n");
    let out = Command::new(bin)
        .arg("catalog")
        .env("TAU_STEP_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BUDGET));
    let out = Command::new(bin).arg("torus").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
