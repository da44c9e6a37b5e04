use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paraz2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    (
        serde_json::from_slice(&o.stdout).expect("json on stdout"),
        o.status.code().unwrap(),
    )
}

#[test]
fn parse_prints_canonical_form_and_tree() {
    let o = run(&["parse", "forall n. n + 0_s =s n"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("forall n. n + 0_s =s n\nforall n\n  eq_s\n"),
        "{out}"
    );
}

#[test]
fn parse_errors_exit_two_on_stderr() {
    let o = run(&["parse", "forall n. n +"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["axioms", "check", "--group", "vii"]).status.code(),
        Some(2)
    );
}

#[test]
fn godel_codes() {
    let (v, code) = json(&["godel", "x in_s X"]);
    assert_eq!(code, 0);
    assert_eq!(v["code"], 0);
    let (v, _) = json(&["godel", "x =s 1_s"]);
    assert_eq!(v["code"], 16);
}

#[test]
fn eval_exit_follows_designation() {
    assert_eq!(
        run(&[
            "eval",
            "forall n. n + 0_s =s n",
            "--model",
            &data("model.json")
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(run(&["eval", "0_s =s 1_s"]).status.code(), Some(1));
    let (v, code) = json(&["eval", "n =w 1_w", "--let", "n=2_w"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "B_w");
    assert_eq!(run(&["eval", "n =s n"]).status.code(), Some(2));
}

#[test]
fn axioms_check_on_sound_model() {
    for g in ["i", "ii", "iii", "i.4"] {
        let o = run(&[
            "axioms",
            "check",
            "--model",
            &data("model.json"),
            "--group",
            g,
        ]);
        assert_eq!(o.status.code(), Some(0), "group {g}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("sound\n"));
    }
    let (v, _) = json(&[
        "axioms",
        "check",
        "--model",
        &data("model.json"),
        "--group",
        "i.7",
        "--rank",
        "0",
    ]);
    assert_eq!(v["schemas"].as_array().unwrap().len(), 4);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn comprehension() {
    let (v, code) = json(&[
        "comprehend",
        "!(n in_w X)",
        "--scheme",
        "v.1",
        "--bound",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"]["kind"], "w_inconsistent");
    let (v, _) = json(&[
        "comprehend",
        "!(n in_w X)",
        "--scheme",
        "v.3[0]",
        "--bound",
        "2",
    ]);
    assert_eq!(
        v["classification"],
        serde_json::json!({"kind": "strict_ranked_inconsistent", "rank": 0})
    );
    assert_eq!(
        run(&["comprehend", "!(n in_s X)", "--bound", "2"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn berry_report_fields() {
    let (v, code) = json(&["berry", "--model", &data("model.json"), "--k", "40"]);
    assert_eq!(code, 0);
    for field in [
        "k",
        "A_k",
        "B_k",
        "defining_code",
        "contradiction",
        "membership_value",
    ] {
        assert!(v.get(field).is_some(), "missing {field}");
    }
    assert_eq!(v["contradiction"], false);
    let (v, _) = json(&[
        "berry",
        "--bound",
        "3",
        "--max-len",
        "6",
        "--k",
        "99999999999999999999",
    ]);
    assert_eq!(v["contradiction"], true);
    assert_eq!(v["membership_value"], "B_w(0)");
}

#[test]
fn json_mode_is_deterministic() {
    let args = [
        "berry",
        "--model",
        &data("model.json"),
        "--k",
        "200",
        "--json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn richard_tables() {
    let (v, code) = json(&["richard", "--tables", &data("tables.txt")]);
    assert_eq!(code, 0);
    assert_eq!(
        v["mismatches"],
        serde_json::json!([1, 2, 3, 4, 5, 6, 7, 8, 9, 10])
    );
    assert_eq!(v["self_membership"], "B_w(0)");
    let o = run(&["richard", "--tables", &data("tables.txt")]);
    assert!(
        stdout(&o).starts_with("diagonal = 0.0101011111\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn rationals() {
    let o = run(&["rat", "eval", "1/2@s + 1/3@s"]);
    assert_eq!(stdout(&o), "5/6@s\n");
    assert_eq!(run(&["rat", "eval", "1@s <s 0@s"]).status.code(), Some(1));
    assert_eq!(run(&["rat", "eval", "1/0@s"]).status.code(), Some(2));
}

#[test]
fn reals() {
    let (pi, up) = (data("pi.txt"), data("pi_up.txt"));
    let (v, code) = json(&["real", "cmp", &pi, &up, "--depth", "3", "--flavor", "w"]);
    assert_eq!((v["value"].as_str(), code), (Some("B_w"), 0));
    let (v, code) = json(&["real", "cmp", &pi, &up, "--depth", "5", "--flavor", "s"]);
    assert_eq!((v["value"].as_str(), code), (Some("F"), 1));
    let (v, _) = json(&["real", "cmp", &pi, &up, "--depth", "5", "--rel", "lt"]);
    assert_eq!(v["value"], "T");
    assert_eq!(
        run(&["real", "cmp", &pi, &up, "--depth", "9"])
            .status
            .code(),
        Some(2)
    );
}
