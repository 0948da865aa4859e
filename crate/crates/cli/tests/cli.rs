use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const Z12: &str = r#"{"kind":"zmod","n":12}"#;
const ZZ: &str = r#"{"kind":"integers"}"#;
const SMALL: &str = r#"{"moduli":[2,3,4,6,8,12],"product_max_size":8,"idealizations":[],"poly_quotients":[],"integer_samples":0}"#;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn lasker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lasker"))
        .args(args)
        .env_remove("LASKER_SIZE_CAP")
        .output()
        .expect("spawn lasker")
}

fn code(args: &[&str]) -> i32 {
    lasker(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = lasker(&all);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

fn assert_valid(schema: &str, doc: &Value) {
    let path = root().join("schemas").join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{}: {errors:?}\n{doc:#}", path.display());
}

#[test]
fn exit_codes() {
    // negative verdicts are still successful runs
    assert_eq!(code(&["check", "irreducible", "--ring", ZZ, "--ideal", r#"{"n":6}"#]), 0);
    assert_eq!(code(&["check", "bogus", "--ring", ZZ]), 64);
    assert_eq!(code(&["ring-info", "--ring", "{not json"]), 64);
    assert_eq!(code(&["ring-info", "--ring", r#"{"kind":"nope"}"#]), 64);
    assert_eq!(code(&["ring-info", "--ring", Z12, "--ring-file", "x.json"]), 64);
    assert_eq!(code(&["ring-info"]), 64);
    assert_eq!(code(&["ring-info", "--ring", r#"{"kind":"zmod","n":1}"#]), 65);
    assert_eq!(code(&["--cap", "8", "ring-info", "--ring", Z12]), 65);
    assert_eq!(code(&["check", "prime", "--ring", Z12, "--ideal", r#"{"gens":[13]}"#]), 65);
    assert_eq!(
        code(&[
            "check",
            "s-primary",
            "--ring",
            ZZ,
            "--mset",
            r#"{"complement_of_prime":3}"#,
            "--ideal",
            r#"{"n":8}"#
        ]),
        65
    );
    assert_eq!(code(&["verify", "all", "--corpus", "empty"]), 2);
    assert_eq!(code(&["verify", "intersection", "--corpus", SMALL]), 0);
    assert_eq!(code(&["verify", "intersection", "--corpus", SMALL, "--mutate"]), 1);
}

#[test]
fn invalid_decomposition_is_rejected() {
    // 6Z ∩ 9Z is 18Z, not 6Z
    let d = r#"{"target":{"n":6},"components":[{"Q":{"n":6}},{"Q":{"n":9}}]}"#;
    let mset = r#"{"complement_of_prime":3}"#;
    assert_eq!(code(&["verify-minimality", "--ring", ZZ, "--mset", mset, "--decomposition", d]), 65);
}

#[test]
fn file_arguments() {
    let dir = std::env::temp_dir().join(format!("lasker-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let ring = dir.join("ring.json");
    std::fs::write(&ring, Z12).unwrap();
    let ideal = dir.join("ideal.json");
    std::fs::write(&ideal, r#"{"gens":[0]}"#).unwrap();
    let out = lasker(&[
        "decompose",
        "--ring-file",
        ring.to_str().unwrap(),
        "--ideal-file",
        ideal.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("(0) = (4) ∩ (3)\n"));
    assert_eq!(code(&["ring-info", "--ring-file", dir.join("missing.json").to_str().unwrap()]), 64);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_outputs_match_schemas() {
    let boolean = r#"{"kind":"product","factors":[{"kind":"zmod","n":2},{"kind":"zmod","n":2}]}"#;
    let (v, _) = json(&["ring-info", "--ring", Z12]);
    assert_valid("ring-info", &v);
    let (v, _) = json(&["ring-info", "--ring", ZZ]);
    assert_valid("ring-info", &v);
    let (v, _) = json(&["enumerate-ideals", "--ring", boolean]);
    assert_valid("ideals", &v);
    assert_eq!(v["ideals"].as_array().unwrap().len(), 4);

    let checks: &[(&str, &str, Option<&str>, Option<&str>)] = &[
        ("s-primary", ZZ, Some(r#"{"n":6}"#), Some(r#"{"complement_of_prime":3}"#)),
        ("s-irreducible", ZZ, Some(r#"{"n":6}"#), Some(r#"{"complement_of_prime":3}"#)),
        ("irreducible", ZZ, Some(r#"{"n":6}"#), None),
        ("s-prime", Z12, Some(r#"{"gens":[0]}"#), Some(r#"{"gens":[5]}"#)),
        ("s-primary", boolean, Some(r#"{"gens":[]}"#), Some(r#"{"gens":[[1,0]]}"#)),
        ("sft", ZZ, Some(r#"{"n":6}"#), Some(r#"{"complement_of_prime":3}"#)),
        ("s-finite", Z12, Some(r#"{"gens":[6]}"#), Some(r#"{"unit_group":true}"#)),
        ("radically-s-finite", ZZ, Some(r#"{"n":12}"#), Some(r#"{"primes":[2]}"#)),
        ("divided", Z12, Some(r#"{"gens":[6]}"#), None),
        ("s-noetherian-spectrum", Z12, None, None),
    ];
    for (pred, ring, ideal, mset) in checks {
        let mut args = vec!["check", pred, "--ring", ring];
        if let Some(i) = ideal {
            args.extend(["--ideal", i]);
        }
        if let Some(s) = mset {
            args.extend(["--mset", s]);
        }
        let (v, code) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_valid("certificate", &v);
        assert_eq!(v["predicate"], *pred);
    }

    let (v, _) = json(&["decompose", "--ring", Z12, "--ideal", r#"{"gens":[0]}"#]);
    assert_valid("decomposition", &v);
    let (v, _) = json(&["decompose", "--ring", ZZ, "--ideal", r#"{"n":360}"#, "--mset", r#"{"primes":[3]}"#]);
    assert_valid("decomposition", &v);
    let redundant = r#"{"target":{"gens":[0]},"components":[{"Q":{"gens":[4]}},{"Q":{"gens":[3]}},{"Q":{"gens":[2]}}]}"#;
    let (v, _) = json(&["verify-minimality", "--ring", Z12, "--decomposition", redundant]);
    assert_valid("minimality", &v);
    assert_eq!(v["minimal"], false);
    let (v, _) = json(&["minimalize", "--ring", Z12, "--decomposition", redundant]);
    assert_valid("decomposition", &v);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);

    let (v, code) = json(&["verify", "all", "--corpus", SMALL]);
    assert_eq!(code, 0);
    assert_valid("verify", &v);
    let (v, code) = json(&["verify", "intersection", "--corpus", SMALL, "--mutate"]);
    assert_eq!(code, 1);
    assert_valid("verify", &v);
    assert!(!v["suites"][0]["counterexamples"].as_array().unwrap().is_empty());
    let (v, _) = json(&["verify", "all", "--corpus", "empty"]);
    assert_valid("verify", &v);
    let (v, _) = json(&["--cap", "6", "corpus"]);
    assert_valid("corpus", &v);
}

#[test]
fn input_documents_match_schemas() {
    for ring in [
        Z12,
        ZZ,
        r#"{"kind":"poly_quot","p":2,"f":[1,1,0,1]}"#,
        r#"{"kind":"quotient","base":{"kind":"zmod","n":12},"ideal_gens":[4]}"#,
        r#"{"kind":"idealization","base":{"kind":"zmod","n":4},"m":2}"#,
        r#"{"kind":"localization","base":{"kind":"zmod","n":12},"mset_gens":[3]}"#,
    ] {
        let v: Value = serde_json::from_str(ring).unwrap();
        assert_valid("ring-spec", &v);
        assert_eq!(code(&["ring-info", "--ring", ring]), 0, "{ring}");
    }
    for ideal in [r#"{"gens":[4,6]}"#, r#"{"n":6}"#] {
        assert_valid("ideal", &serde_json::from_str(ideal).unwrap());
    }
    for mset in [
        r#"{"gens":[5]}"#,
        r#"{"unit_group":true}"#,
        r#"{"primes":[2,3],"units":true}"#,
        r#"{"complement_of_prime":3}"#,
    ] {
        assert_valid("mset", &serde_json::from_str(mset).unwrap());
    }
}

#[test]
fn certificates_round_trip() {
    use lasker_core::doc::{CertificateDoc, DecompositionDoc};
    use lasker_core::lab::SuiteReport;

    let (v, _) = json(&["check", "s-primary", "--ring", ZZ, "--ideal", r#"{"n":6}"#, "--mset", r#"{"complement_of_prime":3}"#]);
    let cert: CertificateDoc = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&cert).unwrap(), v);
    assert_eq!(cert.text(), "S-primary: YES (witness s=2)");

    let (v, _) = json(&["decompose", "--ring", Z12, "--ideal", r#"{"gens":[0]}"#]);
    let d: DecompositionDoc = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&d).unwrap(), v);
    // the emitted document is accepted back as input
    let text = serde_json::to_string(&d).unwrap();
    let (m, code) = json(&["verify-minimality", "--ring", Z12, "--decomposition", &text]);
    assert_eq!(code, 0);
    assert_eq!(m["minimal"], true);

    let (v, _) = json(&["verify", "nil-primary", "--corpus", SMALL]);
    let r: SuiteReport = serde_json::from_value(v["suites"][0].clone()).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), v["suites"][0]);
}

/// One `$ lasker ...` command from a console block of the README.
struct Example {
    args: Vec<String>,
    stdout: String,
    code: i32,
}

fn readme_examples() -> Vec<Example> {
    let readme = std::fs::read_to_string(root().join("README.md")).unwrap();
    let mut out = Vec::new();
    let mut in_console = false;
    for line in readme.lines() {
        if line.starts_with("```") {
            in_console = line == "```console";
            continue;
        }
        if !in_console {
            continue;
        }
        if let Some(cmd) = line.strip_prefix("$ ") {
            let mut args = shlex::split(cmd).expect("quoted command");
            assert_eq!(args.remove(0), "lasker");
            out.push(Example {
                args,
                stdout: String::new(),
                code: 0,
            });
        } else if let Some(code) = line.strip_prefix("[exit ").and_then(|r| r.strip_suffix(']')) {
            out.last_mut().unwrap().code = code.parse().unwrap();
        } else {
            let ex = out.last_mut().expect("output before any command");
            ex.stdout.push_str(line);
            ex.stdout.push('\n');
        }
    }
    out
}

#[test]
fn readme_examples_are_current() {
    let examples = readme_examples();
    assert!(examples.len() >= 15);
    for ex in examples {
        let args: Vec<&str> = ex.args.iter().map(String::as_str).collect();
        let out = lasker(&args);
        assert_eq!(out.status.code(), Some(ex.code), "lasker {args:?}");
        assert_eq!(String::from_utf8(out.stdout).unwrap(), ex.stdout, "lasker {args:?}");
    }
}
