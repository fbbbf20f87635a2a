use std::process::Command;

use hecke4::cli::parse::parse_alpha;
use hecke4::cli::{sqrt17_example, parse_surd, run_args, AlphaInput, Outcome};
use hecke4::field::Surd;
use hecke4::hecke::H4Fraction;
use serde_json::Value;

const GOLDEN_CORPUS: &str = include_str!("golden/corpus_seed1_size3.json");

fn h4(args: &[&str]) -> Outcome {
    run_args(std::iter::once("h4").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let o = h4(args);
    assert_eq!(o.code, 0, "h4 {args:?}: {}", o.stderr);
    assert!(o.stderr.is_empty());
    o.stdout
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&ok(&a)).expect("valid JSON")
}

fn fraction(v: &Value) -> H4Fraction {
    serde_json::from_value(v["fraction"].clone()).expect("canonical fraction")
}

fn surd(v: &Value) -> Surd {
    match parse_alpha(&v.to_string()).unwrap() {
        AlphaInput::Surd(s) => s,
        AlphaInput::Stream(s) => panic!("expected a surd, got {s}"),
    }
}

fn config_file(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("h4-{}-{name}.toml", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn corpus_matches_golden() {
    assert_eq!(ok(&["corpus", "--seed", "1", "--size", "3", "--format", "json"]), GOLDEN_CORPUS);
    // seed 1 is the default
    assert_eq!(ok(&["corpus", "--size", "3", "--json"]), GOLDEN_CORPUS);
}

#[test]
fn corpus_entries_round_trip() {
    let v: Value = serde_json::from_str(GOLDEN_CORPUS).unwrap();
    assert_eq!(v["prng"], "chacha8");
    for e in v["corpus"].as_array().unwrap() {
        let a = surd(&e["alpha"]);
        assert!(a.sign() > 0 && !a.in_q_h4());
        assert_eq!(serde_json::to_value(&a).unwrap(), e["alpha"]);
        assert_eq!(a.to_decimal(30), e["value_decimal"].as_str().unwrap());
    }
}

#[test]
fn deterministic_output() {
    let runs = [
        vec!["corpus", "--seed", "7", "--size", "20", "--coeff-bound", "4", "--csv"],
        vec!["best", "--alpha", "paper-example", "--max-q", "500", "--json"],
        vec!["k", "--alpha", "one", "--numeric", "--records", "200", "--window", "100"],
        vec!["rosen", "--alpha", "stream:three-powers", "--digits", "12"],
    ];
    for args in &runs {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
    assert_ne!(ok(&["corpus", "--seed", "1", "--size", "3"]), ok(&["corpus", "--seed", "2", "--size", "3"]));
}

#[test]
fn expand_one() {
    assert_eq!(ok(&["expand", "--alpha", "one", "--digits", "5"]), "2 2 2 2 2\n");
    let v = json(&["expand", "--alpha", "paper-example", "--digits", "12"]);
    let d: Vec<u64> = v["digits"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(d, [3, 2, 3, 1, 2, 1, 3, 2, 3, 1, 2, 1]);
    assert_eq!(v["terminated"], false);
}

#[test]
fn expand_generated_stream() {
    let out = ok(&["expand", "--stream", "four-blocks", "--digits", "8"]);
    assert_eq!(out.split_whitespace().count(), 8);
    assert_eq!(out, ok(&["expand", "--alpha", "stream:four-blocks", "--digits", "8"]));
}

#[test]
fn expand_rational_terminates() {
    let out = ok(&["expand", "--alpha", r#"{"P":[0,1],"Q":[0,0],"D":[1,0],"S":[3,0]}"#, "--digits", "30"]);
    assert!(out.contains("terminates after"), "{out}");
}

#[test]
fn best_sqrt17_example() {
    let v = json(&["best", "--alpha", "paper-example", "--count", "4"]);
    let shown: Vec<&str> = v["best_approximations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["approximation"]["display"].as_str().unwrap())
        .collect();
    assert_eq!(shown, ["2√2/1", "7/(2√2)", "16√2/9", "57/(16√2)"]);
    for b in v["best_approximations"].as_array().unwrap() {
        let f = fraction(&b["approximation"]);
        let err = surd(&b["error"]);
        assert_eq!(f.error(&sqrt17_example()).abs(), err);
    }
}

#[test]
fn best_one_all_tu() {
    let v = json(&["best", "--alpha", "one", "--count", "6"]);
    let items = v["best_approximations"].as_array().unwrap();
    let shown: Vec<&str> = items.iter().map(|b| b["approximation"]["display"].as_str().unwrap()).collect();
    assert_eq!(shown, ["√2/1", "3/(2√2)", "5√2/7", "17/(12√2)", "29√2/41", "99/(70√2)"]);
    assert!(items.iter().all(|b| b["side"] == "TU"));
}

#[test]
fn best_agrees_with_oracle() {
    let best = json(&["best", "--alpha", "paper-example", "--max-q", "300"]);
    let oracle = json(&["oracle", "--alpha", "paper-example", "--max-q", "300"]);
    let a: Vec<H4Fraction> = best["best_approximations"].as_array().unwrap().iter().map(|b| fraction(&b["approximation"])).collect();
    let b: Vec<H4Fraction> = oracle["best_approximations"].as_array().unwrap().iter().map(|b| fraction(&b["approximation"])).collect();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn k_one_exact() {
    let v = json(&["k", "--alpha", "one", "--exact"]);
    let k = surd(&v["value"]);
    let expect = Surd::from_qrt2(hecke4::uniform::k_one());
    assert_eq!(k, expect);
    let text = ok(&["k", "--alpha", "one", "--exact"]);
    assert!(text.contains("1+√2") || text.contains("1 + √2"), "{text}");
}

#[test]
fn k_worked_example_exact_csv() {
    let out = ok(&["k", "--alpha", "paper-example", "--exact", "--csv"]);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("K,1.10633906259083"), "{out}");
    assert_eq!(out.lines().next().unwrap(), "i,value_decimal,case,exact_num,exact_den");
}

#[test]
fn rosen_convergents_decode() {
    for cmd in ["rosen", "dual-rosen"] {
        let v = json(&[cmd, "--alpha", "paper-example", "--digits", "8"]);
        let cs = v["convergents"].as_array().unwrap();
        assert_eq!(cs.len(), 9);
        let alpha = sqrt17_example();
        let mut last = None;
        for c in cs {
            let f = fraction(&c["convergent"]);
            let d = f.distance(&alpha);
            if let Some(prev) = last.replace(d.clone()) {
                assert!(d.try_cmp(&prev).unwrap().is_le(), "{cmd}: distances must not grow");
            }
        }
    }
}

#[test]
fn legendre_and_dirichlet() {
    let out = ok(&["legendre", "--alpha", "one", "--p", "0,1", "--q", "1,0"]);
    assert!(out.starts_with("√2/1"), "{out}");
    let csv = ok(&["dirichlet", "--alpha", "one", "--n-max", "20", "--csv"]);
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| h4(args).code;
    assert_eq!(code(&["expand", "--alpha", "one"]), 0);
    // parse and validation errors
    assert_eq!(code(&["expand", "--alpha", r#"{"P":[1,0],"Q":[1,0],"D":[0,0],"S":[1,0]}"#]), 2);
    assert_eq!(code(&["expand", "--alpha", r#"{"P":[1,0],"Q":[1,0],"D":[2,0],"S":[0,0]}"#]), 2);
    assert_eq!(code(&["expand", "--alpha", "{\"P\":[1,0"]), 2);
    assert_eq!(code(&["expand", "--alpha", "stream:1(24)"]), 2);
    assert_eq!(code(&["legendre", "--alpha", "one", "--p", "1,0", "--q", "1,0"]), 2);
    assert_eq!(code(&["best", "--alpha", "one", "--count", "0"]), 2);
    assert_eq!(code(&["rosen"]), 2);
    assert_eq!(code(&["corpus", "--frobnicate"]), 2);
    // caps
    assert_eq!(code(&["expand", "--alpha", "one", "--digits", "11", "--cap-iterations", "10"]), 3);
    assert_eq!(code(&["oracle", "--alpha", "one", "--max-q", "50", "--cap-iterations", "20"]), 3);
    assert_eq!(code(&["k", "--alpha", GOLDEN_ALPHA, "--exact", "--cap-iterations", "100"]), 3);
    // help goes to stdout
    let help = h4(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("dual-rosen"));
}

const GOLDEN_ALPHA: &str = r#"{"P":[12,-4],"Q":[23,4],"D":[6,0],"S":[14,0]}"#;

#[test]
fn errors_go_to_stderr() {
    let o = h4(&["expand", "--alpha", "stream:1(24)"]);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.starts_with("h4: parse error at 10"), "{}", o.stderr);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_h4");
    let out = Command::new(bin).args(["expand", "--alpha", "one", "--digits", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2 2 2 2 2\n");
    let out = Command::new(bin).args(["corpus", "--seed", "1", "--size", "3", "--format", "json"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), GOLDEN_CORPUS);
    let out = Command::new(bin).args(["expand", "--alpha", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = Command::new(bin).args(["expand", "--alpha", "one", "--digits", "9", "--cap-iterations", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_precedence() {
    let cfg = config_file("prec", "prng = \"chacha8\"\nseed = 1\nsize = 3\nformat = \"json\"\n");
    assert_eq!(ok(&["--config", &cfg, "corpus"]), GOLDEN_CORPUS);
    // flags win over the file
    let flagged = ok(&["--config", &cfg, "--seed", "2", "--format", "csv", "corpus"]);
    assert_eq!(flagged, ok(&["--seed", "2", "--csv", "corpus", "--size", "3"]));

    let cfg = config_file("alpha", "alpha = \"one\"\ndigits = 4\n");
    assert_eq!(ok(&["--config", &cfg, "expand"]), "2 2 2 2\n");
    assert_eq!(ok(&["--config", &cfg, "expand", "--digits", "2"]), "2 2\n");

    let cfg = config_file("mode", "alpha = \"one\"\nmode = \"exact\"\n");
    assert_eq!(ok(&["--config", &cfg, "k"]), ok(&["k", "--alpha", "one", "--exact"]));
}

#[test]
fn config_file_rejects() {
    for body in ["prng = \"pcg64\"\n", "colour = \"blue\"\n", "seed = \n", "digits = 0\nalpha = \"one\"\n"] {
        let cfg = config_file("bad", body);
        let o = h4(&["--config", &cfg, "expand"]);
        assert_eq!(o.code, 2, "{body:?}: {}", o.stderr);
    }
    assert_eq!(h4(&["--config", "/nonexistent/h4.toml", "corpus"]).code, 2);
}

#[test]
fn presets_parse() {
    assert_eq!(parse_surd("one").unwrap(), Surd::one());
    assert_eq!(parse_surd(r#"{"P":[1,0],"Q":[0,0],"D":[1,0],"S":[1,0]}"#).unwrap(), Surd::one());
    let x = parse_surd("paper-example").unwrap().to_f64();
    assert!((x - (3.0 + 17f64.sqrt()) / (2.0 * 2f64.sqrt())).abs() < 1e-12);
    // (323121) repeated is the expansion of (3 + √17)/(2√2)
    assert_eq!(parse_surd("stream:(323121)").unwrap(), sqrt17_example());
}
