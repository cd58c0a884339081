use std::io::Write as _;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use proptest::prelude::*;
use tempfile::TempDir;
use weyl_cli::ast::{Expr, Sign};
use weyl_cli::lexer::Pos;
use weyl_cli::selftest::desk_signature;
use weyl_cli::{evaluate, parse_element, print_element, run, CliError};
use weyl_core::automorphism::{FunctionalAut, Mode, NormalFormAut, Sigma1, TauAut};
use weyl_core::json::{AutomorphismJson, FunctionalJson};
use weyl_core::rational::{int, rat};
use weyl_core::sample::{rng_from_seed, ElementSampler};
use weyl_core::{BlockMatrix, Character, Element, Lattice, Matrix, Signature, WeylError};

struct Dir(TempDir);

impl Dir {
    fn new() -> Dir {
        let d = Dir(TempDir::new().unwrap());
        d.file("desk.json", r#"{"ell1": 1, "ell2": 1, "gamma_generators": [[1, 0], [0, 1], ["1/2", "1/2"]]}"#);
        d.file("z11.json", r#"{"ell1": 1, "ell2": 1, "gamma_generators": [[1, 0], [0, 1]]}"#);
        d.file("z20.json", r#"{"ell1": 2, "ell2": 0, "gamma_generators": [[1, 0], [0, 1]]}"#);
        d.file("w10.json", r#"{"ell1": 1, "ell2": 0, "gamma_generators": [[1]]}"#);
        d.file("z01.json", r#"{"ell1": 0, "ell2": 1, "gamma_generators": [[1]]}"#);
        d
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.path().join(name);
        std::fs::File::create(&p).unwrap().write_all(body.as_bytes()).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).display().to_string()
    }
}

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn weyl(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("weyl").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn eval_in(dir: &Dir, cfg: &str, expr: &str) -> Outcome {
    weyl(&["--config", &dir.path(cfg), "eval", expr])
}

fn at(line: usize, column: usize) -> Pos {
    Pos { line, column }
}

#[test]
fn parse_examples() {
    let sig = desk_signature();
    let e = parse_element("x[(1,0)] * d1^2", &sig).unwrap().strip_positions();
    let x10 = Expr::GenX {
        alpha: vec![int(1), int(0)],
        i: None,
        pos: at(0, 0),
    };
    assert_eq!(e, Expr::Product(vec![x10.clone(), Expr::GenD { index: 1, power: 2 }]));

    let e = parse_element("3/2 * x[(0,1);(2,0)] + [d1, x[(1,0)]]", &sig).unwrap().strip_positions();
    let Expr::Sum(terms) = e else { panic!("expected a sum, got {e:?}") };
    assert_eq!(terms.len(), 2);
    assert_eq!(
        terms[0],
        (
            Sign::Plus,
            Expr::Product(vec![
                Expr::Scalar(rat(3, 2)),
                Expr::GenX {
                    alpha: vec![int(0), int(1)],
                    i: Some(vec![2, 0]),
                    pos: at(0, 0),
                },
            ])
        )
    );
    assert_eq!(
        terms[1],
        (
            Sign::Plus,
            Expr::Bracket(Box::new(Expr::GenD { index: 1, power: 1 }), Box::new(x10))
        )
    );

    match parse_element("x[(1)]", &sig) {
        Err(CliError::Dimension { pos, got: 1, expected: 2, .. }) => assert_eq!(pos, at(1, 3)),
        other => panic!("expected a dimension error, got {other:?}"),
    }
}

#[test]
fn syntax_errors_carry_position_and_expected_set() {
    let sig = desk_signature();
    let cases = [
        ("x[(1,0) * d1", at(1, 9), vec!["`;`", "`]`"]),
        ("d1 +", at(1, 5), vec![]),
        ("d1 ^ x", at(1, 6), vec![]),
        ("\n  3/0 * d1", at(2, 5), vec![]),
    ];
    for (src, pos, expected) in cases {
        match parse_element(src, &sig) {
            Err(CliError::Syntax(e)) => {
                assert_eq!(e.pos, pos, "{src:?}: {e}");
                for tok in expected {
                    assert!(e.expected.iter().any(|x| x == tok), "{src:?}: {e}");
                }
                assert!(!e.expected.is_empty());
            }
            other => panic!("{src:?}: expected a syntax error, got {other:?}"),
        }
    }
    assert!(matches!(
        parse_element("d3", &sig),
        Err(CliError::Eval {
            source: WeylError::IndexOutOfRange { .. },
            ..
        })
    ));
}

#[test]
fn eval_examples() {
    let dir = Dir::new();
    let r = eval_in(&dir, "w10.json", "d1 * x[();(1)]");
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out, "1 + x[(0);(1)] * d1\n");

    let r = eval_in(&dir, "z01.json", "[d1, x[(1)]]");
    assert_eq!(r.out, "x[(1);(0)]\n");

    let r = eval_in(&dir, "desk.json", "0 * d1");
    assert_eq!(r.out, "0\n");

    let r = eval_in(&dir, "desk.json", "d1");
    assert_eq!((r.code, r.out.as_str()), (0, "d1\n"));
}

#[test]
fn eval_matches_library_arithmetic() {
    let sig = desk_signature();
    let d1 = Element::d(&sig, 0, 1).unwrap();
    let d2 = Element::d(&sig, 1, 1).unwrap();
    let x = Element::x(&sig, &[2, -1]).unwrap();
    let want = &(&d1 * &x).scale(&rat(-1, 2)) + &d2.bracket(&x.pow(2)).unwrap();
    assert_eq!(evaluate("-1/2 * d1 * x[(1,0)] + [d2, x[(1,0)] * x[(1,0)]]", &sig).unwrap(), want);
    assert_eq!(evaluate("(d1 + d2) * (d1 - d2)", &sig).unwrap(), &d1.pow(2) - &d2.pow(2));
}

#[test]
fn bracket_and_export() {
    let dir = Dir::new();
    let cfg = dir.path("desk.json");
    let r = weyl(&["--config", &cfg, "bracket", "d1", "x[(1,0)]"]);
    assert_eq!((r.code, r.out.as_str()), (0, "x[(1,0);(0,0)]\n"));

    let r = weyl(&["--config", &cfg, "export", "--format", "json", "2 * d1"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["terms"][0]["coeff"], "2");
    assert_eq!(v["terms"][0]["mu"], serde_json::json!([1, 0]));
    assert_eq!(v["signature"]["ell1"], 1);

    let r = weyl(&["--config", &cfg, "export", "--format", "text", "2 * d1"]);
    assert_eq!(r.out, "2 * d1\n");
}

#[test]
fn iso_examples() {
    let dir = Dir::new();
    let r = weyl(&["iso", "--src", &dir.path("z11.json"), "--dst", &dir.path("z20.json")]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("impossible"), "{}", r.out);

    let r = weyl(&["--json", "iso", "--src", &dir.path("z11.json"), "--dst", &dir.path("z20.json")]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["result"], "impossible");

    let r = weyl(&["--json", "iso", "--src", &dir.path("desk.json"), "--dst", &dir.path("desk.json")]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["result"], "found");

    let r = weyl(&["iso", "--src", &dir.path("desk.json"), "--dst", &dir.path("z11.json"), "--bound", "0"]);
    assert_eq!(r.code, 2);
}

fn write_aut(dir: &Dir, name: &str, nf: &NormalFormAut, mode: Mode) -> String {
    dir.file(name, &serde_json::to_string(&AutomorphismJson::from_normal_form(nf, mode)).unwrap())
}

#[test]
fn aut_commands() {
    let dir = Dir::new();
    let cfg = dir.path("desk.json");
    let sig = desk_signature();
    let g = BlockMatrix::new(1, 1, Matrix::from_i64_rows(&[vec![1, 0], vec![2, 1]]).unwrap()).unwrap();
    let tau = TauAut::new(&sig, g, Character::trivial(2)).unwrap();
    let nf = NormalFormAut::from_tau(tau.clone());
    let tau_file = write_aut(&dir, "tau.json", &nf, Mode::Assoc);

    let r = weyl(&["--config", &cfg, "aut", "apply", "--aut", &tau_file, "d1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    use weyl_core::automorphism::WeylMap;
    let want = tau.apply(&Element::d(&sig, 0, 1).unwrap()).unwrap();
    assert_eq!(r.out.trim_end(), print_element(&want));

    let r = weyl(&["--config", &cfg, "aut", "verify", "--aut", &tau_file, "--trials", "20"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(r.out.starts_with("PASS"));

    let r = weyl(&["--json", "aut", "compose", "--a", &tau_file, "--b", &tau_file]);
    assert_eq!(r.code, 0, "{}", r.err);
    let composed: AutomorphismJson = serde_json::from_str(&r.out).unwrap();
    let (c, _) = composed.to_normal_form(Some(&sig)).unwrap();
    assert_eq!(c.tau, tau.compose(&tau).unwrap());

    let s1 = write_aut(&dir, "s1.json", &NormalFormAut::sigma1(&sig), Mode::Lie);
    let r = weyl(&["--json", "aut", "compose", "--a", &s1, "--b", &tau_file, "--mode", "lie"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let (c, mode) = serde_json::from_str::<AutomorphismJson>(&r.out).unwrap().to_normal_form(Some(&sig)).unwrap();
    assert!(c.eps);
    assert_eq!(mode, Mode::Lie);

    let functional = FunctionalAut::from_map(&Sigma1::new(&sig), Mode::Lie).unwrap();
    let f_file = dir.file("f.json", &serde_json::to_string(&FunctionalJson::from_map(&functional)).unwrap());
    let r = weyl(&["--json", "aut", "decompose", "--aut", &f_file]);
    assert_eq!(r.code, 0, "{}", r.err);
    let (d, _) = serde_json::from_str::<AutomorphismJson>(&r.out).unwrap().to_normal_form(Some(&sig)).unwrap();
    assert_eq!(d, NormalFormAut::sigma1(&sig));

    let r = weyl(&["--config", &cfg, "aut", "apply", "--aut", &f_file, "d1^2"]);
    assert_eq!(r.out, "-1 * d1^2\n");
}

#[test]
fn failed_verification_exits_one() {
    let dir = Dir::new();
    let sig = desk_signature();
    let s1 = write_aut(&dir, "s1.json", &NormalFormAut::sigma1(&sig), Mode::Assoc);
    let r = weyl(&["aut", "verify", "--aut", &s1]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("FAIL"), "{}", r.out);

    let r = weyl(&["--json", "aut", "verify", "--aut", &s1]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["passed"], false);

    let r = weyl(&["--mode", "lie", "aut", "verify", "--aut", &s1]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
}

#[test]
fn malformed_input_exits_two() {
    let dir = Dir::new();
    let cfg = dir.path("desk.json");
    let bad_cfg = dir.file("bad.json", r#"{"ell1": 1, "ell2": 1, "gamma_generators": [[1, 0]]}"#);
    let garbage = dir.file("garbage.json", "{not json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["eval", "d1"],
        vec!["--config", &cfg, "eval", "d1 +"],
        vec!["--config", &cfg, "eval", "x[(1)]"],
        vec!["--config", &cfg, "bracket", "d1", "d9"],
        vec!["--config", &bad_cfg, "eval", "d1"],
        vec!["--config", "/nonexistent/cfg.json", "eval", "d1"],
        vec!["--config", &cfg, "aut", "apply", "--aut", &garbage, "d1"],
        vec!["aut", "decompose", "--aut", &cfg],
        vec!["aut", "compose", "--a", &garbage, "--b", &garbage],
        vec!["aut", "verify", "--aut", "/nonexistent"],
        vec!["iso", "--src", &garbage, "--dst", &cfg],
        vec!["--config", &cfg, "export", "--format", "yaml", "d1"],
        vec!["--mode", "jordan", "selftest"],
        vec!["selftest", "--suite", "nope"],
        vec!["--seed", "-3", "selftest"],
        vec!["frobnicate"],
        vec![],
    ];
    for args in cases {
        let r = weyl(&args);
        assert_eq!(r.code, 2, "{args:?}: {}{}", r.out, r.err);
        assert!(!r.err.is_empty(), "{args:?}");
    }
    let r = weyl(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("selftest"));
}

#[test]
fn selftest_example() {
    let r = weyl(&["selftest", "--suite", "associativity", "--seed", "7"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "PASS associativity (200 triples)\n");

    let r = weyl(&["--json", "selftest", "--suite", "parser", "--seed", "7"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["suites"][0]["passed"], true);
}

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_weyl"))
}

#[test]
fn binary_reruns_are_byte_identical_and_honor_weyl_seed() {
    let dir = Dir::new();
    let sig = desk_signature();
    let aut = write_aut(&dir, "s1.json", &NormalFormAut::sigma1(&sig), Mode::Assoc);
    let go = |seed_env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(binary());
        c.args(args).env_remove("WEYL_SEED");
        if let Some(s) = seed_env {
            c.env("WEYL_SEED", s);
        }
        c.output().unwrap()
    };
    let args = ["--json", "aut", "verify", "--aut", &aut, "--trials", "30"];
    let a = go(Some("11"), &args);
    let b = go(Some("11"), &args);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);

    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "12"]);
    let c = go(Some("11"), &with_flag);
    let v: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["seed"], 12);

    let seeded_cfg = dir.file(
        "seeded.json",
        r#"{"ell1": 1, "ell2": 1, "gamma_generators": [[1, 0], [0, 1], ["1/2", "1/2"]], "seed": 5}"#,
    );
    let mut with_cfg = vec!["--config", seeded_cfg.as_str()];
    with_cfg.extend(args);
    let d = go(None, &with_cfg);
    let v: serde_json::Value = serde_json::from_slice(&d.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    let e = go(Some("9"), &with_cfg);
    let v: serde_json::Value = serde_json::from_slice(&e.stdout).unwrap();
    assert_eq!(v["seed"], 9);

    let out = go(None, &["--config", &dir.path("desk.json"), "eval", "d1 +"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error at 1:5"));
}

fn lattice_sig(l1: usize, l2: usize, gens: Vec<Vec<weyl_core::Rational>>) -> Arc<Signature> {
    Signature::new(l1, l2, Lattice::from_generators(l1 + l2, gens).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        let sig = desk_signature();
        let mut rng = rng_from_seed(seed);
        let e = ElementSampler::default().element(&sig, &mut rng);
        let text = print_element(&e);
        prop_assert_eq!(evaluate(&text, &sig).unwrap(), e);
    }

    #[test]
    fn round_trip_in_other_signatures(seed in any::<u64>(), which in 0usize..3) {
        let sig = match which {
            0 => lattice_sig(0, 1, vec![vec![rat(1, 3)]]),
            1 => lattice_sig(2, 0, vec![vec![int(1), int(0)], vec![int(0), int(1)]]),
            _ => lattice_sig(1, 2, vec![
                vec![int(1), int(0), int(0)],
                vec![int(0), rat(1, 2), int(0)],
                vec![int(0), int(0), int(1)],
            ]),
        };
        let mut rng = rng_from_seed(seed);
        let e = ElementSampler::default().element(&sig, &mut rng);
        let text = print_element(&e);
        prop_assert_eq!(evaluate(&text, &sig).unwrap(), e);
    }
}
