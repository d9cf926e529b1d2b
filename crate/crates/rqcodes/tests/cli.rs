use std::process::{Command, Output};

use rqcodes::format::parse_rq_matrix;
use rqcodes_core::constructions::simplex_alpha_generator;
use rqcodes_core::Limits;

fn rq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rqcodes"))
        .args(args)
        .env_remove("RQCODES_ENUM_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_emits_matrix_file() {
    let o = rq(&["gen", "--family", "simplex-alpha", "--q", "1", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "rq-matrix q=1 rows=1 cols=4\n0 1 2 3\n");
}

#[test]
fn gen_exit_codes() {
    let bad = rq(&["gen", "--family", "macdonald-alpha", "--q", "1", "--k", "2", "--u", "2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&bad.stderr).lines().count(), 1);
    let big = rq(&["gen", "--family", "simplex-alpha", "--q", "3", "--k", "3"]);
    assert_eq!(big.status.code(), Some(3));
    assert_eq!(rq(&["gen", "--family", "no-such-family"]).status.code(), Some(2));
}

#[test]
fn gen_out_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.rqm");
    let path_s = path.to_str().unwrap();
    let o = rq(&["gen", "--family", "simplex-alpha", "--q", "2", "--k", "1", "--out", path_s]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_rq_matrix(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parsed, simplex_alpha_generator(2, 1, &Limits::default()).unwrap());
    let v = rq(&["verify", "--input", path_s, "--family", "simplex-alpha", "--q", "2", "--k", "1"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let v = rq(&["verify", "--input", path_s, "--family", "simplex-alpha", "--q", "2", "--k", "2"]);
    assert_eq!(v.status.code(), Some(1));
    let w = rq(&["wdist", "--input", path_s, "--metric", "lee"]);
    assert_eq!(stdout(&w), "{\"0\":1,\"32\":15}\n");
}

#[test]
fn analysis_examples() {
    let w = rq(&["wdist", "--family", "simplex-alpha", "--q", "1", "--k", "1", "--metric", "lee"]);
    assert_eq!(stdout(&w), "{\"0\":1,\"4\":3}\n");
    let c = rq(&["covradius", "--family", "repetition", "--c", "theta", "--q", "1", "--n", "1", "--metric", "lee"]);
    assert_eq!(stdout(&c), "1\n");
    let g = rq(&["gray", "--family", "simplex-alpha", "--q", "1", "--k", "1", "--map", "lee"]);
    assert_eq!(stdout(&g), "binary-matrix rows=1 cols=8\n00101101\n");
}

#[test]
fn covradius_json_has_engine_and_certificate() {
    let o =
        rq(&["covradius", "--family", "simplex-alpha", "--q", "1", "--k", "1", "--metric", "hom", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["family"], "simplex-alpha");
    assert_eq!(v["params"]["k"], 1);
    assert_eq!(v["radius"], 10);
    assert!(v["engine"].is_string());
    assert_eq!(v["certificate"].as_array().unwrap().len(), 4);
}

#[test]
fn covradius_output_independent_of_workers() {
    let run = |w: &str| {
        stdout(&rq(&[
            "covradius",
            "--family",
            "repetition",
            "--c",
            "1",
            "--q",
            "1",
            "--n",
            "4",
            "--metric",
            "hom",
            "--engine",
            "exhaustive",
            "--format",
            "json",
            "--workers",
            w,
        ]))
    };
    assert_eq!(run("1"), run("5"));
}

#[test]
fn gamma_rescales_hom_weights() {
    let w = rq(&["wdist", "--family", "simplex-alpha", "--q", "1", "--k", "1", "--metric", "hom", "--gamma", "1/2"]);
    assert_eq!(stdout(&w), "{\"0\":1,\"2\":3}\n");
}

#[test]
fn torsion_project_and_enum() {
    let t = rq(&["torsion", "--family", "simplex-alpha", "--q", "1", "--k", "1", "--set", "1"]);
    assert_eq!(stdout(&t).lines().next().unwrap(), "Tor{1} length=4 dimension=1 dmin=2");
    let p = rq(&["project", "--family", "simplex-alpha", "--q", "2", "--k", "1"]);
    assert!(stdout(&p).starts_with("rq-matrix q=1 rows=1 cols=16\n"));
    let e = rq(&["enum", "--family", "simplex-alpha", "--q", "1", "--k", "1"]);
    assert_eq!(stdout(&e).lines().count(), 4);
    let bad = rq(&["project", "--family", "simplex-alpha", "--q", "1", "--k", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn audit_formats_and_exit_status() {
    let j = rq(&["audit", "--max-q", "1", "--max-k", "2"]);
    assert_eq!(j.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|e| e["claim"] == "thm-3.5-ii"));
    let c = rq(&["audit", "--max-q", "1", "--max-k", "2", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(c.stdout.as_slice());
    assert_eq!(r.records().count(), v.as_array().unwrap().len());
    let f = rq(&["audit", "--max-q", "1", "--max-k", "2", "--fail-on-mismatch"]);
    assert_eq!(f.status.code(), Some(1));
}

#[test]
fn audit_is_byte_deterministic() {
    let a = rq(&["audit", "--max-q", "1", "--max-k", "2", "--workers", "1"]);
    let b = rq(&["audit", "--max-q", "1", "--max-k", "2", "--workers", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enum_limit_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rqcodes"))
        .args(["gen", "--family", "simplex-alpha", "--q", "1", "--k", "2"])
        .env("RQCODES_ENUM_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_rqcodes"))
        .args(["gen", "--family", "simplex-alpha", "--q", "1", "--k", "2", "--enum-limit", "100"])
        .env("RQCODES_ENUM_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
