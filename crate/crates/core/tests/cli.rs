use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn novfiber(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_novfiber"))
        .args(args)
        .env("NOVFIBER_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const CIRCLE: &str = r#"{"ring": {"field": "Q", "vars": ["t"]}, "ranks": [1, 1], "differentials": [[["t - 1"]]]}"#;
const TRIANGLE: &str = r#"{"ring": {"field": "Q", "vars": ["t", "s"]}, "ranks": [1, 1], "differentials": [[["t - 1 - s"]]]}"#;
const FIGURE_EIGHT: &str = "<a, b | A b a B a b A B a B>\n";

#[test]
fn betti_of_circle() {
    let path = scratch("circle.json", CIRCLE);
    let out = novfiber(&["betti", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"betti\":[0,0]}\n");
}

#[test]
fn fiber_check_figure_eight() {
    let path = scratch("figure_eight.txt", FIGURE_EIGHT);
    for field in ["Q", "Fp:2"] {
        let out = novfiber(&["--field", field, "fiber-check", path.to_str().unwrap(), "--psi", "1"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let v = stdout_json(&out);
        assert_eq!(v["report"]["fibered"], Value::Bool(true));
        assert_eq!(v["field"], Value::String(field.into()));
        for side in ["plus", "minus"] {
            for s in v["report"][side]["statuses"].as_array().unwrap() {
                assert_eq!(s["status"], "vanishes_exactly");
            }
        }
    }
}

#[test]
fn fiber_check_free_group_is_not_fp1() {
    let path = scratch("free.txt", "<a, b | >\na -> 1\nb -> 0\n");
    let out = novfiber(&["fiber-check", path.to_str().unwrap(), "--psi", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["fibered"], Value::Bool(false));
    let h1 = &v["report"]["plus"]["statuses"][1];
    assert_eq!(h1["status"], "free_of_rank");
    assert_eq!(h1["rank"], 1);
}

#[test]
fn bns_sample_on_triangle_lists_three_rays() {
    let path = scratch("triangle.json", TRIANGLE);
    let out = novfiber(&["bns-sample", path.to_str().unwrap(), "--max-coeff", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rays: Vec<Vec<i64>> = serde_json::from_value(v["nonvanishing"].clone()).unwrap();
    assert_eq!(rays, vec![vec![-1, -1], vec![0, 1], vec![1, 0]]);
    assert_eq!(v["seed"], 7);
}

#[test]
fn output_is_byte_identical() {
    let path = scratch("triangle_repeat.json", TRIANGLE);
    let args = ["bns-sample", path.to_str().unwrap(), "--max-coeff", "2", "--seed", "11", "--samples", "5"];
    let a = novfiber(&args);
    let b = novfiber(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn novikov_reports_determinant_slab() {
    let path = scratch("triangle_f2.json", TRIANGLE);
    let out = novfiber(&["--field", "Fp:2", "novikov", path.to_str().unwrap(), "--psi", "1,0", "--deg", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["statuses"][0]["status"], "nonvanishing");
    let out = novfiber(&["--field", "Fp:2", "novikov", path.to_str().unwrap(), "--psi", "1,1", "--deg", "0"]);
    assert_eq!(stdout_json(&out)["verdict"]["statuses"][0]["status"], "vanishes_exactly");
}

#[test]
fn unit_check_verifies_inverse() {
    let poly = scratch("poly.json", r#"{"ring": {"field": "Q", "vars": ["t", "s"]}, "poly": "t - 1 - s"}"#);
    let chain = scratch("chain.json", r#"{"ambient": 2, "levels": [[[0, 1]]]}"#);
    let out = novfiber(&["unit-check", poly.to_str().unwrap(), "--chain", chain.to_str().unwrap(), "--T", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["unit"], Value::Bool(true));
    assert_eq!(v["verified"], Value::Bool(true));
}

#[test]
fn growth_writes_csv() {
    let koszul = scratch(
        "koszul.json",
        r#"{"ring": {"field": "Fp:2", "vars": ["t", "s"]}, "ranks": [1, 2, 1],
            "differentials": [[["t - 1", "s - 1"]], [["s - 1"], ["1 - t"]]]}"#,
    );
    let tower = scratch("tower.json", r#"{"diagonal": [2, 4]}"#);
    let csv = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join("growth.csv");
    let out = novfiber(&[
        "growth",
        koszul.to_str().unwrap(),
        "--tower",
        tower.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,degree,b,b/m");
    // over F2 the group ring of (ℤ/2)² is local, so H_0 has dimension 1
    assert_eq!(lines[1], "4,0,1,1/4");
    assert_eq!(lines.len(), 1 + 2 * 3);
}

#[test]
fn malformed_input_exits_one_with_position() {
    let path = scratch("broken.json", "{\"ring\": {\"field\": \"Q\",\n \"vars\": [\"t\"]}, \"ranks\": [1, 1],\n \"differentials\": [[[\"t - \"]]]}");
    let out = novfiber(&["betti", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("differentials[0][0][0]"), "{err}");

    let path = scratch("truncated.json", "{\"ring\": \n  {\"field\": ");
    let out = novfiber(&["betti", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));

    let path = scratch("bad_presentation.txt", "<a, b | a c>\n");
    let out = novfiber(&["betti", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 1"));
}

#[test]
fn wrong_character_length_is_an_input_error() {
    let path = scratch("circle_psi.json", CIRCLE);
    let out = novfiber(&["novikov", path.to_str().unwrap(), "--psi", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = novfiber(&["novikov", path.to_str().unwrap(), "--psi", "-1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn in_process_runner_matches_binary() {
    let path = scratch("circle_inproc.json", CIRCLE);
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = novfiber::cli::run(["novfiber", "betti", path.to_str().unwrap()], &mut stdout, &mut stderr);
    assert_eq!(code, 0);
    assert_eq!(stdout, novfiber(&["betti", path.to_str().unwrap()]).stdout);
}
