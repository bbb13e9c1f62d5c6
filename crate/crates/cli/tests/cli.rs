use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use butson::butson::{verify_hadamard, LogMatrix};
use butson::LogVector;

const EXAMPLE: &str = "BH 4 8\n0 0 0 0\n0 2 4 6\n0 4 0 4\n0 6 4 2\n";

fn butson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_butson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_fourier_3() {
    let o = butson(&["construct", "fourier", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "BH 3 3\n0 0 0\n0 1 2\n0 2 1\n");
}

#[test]
fn verify_example_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ex.bh");
    fs::write(&f, EXAMPLE).unwrap();
    let o = butson(&["verify", "hadamard", path_str(&f)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "hadamard: true\n");

    fs::write(&f, "BH 4 8\n0 0 0 0\n0 2 4 6\n0 4 0 4\n0 6 4 3\n").unwrap();
    let o = butson(&["verify", "hadamard", path_str(&f), "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).trim(), r#"{"hadamard":false,"k":8,"n":4}"#);
}

#[test]
fn malformed_files_exit_2_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.bh");
    fs::write(&f, "# comment\nBH 2 2\n0 0\n0 7\n").unwrap();
    let o = butson(&["verify", "hadamard", path_str(&f)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.bh:4:"), "{err}");

    let missing = dir.path().join("missing.bh");
    assert_eq!(
        code(&butson(&["verify", "hadamard", path_str(&missing)])),
        2
    );
    assert_eq!(code(&butson(&["verify", "sideways"])), 2);
}

#[test]
fn round_trip_for_every_constructor() {
    let dir = tempfile::tempdir().unwrap();
    let d = |name: &str| dir.path().join(name);
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["construct", "fourier", "--factors", "2,4"], "f.bh"),
        (vec!["construct", "sylvester", "--m", "3"], "s.bh"),
        (vec!["construct", "bush", "--p", "5", "--a", "2"], "b.bh"),
    ];
    for (args, name) in cases {
        for json in [false, true] {
            let out = d(name);
            let mut full = args.clone();
            full.extend(["--out", path_str(&out)]);
            if json {
                full.push("--json");
            }
            assert_eq!(code(&butson(&full)), 0, "{full:?}");
            let text = fs::read_to_string(&out).unwrap();
            let m = LogMatrix::parse(&text).unwrap();
            assert!(verify_hadamard(&m));
            let rewritten = if json {
                m.to_json() + "\n"
            } else {
                m.to_text()
            };
            assert_eq!(rewritten, text);
            assert_eq!(code(&butson(&["verify", "hadamard", path_str(&out)])), 0);
        }
    }
    let a = d("a.bh");
    let b = d("b2.bh");
    butson(&["construct", "fourier", "--n", "3", "--out", path_str(&a)]);
    butson(&["construct", "sylvester", "--m", "1", "--out", path_str(&b)]);
    let o = butson(&["construct", "kron", path_str(&a), path_str(&b)]);
    let m = LogMatrix::parse(&stdout(&o)).unwrap();
    assert_eq!((m.order(), m.phase()), (6, 6));
    assert!(verify_hadamard(&m));

    let v = d("x.vec");
    butson(&[
        "construct",
        "ksw",
        "--k",
        "3",
        "--m",
        "2",
        "--out",
        path_str(&v),
    ]);
    let x = LogVector::parse(&fs::read_to_string(&v).unwrap()).unwrap();
    assert_eq!(x.to_text(), fs::read_to_string(&v).unwrap());

    let o = butson(&["construct", "rm", "--q", "2", "--m", "2"]);
    let text = stdout(&o);
    assert!(text.starts_with("CODE 4 2 8\n"));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn bent_check_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.bh");
    let x = dir.path().join("x.vec");
    butson(&[
        "construct",
        "fourier",
        "--factors",
        "3,3",
        "--out",
        path_str(&h),
    ]);
    butson(&[
        "construct",
        "ksw",
        "--k",
        "3",
        "--m",
        "2",
        "--out",
        path_str(&x),
    ]);
    let o = butson(&["bent-check", path_str(&h), path_str(&x)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("kind: conjugate_self_dual\n"));
    let o = butson(&["bent-check", path_str(&h), path_str(&x), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conjugate_self_dual"], true);
    assert_eq!(v["conjugate_unit"], "3");

    fs::write(&x, "VEC 9 3\n0 0 0 0 0 0 0 0 0\n").unwrap();
    assert_eq!(
        code(&butson(&["bent-check", path_str(&h), path_str(&x)])),
        1
    );

    let runs: Vec<String> = ["1", "2", "3"]
        .iter()
        .map(|w| {
            stdout(&butson(&[
                "--workers",
                w,
                "bent-search",
                path_str(&h),
                "--mode",
                "conjugate-self-dual",
            ]))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
    assert!(runs[0].contains("142 0 0 0 0 1 2 0 2 1\n"));

    let o = butson(&["bent-search", path_str(&h), "--budget", "200", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["examined"], 200);
    assert_eq!(v["complete"], false);
}

#[test]
fn covering_radius_json() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.bh");
    let x = dir.path().join("x.vec");
    butson(&[
        "construct",
        "fourier",
        "--factors",
        "3,3",
        "--out",
        path_str(&h),
    ]);
    butson(&[
        "construct",
        "ksw",
        "--k",
        "3",
        "--m",
        "2",
        "--out",
        path_str(&x),
    ]);
    let o = butson(&[
        "covering-radius",
        "--code-from",
        path_str(&h),
        "--exact",
        "--bent",
        path_str(&x),
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["radius_or_bound"], 5);
    assert_eq!(v["exact"], true);
    assert_eq!(v["upper_bound"]["integer"], 5);
    assert_eq!(v["lower_bound"]["integer"], 4);
    assert_eq!(v["premises"]["self_complementary"], true);
    assert_eq!(v["premises"]["strength_2"], true);

    let a = stdout(&butson(&[
        "covering-radius",
        "--rm",
        "3,2",
        "--sample",
        "500",
        "--seed",
        "9",
    ]));
    let b = stdout(&butson(&[
        "--workers",
        "2",
        "covering-radius",
        "--rm",
        "3,2",
        "--sample",
        "500",
        "--seed",
        "9",
    ]));
    assert_eq!(a, b);
    assert!(a.contains("lower bound from 500 samples"));

    let o = butson(&["covering-radius", "--rm", "3,2", "--budget", "100"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("19683"));
}

#[test]
fn obstructions_report() {
    let o = butson(&["obstructions", "--n", "5", "--k", "13"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("unramified_p_part_square"));
    assert!(text.contains("bent vectors ruled out: yes"));
    let o = butson(&["obstructions", "--n", "9", "--k", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rules_out_bent"], false);
    assert_eq!(code(&butson(&["obstructions", "--n", "1", "--k", "3"])), 2);
}

#[test]
fn order_and_bush() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b.bh");
    let o = butson(&[
        "bush",
        "--p",
        "5",
        "--a",
        "2",
        "--out",
        path_str(&b),
        "--verify-algebra",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "projector algebra p=5: true\n");
    assert_eq!(code(&butson(&["verify", "bush", path_str(&b)])), 0);
    let o = butson(&["order", path_str(&b), "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["order"].as_u64().is_some());

    let s = dir.path().join("s.bh");
    butson(&["construct", "sylvester", "--m", "2", "--out", path_str(&s)]);
    assert_eq!(code(&butson(&["verify", "bush", path_str(&s)])), 1);
    assert_eq!(code(&butson(&["bush", "--p", "4", "--a", "1"])), 2);
}

#[test]
fn unbiased_pair() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.bh");
    butson(&["construct", "fourier", "--n", "3", "--out", path_str(&h)]);
    let o = butson(&["verify", "unbiased", path_str(&h), path_str(&h)]);
    // H H* = 3I is not √3 times a Hadamard matrix
    assert_eq!(code(&o), 1);
}
