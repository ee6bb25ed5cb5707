use std::process::{Command, Output};

use twistforms::report::TwistReport;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_twistforms"));
    c.env_remove("TWISTFORMS_SIZE_CAP");
    c
}

fn classify(args: &[&str]) -> Output {
    bin()
        .arg("classify")
        .args(args)
        .output()
        .expect("run twistforms")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const E6: [&str; 6] = [
    "--curve",
    "elliptic q=3 a=[0,0,0,1,1]",
    "--S",
    "inf",
    "--group",
    "E6-adjoint",
];

#[test]
fn example_e6_has_four_components() {
    let o = classify(&E6);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("components: 4"));
    assert!(out.contains("outer forms: 3"));
}

#[test]
fn output_is_deterministic() {
    let mut args = E6.to_vec();
    args.extend(["--format", "structured"]);
    let a = stdout(&classify(&args));
    let b = stdout(&classify(&args));
    assert_eq!(a, b);
    assert!(!a.is_empty());
}

#[test]
fn structured_output_round_trips() {
    let jobs: Vec<Vec<&str>> = vec![
        E6.to_vec(),
        vec![
            "--curve",
            "P1 q=3",
            "--S",
            "poly:t,inf",
            "--group",
            "A1-SL1",
            "--quaternion",
            "a=-1 b=-t",
        ],
        vec![
            "--curve", "P1 q=3", "--S", "inf", "--group", "D4", "--cubic", "constant",
        ],
    ];
    for mut args in jobs {
        args.extend(["--format", "structured"]);
        let out = stdout(&classify(&args));
        let rep = TwistReport::from_kv(&out).unwrap();
        assert_eq!(rep.to_kv(), out);
    }
}

#[test]
fn quaternion_job() {
    let o = classify(&[
        "--curve",
        "P1 q=3",
        "--S",
        "poly:t,inf",
        "--group",
        "A1-SL1",
        "--quaternion",
        "a=-1 b=-t",
    ]);
    let out = stdout(&o);
    assert!(out.contains("total: 2 (exact)"), "{out}");
    assert!(out.contains("hasse principle: holds"));
}

#[test]
fn trivial_group_has_one_class() {
    let out = stdout(&classify(&[
        "--curve", "P1 q=3", "--S", "inf", "--group", "E8",
    ]));
    assert!(out.contains("total: 1 (exact)"));
}

#[test]
fn exit_codes() {
    let code = |o: Output| o.status.code().unwrap();
    assert_eq!(code(bin().output().unwrap()), 64);
    assert_eq!(
        code(classify(&[
            "--curve", "P1 q=4", "--S", "inf", "--group", "E8"
        ])),
        64
    );
    assert_eq!(
        code(classify(&[
            "--curve", "P1 q=3", "--S", "(0),(0)", "--group", "E8"
        ])),
        65
    );
    assert_eq!(
        code(classify(&[
            "--curve", "P1 q=3", "--S", "inf", "--group", "A3"
        ])),
        69
    );
    let capped = bin()
        .env("TWISTFORMS_SIZE_CAP", "10")
        .args([
            "classify", "--curve", "P1 q=5", "--S", "inf", "--group", "E8",
        ])
        .output()
        .unwrap();
    assert_eq!(code(capped), 65);
    let many = classify(&[
        "--curve",
        "P1 q=3",
        "--S",
        "(0),(1),(2),inf",
        "--group",
        "E6",
        "--bound-enum",
        "8",
    ]);
    assert_eq!(code(many), 65);
}

#[test]
fn missing_cubic_data_is_noted() {
    let out = stdout(&classify(&[
        "--curve", "P1 q=3", "--S", "inf", "--group", "D4",
    ]));
    assert!(out.contains("cubic classes not enumerated"));
    assert!(out.contains("(at-least)"));
}

#[test]
fn golden_suite_passes() {
    let o = bin().arg("paper-examples").output().unwrap();
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn corrupted_golden_file_fails_with_diff() {
    let dir = std::env::temp_dir().join(format!("twistforms-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/golden");
    for e in std::fs::read_dir(src).unwrap() {
        let p = e.unwrap().path();
        std::fs::copy(&p, dir.join(p.file_name().unwrap())).unwrap();
    }
    let target = dir.join("e8-line.txt");
    let text = std::fs::read_to_string(&target)
        .unwrap()
        .replace("total: 1", "total: 7");
    std::fs::write(&target, text).unwrap();
    let o = bin()
        .arg("paper-examples")
        .arg("--golden-dir")
        .arg(&dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(!o.status.success());
    let out = stdout(&o);
    assert!(out.contains("FAIL e8-line"));
    assert!(out.contains("- total: 7 (exact)"));
    assert!(out.contains("+ total: 1 (exact)"));
}
