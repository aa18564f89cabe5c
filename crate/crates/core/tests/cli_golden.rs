//! Golden-file tests for the binary. Set `UPDATE_GOLDEN=1` to rewrite the
//! expected outputs.

use std::path::PathBuf;
use std::process::Command;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(sub)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_smoothlocus"))
        .args(args)
        .current_dir(dir("data"))
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn golden(name: &str, args: &[&str], code: i32) {
    let r = run(args);
    assert_eq!(r.code, code, "{name}: stderr {}", r.stderr);
    let path = dir("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &r.stdout).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(r.stdout, expected, "{name}");
}

#[test]
fn check_reports() {
    golden("check_circle.txt", &["check", "circle.pres"], 0);
    golden(
        "check_circle.json",
        &["check", "circle.pres", "--format", "json"],
        0,
    );
    golden(
        "check_node.json",
        &["check", "node.pres", "--format", "json"],
        0,
    );
    golden("check_circle_gf2.txt", &["check", "circle_gf2.pres"], 0);
}

#[test]
fn locus_reports() {
    golden(
        "locus_circle.json",
        &["locus", "circle.pres", "--format", "json"],
        0,
    );
    golden("locus_cusp.txt", &["locus", "cusp.pres"], 0);
    golden(
        "locus_twisted_cubic.json",
        &["--format", "json", "locus", "twisted_cubic.pres"],
        0,
    );
}

#[test]
fn point_reports() {
    golden(
        "at_cusp_origin.json",
        &["at", "cusp.pres", "--point", "x=0,y=0", "--format", "json"],
        0,
    );
    golden(
        "at_circle.txt",
        &["at", "circle.pres", "--point", "x=3/5,y=4/5"],
        0,
    );
    golden(
        "at_circle_off.json",
        &[
            "at",
            "circle.pres",
            "--point",
            "x=1,y=1",
            "--format",
            "json",
        ],
        2,
    );
}

#[test]
fn chart_and_omega_reports() {
    golden(
        "charts_circle.json",
        &["charts", "circle.pres", "--format", "json"],
        0,
    );
    golden("charts_cusp.txt", &["charts", "cusp.pres"], 0);
    golden(
        "omega_circle.txt",
        &["omega", "circle.pres", "--point", "x=3/5,y=4/5"],
        0,
    );
    golden(
        "omega_cusp.json",
        &[
            "omega",
            "cusp.pres",
            "--point",
            "x=0,y=0",
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn lift_reports() {
    let hom = "y=1,w=1/2,x=e";
    golden(
        "lift_circle_chart.json",
        &[
            "lift",
            "circle_chart_y.pres",
            "--algebra",
            "dual3.alg",
            "--hom",
            hom,
            "--format",
            "json",
        ],
        0,
    );
    golden(
        "lift_circle_chart_free.txt",
        &[
            "lift",
            "circle_chart_y.pres",
            "--algebra",
            "dual3.alg",
            "--hom",
            hom,
            "--free",
            "x=3*e^2",
        ],
        0,
    );
}

#[test]
fn exit_codes() {
    let r = run(&["check", "bad.pres"]);
    assert_eq!(r.code, 1);
    assert!(
        r.stderr
            .contains("line 4, column 12: unknown identifier `z`"),
        "{}",
        r.stderr
    );

    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["at", "circle.pres"]).code, 1);
    assert_eq!(run(&["at", "circle.pres", "--point", "x=1"]).code, 1);
    assert_eq!(
        run(&["at", "circle_gf2.pres", "--point", "x=1/2,y=0"]).code,
        1
    );
    assert_eq!(run(&["check", "missing.pres"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);

    let r = run(&["at", "circle.pres", "--point", "x=1,y=1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not on the variety"));

    let r = run(&[
        "lift",
        "circle.pres",
        "--algebra",
        "dual3.alg",
        "--hom",
        "x=1,y=0",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not standard smooth"));

    let r = run(&[
        "lift",
        "circle_chart_y.pres",
        "--algebra",
        "dual3.alg",
        "--hom",
        "y=1,w=1,x=0",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("relator 2"));

    let r = run(&[
        "lift",
        "circle_chart_y.pres",
        "--algebra",
        "dual3.alg",
        "--hom",
        "y=1,w=1/2,x=e",
        "--free",
        "x=e",
    ]);
    assert_eq!(r.code, 2);
}

#[test]
fn presentations_round_trip_through_the_printer() {
    use smoothlocus::cli::{parse_presentation, print_presentation};
    for f in [
        "circle.pres",
        "cusp.pres",
        "node.pres",
        "circle_gf2.pres",
        "circle_chart_y.pres",
        "twisted_cubic.pres",
    ] {
        let text = std::fs::read_to_string(dir("data").join(f)).unwrap();
        let p = parse_presentation(&text).unwrap();
        assert_eq!(
            parse_presentation(&print_presentation(&p)).unwrap(),
            p,
            "{f}"
        );
    }
}

#[test]
fn output_is_deterministic() {
    let base = run(&["locus", "circle.pres", "--format", "json"]).stdout;
    for jobs in ["1", "2", "8"] {
        assert_eq!(
            run(&["--jobs", jobs, "locus", "circle.pres", "--format", "json"]).stdout,
            base
        );
    }
}
