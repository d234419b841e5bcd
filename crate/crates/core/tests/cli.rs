mod common;

use std::process::Command;

use common::parse_rendered;
use polybern::bernoulli::pb2_poly;
use polybern::cli::cmd_dispatch;

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn run(args: &[&str]) -> polybern::cli::Dispatch {
    cmd_dispatch(args.iter().copied())
}

#[test]
fn goldens_match_byte_for_byte() {
    let cases: [(&[&str], &str); 3] = [
        (
            &["pb2", "--p1", "1", "--p2", "1", "--k", "1", "--format", "text"],
            "pb2_unit_degrees.txt",
        ),
        (
            &["stirling", "--kind", "2", "--p", "4", "--k", "2"],
            "stirling2_4_2.txt",
        ),
        (
            &[
                "verify", "--suite", "all", "--max-p", "2", "--k", "-1,0,1,2", "--q", "0..2",
            ],
            "verify_all_small.txt",
        ),
    ];
    for (args, file) in cases {
        let d = run(args);
        assert_eq!(d.status, 0, "{args:?}: {}", d.stderr);
        assert_eq!(d.stdout, golden(file), "{args:?}");
    }
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_polybern");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let ok = status(&["stirling", "--p", "4", "--k", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "7\n");

    let usage = status(&["pb2", "--p1", "1", "--k", "1"]);
    assert_eq!(usage.status.code(), Some(1));
    let err = String::from_utf8(usage.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("--p2"), "{err}");

    let pole = status(&["rfun", "--mu", "0", "--k", "-1", "--y", "-2"]);
    assert_eq!(pole.status.code(), Some(1));
    assert!(String::from_utf8(pole.stderr).unwrap().contains("mu=0, k=-1, y=-2"));

    let unknown = status(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["pbn", "--degrees", "2,1,1", "--k", "-1..2", "--format", "json"][..],
        &[
            "verify", "--suite", "pb", "--max-p", "1", "--k", "1", "--format", "json",
        ][..],
        &["gsn", "--p1", "2", "--p2", "2"][..],
    ] {
        assert_eq!(run(args), run(args), "{args:?}");
    }
}

#[test]
fn text_output_reparses_to_the_library_value() {
    for (p1, p2, k) in [(2u32, 3u32, 2i64), (3, 0, -2), (1, 4, 3)] {
        let (s1, s2, sk) = (p1.to_string(), p2.to_string(), k.to_string());
        let d = run(&["pb2", "--p1", &s1, "--p2", &s2, "--k", &sk]);
        assert_eq!(
            parse_rendered(d.stdout.trim_end()),
            common::term_map(&pb2_poly(p1, p2, k))
        );
    }
}

#[test]
fn json_output_shapes() {
    let d = run(&["pb", "--p", "1", "--k", "1", "--y", "1/3", "--format", "json"]);
    assert_eq!(d.stdout, "\"-1/6\"\n");
    let d = run(&["gsn", "--p1", "1", "--p2", "0", "--k", "1", "--format", "json"]);
    assert_eq!(
        d.stdout,
        "{\"vars\":[\"x1\",\"x2\"],\"terms\":[{\"exp\":[0,0],\"coeff\":\"1\"}]}\n"
    );
    let d = run(&["verify", "--suite", "gsn", "--max-p", "0", "--format", "json"]);
    assert!(d.stdout.starts_with("{\"summary\":{\"passed\":"));
    assert!(d.stdout.ends_with("]}\n"));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let p = path.to_str().unwrap();
    let d = run(&["pb2", "--p1", "1", "--p2", "1", "--k", "1", "--out", p]);
    assert_eq!(d.status, 0);
    assert!(d.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("pb2_unit_degrees.txt"));
}

#[test]
fn routes_and_rfun_from_the_command_line() {
    let numbers = run(&["pb2", "--p1", "2", "--p2", "2", "--k", "2"]).stdout;
    for route in ["def", "explicit", "stirling-m", "stirling-n"] {
        assert_eq!(
            run(&["pb2", "--p1", "2", "--p2", "2", "--k", "2", "--route", route, "--m", "2", "--n", "3"]).stdout,
            numbers
        );
    }
    assert_eq!(run(&["rfun", "--mu", "-1", "--k", "3", "--y", "5/2"]).stdout, "-1\n");
    assert_eq!(run(&["rfun", "--mu", "2", "--k", "0", "--y", "1"]).stdout, "1\n");
}
