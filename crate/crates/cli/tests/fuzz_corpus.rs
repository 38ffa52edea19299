//! Replays the checked-in fuzz seeds through the same checks the fuzz
//! targets run, so the properties hold on every `cargo test`.

use std::fs;
use std::path::PathBuf;

use rfr_cli::fuzzing;

fn replay(target: &str, check: fn(&[u8])) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())) {
        let path = entry.unwrap().path();
        check(&fs::read(&path).unwrap());
        seen += 1;
    }
    assert!(seen > 0, "no seeds under {}", dir.display());
}

#[test]
fn parse_polynomial_seeds() {
    replay("parse_polynomial", fuzzing::check_parse);
}

#[test]
fn bench_record_seeds() {
    replay("bench_record", fuzzing::check_bench_record);
}

#[test]
fn report_json_seeds() {
    replay("report_json", fuzzing::check_report_json);
}

#[test]
fn factor_small_seeds() {
    replay("factor_small", fuzzing::check_factor_small);
}

#[test]
fn odd_inputs_do_not_panic() {
    let inputs: [&[u8]; 8] = [
        b"",
        b"\xff\xfe",
        b"x^-1",
        b"--1",
        b"1e5 2",
        b"{\"content\":\"1\",\"factors\":[]}",
        b"8,6,a,1,1e400,1,1,1,1,1",
        b"\x00\x00\x00",
    ];
    for data in inputs {
        fuzzing::check_parse(data);
        fuzzing::check_bench_record(data);
        fuzzing::check_report_json(data);
        fuzzing::check_factor_small(data);
    }
}
