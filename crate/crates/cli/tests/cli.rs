use std::process::Command as Process;

use clap::Parser;
use proptest::prelude::*;

use rfr_cli::args::{normalize_args, Cli};
use rfr_cli::bench::{BenchRecord, CSV_HEADER};
use rfr_cli::report::{reassemble_text, FactorReport};
use rfr_cli::{run, EXIT_OK, EXIT_PARSE, EXIT_SELFTEST};
use rfr_core::polynomial::text::parse_polynomial;

fn invoke(args: &[&str], stdin: &str) -> (i32, String, String) {
    let argv = std::iter::once("rfr").chain(args.iter().copied()).map(String::from);
    let cli = Cli::try_parse_from(normalize_args(argv)).expect("arguments parse");
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cli, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn swinnerton_dyer_is_irreducible() {
    let (code, out, _) = invoke(&["factor", "1 0 -10 0 1", "--workers", "2"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\nirreducible\n"), "{out}");
    assert!(out.ends_with("certificate ok\n"));
}

#[test]
fn textbook_products() {
    let (code, out, _) = invoke(&["factor", "x^2 - 1"], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("factor 1 ").count(), 2);

    let (code, out, _) = invoke(&["factor", "-2 0 -1 0 1"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("factor 1 x^2 - 2\n") && out.contains("factor 1 x^2 + 1\n"), "{out}");
    assert_eq!(reassemble_text(&out).unwrap(), parse_polynomial("-2 0 -1 0 1").unwrap());
}

#[test]
fn leading_minus_is_not_an_option() {
    let (code, out, _) = invoke(&["factor", "-x^2 + 1", "--json"], "");
    assert_eq!(code, EXIT_OK);
    let rep: FactorReport = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(rep.content, "-1");
    assert_eq!(rep.reassemble().unwrap(), parse_polynomial("1 0 -1").unwrap());
}

#[test]
fn stdin_lines_skip_comments() {
    let (code, out, _) = invoke(&["factor", "--json"], "# header\n\n1 0 -1\nx^3 - x\n");
    assert_eq!(code, EXIT_OK);
    let reps: Vec<FactorReport> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reps.len(), 2);
    assert_eq!(reps[1].factors.len(), 3);
}

#[test]
fn every_backend_and_format_agree() {
    let input = "x^6 - 6x^4 + 11x^2 - 6";
    let expected = parse_polynomial(input).unwrap();
    for backend in ["a", "b", "c", "d", "e"] {
        let (code, out, _) = invoke(&["factor", input, "--backend", backend], "");
        assert_eq!(code, EXIT_OK);
        assert_eq!(reassemble_text(&out).unwrap(), expected, "backend {backend}");
    }
    let (code, out, _) = invoke(&["factor", input, "--csv"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("multiplicity,coefficients\n0,1\n"));
    assert_eq!(out.lines().count(), 2 + 4);
}

#[test]
fn dump_roots_lists_each_root() {
    let (code, out, _) = invoke(&["factor", "x^2 - 4", "--dump-roots", "--json"], "");
    assert_eq!(code, EXIT_OK);
    let rep: FactorReport = serde_json::from_str(out.trim()).unwrap();
    let mut re: Vec<f64> = rep.roots.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    assert!((re[0] + 2.0).abs() < 1e-12 && (re[1] - 2.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(invoke(&["factor", "1 2 zz"], "").0, EXIT_PARSE);
    assert_eq!(invoke(&["factor", "7"], "").0, EXIT_PARSE);
    assert_eq!(invoke(&["factor"], "").0, EXIT_PARSE);
    assert_eq!(invoke(&["gen", "random", "-d", "7"], "").0, EXIT_PARSE);
    assert_eq!(invoke(&["bench", "--degrees", "9"], "").0, EXIT_PARSE);
    assert!(Cli::try_parse_from(["rfr", "--backend", "z", "factor", "1 1"]).is_err());
}

#[test]
fn gen_outputs() {
    let (code, out, _) = invoke(&["gen", "swinnerton", "-k", "2"], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1 0 -10 0 1\n");

    let a = invoke(&["gen", "random", "-d", "12", "--seed", "5"], "").1;
    let b = invoke(&["gen", "random", "-d", "12", "--seed", "5"], "").1;
    assert_eq!(a, b);
    let line = a.lines().next().unwrap();
    assert_eq!(line.split_whitespace().count(), 13);
    assert_eq!(a.lines().filter(|l| l.starts_with("# factor ")).count(), 2);

    // What gen prints, factor takes back.
    let (code, out, _) = invoke(&["factor"], &a);
    assert_eq!(code, EXIT_OK);
    assert_eq!(reassemble_text(&out).unwrap(), parse_polynomial(line).unwrap());
}

fn strip_times(row: &str) -> String {
    let r = BenchRecord::from_csv_row(row).unwrap();
    format!("{},{},{},{},{},{},{},{}", r.d, r.n, r.backend, r.visited, r.candidates, r.factors, r.seed, r.worker_probes)
}

#[test]
fn bench_rows_parse_and_repeat() {
    let args = ["bench", "--degrees", "8,12", "--backends", "a,b,e", "--trials", "2", "--workers", "2"];
    let (code, first, _) = invoke(&args, "");
    assert_eq!(code, EXIT_OK);
    let mut lines = first.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 2 * 2 * 3);
    let records = BenchRecord::parse_document(&first).unwrap();
    assert_eq!(records.len(), rows.len());
    for r in &records {
        assert!(r.wall_s > 0.0);
        assert_eq!(r.workers, if r.backend == "e" { 2 } else { 1 });
    }
    let (_, second, _) = invoke(&args, "");
    let a: Vec<_> = rows.iter().map(|r| strip_times(r)).collect();
    let b: Vec<_> = second.lines().skip(1).map(strip_times).collect();
    assert_eq!(a, b);
}

#[test]
fn selftest_passes_and_detects_faults() {
    assert_eq!(invoke(&["selftest"], "").0, EXIT_OK);
    for fault in ["oracle", "probes", "certificate"] {
        let (code, out, _) = invoke(&["selftest", "--inject-fault", fault], "");
        assert_eq!(code, EXIT_SELFTEST, "fault {fault} went unnoticed:\n{out}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rfr");
    let ok = Process::new(bin).args(["factor", "x^2 - 1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Process::new(bin).args(["factor", "x^"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_PARSE));
    let usage = Process::new(bin).args(["--precision", "quad", "factor", "1 1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

proptest! {
    #[test]
    fn bench_record_round_trips(
        d in 4usize..200,
        n in 0usize..200,
        backend in "[a-e]",
        workers in 1usize..64,
        wall in 1e-9f64..1e3,
        visited in any::<u64>(),
        probes in 0f64..10.0,
        candidates in any::<u64>(),
        factors in 0usize..100,
        seed in any::<u64>(),
        total in 0f64..1e3,
        per_worker in proptest::collection::vec(any::<u64>(), 0..8),
    ) {
        let rec = BenchRecord {
            d, n, backend, workers, wall_s: wall, visited, probes_mean: probes, candidates,
            factors, seed, total_s: total,
            worker_probes: per_worker.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
        };
        prop_assert_eq!(BenchRecord::from_csv_row(&rec.to_csv_row()).unwrap(), rec);
    }
}
