//! The `rfr` command line: factor, bench, gen and selftest.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 root finding failed,
//! 4 pattern width beyond the backend's limit, 5 self-test failure.

pub mod args;
pub mod bench;
pub mod fuzzing;
pub mod report;
pub mod selftest;

use std::io::{BufRead, Write};
use std::time::{Duration, Instant};

use rfr_core::polynomial::text::parse_polynomial;
use rfr_core::polynomial::{gen_random_reducible, gen_swinnerton_dyer, square_free_decompose};
use rfr_core::recombine::{Backend, RecombineError};
use rfr_core::rootfinder::{find_roots, numeric::to_c64};
use rfr_core::verify::{factor, FactorError};
use rfr_core::IntPolynomial;

use args::{BenchArgs, Cli, Command, CommonArgs, FactorArgs, GenArgs, GenKind, SelftestArgs};
use bench::{BenchRecord, CSV_HEADER};
use report::{coefficient_line, FactorReport, RootEntry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_WIDTH: i32 = 4;
pub const EXIT_SELFTEST: i32 = 5;

pub fn exit_code(e: &FactorError) -> i32 {
    match e {
        FactorError::Root(_) => EXIT_CONVERGENCE,
        FactorError::Recombine(RecombineError::WidthExceeded { .. }) => EXIT_WIDTH,
        FactorError::Recombine(_) => EXIT_FAILURE,
        FactorError::Constant | FactorError::Tolerance(_) => EXIT_PARSE,
        FactorError::NotMonic | FactorError::NotSquareFree => EXIT_FAILURE,
    }
}

/// Runs a parsed command. `stdin` feeds `factor` when no inputs are given.
pub fn run(cli: &Cli, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Factor(a) => cmd_factor(&cli.common, a, stdin, out, err),
        Command::Bench(a) => cmd_bench(&cli.common, a, out, err),
        Command::Gen(a) => cmd_gen(&cli.common, a, out, err),
        Command::Selftest(a) => cmd_selftest(a, out),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_FAILURE
    })
}

/// Non-empty, non-comment lines.
fn input_lines(stdin: &mut dyn BufRead) -> std::io::Result<Vec<String>> {
    let mut lines = Vec::new();
    for line in stdin.lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            lines.push(t.to_string());
        }
    }
    Ok(lines)
}

fn dump_roots(p: &IntPolynomial, common: &CommonArgs) -> Result<Vec<RootEntry>, FactorError> {
    let cfg = common.factor_options().tolerance;
    let mut out = Vec::new();
    for part in square_free_decompose(&p.primitive_part()) {
        let (monic, _) = part.factor.to_monic();
        if monic.degree() == 0 {
            continue;
        }
        for z in find_roots(&monic, &cfg)? {
            let z = to_c64(&z);
            out.push(RootEntry { re: z.re, im: z.im });
        }
    }
    Ok(out)
}

fn cmd_factor(
    common: &CommonArgs,
    a: &FactorArgs,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let inputs = if a.inputs.is_empty() {
        input_lines(stdin)?
    } else {
        a.inputs.clone()
    };
    if inputs.is_empty() {
        writeln!(err, "error: no polynomial given")?;
        return Ok(EXIT_PARSE);
    }
    let opts = common.factor_options();
    for text in &inputs {
        let p = match parse_polynomial(text) {
            Ok(p) => p,
            Err(e) => {
                writeln!(err, "error: {text:?}: {e}")?;
                return Ok(EXIT_PARSE);
            }
        };
        let r = match factor(&p, &opts) {
            Ok(r) => r,
            Err(e) => {
                writeln!(err, "error: {text:?}: {e}")?;
                return Ok(exit_code(&e));
            }
        };
        let roots = if a.dump_roots {
            match dump_roots(&p, common) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "error: {text:?}: {e}")?;
                    return Ok(exit_code(&e));
                }
            }
        } else {
            Vec::new()
        };
        let rep = FactorReport::new(&p, &r, roots);
        if common.json {
            writeln!(out, "{}", serde_json::to_string(&rep)?)?;
        } else if common.csv {
            write!(out, "{}", rep.to_csv())?;
        } else {
            write!(out, "{}", rep.to_text())?;
        }
        if !r.certificate {
            return Ok(EXIT_FAILURE);
        }
    }
    Ok(EXIT_OK)
}

/// Seed of trial `t` at degree `d`; runs are reproducible per `(seed, d, t)`.
pub fn trial_seed(seed: u64, d: usize, t: usize) -> u64 {
    seed.wrapping_add((d as u64) << 32).wrapping_add(t as u64)
}

fn cmd_bench(common: &CommonArgs, a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    if let Some(d) = a.degrees.iter().find(|&&d| d < 4 || d % 2 != 0) {
        writeln!(err, "error: degree {d} must be even and at least 4")?;
        return Ok(EXIT_PARSE);
    }
    let backends = if a.backends.is_empty() {
        vec![common.backend]
    } else {
        a.backends.clone()
    };
    if !common.json && !a.no_header {
        writeln!(out, "{CSV_HEADER}")?;
    }
    let base = common.factor_options();
    for &d in &a.degrees {
        for t in 0..a.trials {
            let seed = trial_seed(common.seed, d, t);
            let sample = match gen_random_reducible(d, a.coeff_bound, seed) {
                Ok(s) => s,
                Err(e) => {
                    writeln!(err, "skip d={d} seed={seed}: {e}")?;
                    continue;
                }
            };
            for &backend in &backends {
                let opts = rfr_core::verify::FactorOptions { backend, ..base };
                let start = Instant::now();
                let r = match factor(&sample.product, &opts) {
                    Ok(r) => r,
                    Err(e) => {
                        writeln!(err, "skip d={d} seed={seed} backend={backend}: {e}")?;
                        continue;
                    }
                };
                let total = start.elapsed();
                let s = &r.stats;
                let wall = if common.inclusive { total } else { s.recombine_time };
                let rec = BenchRecord {
                    d,
                    n: s.first_n,
                    backend: backend.to_string(),
                    workers: if backend == Backend::E { opts.workers } else { 1 },
                    wall_s: wall.max(Duration::from_nanos(1)).as_secs_f64(),
                    visited: s.recombine.visited,
                    probes_mean: s.recombine.probes_mean(),
                    candidates: s.candidates,
                    factors: r.factors.len(),
                    seed,
                    total_s: total.as_secs_f64(),
                    worker_probes: s
                        .worker_probes
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                };
                if common.json {
                    writeln!(out, "{}", serde_json::to_string(&rec)?)?;
                } else {
                    writeln!(out, "{}", rec.to_csv_row())?;
                }
                out.flush()?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_gen(common: &CommonArgs, a: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let (poly, parts) = match a.kind {
        GenKind::Random => match gen_random_reducible(a.degree, a.coeff_bound, common.seed) {
            Ok(s) => (s.product, s.factors.to_vec()),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_PARSE);
            }
        },
        GenKind::Swinnerton => match gen_swinnerton_dyer(a.k) {
            Ok(p) => (p, Vec::new()),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_PARSE);
            }
        },
    };
    if common.json {
        let coeffs = |p: &IntPolynomial| p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>();
        let v = serde_json::json!({
            "coefficients": coeffs(&poly),
            "factors": parts.iter().map(coeffs).collect::<Vec<_>>(),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{}", coefficient_line(&poly))?;
        for f in &parts {
            writeln!(out, "# factor {}", coefficient_line(f))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_selftest(a: &SelftestArgs, out: &mut dyn Write) -> std::io::Result<i32> {
    let ok = selftest::run(a.level, a.inject_fault, out)?;
    Ok(if ok { EXIT_OK } else { EXIT_SELFTEST })
}
