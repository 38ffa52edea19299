//! Consistency suites runnable from an installed binary.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rfr_core::polynomial::{gen_random_reducible, gen_swinnerton_dyer};
use rfr_core::recombine::{recombine, splat, splat_cost_bounds, Backend, RhoVector};
use rfr_core::verify::{factor, FactorOptions};
use rfr_core::IntPolynomial;

use crate::args::{Fault, SelftestLevel};

struct Suite {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn oracle(level: SelftestLevel, fault: Option<Fault>) -> Suite {
    let (widths, per_width): (&[usize], usize) = match level {
        SelftestLevel::Quick => (&[8, 12, 16], 20),
        SelftestLevel::Full => (&[8, 12, 16, 20, 24], 40),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    let mut mismatches = 0;
    let mut vectors = 0;
    for &n in widths {
        for trial in 0..per_width {
            let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            v.sort_by(f64::total_cmp);
            let rho = RhoVector::new(v).expect("entries in [0, 1)");
            let eps = if trial % 2 == 0 { 1e-6 } else { 1e-3 };
            let want = recombine(Backend::A, &rho, eps).expect("width within A").candidates.canonical();
            for b in [Backend::B, Backend::C, Backend::D, Backend::E] {
                let mut got = recombine(b, &rho, eps).expect("width within backend").candidates;
                if fault == Some(Fault::Oracle) && b == Backend::E {
                    got.patterns.remove(&0);
                }
                if got.canonical() != want {
                    mismatches += 1;
                }
            }
            vectors += 1;
        }
    }
    Suite {
        name: "oracle",
        pass: mismatches == 0,
        detail: format!("{vectors} vectors x 4 backends, {mismatches} mismatches"),
    }
}

fn probes(level: SelftestLevel, fault: Option<Fault>) -> Suite {
    let (len, builds) = match level {
        SelftestLevel::Quick => (14, 5),
        SelftestLevel::Full => (16, 20),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f + 1);
    let (mut total, mut inserts) = (0u64, 0u64);
    for _ in 0..builds {
        let rho: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
        let t = splat(&rho);
        total += t.insert_probes();
        inserts += t.inserts();
    }
    let mut mean = total as f64 / inserts as f64;
    if fault == Some(Fault::Probes) {
        mean += 1.0;
    }
    let (lo, hi) = splat_cost_bounds(2.0);
    Suite {
        name: "probes",
        pass: mean > lo && mean < hi,
        detail: format!("mean {mean:.4} per insertion, bounds ({lo:.3}, {hi:.3})"),
    }
}

fn certificate(level: SelftestLevel, fault: Option<Fault>) -> Suite {
    let opts = FactorOptions::default();
    let mut failures = Vec::new();
    // returns a failure label
    let check = |label: String, p: &IntPolynomial, expect: Option<&[IntPolynomial]>| -> Option<String> {
        let r = match factor(p, &opts) {
            Ok(r) => r,
            Err(e) => return Some(format!("{label}: {e}")),
        };
        let mut rebuilt = r.reassemble();
        if fault == Some(Fault::Certificate) {
            rebuilt = rebuilt.multiply(&IntPolynomial::from_i64s(&[1, 1]));
        }
        let mut ok = r.certificate && &rebuilt == p;
        if let Some(parts) = expect {
            let found: Vec<&IntPolynomial> = r.factors.iter().map(|f| &f.0).collect();
            ok &= parts.iter().all(|q| found.contains(&q)) && found.len() == parts.len();
        }
        (!ok).then_some(label)
    };

    let f2 = gen_swinnerton_dyer(2).expect("index 2 is valid");
    failures.extend(check("f2".into(), &f2, Some(std::slice::from_ref(&f2))));
    let biquad = IntPolynomial::from_i64s(&[-2, 0, -1, 0, 1]);
    let parts = [IntPolynomial::from_i64s(&[-2, 0, 1]), IntPolynomial::from_i64s(&[1, 0, 1])];
    failures.extend(check("x^4 - x^2 - 2".into(), &biquad, Some(&parts)));

    let degrees: &[usize] = match level {
        SelftestLevel::Quick => &[8, 12, 16],
        SelftestLevel::Full => &[8, 12, 16, 20, 24, 28, 32],
    };
    let mut count = 2;
    for &d in degrees {
        for seed in 0..2 {
            match gen_random_reducible(d, 100, seed) {
                Ok(s) => failures.extend(check(format!("random d={d} seed={seed}"), &s.product, Some(&s.factors))),
                Err(e) => failures.push(format!("generator d={d}: {e}")),
            }
            count += 1;
        }
    }
    Suite {
        name: "certificate",
        pass: failures.is_empty(),
        detail: format!("{count} inputs, failures {failures:?}"),
    }
}

/// Runs every suite, writing one line each. Returns whether all passed.
pub fn run(level: SelftestLevel, fault: Option<Fault>, out: &mut dyn Write) -> std::io::Result<bool> {
    let mut all = true;
    for suite in [oracle(level, fault), probes(level, fault), certificate(level, fault)] {
        let verdict = if suite.pass { "PASS" } else { "FAIL" };
        writeln!(out, "selftest {}: {} {}", suite.name, verdict, suite.detail)?;
        all &= suite.pass;
    }
    Ok(all)
}
