//! Property checks driven by the fuzz targets and replayed over the checked-in
//! corpus by the test suite. Each panics on a violated property.

use rfr_core::polynomial::text::{format_coefficients, format_symbolic, parse_polynomial};
use rfr_core::verify::{factor, FactorOptions};
use rfr_core::IntPolynomial;

use crate::bench::BenchRecord;
use crate::report::FactorReport;

/// Parsing never panics, and both printed forms parse back to the same value.
pub fn check_parse(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = parse_polynomial(text) else {
        return;
    };
    let list = format_coefficients(&p);
    if !list.is_empty() {
        assert_eq!(parse_polynomial(&list).expect("coefficient list reparses"), p);
    }
    assert_eq!(parse_polynomial(&format_symbolic(&p)).expect("symbolic form reparses"), p);
}

/// A row that parses survives a write/parse cycle unchanged.
pub fn check_bench_record(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rec) = BenchRecord::from_csv_row(text) {
        let again = BenchRecord::from_csv_row(&rec.to_csv_row()).expect("written row reparses");
        assert_eq!(again, rec);
    }
    let _ = BenchRecord::parse_document(text);
}

/// Decoded reports re-encode losslessly; rebuilding the product is total.
pub fn check_report_json(data: &[u8]) {
    let Ok(rep) = serde_json::from_slice::<FactorReport>(data) else {
        return;
    };
    let text = serde_json::to_string(&rep).expect("report encodes");
    let back: FactorReport = serde_json::from_str(&text).expect("encoded report decodes");
    assert_eq!(back.factors, rep.factors);
    assert_eq!(back.content, rep.content);
    let _ = rep.reassemble();
}

/// Small polynomials from raw bytes: degree <= 8, coefficients in i8.
/// Every successful factorization carries a valid certificate.
pub fn check_factor_small(data: &[u8]) {
    let Some((&degree, rest)) = data.split_first() else {
        return;
    };
    let degree = (degree % 8) as usize + 1;
    if rest.len() < degree + 1 {
        return;
    }
    let coeffs: Vec<i64> = rest[..=degree].iter().map(|&b| b as i8 as i64).collect();
    let p = IntPolynomial::from_i64s(&coeffs);
    if p.is_constant() {
        return;
    }
    if let Ok(r) = factor(&p, &FactorOptions::default()) {
        assert!(r.certificate, "certificate failed for {coeffs:?}");
        assert_eq!(r.reassemble(), p);
        assert!(r.factors.iter().all(|(f, _)| f.degree() >= 1));
    }
}
