//! Factorization output in text, CSV and JSON form.

use serde::{Deserialize, Serialize};

use rfr_core::polynomial::text::{format_coefficients, format_symbolic, parse_coefficient_list};
use rfr_core::verify::FactorizationResult;
use rfr_core::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorEntry {
    /// Low-to-high decimal strings; integers may exceed 64 bits.
    pub coefficients: Vec<String>,
    pub symbolic: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootEntry {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportStats {
    pub n: usize,
    pub searches: usize,
    pub visited: u64,
    pub candidates: u64,
    pub trace_rejected: u64,
    pub coefficient_rejected: u64,
    pub division_rejected: u64,
    pub verified: u64,
    pub root_s: f64,
    pub recombine_s: f64,
    pub verify_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub input: String,
    pub content: String,
    pub irreducible: bool,
    pub certificate: bool,
    pub factors: Vec<FactorEntry>,
    pub stats: ReportStats,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<RootEntry>,
}

impl FactorReport {
    pub fn new(input: &IntPolynomial, r: &FactorizationResult, roots: Vec<RootEntry>) -> Self {
        let s = &r.stats;
        FactorReport {
            input: format_symbolic(input),
            content: r.content.to_string(),
            irreducible: r.is_irreducible(),
            certificate: r.certificate,
            factors: r
                .factors
                .iter()
                .map(|(f, m)| FactorEntry {
                    coefficients: f.coeffs().iter().map(ToString::to_string).collect(),
                    symbolic: format_symbolic(f),
                    multiplicity: *m,
                })
                .collect(),
            stats: ReportStats {
                n: s.first_n,
                searches: s.searches,
                visited: s.recombine.visited,
                candidates: s.candidates,
                trace_rejected: s.trace_rejected,
                coefficient_rejected: s.coefficient_rejected,
                division_rejected: s.division_rejected,
                verified: s.verified,
                root_s: s.root_time.as_secs_f64(),
                recombine_s: s.recombine_time.as_secs_f64(),
                verify_s: s.verify_time.as_secs_f64(),
            },
            roots,
        }
    }

    /// `content * prod f^m` rebuilt from the coefficient strings. Fails on
    /// malformed entries, so it doubles as a validator for parsed reports.
    pub fn reassemble(&self) -> Option<IntPolynomial> {
        if self.content.len() > 4096 {
            return None;
        }
        let content = self.content.parse().ok()?;
        let mut acc = IntPolynomial::constant(content);
        let mut degree = 0usize;
        for f in &self.factors {
            degree += f.coefficients.len().saturating_sub(1) * f.multiplicity as usize;
            if f.multiplicity > 64 || degree > 4096 {
                return None;
            }
            let q = parse_coefficient_list(&f.coefficients.join(" ")).ok()?;
            acc = acc.multiply(&q.pow(f.multiplicity));
        }
        Some(acc)
    }

    /// Line-oriented text:
    ///
    /// ```text
    /// input x^4 - x^2 - 2
    /// content 1
    /// factor 1 x^2 - 2
    /// factor 1 x^2 + 1
    /// certificate ok
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = format!("input {}\n", self.input);
        if self.irreducible {
            out.push_str("irreducible\n");
        }
        out.push_str(&format!("content {}\n", self.content));
        for f in &self.factors {
            out.push_str(&format!("factor {} {}\n", f.multiplicity, f.symbolic));
        }
        for z in &self.roots {
            out.push_str(&format!("root {:e} {:e}\n", z.re, z.im));
        }
        out.push_str(if self.certificate {
            "certificate ok\n"
        } else {
            "certificate FAILED\n"
        });
        out
    }

    /// `multiplicity,coefficients` rows, coefficients low to high and
    /// space-separated. The content is a row with multiplicity 0.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("multiplicity,coefficients\n");
        out.push_str(&format!("0,{}\n", self.content));
        for f in &self.factors {
            out.push_str(&format!("{},{}\n", f.multiplicity, f.coefficients.join(" ")));
        }
        out
    }
}

/// Parses the factor lines of [`FactorReport::to_text`] back into a product.
pub fn reassemble_text(text: &str) -> Option<IntPolynomial> {
    let mut acc = None;
    for line in text.lines() {
        if let Some(c) = line.strip_prefix("content ") {
            acc = Some(IntPolynomial::constant(c.trim().parse().ok()?));
        } else if let Some(rest) = line.strip_prefix("factor ") {
            let (m, poly) = rest.split_once(' ')?;
            let m: u32 = m.parse().ok()?;
            let f = rfr_core::polynomial::text::parse_polynomial(poly).ok()?;
            acc = Some(acc?.multiply(&f.pow(m)));
        }
    }
    acc
}

pub fn coefficient_line(p: &IntPolynomial) -> String {
    format_coefficients(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rfr_core::verify::{factor, FactorOptions};

    fn report(c: &[i64]) -> (IntPolynomial, FactorReport) {
        let p = IntPolynomial::from_i64s(c);
        let r = factor(&p, &FactorOptions::default()).unwrap();
        let rep = FactorReport::new(&p, &r, Vec::new());
        (p, rep)
    }

    #[test]
    fn text_for_product() {
        let (p, rep) = report(&[-2, 0, -1, 0, 1]);
        assert_eq!(
            rep.to_text(),
            "input x^4 - x^2 - 2\ncontent 1\nfactor 1 x^2 - 2\nfactor 1 x^2 + 1\ncertificate ok\n"
        );
        assert_eq!(reassemble_text(&rep.to_text()).unwrap(), p);
    }

    #[test]
    fn irreducible_is_announced() {
        let (_, rep) = report(&[1, 0, -10, 0, 1]);
        assert!(rep.to_text().contains("\nirreducible\n"));
    }

    #[test]
    fn json_round_trip() {
        let (p, rep) = report(&[-6, 0, 6]);
        let json = serde_json::to_string(&rep).unwrap();
        let back: FactorReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.reassemble().unwrap(), p);
        assert_eq!(rep.content, "6");
    }

    #[test]
    fn csv_rows() {
        let (_, rep) = report(&[-1, 0, 1]);
        assert_eq!(rep.to_csv(), "multiplicity,coefficients\n0,1\n1,-1 1\n1,1 1\n");
    }
}
