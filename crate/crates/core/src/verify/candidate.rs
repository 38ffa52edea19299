//! Candidate factors built from a pattern, and the checks that confirm or
//! reject them.

use num_complex::Complex;
use num_traits::{One, Zero};
use twofloat::TwoFloat;

use crate::polynomial::IntPolynomial;
use crate::recombine::Pattern;
use crate::rootfinder::numeric::{dd_to_bigint, norm, to_f64, Root};
use crate::rootfinder::RootProfile;

/// The real polynomial whose roots are the ones selected by `pattern`.
#[derive(Debug, Clone)]
pub struct CandidateFactor {
    pub pattern: Pattern,
    pub roots: Vec<Root>,
    /// Low-to-high, monic.
    pub real_coeffs: Vec<TwoFloat>,
    /// `traces[i - 1]` is the sum of the `i`-th powers of the roots.
    pub traces: Vec<TwoFloat>,
    /// Relative accuracy assumed for the roots.
    pub accuracy: f64,
}

impl CandidateFactor {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Error bound for `traces[i - 1]`.
    fn trace_tolerance(&self, i: usize, eps: f64) -> f64 {
        let mass: f64 = self.roots.iter().map(|z| norm(z).powi(i as i32)).sum();
        eps.max(8.0 * i as f64 * self.accuracy * mass)
    }

    /// Error bound for every coefficient.
    fn coefficient_tolerance(&self, eps: f64) -> f64 {
        let size: f64 = self.roots.iter().map(|z| 1.0 + norm(z)).product();
        eps.max(8.0 * self.degree() as f64 * self.accuracy * size)
    }
}

/// Multiplies out the linear and quadratic real factors selected by `s` and
/// accumulates the power sums of their roots.
pub fn build_candidate(s: Pattern, profile: &RootProfile) -> CandidateFactor {
    let roots = profile.selected_roots(s);
    let mut coeffs = vec![TwoFloat::one()];
    let mut i = 0;
    while i < roots.len() {
        let z = roots[i];
        if z.im.hi() == 0.0 && z.im.lo() == 0.0 {
            coeffs = mul_real(&coeffs, &[-z.re, TwoFloat::one()]);
            i += 1;
        } else {
            // selected_roots lists a pair as z, conj(z)
            let sum = z.re + z.re;
            let prod = z.re * z.re + z.im * z.im;
            coeffs = mul_real(&coeffs, &[prod, -sum, TwoFloat::one()]);
            i += 2;
        }
    }

    let e = roots.len();
    let mut traces = vec![TwoFloat::zero(); e];
    for z in &roots {
        let mut power: Root = Complex::new(TwoFloat::one(), TwoFloat::zero());
        for t in traces.iter_mut() {
            power = power * z;
            *t += power.re;
        }
    }
    CandidateFactor {
        pattern: s,
        roots,
        real_coeffs: coeffs,
        traces,
        accuracy: profile.accuracy,
    }
}

fn mul_real(a: &[TwoFloat], b: &[TwoFloat]) -> Vec<TwoFloat> {
    let mut out = vec![TwoFloat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += *x * *y;
        }
    }
    out
}

fn distance_to_integer(x: TwoFloat) -> f64 {
    to_f64(x - x.round()).abs()
}

/// Every trace lies within tolerance of an integer. The tolerance is `eps`,
/// widened when the roots are large enough for rounding error to exceed it.
pub fn trace_test(cand: &CandidateFactor, eps: f64) -> bool {
    cand.traces
        .iter()
        .enumerate()
        .all(|(k, t)| distance_to_integer(*t) <= cand.trace_tolerance(k + 1, eps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Rejected {
    #[error("a coefficient is not close to an integer")]
    Coefficients,
    #[error("the rounded polynomial does not divide the input")]
    Division,
}

/// Rounds the candidate's coefficients and checks exact divisibility.
/// Returns the factor and the cofactor `p / q`.
pub fn round_and_divide(
    cand: &CandidateFactor,
    p: &IntPolynomial,
    eps: f64,
) -> Result<(IntPolynomial, IntPolynomial), Rejected> {
    let tol = cand.coefficient_tolerance(eps);
    let mut rounded = Vec::with_capacity(cand.real_coeffs.len());
    for c in &cand.real_coeffs {
        if !c.hi().is_finite() || distance_to_integer(*c) > tol {
            return Err(Rejected::Coefficients);
        }
        rounded.push(dd_to_bigint(c.round()));
    }
    let q = IntPolynomial::new(rounded);
    let quotient = p.divide_exact(&q).map_err(|_| Rejected::Division)?;
    Ok((q, quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootfinder::{build_profile, find_roots, ToleranceConfig};

    fn profile_of(c: &[i64]) -> (IntPolynomial, RootProfile) {
        let p = IntPolynomial::from_i64s(c);
        let cfg = ToleranceConfig::default();
        let roots = find_roots(&p, &cfg).unwrap();
        (p, build_profile(&roots, &cfg).unwrap())
    }

    fn bits_where(profile: &RootProfile, pred: impl Fn(&Root) -> bool) -> Pattern {
        let mut s = 0;
        for i in 0..profile.n() {
            let roots = profile.selected_roots(1 << i);
            if pred(&roots[0]) {
                s |= 1 << i;
            }
        }
        s
    }

    #[test]
    fn pair_i_gives_x2_plus_1() {
        let (p, prof) = profile_of(&[-2, 0, -1, 0, 1]);
        let s = bits_where(&prof, |z| z.im.hi() != 0.0);
        let cand = build_candidate(s, &prof);
        let c: Vec<f64> = cand.real_coeffs.iter().map(|c| to_f64(*c)).collect();
        assert!((c[0] - 1.0).abs() < 1e-14 && c[1].abs() < 1e-14 && c[2] == 1.0);
        assert!(trace_test(&cand, 1e-6));
        assert!((to_f64(cand.traces[0])).abs() < 1e-14);
        assert!((to_f64(cand.traces[1]) + 2.0).abs() < 1e-14);
        let (q, quot) = round_and_divide(&cand, &p, 1e-6).unwrap();
        assert_eq!(q, IntPolynomial::from_i64s(&[1, 0, 1]));
        assert_eq!(quot, IntPolynomial::from_i64s(&[-2, 0, 1]));
    }

    #[test]
    fn both_square_roots_of_two() {
        let (_, prof) = profile_of(&[-2, 0, 1]);
        let cand = build_candidate(0b11, &prof);
        let c: Vec<f64> = cand.real_coeffs.iter().map(|c| to_f64(*c)).collect();
        assert!((c[0] + 2.0).abs() < 1e-14 && c[1].abs() < 1e-14);
    }

    #[test]
    fn swinnerton_dyer_false_candidate() {
        let (p, prof) = profile_of(&[1, 0, -10, 0, 1]);
        let big = 2f64.sqrt() + 3f64.sqrt();
        let s = bits_where(&prof, |z| (to_f64(z.re).abs() - big).abs() < 1e-9);
        assert_eq!(s.count_ones(), 2);
        let cand = build_candidate(s, &prof);
        assert!(to_f64(cand.traces[0]).abs() < 1e-14);
        let tr2 = 2.0 * (5.0 + 2.0 * 6f64.sqrt());
        assert!((to_f64(cand.traces[1]) - tr2).abs() < 1e-12);
        assert!((tr2 - 19.798).abs() < 1e-3);
        assert!(!trace_test(&cand, 1e-6));
        assert!((to_f64(cand.real_coeffs[0]) + 5.0 + 2.0 * 6f64.sqrt()).abs() < 1e-12);
        assert_eq!(round_and_divide(&cand, &p, 1e-6), Err(Rejected::Coefficients));
    }

    #[test]
    fn half_root_fails_trace() {
        let (_, prof) = profile_of(&[-1, 2]);
        let cand = build_candidate(0b1, &prof);
        assert!(!trace_test(&cand, 1e-6));
    }

    #[test]
    fn off_integer_coefficient_rejected_before_division() {
        let cand = CandidateFactor {
            pattern: 1,
            roots: vec![Complex::new(TwoFloat::from(-0.5003), TwoFloat::zero())],
            real_coeffs: vec![TwoFloat::from(0.5003), TwoFloat::one()],
            traces: vec![TwoFloat::from(-0.5003)],
            accuracy: 1e-26,
        };
        let p = IntPolynomial::from_i64s(&[0, 1]);
        assert_eq!(round_and_divide(&cand, &p, 1e-6), Err(Rejected::Coefficients));
    }

    #[test]
    fn integral_but_non_dividing_is_rejected() {
        let (_, prof) = profile_of(&[-2, 0, 1]);
        let cand = build_candidate(0b11, &prof);
        let other = IntPolynomial::from_i64s(&[-3, 0, 1]);
        assert_eq!(round_and_divide(&cand, &other, 1e-6), Err(Rejected::Division));
    }
}
