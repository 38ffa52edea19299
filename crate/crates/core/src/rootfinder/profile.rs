//! Root classification and the fractional-part vector.

use num_complex::Complex;
use twofloat::TwoFloat;

use super::numeric::{frac, norm, to_c64, Root};
use super::{RootError, ToleranceConfig};

/// Identity of one `rho` entry: a real root or a conjugate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootRef {
    /// Index into [`RootProfile::real_roots`].
    Real(usize),
    /// Index into [`RootProfile::pairs`].
    Pair(usize),
}

#[derive(Debug, Clone)]
pub struct RootProfile {
    pub real_roots: Vec<TwoFloat>,
    /// One representative per pair, taken from the upper half plane.
    pub pairs: Vec<Root>,
    /// `z + conj(z)` for each entry of `pairs`.
    pub pair_sums: Vec<TwoFloat>,
    /// Sorted non-decreasing.
    pub rho: Vec<f64>,
    /// `perm[i]` is the root or pair behind `rho[i]`.
    pub perm: Vec<RootRef>,
    /// Relative accuracy assumed for the roots.
    pub accuracy: f64,
}

impl RootProfile {
    pub fn r(&self) -> usize {
        self.real_roots.len()
    }

    pub fn c(&self) -> usize {
        self.pairs.len()
    }

    pub fn n(&self) -> usize {
        self.rho.len()
    }

    pub fn degree(&self) -> usize {
        self.r() + 2 * self.c()
    }

    /// Number of polynomial roots behind the entries selected by `bits`.
    pub fn selected_degree(&self, bits: u64) -> usize {
        self.perm
            .iter()
            .enumerate()
            .filter(|&(i, _)| bits >> i & 1 == 1)
            .map(|(_, r)| match r {
                RootRef::Real(_) => 1,
                RootRef::Pair(_) => 2,
            })
            .sum()
    }

    /// All roots behind the selected entries, pairs expanded to both members.
    pub fn selected_roots(&self, bits: u64) -> Vec<Root> {
        let mut out = Vec::new();
        for (i, r) in self.perm.iter().enumerate() {
            if bits >> i & 1 == 0 {
                continue;
            }
            match *r {
                RootRef::Real(k) => out.push(Complex::new(self.real_roots[k], TwoFloat::from(0.0))),
                RootRef::Pair(k) => {
                    out.push(self.pairs[k]);
                    out.push(self.pairs[k].conj());
                }
            }
        }
        out
    }
}

/// Splits `roots` into real roots and conjugate pairs and builds the sorted
/// `rho` vector.
pub fn build_profile(roots: &[Root], cfg: &ToleranceConfig) -> Result<RootProfile, RootError> {
    let mut real_roots = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for z in roots {
        let size = norm(z).max(1.0);
        let im = to_c64(z).im;
        if im.abs() <= cfg.imag_threshold * size {
            real_roots.push(z.re);
        } else if im > 0.0 {
            upper.push(*z);
        } else {
            lower.push(*z);
        }
    }

    let mut pairs = Vec::with_capacity(upper.len());
    for z in upper {
        let target = to_c64(&z).conj();
        let best = lower
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (to_c64(w) - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, dist)) if dist <= 1e-6 * target.norm().max(1.0) => {
                let partner = lower.swap_remove(i);
                pairs.push((z + partner.conj()) * TwoFloat::from(0.5));
            }
            _ => {
                let z = to_c64(&z);
                return Err(RootError::UnpairedComplexRoot { re: z.re, im: z.im });
            }
        }
    }
    if let Some(z) = lower.first() {
        let z = to_c64(z);
        return Err(RootError::UnpairedComplexRoot { re: z.re, im: z.im });
    }

    let pair_sums: Vec<TwoFloat> = pairs.iter().map(|z| z.re + z.re).collect();
    let mut entries: Vec<(f64, RootRef)> = real_roots
        .iter()
        .enumerate()
        .map(|(i, u)| (frac(*u), RootRef::Real(i)))
        .chain(
            pair_sums
                .iter()
                .enumerate()
                .map(|(j, s)| (frac(*s), RootRef::Pair(j))),
        )
        .collect();
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (rho, perm) = entries.into_iter().unzip();
    Ok(RootProfile {
        real_roots,
        pairs,
        pair_sums,
        rho,
        perm,
        accuracy: cfg.precision.root_accuracy(roots.len()),
    })
}

/// Leading term `(2/π) ln d` of the expected number of real roots of a
/// random degree-`d` polynomial.
pub fn expected_real_roots(d: f64) -> f64 {
    2.0 / std::f64::consts::PI * d.ln()
}

/// `d/2 + (1/π) ln d`: expected length of `rho` for a random degree-`d`
/// polynomial.
pub fn expected_n(d: f64) -> f64 {
    d / 2.0 + d.ln() / std::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootfinder::numeric::dd;

    fn real(x: f64) -> Root {
        Complex::new(dd(x), dd(0.0))
    }

    fn complex(re: f64, im: f64) -> Root {
        Complex::new(dd(re), dd(im))
    }

    #[test]
    fn mixed_real_and_pair() {
        let s = 2f64.sqrt();
        let roots = [real(s), real(-s), complex(0.0, 1.0), complex(0.0, -1.0)];
        let p = build_profile(&roots, &ToleranceConfig::default()).unwrap();
        assert_eq!((p.r(), p.c(), p.n(), p.degree()), (2, 1, 3, 4));
        let expected = [0.0, s - 1.0, 2.0 - s];
        for (got, want) in p.rho.iter().zip(expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
        assert_eq!(p.perm[0], RootRef::Pair(0));
        assert!((p.rho[1] - 0.41421).abs() < 1e-5);
        assert!((p.rho[2] - 0.58579).abs() < 1e-5);
    }

    #[test]
    fn pair_sum_two_wraps_to_zero() {
        let p = build_profile(&[complex(1.0, 1.0), complex(1.0, -1.0)], &ToleranceConfig::default()).unwrap();
        assert_eq!(p.rho, vec![0.0]);
    }

    #[test]
    fn negative_pair_sum() {
        let p = build_profile(&[complex(-0.125, 2.0), complex(-0.125, -2.0)], &ToleranceConfig::default())
            .unwrap();
        assert_eq!(p.rho, vec![0.75]);
    }

    #[test]
    fn unpaired_root_is_an_error() {
        let err = build_profile(&[complex(0.5, 1.0), real(2.0)], &ToleranceConfig::default());
        assert!(matches!(err, Err(RootError::UnpairedComplexRoot { .. })));
    }

    #[test]
    fn selection_expands_pairs() {
        let roots = [real(3.0), complex(0.0, 1.0), complex(0.0, -1.0)];
        let p = build_profile(&roots, &ToleranceConfig::default()).unwrap();
        // rho = [0 (pair), 0 (real 3.0)], sort is stable
        assert_eq!(p.perm, vec![RootRef::Real(0), RootRef::Pair(0)]);
        assert_eq!(p.selected_degree(0b10), 2);
        assert_eq!(p.selected_roots(0b11).len(), 3);
    }

    #[test]
    fn estimators() {
        assert_eq!(expected_real_roots(1.0), 0.0);
        assert!((expected_real_roots(100.0) - 2.9317).abs() < 1e-4);
        assert!((expected_real_roots(std::f64::consts::PI.exp()) - 2.0).abs() < 1e-12);
        assert!((expected_n(100.0) - 51.466).abs() < 1e-3);
        assert_eq!(expected_n(1.0), 0.5);
        assert!((expected_n(2.0) - 1.2206).abs() < 1e-4);
    }
}
