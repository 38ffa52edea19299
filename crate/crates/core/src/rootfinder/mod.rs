//! All complex roots of an integer polynomial, classified into real roots and
//! conjugate pairs, and the fractional-part vector built from them.
//!
//! Roots come from an Aberth-Ehrlich iteration in `f64` and are then polished
//! by Newton steps, in double-double arithmetic when the precision tier asks
//! for it. Real roots are returned with an exactly zero imaginary part and
//! conjugate pairs as exact conjugates.

mod aberth;
pub mod numeric;
mod profile;

pub use numeric::Root;
pub use profile::{build_profile, expected_n, expected_real_roots, RootProfile, RootRef};

use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::polynomial::IntPolynomial;
use numeric::{bigint_to_dd, dd, horner_dd, horner_dd_real, norm, to_c64, to_f64};

/// Degrees above this use double-double polishing under [`Precision::Auto`].
pub const AUTO_EXTENDED_DEGREE: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    Double,
    Extended,
    #[default]
    Auto,
}

impl Precision {
    pub fn extended_for(self, degree: usize) -> bool {
        match self {
            Precision::Double => false,
            Precision::Extended => true,
            Precision::Auto => degree > AUTO_EXTENDED_DEGREE,
        }
    }

    /// Relative accuracy assumed for polished roots at this tier.
    pub fn root_accuracy(self, degree: usize) -> f64 {
        if self.extended_for(degree) {
            1e-26
        } else {
            1e-13
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Acceptance half-width around integers for subset sums.
    pub eps: f64,
    /// Relative residual bound every returned root must meet.
    pub root_tol: f64,
    /// `|Im z| <= imag_threshold * max(1, |z|)` classifies `z` as real.
    pub imag_threshold: f64,
    /// Coefficient-rounding tolerance; `None` reuses `eps`.
    pub coeff_eps: Option<f64>,
    pub precision: Precision,
    pub max_iterations: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps: 1e-6,
            root_tol: 1e-12,
            imag_threshold: 1e-9,
            coeff_eps: None,
            precision: Precision::Auto,
            max_iterations: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToleranceError {
    #[error("eps must lie in (0, 0.5), got {0}")]
    Eps(f64),
    #[error("root_tol must be positive, got {0}")]
    RootTol(f64),
    #[error("imag_threshold must be positive, got {0}")]
    ImagThreshold(f64),
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), ToleranceError> {
        if !(self.eps > 0.0 && self.eps < 0.5) {
            return Err(ToleranceError::Eps(self.eps));
        }
        if !(self.root_tol > 0.0) {
            return Err(ToleranceError::RootTol(self.root_tol));
        }
        if !(self.imag_threshold > 0.0) {
            return Err(ToleranceError::ImagThreshold(self.imag_threshold));
        }
        Ok(())
    }

    pub fn coefficient_eps(&self) -> f64 {
        self.coeff_eps.unwrap_or(self.eps)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("coefficients do not fit in floating point")]
    NonFinite,
    #[error("root iteration did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("complex root {re} + {im}i has no conjugate partner")]
    UnpairedComplexRoot { re: f64, im: f64 },
}

const ATTEMPTS: usize = 3;

/// All `deg p` complex roots of a square-free `p`.
pub fn find_roots(p: &IntPolynomial, cfg: &ToleranceConfig) -> Result<Vec<Root>, RootError> {
    let d = p.degree();
    if d == 0 {
        return Err(RootError::DegreeTooLow);
    }
    let exact: Vec<TwoFloat> = p.coeffs().iter().map(bigint_to_dd).collect();
    if exact.iter().any(|c| !c.hi().is_finite()) {
        return Err(RootError::NonFinite);
    }
    if d == 1 {
        let root = -exact[0] / exact[1];
        return Ok(vec![Complex::new(root, TwoFloat::zero())]);
    }
    let lead = p.leading().to_f64().ok_or(RootError::NonFinite)?;
    let monic: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN) / lead)
        .collect();
    if monic.iter().any(|c| !c.is_finite()) {
        return Err(RootError::NonFinite);
    }
    let extended = cfg.precision.extended_for(d);
    let max_coeff = exact.iter().fold(0.0f64, |acc, c| acc.max(to_f64(*c).abs()));

    let mut last_err = RootError::NonConvergence {
        iterations: cfg.max_iterations,
    };
    for attempt in 0..ATTEMPTS {
        let phase = 0.4 + 0.7 * attempt as f64;
        let out = aberth::aberth(&monic, cfg.max_iterations, phase);
        match refine(&out.roots, &exact, &monic, cfg, extended) {
            Ok(roots) if residuals_ok(&roots, &exact, max_coeff, cfg.root_tol) && distinct(&roots) => {
                return Ok(roots)
            }
            Ok(_) => {}
            // an unpaired root after a stalled iteration is a convergence failure
            Err(e) if out.converged => last_err = e,
            Err(_) => {}
        }
    }
    Err(last_err)
}

/// Classifies, pairs, symmetrizes and polishes raw approximations.
fn refine(
    approx: &[Complex<f64>],
    exact: &[TwoFloat],
    monic: &[f64],
    cfg: &ToleranceConfig,
    extended: bool,
) -> Result<Vec<Root>, RootError> {
    let d = approx.len();
    if approx.iter().any(|z| !z.is_finite()) {
        return Err(RootError::NonConvergence {
            iterations: cfg.max_iterations,
        });
    }
    let spacing = |k: usize| -> f64 {
        approx
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, z)| (z - approx[k]).norm())
            .fold(f64::INFINITY, f64::min)
    };

    let mut out = Vec::with_capacity(d);
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (k, z) in approx.iter().enumerate() {
        if z.im.abs() <= cfg.imag_threshold * z.norm().max(1.0) {
            let x = polish_real(exact, monic, z.re, spacing(k), extended);
            out.push(Complex::new(x, TwoFloat::zero()));
        } else if z.im > 0.0 {
            upper.push(k);
        } else {
            lower.push(k);
        }
    }
    let pairs = pair_conjugates(approx, &upper, &lower)?;
    for (a, b) in pairs {
        let z = (approx[a] + approx[b].conj()) * 0.5;
        let z = polish_complex(exact, monic, z, spacing(a), extended);
        out.push(z);
        out.push(z.conj());
    }
    Ok(out)
}

/// Greedy nearest-conjugate matching of upper-half-plane roots to
/// lower-half-plane roots.
fn pair_conjugates(
    approx: &[Complex<f64>],
    upper: &[usize],
    lower: &[usize],
) -> Result<Vec<(usize, usize)>, RootError> {
    let mut free: Vec<usize> = lower.to_vec();
    let mut pairs = Vec::with_capacity(upper.len());
    for &u in upper {
        let target = approx[u].conj();
        let best = free
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                (approx[a] - target)
                    .norm()
                    .total_cmp(&(approx[b] - target).norm())
            })
            .map(|(i, &l)| (i, l));
        match best {
            Some((i, l)) if (approx[l] - target).norm() <= 1e-6 * target.norm().max(1.0) => {
                free.swap_remove(i);
                pairs.push((u, l));
            }
            _ => {
                return Err(RootError::UnpairedComplexRoot {
                    re: approx[u].re,
                    im: approx[u].im,
                })
            }
        }
    }
    if let Some(&l) = free.first() {
        return Err(RootError::UnpairedComplexRoot {
            re: approx[l].re,
            im: approx[l].im,
        });
    }
    Ok(pairs)
}

const POLISH_STEPS: usize = 8;

fn polish_real(exact: &[TwoFloat], monic: &[f64], x0: f64, spacing: f64, extended: bool) -> TwoFloat {
    let limit = 0.25 * spacing;
    if extended {
        let mut x = dd(x0);
        for _ in 0..POLISH_STEPS {
            let (v, dv) = horner_dd_real(exact, x);
            if dv.hi() == 0.0 || !v.hi().is_finite() || !dv.hi().is_finite() {
                break;
            }
            let step = v / dv;
            if !(to_f64(step).abs() < limit) {
                break;
            }
            x -= step;
            if to_f64(step).abs() <= 1e-31 * to_f64(x).abs() {
                break;
            }
        }
        x
    } else {
        let mut x = x0;
        for _ in 0..POLISH_STEPS {
            let step = aberth::newton_ratio(monic, Complex::new(x, 0.0)).re;
            if !(step.abs() < limit) {
                break;
            }
            x -= step;
            if step.abs() <= f64::EPSILON * x.abs() {
                break;
            }
        }
        dd(x)
    }
}

fn polish_complex(
    exact: &[TwoFloat],
    monic: &[f64],
    z0: Complex<f64>,
    spacing: f64,
    extended: bool,
) -> Root {
    let limit = 0.25 * spacing;
    if extended {
        let mut z = numeric::from_c64(z0);
        for _ in 0..POLISH_STEPS {
            let (v, dv) = horner_dd(exact, z);
            let dv64 = to_c64(&dv);
            if dv64.norm() == 0.0 || !dv64.is_finite() || !to_c64(&v).is_finite() {
                break;
            }
            let step = v / dv;
            let size = norm(&step);
            if !(size < limit) {
                break;
            }
            z = z - step;
            if size <= 1e-31 * norm(&z) {
                break;
            }
        }
        z
    } else {
        let mut z = z0;
        for _ in 0..POLISH_STEPS {
            let step = aberth::newton_ratio(monic, z);
            if !(step.norm() < limit) {
                break;
            }
            z -= step;
            if step.norm() <= f64::EPSILON * z.norm() {
                break;
            }
        }
        numeric::from_c64(z)
    }
}

/// `|p(z)| <= root_tol * max|a_i| * max(1, |z|)^d` for every root.
fn residuals_ok(roots: &[Root], exact: &[TwoFloat], max_coeff: f64, root_tol: f64) -> bool {
    let d = exact.len() - 1;
    roots.iter().all(|z| {
        let (v, _) = horner_dd(exact, *z);
        let bound = root_tol * max_coeff * norm(z).max(1.0).powi(d as i32);
        let r = norm(&v);
        r.is_finite() && (r <= bound || !bound.is_finite())
    })
}

fn distinct(roots: &[Root]) -> bool {
    let zs: Vec<Complex<f64>> = roots.iter().map(to_c64).collect();
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            if (zs[i] - zs[j]).norm() <= 1e-14 * zs[i].norm().max(1.0) {
                return false;
            }
        }
    }
    true
}
