//! Test-input generators: random reducible products and Swinnerton-Dyer
//! polynomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntPolynomial;
use crate::recombine::Backend;
use crate::verify::{factor_monic_squarefree, FactorOptions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("degree {0} must be even and at least 4")]
    BadDegree(usize),
    #[error("coefficient bound must be positive")]
    BadBound,
    #[error("Swinnerton-Dyer index {0} outside 1..=6")]
    BadIndex(usize),
    #[error("no irreducible sample found after {0} attempts")]
    Exhausted(usize),
}

/// A reducible product together with the two irreducible halves it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomReducible {
    pub product: IntPolynomial,
    pub factors: [IntPolynomial; 2],
}

const MAX_ATTEMPTS: usize = 1000;

/// Product of two random monic irreducible polynomials of degree `d / 2`
/// whose lower coefficients are uniform in `[-coeff_bound, coeff_bound]`.
///
/// Each half is resampled until the factorizer itself certifies it
/// irreducible. The output depends only on the arguments.
pub fn gen_random_reducible(
    d: usize,
    coeff_bound: i64,
    seed: u64,
) -> Result<RandomReducible, GenError> {
    if d < 4 || d % 2 != 0 {
        return Err(GenError::BadDegree(d));
    }
    if coeff_bound <= 0 {
        return Err(GenError::BadBound);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = d / 2;
    let first = sample_irreducible(&mut rng, half, coeff_bound)?;
    let second = loop {
        let candidate = sample_irreducible(&mut rng, half, coeff_bound)?;
        if candidate != first {
            break candidate;
        }
    };
    Ok(RandomReducible {
        product: first.multiply(&second),
        factors: [first, second],
    })
}

fn sample_irreducible(
    rng: &mut ChaCha8Rng,
    degree: usize,
    bound: i64,
) -> Result<IntPolynomial, GenError> {
    let opts = FactorOptions {
        backend: Backend::E,
        ..FactorOptions::default()
    };
    for _ in 0..MAX_ATTEMPTS {
        let mut coeffs: Vec<BigInt> = (0..degree)
            .map(|_| BigInt::from(rng.random_range(-bound..=bound)))
            .collect();
        coeffs.push(BigInt::one());
        let f = IntPolynomial::new(coeffs);
        if f.coeffs()[0].is_zero() || !f.gcd(&f.derivative()).is_constant() {
            continue;
        }
        match factor_monic_squarefree(&f, &opts) {
            Ok(outcome) if outcome.factors.len() == 1 => return Ok(f),
            _ => continue,
        }
    }
    Err(GenError::Exhausted(MAX_ATTEMPTS))
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Exact coefficients of the Swinnerton-Dyer polynomial
/// `prod (x ± √2 ± √3 ± ... ± √p_k)`, of degree `2^k`.
///
/// Built by repeated norm-taking: if `g(x + t) = A(x) + t B(x)` with
/// `t² = p`, then `g(x + √p) g(x - √p) = A² - p B²`.
pub fn gen_swinnerton_dyer(k: usize) -> Result<IntPolynomial, GenError> {
    if !(1..=PRIMES.len()).contains(&k) {
        return Err(GenError::BadIndex(k));
    }
    let mut g = IntPolynomial::from_i64s(&[0, 1]);
    for &prime in &PRIMES[..k] {
        let (even, odd) = shifted_parts(&g, &BigInt::from(prime));
        let odd_sq = odd.multiply(&odd).scale(&BigInt::from(prime));
        g = &even.multiply(&even) - &odd_sq;
    }
    Ok(g)
}

/// Splits `g(x + t)` into `A(x) + t B(x)` after substituting `t² = t_sq`.
fn shifted_parts(g: &IntPolynomial, t_sq: &BigInt) -> (IntPolynomial, IntPolynomial) {
    let d = g.degree();
    let mut even = vec![BigInt::zero(); d + 1];
    let mut odd = vec![BigInt::zero(); d + 1];
    // Taylor: g(x + t) = sum_k t^k sum_m C(m + k, k) g_{m+k} x^m
    for k in 0..=d {
        let t_power = num_traits::pow(t_sq.clone(), k / 2);
        let target = if k % 2 == 0 { &mut even } else { &mut odd };
        let mut binom = BigInt::one();
        for m in 0..=(d - k) {
            if m > 0 {
                binom = binom * BigInt::from(m + k) / BigInt::from(m);
            }
            target[m] += &binom * &g.coeffs()[m + k] * &t_power;
        }
    }
    (IntPolynomial::new(even), IntPolynomial::new(odd))
}
