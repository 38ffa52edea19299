//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored low-to-high: `coeffs()[i]` is the coefficient of
//! `x^i`. The zero polynomial is stored as a single zero coefficient so every
//! stored polynomial has a well-defined degree.

mod generate;
mod squarefree;
pub mod text;

pub use generate::{gen_random_reducible, gen_swinnerton_dyer, GenError, RandomReducible};
pub use squarefree::{square_free_decompose, SquareFreePart};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact division failed: either a remainder was left over, or the quotient
/// would need non-integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("divisor does not divide the dividend over the integers")]
pub struct DoesNotDivide;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from low-to-high coefficients, trimming leading zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`
    pub fn linear(root: i64) -> Self {
        Self::from_i64s(&[-root, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("coefficient vector is never empty")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        if self.is_constant() {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Splits `self` into a signed content and a primitive part with positive
    /// leading coefficient, so that `self = content * primitive`.
    pub fn content_and_primitive(&self) -> (BigInt, IntPolynomial) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut content = self.content();
        if self.leading().is_negative() {
            content = -content;
        }
        (content.clone(), self.div_scalar_exact(&content))
    }

    pub fn primitive_part(&self) -> IntPolynomial {
        self.content_and_primitive().1
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`; caller guarantees divisibility.
    fn div_scalar_exact(&self, k: &BigInt) -> IntPolynomial {
        Self::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Exact product.
    pub fn multiply(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        (0..e).fold(Self::one(), |acc, _| acc.multiply(self))
    }

    /// Returns `r` with `divisor * r == self`, or [`DoesNotDivide`].
    ///
    /// Long division over the integers: every step needs the running leading
    /// coefficient to be a multiple of the divisor's leading coefficient.
    pub fn divide_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial, DoesNotDivide> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.degree() > self.degree() {
            return Err(DoesNotDivide);
        }
        let lead = divisor.leading();
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(DoesNotDivide);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(DoesNotDivide);
        }
        Ok(Self::new(quot))
    }

    /// Pseudo-remainder: the remainder of `lc(divisor)^k * self` divided by
    /// `divisor`, for the smallest `k` that keeps every step integral.
    pub fn pseudo_remainder(&self, divisor: &IntPolynomial) -> IntPolynomial {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.degree() < divisor.degree() || self.is_zero() {
            return self.clone();
        }
        let lead = divisor.leading();
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut top_deg = self.degree();
        loop {
            let top = rem[top_deg].clone();
            for c in rem.iter_mut() {
                *c *= lead;
            }
            let shift = top_deg - dd;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &top * d;
            }
            rem.truncate(top_deg);
            while rem.len() > 1 && rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.is_empty() {
                return Self::zero();
            }
            top_deg = rem.len() - 1;
            if top_deg < dd || (rem.len() == 1 && rem[0].is_zero()) {
                return Self::new(rem);
            }
        }
    }

    /// Primitive gcd over Z[x] with positive leading coefficient
    /// (primitive Euclidean remainder sequence).
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (ca, mut a) = self.content_and_primitive();
        let (cb, mut b) = other.content_and_primitive();
        if a.is_zero() {
            return b.scale(&cb.abs().gcd(&ca));
        }
        if b.is_zero() {
            return a.scale(&ca.abs());
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_remainder(&b);
            a = b;
            b = r.primitive_part();
        }
        let content = ca.gcd(&cb);
        a.primitive_part().scale(&content)
    }

    /// Monic transform: for `p = a_d x^d + ... + a_0` returns the monic
    /// `P(y) = a_d^(d-1) p(y / a_d)` together with `a_d`.
    pub fn to_monic(&self) -> (IntPolynomial, BigInt) {
        let lead = self.leading().clone();
        let d = self.degree();
        let mut out = Vec::with_capacity(d + 1);
        let mut power = BigInt::one();
        // coefficient of y^i is a_i * a_d^(d-1-i)
        for i in (0..d).rev() {
            out.push(&self.coeffs[i] * &power);
            power *= &lead;
        }
        out.reverse();
        out.push(BigInt::one());
        (Self::new(out), lead)
    }

    /// Maps a factor `Q(y)` of a monic transform back to `pp(Q(lead * x))`.
    pub fn from_monic_factor(&self, lead: &BigInt) -> IntPolynomial {
        let mut power = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= lead;
        }
        Self::new(out).primitive_part()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_symbolic(self))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.multiply(rhs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        let q = p(&[3, -2, 0, 7]);
        assert_eq!(&q * &IntPolynomial::one(), q);
        // (x^2 - 2x + 1)(x + 2) = x^3 - 3x + 2
        assert_eq!(&p(&[1, -2, 1]) * &p(&[2, 1]), p(&[2, -3, 0, 1]));
    }

    #[test]
    fn zero_is_normalized() {
        let z = p(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
        assert_eq!(p(&[1, 2, 0, 0]).degree(), 1);
    }

    #[test]
    fn divide_exact_examples() {
        assert_eq!(p(&[-1, 0, 1]).divide_exact(&p(&[-1, 1])), Ok(p(&[1, 1])));
        assert_eq!(p(&[-1, 0, 1]).divide_exact(&p(&[-2, 1])), Err(DoesNotDivide));
        assert_eq!(
            p(&[1, 0, -10, 0, 1]).divide_exact(&p(&[-5, 0, 1])),
            Err(DoesNotDivide)
        );
        // rational quotient (x/2 + ...) is not integral
        assert_eq!(p(&[0, 1]).divide_exact(&p(&[0, 2])), Err(DoesNotDivide));
        assert_eq!(p(&[1, 2]).divide_exact(&p(&[0, 0, 1])), Err(DoesNotDivide));
    }

    #[test]
    fn long_division_remainder_for_sd2_by_x2_minus_5() {
        // x^4 - 10x^2 + 1 = (x^2 - 5)(x^2 - 5) - 24
        let sd = p(&[1, 0, -10, 0, 1]);
        let d = p(&[-5, 0, 1]);
        let q = &d * &d;
        assert_eq!(&sd - &q, p(&[-24]));
    }

    #[test]
    fn gcd_and_content() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 3]);
        assert_eq!(a.scale(&BigInt::from(6)).gcd(&b.scale(&BigInt::from(4))), p(&[-2, 2]));
        assert_eq!(p(&[6, -4, 2]).content(), BigInt::from(2));
        let (c, pp) = p(&[-6, 4, -2]).content_and_primitive();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(pp, p(&[3, -2, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 1])), IntPolynomial::one());
    }

    #[test]
    fn monic_transform_round_trip() {
        // 6x^2 + 5x + 1 = (2x + 1)(3x + 1)
        let f = p(&[1, 5, 6]);
        let (m, lead) = f.to_monic();
        assert!(m.is_monic());
        assert_eq!(m, p(&[6, 5, 1]));
        // y^2 + 5y + 6 = (y + 2)(y + 3)
        let a = p(&[2, 1]).from_monic_factor(&lead);
        let b = p(&[3, 1]).from_monic_factor(&lead);
        assert_eq!(&a * &b, f);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..=50, 1..=max_deg + 1).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn divide_exact_inverts_multiply(a in arb_poly(6), b in arb_poly(6)) {
            prop_assume!(!a.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.divide_exact(&a), Ok(b));
        }

        #[test]
        fn pseudo_remainder_has_lower_degree(a in arb_poly(7), b in arb_poly(4)) {
            prop_assume!(!b.is_zero() && !b.is_constant());
            let r = a.pseudo_remainder(&b);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }
    }
}
