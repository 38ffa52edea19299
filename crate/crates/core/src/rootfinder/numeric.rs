//! Double-double helpers shared by the root finder and verification.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use twofloat::TwoFloat;

/// A root carried in double-double precision.
pub type Root = Complex<TwoFloat>;

/// Unit roundoff of double-double arithmetic.
pub const DD_EPSILON: f64 = 4.93e-32;

pub fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

pub fn bigint_to_dd(c: &BigInt) -> TwoFloat {
    let hi = c.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return TwoFloat::from(hi);
    }
    let rest = c - BigInt::from_f64(hi).expect("finite f64 is representable");
    TwoFloat::new_add(hi, rest.to_f64().unwrap_or(0.0))
}

/// Converts an integral double-double to an exact integer.
pub fn dd_to_bigint(x: TwoFloat) -> BigInt {
    let hi = BigInt::from_f64(x.hi()).unwrap_or_default();
    let lo = BigInt::from_f64(x.lo().round()).unwrap_or_default();
    hi + lo
}

pub fn to_f64(x: TwoFloat) -> f64 {
    x.hi() + x.lo()
}

/// `x - floor(x)` rounded into `[0, 1)`.
pub fn frac(x: TwoFloat) -> f64 {
    let f = to_f64(x - x.floor());
    if (0.0..1.0).contains(&f) {
        f
    } else {
        0.0
    }
}

pub fn frac_f64(x: f64) -> f64 {
    let f = x - x.floor();
    if f < 1.0 {
        f
    } else {
        0.0
    }
}

pub fn norm(z: &Root) -> f64 {
    to_f64(z.re).hypot(to_f64(z.im))
}

pub fn to_c64(z: &Root) -> Complex<f64> {
    Complex::new(to_f64(z.re), to_f64(z.im))
}

pub fn from_c64(z: Complex<f64>) -> Root {
    Complex::new(dd(z.re), dd(z.im))
}

/// Evaluates `p(z)` and `p'(z)` by Horner's rule in double-double.
pub fn horner_dd(coeffs: &[TwoFloat], z: Root) -> (Root, Root) {
    let mut value = Root::zero();
    let mut deriv = Root::zero();
    for c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + Complex::new(*c, TwoFloat::zero());
    }
    (value, deriv)
}

pub fn horner_dd_real(coeffs: &[TwoFloat], x: TwoFloat) -> (TwoFloat, TwoFloat) {
    let mut value = TwoFloat::zero();
    let mut deriv = TwoFloat::zero();
    for c in coeffs.iter().rev() {
        deriv = deriv * x + value;
        value = value * x + *c;
    }
    (value, deriv)
}
