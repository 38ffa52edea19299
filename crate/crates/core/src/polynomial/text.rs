//! Text forms of integer polynomials.
//!
//! Two input forms are accepted:
//!
//! * a coefficient list, low-to-high, whitespace-separated: `1 0 -10 0 1`
//! * a symbolic sum of monomials in `x`: `x^4-10*x^2+1`, `3x - 2`, `-x^2`
//!
//! Any input containing an `x` is parsed symbolically.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;

/// Upper bound on accepted degrees; keeps hostile exponents from allocating.
pub const MAX_PARSE_DEGREE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn at(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_polynomial(input: &str) -> Result<IntPolynomial, ParseError> {
    if input.contains(['x', 'X']) {
        parse_symbolic(input)
    } else {
        parse_coefficient_list(input)
    }
}

pub fn parse_coefficient_list(input: &str) -> Result<IntPolynomial, ParseError> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for token in input.split_whitespace() {
        let position = input[offset..].find(token).map_or(offset, |p| p + offset);
        offset = position + token.len();
        if coeffs.len() > MAX_PARSE_DEGREE {
            return Err(ParseError::at(position, "too many coefficients"));
        }
        let value = parse_integer(token)
            .ok_or_else(|| ParseError::at(position, format!("invalid integer `{token}`")))?;
        coeffs.push(value);
    }
    if coeffs.is_empty() {
        return Err(ParseError::at(0, "empty coefficient list"));
    }
    Ok(IntPolynomial::new(coeffs))
}

fn parse_integer(token: &str) -> Option<BigInt> {
    let digits = token.strip_prefix(['+', '-']).unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    token.parse().ok()
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }
}

pub fn parse_symbolic(input: &str) -> Result<IntPolynomial, ParseError> {
    let mut cur = Cursor {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        let term_start = cur.pos;
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') {
            false
        } else if first {
            false
        } else {
            return Err(ParseError::at(cur.pos, "expected `+` or `-`"));
        };
        first = false;

        let coefficient = cur.digits().map(|d| d.parse::<BigInt>().unwrap());
        let has_x = if coefficient.is_some() {
            if cur.eat(b'*') {
                if !matches!(cur.peek(), Some(b'x' | b'X')) {
                    return Err(ParseError::at(cur.pos, "expected `x` after `*`"));
                }
            }
            matches!(cur.peek(), Some(b'x' | b'X'))
        } else {
            matches!(cur.peek(), Some(b'x' | b'X'))
        };
        if coefficient.is_none() && !has_x {
            return Err(ParseError::at(cur.pos, "expected a coefficient or `x`"));
        }
        let exponent = if has_x {
            cur.pos += 1;
            if cur.eat(b'^') {
                let pos = cur.pos;
                let e = cur
                    .digits()
                    .ok_or_else(|| ParseError::at(pos, "expected exponent"))?;
                e.parse::<usize>()
                    .ok()
                    .filter(|&e| e <= MAX_PARSE_DEGREE)
                    .ok_or_else(|| ParseError::at(pos, "exponent too large"))?
            } else {
                1
            }
        } else {
            0
        };
        let mut value = coefficient.unwrap_or_else(BigInt::one);
        if negative {
            value = -value;
        }
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, BigInt::zero());
        }
        coeffs[exponent] += value;

        match cur.peek() {
            None => break,
            Some(b'+' | b'-') => continue,
            Some(_) => {
                return Err(ParseError::at(
                    cur.pos.max(term_start),
                    "unexpected character",
                ))
            }
        }
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Coefficient-list form, low-to-high.
pub fn format_coefficients(p: &IntPolynomial) -> String {
    p.coeffs()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Symbolic form, highest power first: `x^4 - 10*x^2 + 1`.
pub fn format_symbolic(p: &IntPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let unit = magnitude.is_one();
        match (i, unit) {
            (0, _) => out.push_str(&magnitude.to_string()),
            (_, true) => {}
            (_, false) => {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{i}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_polynomial("1 0 -10 0 1").unwrap(), p(&[1, 0, -10, 0, 1]));
        assert_eq!(parse_polynomial("  -1\t0\n1 ").unwrap(), p(&[-1, 0, 1]));
        assert_eq!(parse_polynomial("+5").unwrap(), p(&[5]));
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("1 2 three").is_err());
        assert!(parse_polynomial("1 --2").is_err());
        assert!(parse_polynomial("1 2-").is_err());
    }

    #[test]
    fn symbolic_forms() {
        assert_eq!(parse_polynomial("x^4-10*x^2+1").unwrap(), p(&[1, 0, -10, 0, 1]));
        assert_eq!(parse_polynomial("3x - 2").unwrap(), p(&[-2, 3]));
        assert_eq!(parse_polynomial("-x^2 + x").unwrap(), p(&[0, 1, -1]));
        assert_eq!(parse_polynomial("x + x").unwrap(), p(&[0, 2]));
        assert_eq!(parse_polynomial("X^2 - 1").unwrap(), p(&[-1, 0, 1]));
        assert!(parse_polynomial("x^").is_err());
        assert!(parse_polynomial("x^99999999").is_err());
        assert!(parse_polynomial("2*").is_err());
        assert!(parse_polynomial("x y").is_err());
        assert!(parse_polynomial("x +").is_err());
    }

    #[test]
    fn formatting() {
        let f = p(&[1, 0, -10, 0, 1]);
        assert_eq!(format_symbolic(&f), "x^4 - 10*x^2 + 1");
        assert_eq!(format_coefficients(&f), "1 0 -10 0 1");
        assert_eq!(format_symbolic(&p(&[0, -1])), "-x");
        assert_eq!(format_symbolic(&p(&[-3, 0, 2])), "2*x^2 - 3");
        assert_eq!(format_symbolic(&IntPolynomial::zero()), "0");
    }

    proptest! {
        #[test]
        fn both_forms_round_trip(c in prop::collection::vec(-1000i64..=1000, 1..10)) {
            let f = p(&c);
            prop_assert_eq!(parse_polynomial(&format_coefficients(&f)).unwrap(), f.clone());
            prop_assert_eq!(parse_polynomial(&format_symbolic(&f)).unwrap(), f);
        }

        #[test]
        fn arbitrary_text_never_panics(s in "\\PC{0,40}") {
            let _ = parse_polynomial(&s);
        }
    }
}
