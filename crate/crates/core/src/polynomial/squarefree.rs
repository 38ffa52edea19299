use super::IntPolynomial;

/// One factor of a square-free decomposition together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreePart {
    pub factor: IntPolynomial,
    pub multiplicity: u32,
}

/// Yun's square-free decomposition over Z[x].
///
/// Returns the non-constant parts in strictly increasing multiplicity. Every
/// factor is primitive with positive leading coefficient, so for a primitive
/// input with positive leading coefficient the product of
/// `factor^multiplicity` reproduces the input exactly; otherwise it matches up
/// to the integer content.
pub fn square_free_decompose(p: &IntPolynomial) -> Vec<SquareFreePart> {
    assert!(!p.is_constant(), "square-free decomposition of a constant");
    let f = p.primitive_part();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divide_exact(&a0).expect("gcd divides f");
    let c = df.divide_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();

    let mut parts = Vec::new();
    let mut multiplicity = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let next_b = b.divide_exact(&a).expect("gcd divides b");
        let c = d.divide_exact(&a).expect("gcd divides d");
        if !a.is_constant() {
            parts.push(SquareFreePart {
                factor: a,
                multiplicity,
            });
        }
        d = &c - &next_b.derivative();
        b = next_b;
        multiplicity += 1;
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn reassemble(parts: &[SquareFreePart]) -> IntPolynomial {
        parts.iter().fold(IntPolynomial::one(), |acc, part| {
            acc.multiply(&part.factor.pow(part.multiplicity))
        })
    }

    #[test]
    fn repeated_linear_factor() {
        // (x - 1)^2 (x + 2)
        let parts = square_free_decompose(&p(&[2, -3, 0, 1]));
        assert_eq!(
            parts,
            vec![
                SquareFreePart { factor: p(&[2, 1]), multiplicity: 1 },
                SquareFreePart { factor: p(&[-1, 1]), multiplicity: 2 },
            ]
        );
    }

    #[test]
    fn already_square_free() {
        let parts = square_free_decompose(&p(&[-2, 0, 1]));
        assert_eq!(parts, vec![SquareFreePart { factor: p(&[-2, 0, 1]), multiplicity: 1 }]);
    }

    #[test]
    fn cube() {
        let cube = p(&[-1, 1]).pow(3);
        assert_eq!(cube, p(&[-1, 3, -3, 1]));
        let parts = square_free_decompose(&cube);
        assert_eq!(parts, vec![SquareFreePart { factor: p(&[-1, 1]), multiplicity: 3 }]);
    }

    #[test]
    fn content_is_dropped() {
        let parts = square_free_decompose(&p(&[-6, 0, 3]));
        assert_eq!(parts, vec![SquareFreePart { factor: p(&[-2, 0, 1]), multiplicity: 1 }]);
    }

    proptest! {
        #[test]
        fn reassembles_and_parts_are_square_free(
            a in prop::collection::vec(-9i64..=9, 2..4),
            b in prop::collection::vec(-9i64..=9, 2..4),
            ea in 1u32..4,
            eb in 1u32..3,
        ) {
            let fa = p(&a);
            let fb = p(&b);
            prop_assume!(!fa.is_constant() && !fb.is_constant());
            let input = fa.pow(ea).multiply(&fb.pow(eb)).primitive_part();
            let parts = square_free_decompose(&input);
            prop_assert_eq!(reassemble(&parts), input);
            let mut last = 0;
            for part in &parts {
                prop_assert!(part.multiplicity > last);
                last = part.multiplicity;
                prop_assert!(part.factor.gcd(&part.factor.derivative()).is_constant());
            }
        }
    }
}
