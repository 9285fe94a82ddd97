//! Left Fox differential calculus on words over the signed letters.
//!
//! The derivative is taken with respect to a single generator `x` by the left
//! rules `d(x) = 1`, `d(x^-1) = -x^-1`, `d(y^±1) = 0` for `y != x`, extended
//! by the product rule `d(u v) = d(u) + u d(v)`. Words are differentiated as
//! given; free reduction is the caller's concern. Results live in the free
//! algebra over all signed letters; projection into a quotient ring happens
//! in `groupring`.

use num_bigint::BigInt;

use crate::ncpoly::Polynomial;
use crate::words::Word;

/// The left Fox derivative of a word with respect to the generator `x`.
///
/// Each positive occurrence of `x` at position `i` contributes the prefix
/// `w[..i]`; each occurrence of `x^-1` contributes `-w[..=i]`.
pub fn fox_derivative(word: &Word, x: u32) -> Polynomial {
    let mut out = Polynomial::zero();
    for (i, letter) in word.letters().iter().enumerate() {
        if letter.generator != x {
            continue;
        }
        if letter.inverse {
            out.add_term(word.prefix(i + 1), BigInt::from(-1));
        } else {
            out.add_term(word.prefix(i), BigInt::from(1));
        }
    }
    out
}

/// Closed form of `d(x^n)/dx`: the geometric sum `1 + x + ... + x^(n-1)` for
/// `n >= 0` and `-(x^-1 + ... + x^-|n|)` for `n < 0`.
pub fn fox_power(n: i64, x: u32) -> Polynomial {
    let mut out = Polynomial::zero();
    if n >= 0 {
        for k in 0..n {
            out.add_term(Word::power(x, k), BigInt::from(1));
        }
    } else {
        for k in 1..=(-n) {
            out.add_term(Word::power(x, -k), BigInt::from(-1));
        }
    }
    out
}

/// Derivative of a relator pair `r1 = r2`, read as `d(r1) - d(r2)`.
pub fn fox_of_relator(r1: &Word, r2: &Word, x: u32) -> Polynomial {
    &fox_derivative(r1, x) - &fox_derivative(r2, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::parse_polynomial;
    use crate::words::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["x", "y"]).unwrap()
    }

    #[test]
    fn base_rules() {
        let a = ab();
        let x = a.generator("x").unwrap();
        assert_eq!(
            fox_derivative(&a.parse_word("x").unwrap(), x),
            Polynomial::one()
        );
        assert_eq!(
            fox_derivative(&a.parse_word("y").unwrap(), x),
            Polynomial::zero()
        );
    }

    #[test]
    fn positive_power() {
        let a = ab();
        let x = a.generator("x").unwrap();
        assert_eq!(
            fox_derivative(&a.parse_word("x^3").unwrap(), x),
            parse_polynomial(&a, "1 + x + x^2").unwrap()
        );
    }

    #[test]
    fn negative_power() {
        let a = ab();
        let x = a.generator("x").unwrap();
        assert_eq!(
            fox_derivative(&a.parse_word("x^-2").unwrap(), x),
            parse_polynomial(&a, "-x^-1 - x^-2").unwrap()
        );
    }

    #[test]
    fn interleaved_word() {
        let a = ab();
        let x = a.generator("x").unwrap();
        assert_eq!(
            fox_derivative(&a.parse_word("y x y x y").unwrap(), x),
            parse_polynomial(&a, "y + y x y").unwrap()
        );
    }

    #[test]
    fn power_closed_form() {
        let a = ab();
        let x = a.generator("x").unwrap();
        assert_eq!(fox_power(0, x), Polynomial::zero());
        assert_eq!(fox_power(2, x), parse_polynomial(&a, "1 + x").unwrap());
        assert_eq!(fox_power(-1, x), parse_polynomial(&a, "-x^-1").unwrap());
    }

    #[test]
    fn relator_pairs() {
        let a = ab();
        let x = a.generator("x").unwrap();
        assert_eq!(
            fox_of_relator(
                &a.parse_word("y x y x y").unwrap(),
                &a.parse_word("y").unwrap(),
                x
            ),
            parse_polynomial(&a, "y + y x y").unwrap()
        );
        let r = a.parse_word("y x^2 y^-1").unwrap();
        assert_eq!(fox_of_relator(&r, &r, x), Polynomial::zero());
        assert_eq!(
            fox_of_relator(&a.parse_word("x^2").unwrap(), &Word::empty(), x),
            parse_polynomial(&a, "1 + x").unwrap()
        );
    }
}
