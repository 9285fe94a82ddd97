//! Integer-coefficient noncommutative polynomials on free-monoid words.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::words::{Alphabet, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PolyError {
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("malformed polynomial term `{0}`")]
    BadTerm(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finitely supported formal sum of words with nonzero integer
/// coefficients. The zero polynomial is the empty sum.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Word, BigInt>,
}

/// The deg-lex-maximal monomial of a polynomial together with its coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingTerm {
    pub coefficient: BigInt,
    pub monomial: Word,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::monomial(Word::empty())
    }

    pub fn monomial(word: Word) -> Self {
        Polynomial::term(word, BigInt::one())
    }

    pub fn term(word: Word, coefficient: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let coefficient = coefficient.into();
        if !coefficient.is_zero() {
            terms.insert(word, coefficient);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coefficient(&self, word: &Word) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, word: Word, coefficient: BigInt) {
        use std::collections::btree_map::Entry;
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    /// `left · self · right` with words acting by concatenation.
    pub fn conjugate_words(&self, left: &Word, right: &Word) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }

    pub fn leading_term(&self, alphabet: &Alphabet) -> Result<LeadingTerm, PolyError> {
        let monomial = self
            .terms
            .keys()
            .max_by(|u, v| alphabet.cmp_words(u, v))
            .ok_or(PolyError::ZeroPolynomial)?;
        Ok(LeadingTerm {
            coefficient: self.terms[monomial].clone(),
            monomial: monomial.clone(),
        })
    }

    pub fn is_monic(&self, alphabet: &Alphabet) -> Result<bool, PolyError> {
        Ok(self.leading_term(alphabet)?.coefficient.is_one())
    }

    /// Support in descending deg-lex order under the given alphabet.
    pub fn ordered_support(&self, alphabet: &Alphabet) -> Vec<&Word> {
        let mut words: Vec<&Word> = self.terms.keys().collect();
        words.sort_by(|u, v| alphabet.cmp_words(v, u));
        words
    }

    /// Canonical rendering: terms in descending deg-lex order, `k*WORD` for
    /// |k| > 1, bare words for |k| = 1, `1` for the empty word, `0` for the
    /// zero polynomial.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, word) in self.ordered_support(alphabet).into_iter().enumerate() {
            let coefficient = &self.terms[word];
            let magnitude = coefficient.abs();
            if i == 0 {
                if coefficient.is_negative() {
                    out.push('-');
                }
            } else if coefficient.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&alphabet.display_word(word));
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (word, coefficient) in other.terms() {
            out.add_term(word.clone(), coefficient.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (word, coefficient) in other.terms() {
            out.add_term(word.clone(), -coefficient.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    /// Distributive noncommutative product; monomials concatenate.
    fn mul(self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

/// Parse a polynomial literal: `0`, or terms of the form `[k*]WORD` joined by
/// `+`/`-`. A `-` directly after `^` belongs to a power, not a term split.
pub fn parse_polynomial(alphabet: &Alphabet, input: &str) -> Result<Polynomial, PolyError> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(PolyError::BadTerm(input.to_string()));
    }
    if trimmed == "0" {
        return Ok(Polynomial::zero());
    }
    let mut out = Polynomial::zero();
    let mut term = String::new();
    let mut sign = BigInt::one();
    let mut pending_sign = BigInt::one();
    let mut prev_meaningful = None::<char>;
    let flush = |term: &mut String, sign: &BigInt, out: &mut Polynomial| -> Result<(), PolyError> {
        let body = term.trim();
        if body.is_empty() {
            return Err(PolyError::BadTerm(input.to_string()));
        }
        let (coefficient, word_text) = match body.split_once('*') {
            Some((k, rest)) => {
                let k: BigInt = k
                    .trim()
                    .parse()
                    .map_err(|_| PolyError::BadTerm(body.to_string()))?;
                (k, rest)
            }
            None => (BigInt::one(), body),
        };
        let word = alphabet.parse_word(word_text)?;
        out.add_term(word, sign * coefficient);
        term.clear();
        Ok(())
    };
    for c in trimmed.chars() {
        let splits_term = (c == '+' || c == '-') && prev_meaningful != Some('^');
        if splits_term {
            if term.trim().is_empty() && prev_meaningful.is_none() {
                // leading sign of the first term
                if c == '-' {
                    pending_sign = -BigInt::one();
                }
            } else {
                flush(&mut term, &sign, &mut out)?;
                pending_sign = if c == '-' { -BigInt::one() } else { BigInt::one() };
            }
            prev_meaningful = None;
            continue;
        }
        if term.trim().is_empty() {
            sign = pending_sign.clone();
        }
        term.push(c);
        if !c.is_whitespace() {
            prev_meaningful = Some(c);
        }
    }
    flush(&mut term, &sign, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["x", "y"]).unwrap()
    }

    fn p(a: &Alphabet, s: &str) -> Polynomial {
        parse_polynomial(a, s).unwrap()
    }

    #[test]
    fn add_cancels_and_doubles() {
        let a = ab();
        assert_eq!(&p(&a, "x + y") + &p(&a, "x - y"), p(&a, "2*x"));
        let q = p(&a, "x^2 - y x");
        assert_eq!(&q + &Polynomial::zero(), q);
        assert_eq!(&p(&a, "x^2 - y^2") + &p(&a, "y^2 - x^2"), Polynomial::zero());
    }

    #[test]
    fn mul_is_noncommutative() {
        let a = ab();
        let xy = &p(&a, "x") * &p(&a, "y");
        let yx = &p(&a, "y") * &p(&a, "x");
        assert_eq!(xy, p(&a, "x y"));
        assert_eq!(yx, p(&a, "y x"));
        assert_ne!(xy, yx);
    }

    #[test]
    fn mul_expands_term_by_term() {
        let a = ab();
        assert_eq!(&p(&a, "1 + y x") * &p(&a, "y"), p(&a, "y + y x y"));
    }

    #[test]
    fn mul_applies_no_relations() {
        let a = Alphabet::new(vec!["g"]).unwrap();
        let product = &parse_polynomial(&a, "1 - g").unwrap() * &parse_polynomial(&a, "1 + g").unwrap();
        assert_eq!(product, parse_polynomial(&a, "1 - g^2").unwrap());
    }

    #[test]
    fn leading_term_examples() {
        let a = ab();
        let lt = p(&a, "x^2 - y^2").leading_term(&a).unwrap();
        assert_eq!(lt.coefficient, BigInt::from(1));
        assert_eq!(lt.monomial, a.parse_word("x^2").unwrap());

        let lt = p(&a, "3*x y").leading_term(&a).unwrap();
        assert_eq!(lt.coefficient, BigInt::from(3));
        assert_eq!(lt.monomial, a.parse_word("x y").unwrap());

        let lt = p(&a, "x y^2 - y^2 x").leading_term(&a).unwrap();
        assert_eq!(lt.coefficient, BigInt::from(1));
        assert_eq!(lt.monomial, a.parse_word("x y^2").unwrap());
    }

    #[test]
    fn leading_term_of_zero_fails() {
        let a = ab();
        assert_eq!(
            Polynomial::zero().leading_term(&a),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn monicity() {
        let a = ab();
        assert!(p(&a, "x^2 - y^2").is_monic(&a).unwrap());
        assert!(!p(&a, "2*x - y").is_monic(&a).unwrap());
        assert!(!p(&a, "-x + y").is_monic(&a).unwrap());
    }

    #[test]
    fn display_round_trips() {
        let a = ab();
        for s in ["0", "1", "x^2 - y^2", "1 + y x y", "-x + y", "2*x y - 3*1", "x^-2 + y"] {
            let poly = p(&a, s);
            let shown = poly.display(&a);
            assert_eq!(p(&a, &shown), poly, "round trip of {s} via {shown}");
        }
    }

    #[test]
    fn display_orders_descending() {
        let a = ab();
        assert_eq!(p(&a, "y + x^2 + 1").display(&a), "x^2 + y + 1");
    }

    #[test]
    fn parse_minus_inside_power_is_not_a_split() {
        let a = ab();
        let poly = p(&a, "x^-1 - y");
        assert_eq!(poly.coefficient(&a.parse_word("x^-1").unwrap()), BigInt::one());
        assert_eq!(poly.coefficient(&a.parse_word("y").unwrap()), BigInt::from(-1));
    }
}
