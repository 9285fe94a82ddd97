//! Shared strategies and oracles for the property suites.

use foxdiv::ncpoly::Polynomial;
use foxdiv::words::{Alphabet, Letter, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn letters(generators: u32, with_inverses: bool) -> BoxedStrategy<Letter> {
    if with_inverses {
        (0..generators, any::<bool>())
            .prop_map(|(g, inv)| Letter { generator: g, inverse: inv })
            .boxed()
    } else {
        (0..generators).prop_map(Letter::positive).boxed()
    }
}

pub fn words(generators: u32, with_inverses: bool, max_len: usize) -> BoxedStrategy<Word> {
    prop::collection::vec(letters(generators, with_inverses), 0..=max_len)
        .prop_map(Word::from_letters)
        .boxed()
}

pub fn polynomials(
    generators: u32,
    with_inverses: bool,
    max_terms: usize,
    max_word: usize,
) -> BoxedStrategy<Polynomial> {
    prop::collection::vec(
        (words(generators, with_inverses, max_word), -3i64..=3),
        0..=max_terms,
    )
    .prop_map(|terms| {
        let mut poly = Polynomial::zero();
        for (word, coefficient) in terms {
            poly.add_term(word, BigInt::from(coefficient));
        }
        poly
    })
    .boxed()
}

/// Three-generator group alphabet used by the calculus properties.
pub fn abc() -> Alphabet {
    Alphabet::new(vec!["a", "b", "c"]).unwrap()
}

/// The inverse-cancellation rules for `n` generators, as raw monic rules.
pub fn free_group_rules(alphabet: &Alphabet) -> Vec<Polynomial> {
    let mut rules = Vec::new();
    for g in 0..alphabet.generator_count() as u32 {
        let pos = Word::single(Letter::positive(g));
        let neg = Word::single(Letter::negative(g));
        for (u, v) in [(&pos, &neg), (&neg, &pos)] {
            let rule = &Polynomial::monomial(u.concat(v)) - &Polynomial::one();
            rules.push(rule);
        }
    }
    rules
}
