//! Property suites for words, polynomials, and the Fox calculus.

mod common;

use common::{abc, free_group_rules, polynomials, words};
use foxdiv::fox::{fox_derivative, fox_of_relator, fox_power};
use foxdiv::gsbasis::{shirshov_complete, CompletionLimits, RewriteSystem};
use foxdiv::ncpoly::Polynomial;
use foxdiv::words::{
    find_intersection_overlaps, longest_common_prefix, Letter, Word,
};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    /// Substituting the smaller of two words into any fixed context never
    /// makes the result larger: deg-lex is a monomial order.
    #[test]
    fn deglex_is_monomial_order(
        u in words(3, true, 5),
        v in words(3, true, 5),
        left in words(3, true, 4),
        right in words(3, true, 4),
    ) {
        let a = abc();
        let (small, large) = match a.cmp_words(&u, &v) {
            std::cmp::Ordering::Greater => (v, u),
            _ => (u, v),
        };
        let in_small = left.concat(&small).concat(&right);
        let in_large = left.concat(&large).concat(&right);
        prop_assert_ne!(a.cmp_words(&in_small, &in_large), std::cmp::Ordering::Greater);
    }

    #[test]
    fn free_reduce_is_idempotent_congruence(
        u in words(3, true, 8),
        v in words(3, true, 8),
    ) {
        let reduced = u.free_reduce();
        prop_assert_eq!(reduced.free_reduce(), reduced.clone());
        prop_assert!(reduced.is_freely_reduced());
        // length parity is preserved
        prop_assert_eq!(reduced.len() % 2, u.len() % 2);
        prop_assert_eq!(
            u.concat(&v).free_reduce(),
            u.free_reduce().concat(&v.free_reduce()).free_reduce()
        );
    }

    /// Every reported overlap satisfies u·b = a·v letter-exactly, and the
    /// report agrees with a brute scan over all split points.
    #[test]
    fn overlaps_match_brute_scan(u in words(2, false, 4), v in words(2, false, 4)) {
        let found = find_intersection_overlaps(&u, &v);
        for overlap in &found {
            prop_assert_eq!(u.concat(&overlap.right), overlap.left.concat(&v));
            prop_assert_eq!(&overlap.word, &u.concat(&overlap.right));
            prop_assert!(overlap.left.len() < u.len());
            prop_assert!(overlap.right.len() < v.len());
        }
        let mut brute = 0;
        if !u.is_empty() && !v.is_empty() {
            for k in 1..u.len().min(v.len()) {
                if u.suffix_from(u.len() - k) == v.prefix(k) {
                    brute += 1;
                }
            }
        }
        prop_assert_eq!(found.len(), brute);
    }

    #[test]
    fn lcp_is_maximal(u in words(3, true, 6), v in words(3, true, 6)) {
        let p = longest_common_prefix(&u, &v);
        prop_assert!(u.starts_with(&p));
        prop_assert!(v.starts_with(&p));
        if p.len() < u.len().min(v.len()) {
            prop_assert_ne!(u.letters()[p.len()], v.letters()[p.len()]);
        }
    }

    #[test]
    fn ring_axioms(
        p in polynomials(2, true, 4, 3),
        q in polynomials(2, true, 4, 3),
        r in polynomials(2, true, 4, 3),
    ) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p + &Polynomial::zero(), p.clone());
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
        prop_assert_eq!(&Polynomial::one() * &p, p.clone());
        prop_assert_eq!(&(&p - &p) * &q, Polynomial::zero());
    }

    /// Over the integers the leading monomial of a product is the product of
    /// the leading monomials.
    #[test]
    fn leading_term_is_multiplicative(
        p in polynomials(2, true, 4, 3),
        q in polynomials(2, true, 4, 3),
    ) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let a = abc();
        let lt_p = p.leading_term(&a).unwrap();
        let lt_q = q.leading_term(&a).unwrap();
        let lt_pq = (&p * &q).leading_term(&a).unwrap();
        prop_assert_eq!(lt_pq.monomial, lt_p.monomial.concat(&lt_q.monomial));
        prop_assert_eq!(lt_pq.coefficient, lt_p.coefficient * lt_q.coefficient);
    }

    /// The left product rule, quantified over random word pairs.
    #[test]
    fn fox_product_rule(u in words(3, true, 8), v in words(3, true, 8), x in 0u32..3) {
        let direct = fox_derivative(&u.concat(&v), x);
        let composed = &fox_derivative(&u, x)
            + &(&Polynomial::monomial(u.clone()) * &fox_derivative(&v, x));
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn fox_power_matches_derivative(n in -6i64..=6) {
        prop_assert_eq!(fox_power(n, 0), fox_derivative(&Word::power(0, n), 0));
    }

    /// Derivatives of x-segmented words telescope into prefix-weighted
    /// geometric sums.
    #[test]
    fn fox_telescopes_over_segments(
        segments in prop::collection::vec(
            (words(2, true, 2), (-3i64..=3).prop_filter("nonzero", |n| *n != 0)),
            1..=3,
        ),
        tail in words(2, true, 2),
    ) {
        // generators 0..2 are y-letters here; x is generator 2
        let x = 2u32;
        let mut word = Word::empty();
        let mut expected = Polynomial::zero();
        for (segment, power) in &segments {
            let prefix = word.concat(segment);
            expected = &expected + &(&Polynomial::monomial(prefix.clone()) * &fox_power(*power, x));
            word = prefix.concat(&Word::power(x, *power));
        }
        word = word.concat(&tail);
        prop_assert_eq!(fox_derivative(&word, x), expected);
    }

    #[test]
    fn fox_of_relator_is_difference(
        r1 in words(3, true, 6),
        r2 in words(3, true, 6),
        x in 0u32..3,
    ) {
        let expected = &fox_derivative(&r1, x) - &fox_derivative(&r2, x);
        prop_assert_eq!(fox_of_relator(&r1, &r2, x), expected);
    }
}

/// The fundamental identity: `sum_x d(w)/dx (x - 1) = w - 1` modulo the
/// free-group cancellation rules, checked on freely reduced words.
#[test]
fn fox_fundamental_identity() {
    let a = abc();
    let raw = RewriteSystem::new(a.clone(), free_group_rules(&a)).unwrap();
    let sys = shirshov_complete(&raw, &CompletionLimits::default()).unwrap();
    let config = proptest::test_runner::Config { cases: 500, ..Default::default() };
    let mut runner = proptest::test_runner::TestRunner::new(config);
    runner
        .run(&words(3, true, 8), |w| {
            let w = w.free_reduce();
            let mut total = Polynomial::zero();
            for x in 0..3u32 {
                let step = &Polynomial::monomial(Word::single(Letter::positive(x)))
                    - &Polynomial::one();
                total = &total + &(&fox_derivative(&w, x) * &step);
            }
            let expected = &Polynomial::monomial(w) - &Polynomial::one();
            assert!(sys.is_trivial_mod(&(&total - &expected)));
            Ok(())
        })
        .unwrap();
}

/// Power words differentiate to the closed-form geometric sums with the
/// expected signs on each side of zero.
#[test]
fn fox_power_signs() {
    let one = Polynomial::one();
    assert_eq!(fox_power(1, 0), one);
    let mut rising = Polynomial::zero();
    for k in 0..5 {
        rising.add_term(Word::power(0, k), BigInt::from(1));
    }
    assert_eq!(fox_power(5, 0), rising);
    let mut falling = Polynomial::zero();
    for k in 1..=4 {
        falling.add_term(Word::power(0, -k), BigInt::from(-1));
    }
    assert_eq!(fox_power(-4, 0), falling);
}
