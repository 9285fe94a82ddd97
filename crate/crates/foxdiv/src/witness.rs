//! Kernel-vector verification, bounded kernel search, and zero-divisor
//! certificate production.
//!
//! A witness is a relator-indexed vector `beta` in the kernel of `d1`
//! together with the common-divisor factorization `d(r_j)/dx = D_j f`: the
//! projected elements `A = sum_j beta_j D_j` and `B = f` then multiply to
//! zero in the group ring. The search is exhaustive within its bounds and
//! enumerates candidates in a fixed order, so results are deterministic; the
//! `parallel` feature only partitions the candidate scan.

use num_bigint::BigInt;
use serde_json::json;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::family::FactorizationReport;
use crate::groupring::{
    ring_mul, ChainComplex, ChainVector, GroupRing, GroupRingElement, GroupRingError,
    Presentation, PresentationKind, RingBuildError,
};
use crate::gsbasis::CompletionLimits;
use crate::ncpoly::{parse_polynomial, Polynomial};
use crate::words::{Alphabet, Word};

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("beta is not in the kernel of d1")]
    BetaNotInKernel { image: Vec<Polynomial> },
    #[error("beta has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("factorization report has {got} cofactors, expected {expected}")]
    ReportMismatch { expected: usize, got: usize },
    #[error("torsion order must be at least 2, got {0}")]
    TorsionOrderTooSmall(i64),
    #[error(transparent)]
    Ring(#[from] GroupRingError),
    #[error(transparent)]
    Build(#[from] RingBuildError),
}

/// A checked zero-divisor certificate.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub beta: ChainVector,
    pub d: Vec<Polynomial>,
    pub f: Polynomial,
    pub a: GroupRingElement,
    pub b: GroupRingElement,
    pub product_zero: bool,
    pub nontrivial: bool,
    pub fingerprint: String,
}

impl WitnessReport {
    pub fn report_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (j, entry) in self.beta.entries().iter().enumerate() {
            out.push_str(&format!("beta[{}]: {}\n", j + 1, entry.display()));
        }
        for (j, d) in self.d.iter().enumerate() {
            out.push_str(&format!("D[{}]: {}\n", j + 1, d.display(alphabet)));
        }
        out.push_str(&format!("f: {}\n", self.f.display(alphabet)));
        out.push_str(&format!("A: {}\n", self.a.display()));
        out.push_str(&format!("B: {}\n", self.b.display()));
        out.push_str(&format!("product_zero: {}\n", self.product_zero));
        out.push_str(&format!("nontrivial: {}\n", self.nontrivial));
        out.push_str(&format!("presentation: {}\n", self.fingerprint));
        out
    }

    pub fn report_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        json!({
            "beta": self.beta.entries().iter().map(|e| e.display()).collect::<Vec<_>>(),
            "D": self.d.iter().map(|d| d.display(alphabet)).collect::<Vec<_>>(),
            "f": self.f.display(alphabet),
            "A": self.a.display(),
            "B": self.b.display(),
            "product_zero": self.product_zero,
            "nontrivial": self.nontrivial,
            "presentation_fingerprint": self.fingerprint,
        })
    }
}

/// Check `beta` against the kernel of `d1` and, if it lies there, assemble
/// the certificate `A = sum_j beta_j D_j`, `B = f`, both in normal form.
/// A vector outside the kernel is an error carrying the nonzero image.
pub fn verify_witness(
    complex: &ChainComplex,
    beta: &ChainVector,
    report: &FactorizationReport,
) -> Result<WitnessReport, WitnessError> {
    let m = complex.presentation().relator_count();
    if beta.len() != m {
        return Err(WitnessError::LengthMismatch { expected: m, got: beta.len() });
    }
    if report.d.len() != m {
        return Err(WitnessError::ReportMismatch { expected: m, got: report.d.len() });
    }
    let image = complex.d1(beta)?;
    if !image.is_zero() {
        return Err(WitnessError::BetaNotInKernel {
            image: image.entries().iter().map(|e| e.value().clone()).collect(),
        });
    }
    let ring = complex.ring();
    let mut a_value = Polynomial::zero();
    for (entry, d) in beta.entries().iter().zip(&report.d) {
        a_value = &a_value + &(entry.value() * d);
    }
    let a = ring.element(&a_value);
    let b = ring.element(&report.f);
    let product_zero = ring_mul(&a, &b)?.is_zero();
    let nontrivial = !a.is_zero() && !b.is_zero();
    Ok(WitnessReport {
        beta: beta.clone(),
        d: report.d.clone(),
        f: report.f.clone(),
        a,
        b,
        product_zero,
        nontrivial,
        fingerprint: complex.presentation().fingerprint(),
    })
}

/// All nonzero relator-indexed vectors supported on irreducible words of
/// length at most `support_len`, with coefficients in
/// `[-coeff_bound, coeff_bound]`, lying in the kernel of `d1`. Candidates are
/// enumerated as a fixed-radix counter over the coefficient slots, so the
/// result order is deterministic.
pub fn search_kernel(
    complex: &ChainComplex,
    support_len: usize,
    coeff_bound: u32,
) -> Vec<ChainVector> {
    #[cfg(feature = "parallel")]
    {
        search_kernel_par(complex, support_len, coeff_bound)
    }
    #[cfg(not(feature = "parallel"))]
    {
        search_kernel_seq(complex, support_len, coeff_bound)
    }
}

struct SearchSpace {
    support: Vec<Word>,
    relators: usize,
    radix: u128,
    total: u128,
}

fn search_space(complex: &ChainComplex, support_len: usize, coeff_bound: u32) -> SearchSpace {
    let support = complex.ring().system().irr_enumerate(support_len);
    let relators = complex.presentation().relator_count();
    let radix = (2 * coeff_bound + 1) as u128;
    let slots = (support.len() * relators) as u32;
    let total = if relators == 0 { 0 } else { radix.pow(slots) };
    SearchSpace { support, relators, radix, total }
}

/// Decode candidate `index` into a relator-indexed vector of polynomials.
fn decode_candidate(space: &SearchSpace, coeff_bound: u32, index: u128) -> Vec<Polynomial> {
    let mut digits = index;
    let mut out = Vec::with_capacity(space.relators);
    for _ in 0..space.relators {
        let mut poly = Polynomial::zero();
        for word in &space.support {
            let digit = (digits % space.radix) as i64;
            digits /= space.radix;
            let coefficient = digit - coeff_bound as i64;
            poly.add_term(word.clone(), BigInt::from(coefficient));
        }
        out.push(poly);
    }
    out
}

fn kernel_candidate(
    complex: &ChainComplex,
    space: &SearchSpace,
    coeff_bound: u32,
    index: u128,
) -> Option<ChainVector> {
    let polys = decode_candidate(space, coeff_bound, index);
    if polys.iter().all(Polynomial::is_zero) {
        return None;
    }
    let beta = ChainVector::from_polynomials(complex.ring(), &polys);
    match complex.is_in_kernel_d1(&beta) {
        Ok(true) => Some(beta),
        _ => None,
    }
}

pub fn search_kernel_seq(
    complex: &ChainComplex,
    support_len: usize,
    coeff_bound: u32,
) -> Vec<ChainVector> {
    let space = search_space(complex, support_len, coeff_bound);
    (0..space.total)
        .filter_map(|index| kernel_candidate(complex, &space, coeff_bound, index))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn search_kernel_par(
    complex: &ChainComplex,
    support_len: usize,
    coeff_bound: u32,
) -> Vec<ChainVector> {
    let space = search_space(complex, support_len, coeff_bound);
    if space.total == 0 {
        return Vec::new();
    }
    let mut found: Vec<(u128, ChainVector)> = (0..space.total)
        .into_par_iter()
        .filter_map(|index| {
            kernel_candidate(complex, &space, coeff_bound, index).map(|beta| (index, beta))
        })
        .collect();
    // restore the sequential enumeration order
    found.sort_by_key(|(index, _)| *index);
    found.into_iter().map(|(_, beta)| beta).collect()
}

/// Build the cyclic group of order `n`, complete it, and verify the zero
/// divisor `(1 - g) · (1 + g + ... + g^(n-1)) = 0` with both factors nonzero.
pub fn torsion_identity_check(n: i64) -> Result<bool, WitnessError> {
    if n < 2 {
        return Err(WitnessError::TorsionOrderTooSmall(n));
    }
    let alphabet = Alphabet::new(vec!["g"]).expect("valid name");
    let relator = (Word::power(0, n), Word::empty());
    let presentation = Presentation::new(alphabet, vec![relator], PresentationKind::Group);
    let ring = GroupRing::from_presentation(&presentation, &CompletionLimits::default())?;
    let a = ring.alphabet();
    let left = ring.element(&parse_polynomial(a, "1 - g").expect("literal"));
    let mut sum = Polynomial::zero();
    for k in 0..n {
        sum = &sum + &Polynomial::monomial(Word::power(0, k));
    }
    let right = ring.element(&sum);
    Ok(!left.is_zero() && !right.is_zero() && ring_mul(&left, &right)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::factor_derivatives;
    use std::sync::Arc;

    fn z2() -> Presentation {
        Presentation::parse("group\ngenerators: x\norder: x^-1 x\nrelator: x^2 = 1\n").unwrap()
    }

    fn complex_of(p: &Presentation) -> ChainComplex {
        let ring = GroupRing::from_presentation(p, &CompletionLimits::default()).unwrap();
        ChainComplex::new(p, Arc::clone(&ring))
    }

    fn z2_report(a: &Alphabet) -> FactorizationReport {
        FactorizationReport {
            f: parse_polynomial(a, "1 + x").unwrap(),
            d: vec![Polynomial::one()],
            exact: true,
        }
    }

    #[test]
    fn verify_witness_z2() {
        let p = z2();
        let complex = complex_of(&p);
        let a = complex.ring().alphabet().clone();
        let beta = ChainVector::from_polynomials(
            complex.ring(),
            &[parse_polynomial(&a, "1 - x").unwrap()],
        );
        let report = verify_witness(&complex, &beta, &z2_report(&a)).unwrap();
        // leading term first: 1 - x prints as -x + 1
        assert_eq!(report.a.display(), "-x + 1");
        assert_eq!(report.b.display(), "x + 1");
        assert_eq!(report.a.value(), &parse_polynomial(&a, "1 - x").unwrap());
        assert_eq!(report.b.value(), &parse_polynomial(&a, "1 + x").unwrap());
        assert!(report.product_zero);
        assert!(report.nontrivial);
    }

    #[test]
    fn verify_witness_zero_beta_is_trivial() {
        let p = z2();
        let complex = complex_of(&p);
        let a = complex.ring().alphabet().clone();
        let beta = ChainVector::from_polynomials(complex.ring(), &[Polynomial::zero()]);
        let report = verify_witness(&complex, &beta, &z2_report(&a)).unwrap();
        assert!(report.a.is_zero());
        assert!(report.product_zero);
        assert!(!report.nontrivial);
    }

    #[test]
    fn verify_witness_duplicated_relator_cancels() {
        let p = Presentation::parse(
            "group\ngenerators: x\norder: x^-1 x\nrelator: x^2 = 1\nrelator: x^2 = 1\n",
        )
        .unwrap();
        let complex = complex_of(&p);
        let a = complex.ring().alphabet().clone();
        let report = FactorizationReport {
            f: parse_polynomial(&a, "1 + x").unwrap(),
            d: vec![Polynomial::one(), Polynomial::one()],
            exact: true,
        };
        let beta = ChainVector::from_polynomials(
            complex.ring(),
            &[Polynomial::one(), &Polynomial::zero() - &Polynomial::one()],
        );
        let witness = verify_witness(&complex, &beta, &report).unwrap();
        assert!(witness.a.is_zero());
        assert!(!witness.nontrivial);
    }

    #[test]
    fn verify_witness_rejects_nonkernel_beta() {
        let p = z2();
        let complex = complex_of(&p);
        let a = complex.ring().alphabet().clone();
        let beta = ChainVector::from_polynomials(complex.ring(), &[Polynomial::one()]);
        let err = verify_witness(&complex, &beta, &z2_report(&a)).unwrap_err();
        assert!(matches!(err, WitnessError::BetaNotInKernel { .. }));
    }

    #[test]
    fn search_kernel_z2_finds_one_minus_x() {
        let p = z2();
        let complex = complex_of(&p);
        let a = complex.ring().alphabet().clone();
        let found = search_kernel(&complex, 1, 1);
        let target = ChainVector::from_polynomials(
            complex.ring(),
            &[parse_polynomial(&a, "1 - x").unwrap()],
        );
        let negated = ChainVector::from_polynomials(
            complex.ring(),
            &[parse_polynomial(&a, "-1 + x").unwrap()],
        );
        assert!(found.contains(&target));
        assert!(found.contains(&negated));
    }

    #[test]
    fn search_kernel_free_group_is_vacuous() {
        let p = Presentation::parse("group\ngenerators: x\n").unwrap();
        let complex = complex_of(&p);
        assert!(search_kernel(&complex, 2, 1).is_empty());
    }

    #[test]
    fn search_kernel_cyclic_three() {
        let p = Presentation::parse("group\ngenerators: g\nrelator: g^3 = 1\n").unwrap();
        let complex = complex_of(&p);
        let a = complex.ring().alphabet().clone();
        let found = search_kernel(&complex, 2, 1);
        let in_results = |s: &str| {
            let beta = ChainVector::from_polynomials(
                complex.ring(),
                &[parse_polynomial(&a, s).unwrap()],
            );
            found.contains(&beta)
        };
        assert!(in_results("1 - g"));
        // g - g^2 projects onto the normal forms g and g^-1
        assert!(in_results("g - g^2"));
    }

    #[test]
    fn search_results_verify() {
        let spec = crate::family::FamilySpec::parse(
            "family\ny-generators: 1\nw: y1\nrelator 1: u = 1, 1, y1 ; v = y1\n",
        )
        .unwrap();
        let p = spec.build().unwrap();
        let complex = complex_of(&p);
        let report = factor_derivatives(&spec).unwrap();
        for beta in search_kernel(&complex, 1, 1) {
            let witness = verify_witness(&complex, &beta, &report).unwrap();
            assert!(witness.product_zero);
        }
    }

    #[test]
    fn torsion_identity_small_orders() {
        for n in 2..=6 {
            assert!(torsion_identity_check(n).unwrap(), "order {n}");
        }
        assert!(matches!(
            torsion_identity_check(1),
            Err(WitnessError::TorsionOrderTooSmall(1))
        ));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_search_agree() {
        let p = Presentation::parse("group\ngenerators: g\nrelator: g^3 = 1\n").unwrap();
        let complex = complex_of(&p);
        assert_eq!(
            search_kernel_seq(&complex, 2, 1),
            search_kernel_par(&complex, 2, 1)
        );
    }
}
