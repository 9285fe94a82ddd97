//! Composition-Diamond machinery: intersection and inclusion compositions,
//! reduction modulo a monic set, Shirshov completion, and irreducible-word
//! enumeration.
//!
//! Completion processes pending compositions in waves. Each wave drains the
//! queue in ascending deg-lex order of the ambiguity word, pre-reduces every
//! composition against the rule set frozen at the start of the wave (this map
//! is pure and runs on rayon when the `parallel` feature is enabled), then
//! inserts surviving rules serially in queue order. The final rule set is
//! minimalized (no leading word contains another) and tail-reduced, which
//! makes the completed basis canonical for the ideal and the order.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::ncpoly::{Polynomial, PolyError};
use crate::words::{find_inclusions, find_intersection_overlaps, Alphabet, Word};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GsError {
    #[error("non_monic_obstruction: rule `{0}` has non-unit leading coefficient")]
    NonMonicObstruction(String),
    #[error("overlap equation violated")]
    OverlapEquationViolated,
    #[error("inclusion factorization violated")]
    FactorizationViolated,
    #[error("operation requires a completed system")]
    NotCompleted,
    #[error("completion limits must all be positive")]
    InvalidLimits,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionStatus {
    Raw,
    Completed,
    LimitExceeded,
}

impl CompletionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CompletionStatus::Raw => "raw",
            CompletionStatus::Completed => "completed",
            CompletionStatus::LimitExceeded => "limit_exceeded",
        }
    }
}

/// Work counters: `steps` counts single rewrite applications, `compositions`
/// counts processed ambiguities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CompletionStats {
    pub steps: u64,
    pub compositions: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_steps: u64,
    pub max_degree: usize,
}

impl CompletionLimits {
    pub fn new(max_rules: usize, max_steps: u64, max_degree: usize) -> Result<Self, GsError> {
        if max_rules == 0 || max_steps == 0 || max_degree == 0 {
            return Err(GsError::InvalidLimits);
        }
        Ok(CompletionLimits { max_rules, max_steps, max_degree })
    }
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits { max_rules: 500, max_steps: 100_000, max_degree: 24 }
    }
}

/// One `kappa · a · s · b` summand of an ideal-membership certificate, where
/// `s` is the original rule with index `origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm {
    pub coefficient: BigInt,
    pub left: Word,
    pub origin: usize,
    pub right: Word,
}

pub type Certificate = Vec<CertTerm>;

fn shift_cert(cert: &Certificate, coefficient: &BigInt, left: &Word, right: &Word) -> Certificate {
    cert.iter()
        .map(|t| CertTerm {
            coefficient: coefficient * &t.coefficient,
            left: left.concat(&t.left),
            origin: t.origin,
            right: t.right.concat(right),
        })
        .collect()
}

/// Evaluate a certificate against the original rules it refers to.
pub fn expand_certificate(cert: &Certificate, originals: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero();
    for term in cert {
        let piece = originals[term.origin]
            .conjugate_words(&term.left, &term.right)
            .scale(&term.coefficient);
        out = &out + &piece;
    }
    out
}

/// A monic rule set over an alphabet, with completion status and counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<Polynomial>,
    leading: Vec<Word>,
    certificates: Vec<Certificate>,
    originals: Vec<Polynomial>,
    status: CompletionStatus,
    stats: CompletionStats,
}

impl RewriteSystem {
    /// Build a raw system. Input rules are normalized: zero rules are
    /// dropped, a leading coefficient of -1 is negated away, and any other
    /// non-unit leading coefficient is a `non_monic_obstruction` error.
    pub fn new(alphabet: Alphabet, rules: Vec<Polynomial>) -> Result<Self, GsError> {
        let mut kept = Vec::new();
        let mut leading = Vec::new();
        for rule in rules {
            if rule.is_zero() {
                continue;
            }
            let lt = rule.leading_term(&alphabet)?;
            let rule = if lt.coefficient.is_one() {
                rule
            } else if (-&lt.coefficient).is_one() {
                -&rule
            } else {
                return Err(GsError::NonMonicObstruction(rule.display(&alphabet)));
            };
            leading.push(lt.monomial);
            kept.push(rule);
        }
        let certificates = (0..kept.len())
            .map(|i| {
                vec![CertTerm {
                    coefficient: BigInt::one(),
                    left: Word::empty(),
                    origin: i,
                    right: Word::empty(),
                }]
            })
            .collect();
        Ok(RewriteSystem {
            alphabet,
            originals: kept.clone(),
            rules: kept,
            leading,
            certificates,
            status: CompletionStatus::Raw,
            stats: CompletionStats::default(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Polynomial] {
        &self.rules
    }

    pub fn leading_monomials(&self) -> &[Word] {
        &self.leading
    }

    /// Per-rule expressions in terms of the normalized input rules.
    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    pub fn originals(&self) -> &[Polynomial] {
        &self.originals
    }

    pub fn status(&self) -> CompletionStatus {
        self.status
    }

    pub fn stats(&self) -> CompletionStats {
        self.stats
    }

    pub fn is_completed(&self) -> bool {
        self.status == CompletionStatus::Completed
    }

    /// Normal form of `f` modulo the rule set: no monomial of the result
    /// contains any leading word as a subword. Deterministic strategy: always
    /// rewrite the deg-lex-greatest reducible monomial, with the
    /// lowest-indexed rule at its leftmost occurrence.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        reduce_full(f, &self.rules, &self.leading, &self.alphabet).poly
    }

    pub fn is_trivial_mod(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Ideal membership, decided by reduction. Requires a completed system.
    pub fn membership(&self, f: &Polynomial) -> Result<bool, GsError> {
        if !self.is_completed() {
            return Err(GsError::NotCompleted);
        }
        Ok(self.is_trivial_mod(f))
    }

    /// All words of length at most `max_len` avoiding every leading word,
    /// by increasing length and descending deg-lex within a length.
    pub fn irr_enumerate(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        if self.leading.iter().any(|lt| lt.is_empty()) {
            return out;
        }
        let mut level = vec![Word::empty()];
        out.push(Word::empty());
        for _ in 1..=max_len {
            let mut next = Vec::new();
            for word in &level {
                for &letter in self.alphabet.letters_by_rank() {
                    let candidate = word.concat(&Word::single(letter));
                    if self.leading.iter().all(|lt| !candidate.ends_with(lt)) {
                        next.push(candidate);
                    }
                }
            }
            out.extend(next.iter().cloned());
            level = next;
            if level.is_empty() {
                break;
            }
        }
        out
    }

    /// Check that every composition of the current rules reduces to zero.
    pub fn verify_compositions_trivial(&self) -> bool {
        all_compositions(&self.leading)
            .into_iter()
            .all(|site| self.is_trivial_mod(&composition_poly(&self.rules, &site)))
    }

    pub fn report_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("status: {}\n", self.status.as_str()));
        out.push_str(&format!("rules: {}\n", self.rules.len()));
        for (i, rule) in self.rules.iter().enumerate() {
            out.push_str(&format!("rule {}: {}\n", i + 1, rule.display(&self.alphabet)));
        }
        out.push_str(&format!("steps: {}\n", self.stats.steps));
        out.push_str(&format!("compositions: {}\n", self.stats.compositions));
        out
    }

    pub fn report_json(&self) -> serde_json::Value {
        json!({
            "status": self.status.as_str(),
            "rules": self.rules.iter().map(|r| r.display(&self.alphabet)).collect::<Vec<_>>(),
            "steps": self.stats.steps,
            "compositions": self.stats.compositions,
        })
    }
}

/// The intersection composition `(phi, psi)_w = phi·b - a·psi` for
/// `w = LT(phi)·b = a·LT(psi)` with the proper-overlap degree condition.
pub fn intersection_composition(
    alphabet: &Alphabet,
    phi: &Polynomial,
    psi: &Polynomial,
    a: &Word,
    b: &Word,
) -> Result<(Word, Polynomial), GsError> {
    let lt_phi = phi.leading_term(alphabet)?;
    let lt_psi = psi.leading_term(alphabet)?;
    if !lt_phi.coefficient.is_one() || !lt_psi.coefficient.is_one() {
        return Err(GsError::NonMonicObstruction("composition of non-monic rule".into()));
    }
    let w = lt_phi.monomial.concat(b);
    if w != a.concat(&lt_psi.monomial) {
        return Err(GsError::OverlapEquationViolated);
    }
    if lt_phi.monomial.len() + lt_psi.monomial.len() <= w.len() {
        return Err(GsError::OverlapEquationViolated);
    }
    let c = &phi.conjugate_words(&Word::empty(), b) - &psi.conjugate_words(a, &Word::empty());
    Ok((w, c))
}

/// The inclusion composition `(phi, psi)_w = phi - a·psi·b` for
/// `w = LT(phi) = a·LT(psi)·b`.
pub fn inclusion_composition(
    alphabet: &Alphabet,
    phi: &Polynomial,
    psi: &Polynomial,
    a: &Word,
    b: &Word,
) -> Result<(Word, Polynomial), GsError> {
    let lt_phi = phi.leading_term(alphabet)?;
    let lt_psi = psi.leading_term(alphabet)?;
    if !lt_phi.coefficient.is_one() || !lt_psi.coefficient.is_one() {
        return Err(GsError::NonMonicObstruction("composition of non-monic rule".into()));
    }
    if lt_phi.monomial != a.concat(&lt_psi.monomial).concat(b) {
        return Err(GsError::FactorizationViolated);
    }
    let c = phi - &psi.conjugate_words(a, b);
    Ok((lt_phi.monomial, c))
}

struct Reduction {
    poly: Polynomial,
    steps: u64,
    delta: Certificate,
}

fn find_redex(monomial: &Word, leading: &[Word]) -> Option<(usize, Word, Word)> {
    for (idx, lt) in leading.iter().enumerate() {
        if lt.len() > monomial.len() {
            continue;
        }
        let occurrences = find_inclusions(monomial, lt);
        if let Some(first) = occurrences.first() {
            return Some((idx, first.left.clone(), first.right.clone()));
        }
    }
    None
}

/// Full reduction with step counting and a certificate of the subtracted
/// part: `input = output + sum(delta)` where delta terms refer to rule
/// indices in `rules`.
fn reduce_full(
    f: &Polynomial,
    rules: &[Polynomial],
    leading: &[Word],
    alphabet: &Alphabet,
) -> Reduction {
    let mut poly = f.clone();
    let mut steps = 0u64;
    let mut delta: Certificate = Vec::new();
    loop {
        let target = poly
            .support()
            .filter_map(|m| find_redex(m, leading).map(|(i, a, b)| (m.clone(), i, a, b)))
            .max_by(|x, y| alphabet.cmp_words(&x.0, &y.0));
        let Some((monomial, idx, a, b)) = target else { break };
        let coefficient = poly.coefficient(&monomial);
        let subtrahend = rules[idx].conjugate_words(&a, &b).scale(&coefficient);
        poly = &poly - &subtrahend;
        delta.push(CertTerm { coefficient, left: a, origin: idx, right: b });
        steps += 1;
    }
    Reduction { poly, steps, delta }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum CompKind {
    Intersection,
    Inclusion,
}

/// A pending composition, ordered by (ambiguity word, rule pair, kind, site).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pending {
    word_key: (usize, Vec<u32>),
    i: usize,
    j: usize,
    kind: CompKind,
    left: Word,
    right: Word,
}

fn rank_key(alphabet: &Alphabet, word: &Word) -> (usize, Vec<u32>) {
    let ranks = word
        .letters()
        .iter()
        .map(|&l| {
            let pos = alphabet
                .letters_by_rank()
                .iter()
                .position(|&k| k == l)
                .expect("letter in alphabet");
            pos as u32
        })
        .collect();
    (word.len(), ranks)
}

fn composition_sites(leading: &[Word], i: usize, j: usize) -> Vec<(CompKind, Word, Word, Word)> {
    let mut out = Vec::new();
    let lt_i = &leading[i];
    let lt_j = &leading[j];
    for overlap in find_intersection_overlaps(lt_i, lt_j) {
        out.push((CompKind::Intersection, overlap.left, overlap.right, overlap.word));
    }
    for inclusion in find_inclusions(lt_i, lt_j) {
        if i == j && inclusion.left.is_empty() && inclusion.right.is_empty() {
            continue;
        }
        out.push((CompKind::Inclusion, inclusion.left, inclusion.right, lt_i.clone()));
    }
    out
}

fn all_compositions(leading: &[Word]) -> Vec<(usize, usize, CompKind, Word, Word)> {
    let mut out = Vec::new();
    for i in 0..leading.len() {
        for j in 0..leading.len() {
            for (kind, left, right, _) in composition_sites(leading, i, j) {
                out.push((i, j, kind, left, right));
            }
        }
    }
    out
}

fn composition_poly(
    rules: &[Polynomial],
    site: &(usize, usize, CompKind, Word, Word),
) -> Polynomial {
    let (i, j, kind, left, right) = site;
    match kind {
        CompKind::Intersection => {
            &rules[*i].conjugate_words(&Word::empty(), right)
                - &rules[*j].conjugate_words(left, &Word::empty())
        }
        CompKind::Inclusion => &rules[*i] - &rules[*j].conjugate_words(left, right),
    }
}

struct Completion {
    rules: Vec<Polynomial>,
    leading: Vec<Word>,
    certificates: Vec<Certificate>,
    pending: std::collections::BTreeSet<Pending>,
    stats: CompletionStats,
}

impl Completion {
    fn enqueue_pair(&mut self, alphabet: &Alphabet, i: usize, j: usize) {
        for (kind, left, right, word) in composition_sites(&self.leading, i, j) {
            self.pending.insert(Pending {
                word_key: rank_key(alphabet, &word),
                i,
                j,
                kind,
                left,
                right,
            });
        }
    }

    fn composition_with_cert(&self, item: &Pending) -> (Polynomial, Certificate) {
        let site = (item.i, item.j, item.kind, item.left.clone(), item.right.clone());
        let poly = composition_poly(&self.rules, &site);
        let mut cert = match item.kind {
            CompKind::Intersection => {
                let mut c = shift_cert(
                    &self.certificates[item.i],
                    &BigInt::one(),
                    &Word::empty(),
                    &item.right,
                );
                c.extend(shift_cert(
                    &self.certificates[item.j],
                    &-BigInt::one(),
                    &item.left,
                    &Word::empty(),
                ));
                c
            }
            CompKind::Inclusion => {
                let mut c = self.certificates[item.i].clone();
                c.extend(shift_cert(
                    &self.certificates[item.j],
                    &-BigInt::one(),
                    &item.left,
                    &item.right,
                ));
                c
            }
        };
        cert.shrink_to_fit();
        (poly, cert)
    }

    /// Fold a reduction delta (rule indices into `self`) into origin terms.
    fn fold_delta(&self, cert: &mut Certificate, delta: &Certificate) {
        for term in delta {
            cert.extend(shift_cert(
                &self.certificates[term.origin],
                &-&term.coefficient,
                &term.left,
                &term.right,
            ));
        }
    }
}

/// Run Shirshov completion under the given limits.
///
/// On success every composition of the returned rules is trivial, the set is
/// minimalized and tail-reduced, and rules are listed in ascending deg-lex
/// order of their leading words. If a limit is hit the partial system is
/// returned with status `limit_exceeded`; completing it again with larger
/// limits resumes the search.
pub fn shirshov_complete(
    system: &RewriteSystem,
    limits: &CompletionLimits,
) -> Result<RewriteSystem, GsError> {
    let alphabet = system.alphabet.clone();
    let mut state = Completion {
        rules: system.rules.clone(),
        leading: system.leading.clone(),
        certificates: system.certificates.clone(),
        pending: Default::default(),
        stats: system.stats,
    };
    for i in 0..state.rules.len() {
        for j in 0..state.rules.len() {
            state.enqueue_pair(&alphabet, i, j);
        }
    }

    let exceeded = |state: &Completion| RewriteSystem {
        alphabet: alphabet.clone(),
        rules: state.rules.clone(),
        leading: state.leading.clone(),
        certificates: state.certificates.clone(),
        originals: system.originals.clone(),
        status: CompletionStatus::LimitExceeded,
        stats: state.stats,
    };

    while !state.pending.is_empty() {
        let wave: Vec<Pending> = std::mem::take(&mut state.pending).into_iter().collect();
        state.stats.compositions += wave.len() as u64;
        let snapshot = state.rules.len();

        // Pure pre-reduction of the whole wave against the frozen rule set.
        let reductions: Vec<(Polynomial, Certificate, u64)> = {
            let reduce_one = |item: &Pending| {
                let (poly, mut cert) = state.composition_with_cert(item);
                let red = reduce_full(
                    &poly,
                    &state.rules[..snapshot],
                    &state.leading[..snapshot],
                    &alphabet,
                );
                state.fold_delta(&mut cert, &red.delta);
                (red.poly, cert, red.steps)
            };
            #[cfg(feature = "parallel")]
            {
                wave.par_iter().map(reduce_one).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                wave.iter().map(reduce_one).collect()
            }
        };

        for (poly, mut cert, steps) in reductions {
            state.stats.steps += steps;
            if state.stats.steps > limits.max_steps {
                return Ok(exceeded(&state));
            }
            // Rules appended earlier in this wave may reduce it further.
            let red = reduce_full(&poly, &state.rules, &state.leading, &alphabet);
            state.stats.steps += red.steps;
            state.fold_delta(&mut cert, &red.delta);
            if red.poly.is_zero() {
                continue;
            }
            let lt = red.poly.leading_term(&alphabet)?;
            let (rule, lt_word, cert) = if lt.coefficient.is_one() {
                (red.poly, lt.monomial, cert)
            } else if (-&lt.coefficient).is_one() {
                let negated = cert
                    .into_iter()
                    .map(|t| CertTerm { coefficient: -t.coefficient, ..t })
                    .collect();
                (-&red.poly, lt.monomial, negated)
            } else {
                return Err(GsError::NonMonicObstruction(red.poly.display(&alphabet)));
            };
            if lt_word.len() > limits.max_degree {
                return Ok(exceeded(&state));
            }
            state.rules.push(rule);
            state.leading.push(lt_word);
            state.certificates.push(cert);
            if state.rules.len() > limits.max_rules {
                return Ok(exceeded(&state));
            }
            let new_idx = state.rules.len() - 1;
            for k in 0..state.rules.len() {
                state.enqueue_pair(&alphabet, new_idx, k);
                if k != new_idx {
                    state.enqueue_pair(&alphabet, k, new_idx);
                }
            }
        }
    }

    let stats = state.stats;
    let (rules, leading, certificates) = postprocess(&alphabet, state);
    Ok(RewriteSystem {
        alphabet,
        rules,
        leading,
        certificates,
        originals: system.originals.clone(),
        status: CompletionStatus::Completed,
        stats,
    })
}

fn postprocess(
    alphabet: &Alphabet,
    state: Completion,
) -> (Vec<Polynomial>, Vec<Word>, Vec<Certificate>) {
    let Completion { rules, leading, certificates, .. } = state;
    let mut order: Vec<usize> = (0..rules.len()).collect();
    order.sort_by(|&p, &q| alphabet.cmp_words(&leading[p], &leading[q]).then(p.cmp(&q)));

    // Drop any rule whose leading word contains the leading word of a rule
    // kept before it; the dropped rule reduces to zero modulo the rest.
    let mut kept_rules: Vec<Polynomial> = Vec::new();
    let mut kept_leading: Vec<Word> = Vec::new();
    let mut kept_certs: Vec<Certificate> = Vec::new();
    for p in order {
        if kept_leading.iter().any(|lt| leading[p].contains_subword(lt)) {
            continue;
        }
        kept_rules.push(rules[p].clone());
        kept_leading.push(leading[p].clone());
        kept_certs.push(certificates[p].clone());
    }

    // Tail reduction: leading words are untouched, so the set of irreducible
    // words (hence completeness) is preserved.
    let snapshot = kept_rules.clone();
    for i in 0..kept_rules.len() {
        let head = Polynomial::monomial(kept_leading[i].clone());
        let tail = &kept_rules[i] - &head;
        if tail.is_zero() {
            continue;
        }
        let red = reduce_full(&tail, &snapshot, &kept_leading, alphabet);
        if red.poly != tail {
            let mut cert = kept_certs[i].clone();
            for term in &red.delta {
                for origin_term in shift_cert(
                    &kept_certs[term.origin],
                    &-&term.coefficient,
                    &term.left,
                    &term.right,
                ) {
                    cert.push(origin_term);
                }
            }
            kept_rules[i] = &head + &red.poly;
            kept_certs[i] = cert;
        }
    }
    (kept_rules, kept_leading, kept_certs)
}
