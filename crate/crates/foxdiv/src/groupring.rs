//! Group and semigroup presentations, normal-form arithmetic in quotient
//! algebras backed by completed rewrite systems, and the chain maps `d0`, `d1`
//! whose matrix entries are group-ring images of Fox derivatives.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fox::fox_of_relator;
use crate::gsbasis::{shirshov_complete, CompletionLimits, GsError, RewriteSystem};
use crate::ncpoly::Polynomial;
use crate::words::{Alphabet, Letter, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GroupRingError {
    #[error("expected a semigroup presentation")]
    NotSemigroup,
    #[error("expected a group presentation")]
    NotGroup,
    #[error("group-ring arithmetic requires a completed rewrite system")]
    NotCompleted,
    #[error("reduction of a word did not yield a single monomial with coefficient 1")]
    NonCanonicalReduction,
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("chain vector has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Rewrite(#[from] GsError),
}

/// A parse failure with the 1-based line it occurred on.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationKind {
    Group,
    Semigroup,
}

/// A presentation by generators and relator pairs `r_i1 = r_i2`. For the
/// group kind, relator words may use inverse letters; the semigroup kind
/// treats inverse letters as independent symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relators: Vec<(Word, Word)>,
    pub kind: PresentationKind,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<(Word, Word)>, kind: PresentationKind) -> Self {
        Presentation { alphabet, relators, kind }
    }

    /// Parse the presentation file format:
    ///
    /// ```text
    /// group            # or: semigroup
    /// generators: x y1 y2
    /// order: x x^-1 y1 y1^-1 y2 y2^-1    # optional
    /// relator: y1 x y1 x y1 = y1
    /// ```
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let mut kind = None;
        let mut alphabet: Option<Alphabet> = None;
        let mut relators = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if kind.is_none() {
                kind = Some(match line {
                    "group" => PresentationKind::Group,
                    "semigroup" => PresentationKind::Semigroup,
                    other => {
                        return Err(ParseError::new(
                            line_no,
                            format!("expected `group` or `semigroup`, found `{other}`"),
                        ))
                    }
                });
                continue;
            }
            if let Some(rest) = line.strip_prefix("generators:") {
                if alphabet.is_some() {
                    return Err(ParseError::new(line_no, "duplicate generators line"));
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(ParseError::new(line_no, "empty generator list"));
                }
                let built = match kind {
                    Some(PresentationKind::Semigroup) => Alphabet::semigroup(names),
                    _ => Alphabet::new(names),
                };
                alphabet = Some(built.map_err(|e| ParseError::new(line_no, e.to_string()))?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("order:") {
                let alphabet = alphabet
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line_no, "order before generators"))?;
                let letters = parse_letter_list(alphabet, rest)
                    .map_err(|e| ParseError::new(line_no, e.to_string()))?;
                alphabet
                    .set_order(&letters)
                    .map_err(|e| ParseError::new(line_no, e.to_string()))?;
                continue;
            }
            if let Some(rest) = line.strip_prefix("relator:") {
                let alphabet = alphabet
                    .as_ref()
                    .ok_or_else(|| ParseError::new(line_no, "relator before generators"))?;
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| ParseError::new(line_no, "relator needs `lhs = rhs`"))?;
                let lhs = alphabet
                    .parse_word(lhs)
                    .map_err(|e| ParseError::new(line_no, e.to_string()))?;
                let rhs = alphabet
                    .parse_word(rhs)
                    .map_err(|e| ParseError::new(line_no, e.to_string()))?;
                relators.push((lhs, rhs));
                continue;
            }
            return Err(ParseError::new(line_no, format!("unrecognized line `{line}`")));
        }
        let kind = kind.ok_or_else(|| ParseError::new(1, "missing `group` or `semigroup` line"))?;
        let alphabet = alphabet.ok_or_else(|| ParseError::new(1, "missing generators line"))?;
        Ok(Presentation { alphabet, relators, kind })
    }

    /// Canonical file form; parsing it back yields an identical structure.
    pub fn display(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.kind {
            PresentationKind::Group => "group\n",
            PresentationKind::Semigroup => "semigroup\n",
        });
        out.push_str(&format!("generators: {}\n", self.alphabet));
        let order: Vec<String> = self
            .alphabet
            .letters_by_rank()
            .iter()
            .map(|&l| {
                let name = self.alphabet.generator_name(l.generator);
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect();
        out.push_str(&format!("order: {}\n", order.join(" ")));
        for (lhs, rhs) in &self.relators {
            out.push_str(&format!(
                "relator: {} = {}\n",
                self.alphabet.display_word(lhs),
                self.alphabet.display_word(rhs)
            ));
        }
        out
    }

    /// SHA-256 of the canonical file form, in hex.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.display().as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.generator_count()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_letter_list(alphabet: &Alphabet, text: &str) -> Result<Vec<Letter>, WordError> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let word = alphabet.parse_word(token)?;
        match word.letters() {
            [letter] => letters.push(*letter),
            _ => return Err(WordError::BadToken(token.to_string())),
        }
    }
    Ok(letters)
}

/// The semigroup form of a group presentation: the same relators plus the
/// inverse relations `g g^-1 = 1` and `g^-1 g = 1` for every generator.
pub fn to_semigroup(p: &Presentation) -> Result<Presentation, GroupRingError> {
    if p.kind != PresentationKind::Group {
        return Err(GroupRingError::NotGroup);
    }
    let mut relators = p.relators.clone();
    for g in 0..p.alphabet.generator_count() as u32 {
        let pos = Word::single(Letter::positive(g));
        let neg = Word::single(Letter::negative(g));
        relators.push((pos.concat(&neg), Word::empty()));
        relators.push((neg.concat(&pos), Word::empty()));
    }
    Ok(Presentation { alphabet: p.alphabet.clone(), relators, kind: PresentationKind::Semigroup })
}

/// One monic rule `greater - lesser` per semigroup relation; relations with
/// equal sides are dropped.
pub fn presentation_to_rules(p: &Presentation) -> Result<RewriteSystem, GroupRingError> {
    if p.kind != PresentationKind::Semigroup {
        return Err(GroupRingError::NotSemigroup);
    }
    let mut rules = Vec::new();
    for (lhs, rhs) in &p.relators {
        let (greater, lesser) = match p.alphabet.cmp_words(lhs, rhs) {
            std::cmp::Ordering::Greater => (lhs, rhs),
            std::cmp::Ordering::Less => (rhs, lhs),
            std::cmp::Ordering::Equal => continue,
        };
        let rule = &Polynomial::monomial(greater.clone()) - &Polynomial::monomial(lesser.clone());
        rules.push(rule);
    }
    Ok(RewriteSystem::new(p.alphabet.clone(), rules)?)
}

/// The integral quotient ring presented by a completed rewrite system;
/// elements are integer combinations of irreducible words.
#[derive(Debug)]
pub struct GroupRing {
    system: RewriteSystem,
    fingerprint: String,
}

impl GroupRing {
    /// Wrap a completed system. The fingerprint identifies the presentation
    /// the system came from.
    pub fn new(system: RewriteSystem, fingerprint: String) -> Result<Arc<Self>, GroupRingError> {
        if !system.is_completed() {
            return Err(GroupRingError::NotCompleted);
        }
        Ok(Arc::new(GroupRing { system, fingerprint }))
    }

    /// Pipeline from a presentation: group presentations pass through their
    /// semigroup form, the relation rules are completed, and the ring wraps
    /// the result. A completion that hits its limits is an error carrying the
    /// partial system.
    pub fn from_presentation(
        p: &Presentation,
        limits: &CompletionLimits,
    ) -> Result<Arc<Self>, RingBuildError> {
        let semigroup = match p.kind {
            PresentationKind::Group => to_semigroup(p).map_err(RingBuildError::Ring)?,
            PresentationKind::Semigroup => p.clone(),
        };
        let raw = presentation_to_rules(&semigroup).map_err(RingBuildError::Ring)?;
        let completed = shirshov_complete(&raw, limits).map_err(|e| RingBuildError::Ring(e.into()))?;
        if !completed.is_completed() {
            return Err(RingBuildError::LimitExceeded(Box::new(completed)));
        }
        GroupRing::new(completed, p.fingerprint()).map_err(RingBuildError::Ring)
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.system.alphabet()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// The unique irreducible word equal to `w` in the quotient. For systems
    /// built from semigroup relations, reduction of a word always yields a
    /// single word with coefficient 1.
    pub fn normal_form(&self, w: &Word) -> Result<Word, GroupRingError> {
        let reduced = self.system.reduce(&Polynomial::monomial(w.clone()));
        let mut terms = reduced.terms();
        match (terms.next(), terms.next()) {
            (Some((word, coefficient)), None) if *coefficient == BigInt::from(1) => {
                Ok(word.clone())
            }
            _ => Err(GroupRingError::NonCanonicalReduction),
        }
    }

    pub fn element(self: &Arc<Self>, value: &Polynomial) -> GroupRingElement {
        GroupRingElement { ring: Arc::clone(self), value: self.system.reduce(value) }
    }

    pub fn zero(self: &Arc<Self>) -> GroupRingElement {
        GroupRingElement { ring: Arc::clone(self), value: Polynomial::zero() }
    }

    pub fn one(self: &Arc<Self>) -> GroupRingElement {
        self.element(&Polynomial::one())
    }

    fn same_ring(&self, other: &GroupRing) -> bool {
        self.fingerprint == other.fingerprint && self.system == other.system
    }
}

#[derive(Debug, Error)]
pub enum RingBuildError {
    #[error("completion exceeded its limits")]
    LimitExceeded(Box<RewriteSystem>),
    #[error(transparent)]
    Ring(GroupRingError),
}

/// An element of a [`GroupRing`], stored in normal form: every support
/// monomial is irreducible for the ring's system.
#[derive(Debug, Clone)]
pub struct GroupRingElement {
    ring: Arc<GroupRing>,
    value: Polynomial,
}

impl GroupRingElement {
    pub fn ring(&self) -> &Arc<GroupRing> {
        &self.ring
    }

    pub fn value(&self) -> &Polynomial {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn display(&self) -> String {
        self.value.display(self.ring.alphabet())
    }
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.value == other.value
    }
}

impl Eq for GroupRingElement {}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Free-algebra product followed by reduction to normal form.
pub fn ring_mul(
    a: &GroupRingElement,
    b: &GroupRingElement,
) -> Result<GroupRingElement, GroupRingError> {
    if !a.ring.same_ring(&b.ring) {
        return Err(GroupRingError::RingMismatch);
    }
    Ok(a.ring.element(&(&a.value * &b.value)))
}

pub fn ring_add(
    a: &GroupRingElement,
    b: &GroupRingElement,
) -> Result<GroupRingElement, GroupRingError> {
    if !a.ring.same_ring(&b.ring) {
        return Err(GroupRingError::RingMismatch);
    }
    Ok(GroupRingElement { ring: Arc::clone(&a.ring), value: &a.value + &b.value })
}

/// A tuple of group-ring elements sharing one ring, indexed by either the
/// relators or the generators of a presentation.
#[derive(Debug, Clone)]
pub struct ChainVector {
    ring: Arc<GroupRing>,
    entries: Vec<GroupRingElement>,
}

impl PartialEq for ChainVector {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.entries == other.entries
    }
}

impl Eq for ChainVector {}

impl ChainVector {
    pub fn new(
        ring: Arc<GroupRing>,
        entries: Vec<GroupRingElement>,
    ) -> Result<Self, GroupRingError> {
        for entry in &entries {
            if !entry.ring.same_ring(&ring) {
                return Err(GroupRingError::RingMismatch);
            }
        }
        Ok(ChainVector { ring, entries })
    }

    pub fn from_polynomials(
        ring: &Arc<GroupRing>,
        polys: &[Polynomial],
    ) -> Self {
        ChainVector {
            ring: Arc::clone(ring),
            entries: polys.iter().map(|p| ring.element(p)).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<GroupRing> {
        &self.ring
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }
}

/// The chain data of a presentation over its completed ring: the group-ring
/// images `J[relator][generator]` of the relator Fox derivatives, and the
/// maps `d0`, `d1` built from them. `beta` coefficients act on the left.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    ring: Arc<GroupRing>,
    presentation: Presentation,
    jacobian: Vec<Vec<Polynomial>>,
}

impl ChainComplex {
    pub fn new(presentation: &Presentation, ring: Arc<GroupRing>) -> Self {
        let jacobian = presentation
            .relators
            .iter()
            .map(|(r1, r2)| {
                (0..presentation.alphabet.generator_count() as u32)
                    .map(|x| ring.system().reduce(&fox_of_relator(r1, r2, x)))
                    .collect()
            })
            .collect();
        ChainComplex { ring, presentation: presentation.clone(), jacobian }
    }

    pub fn ring(&self) -> &Arc<GroupRing> {
        &self.ring
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Group-ring image of the Fox derivative of relator `r` by generator `x`.
    pub fn jacobian_entry(&self, relator: usize, generator: usize) -> &Polynomial {
        &self.jacobian[relator][generator]
    }

    /// `d0(alpha) = sum_i alpha_i (x_i - 1)` for a generator-indexed vector.
    pub fn d0(&self, v: &ChainVector) -> Result<GroupRingElement, GroupRingError> {
        let n = self.presentation.generator_count();
        if v.len() != n {
            return Err(GroupRingError::LengthMismatch { expected: n, got: v.len() });
        }
        if !v.ring.same_ring(&self.ring) {
            return Err(GroupRingError::RingMismatch);
        }
        let mut total = Polynomial::zero();
        for (g, entry) in v.entries.iter().enumerate() {
            let step = &Polynomial::monomial(Word::single(Letter::positive(g as u32)))
                - &Polynomial::one();
            total = &total + &(entry.value() * &step);
        }
        Ok(self.ring.element(&total))
    }

    /// `d1(beta)` for a relator-indexed vector: the generator-indexed vector
    /// with x-entry `sum_j beta_j · J[r_j][x]`.
    pub fn d1(&self, v: &ChainVector) -> Result<ChainVector, GroupRingError> {
        let m = self.presentation.relator_count();
        if v.len() != m {
            return Err(GroupRingError::LengthMismatch { expected: m, got: v.len() });
        }
        if !v.ring.same_ring(&self.ring) {
            return Err(GroupRingError::RingMismatch);
        }
        let n = self.presentation.generator_count();
        let mut entries = Vec::with_capacity(n);
        for x in 0..n {
            let mut total = Polynomial::zero();
            for (j, beta) in v.entries.iter().enumerate() {
                total = &total + &(beta.value() * &self.jacobian[j][x]);
            }
            entries.push(self.ring.element(&total));
        }
        ChainVector::new(Arc::clone(&self.ring), entries)
    }

    pub fn is_in_kernel_d1(&self, v: &ChainVector) -> Result<bool, GroupRingError> {
        Ok(self.d1(v)?.is_zero())
    }
}
