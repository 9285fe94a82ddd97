//! Free monoid words over an alphabet of generators and their formal inverses.
//!
//! A [`Word`] is a plain sequence of signed letters; it carries no group
//! relations. Free reduction, the deg-lex order, and the subword/overlap
//! searches used by the completion engine all live here.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("zero power in token `{0}`")]
    ZeroPower(String),
    #[error("malformed token `{0}`")]
    BadToken(String),
    #[error("invalid generator name `{0}`")]
    BadGeneratorName(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("letter does not belong to this alphabet")]
    ForeignLetter,
    #[error("alphabet has no inverse letters: `{0}`")]
    NoInverseLetters(String),
    #[error("order must list each letter of the alphabet exactly once")]
    BadOrder,
}

/// One signed letter: a generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(generator: u32) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn negative(generator: u32) -> Self {
        Letter { generator, inverse: true }
    }

    /// Dense code `2g` for a generator, `2g + 1` for its inverse.
    pub fn code(&self) -> u32 {
        self.generator * 2 + self.inverse as u32
    }

    pub fn opposite(&self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn sign(&self) -> i32 {
        if self.inverse { -1 } else { 1 }
    }
}

/// A word of the free monoid on the signed letters. The empty word is the
/// monoid identity and is a valid word everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    /// `g^n` for `n > 0`, `g^-|n|` for `n < 0`, the empty word for `n = 0`.
    pub fn power(generator: u32, n: i64) -> Self {
        let letter = if n >= 0 {
            Letter::positive(generator)
        } else {
            Letter::negative(generator)
        };
        Word(vec![letter; n.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Formal inverse: reversed word with every letter sign flipped.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::opposite).collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn involves(&self, generator: u32) -> bool {
        self.0.iter().any(|l| l.generator == generator)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.len() >= prefix.len() && self.0[..prefix.len()] == prefix.0
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.len() >= suffix.len() && self.0[self.len() - suffix.len()..] == suffix.0
    }

    /// Is `other` a (not necessarily proper) subword of `self`?
    pub fn contains_subword(&self, other: &Word) -> bool {
        if other.is_empty() {
            return true;
        }
        if other.len() > self.len() {
            return false;
        }
        (0..=self.len() - other.len()).any(|i| self.0[i..i + other.len()] == other.0)
    }

    /// The unique freely reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &letter in &self.0 {
            match out.last() {
                Some(&top) if top == letter.opposite() => {
                    out.pop();
                }
                _ => out.push(letter),
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|pair| pair[0] != pair[1].opposite())
    }
}

/// Default deg-lex order: degree first, then left-to-right with the default
/// letter precedence `g0 > g0^-1 > g1 > g1^-1 > ...`. Engine code compares
/// through [`Alphabet::cmp_words`], which honours custom precedences; this
/// `Ord` is the storage order for term maps and coincides with the default.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.code().cmp(&b.code()) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite generator list plus a total precedence on its letters.
///
/// A group-style alphabet carries a formal inverse for every generator; a
/// semigroup-style alphabet has positive letters only (in the semigroup view,
/// inverses are independent symbols introduced by explicit relations). The
/// default precedence puts each generator just above its inverse and orders
/// generators by declaration; an explicit order may override it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    by_name: BTreeMap<String, u32>,
    includes_inverses: bool,
    /// `rank[code]` is the precedence position of the letter (rank 0 is the
    /// greatest letter); `u32::MAX` marks letters outside the alphabet.
    rank: Vec<u32>,
    /// The letters sorted by ascending rank (greatest first).
    by_rank: Vec<Letter>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name.chars().any(|c| c.is_whitespace())
        && !name.contains(['^', '*', '+', '-', '=', ',', ';', ':', '#'])
        && !name.chars().all(|c| c.is_ascii_digit())
}

impl Alphabet {
    /// Alphabet on the signed letters `g, g^-1` of each generator.
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, WordError> {
        Alphabet::build(names, true)
    }

    /// Alphabet on positive letters only.
    pub fn semigroup<S: Into<String>>(names: Vec<S>) -> Result<Self, WordError> {
        Alphabet::build(names, false)
    }

    fn build<S: Into<String>>(names: Vec<S>, includes_inverses: bool) -> Result<Self, WordError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut by_name = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(WordError::BadGeneratorName(name.clone()));
            }
            if by_name.insert(name.clone(), i as u32).is_some() {
                return Err(WordError::DuplicateGenerator(name.clone()));
            }
        }
        let mut rank = vec![u32::MAX; names.len() * 2];
        let mut by_rank = Vec::new();
        for g in 0..names.len() as u32 {
            by_rank.push(Letter::positive(g));
            if includes_inverses {
                by_rank.push(Letter::negative(g));
            }
        }
        for (pos, letter) in by_rank.iter().enumerate() {
            rank[letter.code() as usize] = pos as u32;
        }
        Ok(Alphabet { names, by_name, includes_inverses, rank, by_rank })
    }

    pub fn includes_inverses(&self) -> bool {
        self.includes_inverses
    }

    /// Replace the precedence with an explicit letter list, greatest first.
    /// The list must cover every letter of the alphabet exactly once.
    pub fn set_order(&mut self, order: &[Letter]) -> Result<(), WordError> {
        if order.len() != self.by_rank.len() {
            return Err(WordError::BadOrder);
        }
        let mut rank = vec![u32::MAX; self.rank.len()];
        for (pos, letter) in order.iter().enumerate() {
            let code = letter.code() as usize;
            if code >= rank.len()
                || rank[code] != u32::MAX
                || (letter.inverse && !self.includes_inverses)
            {
                return Err(WordError::BadOrder);
            }
            rank[code] = pos as u32;
        }
        self.rank = rank;
        self.by_rank = order.to_vec();
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_name(&self, generator: u32) -> &str {
        &self.names[generator as usize]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).copied()
    }

    /// Letters in descending precedence (greatest first).
    pub fn letters_by_rank(&self) -> &[Letter] {
        &self.by_rank
    }

    pub fn contains_letter(&self, letter: Letter) -> bool {
        let code = letter.code() as usize;
        code < self.rank.len() && self.rank[code] != u32::MAX
    }

    pub fn contains_word(&self, word: &Word) -> bool {
        word.letters().iter().all(|&l| self.contains_letter(l))
    }

    fn letter_rank(&self, letter: Letter) -> u32 {
        let rank = self.rank[letter.code() as usize];
        debug_assert_ne!(rank, u32::MAX, "letter outside alphabet");
        rank
    }

    /// Deg-lex comparison under this alphabet's precedence. Panics on letters
    /// outside the alphabet; use [`Alphabet::deglex_compare`] for untrusted
    /// input.
    pub fn cmp_words(&self, u: &Word, v: &Word) -> Ordering {
        match u.len().cmp(&v.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in u.letters().iter().zip(v.letters().iter()) {
            match self.letter_rank(*a).cmp(&self.letter_rank(*b)) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }

    /// Validating deg-lex comparison.
    pub fn deglex_compare(&self, u: &Word, v: &Word) -> Result<Ordering, WordError> {
        if !self.contains_word(u) || !self.contains_word(v) {
            return Err(WordError::ForeignLetter);
        }
        Ok(self.cmp_words(u, v))
    }

    /// Parse a word literal: whitespace-separated tokens, `g`, `g^-1`,
    /// `g^k` (k != 0, expanded to |k| letters), and `1` for the empty word.
    pub fn parse_word(&self, input: &str) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for token in input.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, power) = match token.split_once('^') {
                None => (token, 1i64),
                Some((name, exp)) => {
                    let power: i64 = exp
                        .parse()
                        .map_err(|_| WordError::BadToken(token.to_string()))?;
                    if power == 0 {
                        return Err(WordError::ZeroPower(token.to_string()));
                    }
                    (name, power)
                }
            };
            let generator = self
                .generator(name)
                .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
            if power < 0 && !self.includes_inverses {
                return Err(WordError::NoInverseLetters(token.to_string()));
            }
            let letter = if power > 0 {
                Letter::positive(generator)
            } else {
                Letter::negative(generator)
            };
            letters.extend(std::iter::repeat(letter).take(power.unsigned_abs() as usize));
        }
        Ok(Word(letters))
    }

    /// Render a word in the literal syntax, compressing letter runs into
    /// powers. The empty word prints as `1`.
    pub fn display_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut run: Option<(Letter, i64)> = None;
        for &letter in word.letters() {
            match run {
                Some((current, count)) if current == letter => run = Some((current, count + 1)),
                Some((current, count)) => {
                    parts.push(self.display_run(current, count));
                    run = Some((letter, 1));
                }
                None => run = Some((letter, 1)),
            }
        }
        if let Some((current, count)) = run {
            parts.push(self.display_run(current, count));
        }
        parts.join(" ")
    }

    fn display_run(&self, letter: Letter, count: i64) -> String {
        let name = self.generator_name(letter.generator);
        match (letter.inverse, count) {
            (false, 1) => name.to_string(),
            (false, n) => format!("{name}^{n}"),
            (true, n) => format!("{name}^-{n}"),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" "))
    }
}

/// An intersection overlap `u·b = a·v` with a proper shared boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    /// Prefix `a` of the ambiguity word, with `w = a·v`.
    pub left: Word,
    /// Suffix `b`, with `w = u·b`.
    pub right: Word,
    /// The ambiguity word `w = u·b = a·v`.
    pub word: Word,
}

/// All proper boundary overlaps of `u` against `v`: a nonempty proper suffix
/// of `u` equal to a proper prefix of `v`. Full containments are reported by
/// [`find_inclusions`] instead. Ordered by increasing overlap length.
pub fn find_intersection_overlaps(u: &Word, v: &Word) -> Vec<Overlap> {
    let mut out = Vec::new();
    if u.is_empty() || v.is_empty() {
        return out;
    }
    let max = u.len().min(v.len());
    for k in 1..max {
        if u.letters()[u.len() - k..] == v.letters()[..k] {
            let left = u.prefix(u.len() - k);
            let right = v.suffix_from(k);
            let word = u.concat(&right);
            out.push(Overlap { left, right, word });
        }
    }
    out
}

/// A factorization `u = left · v · right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inclusion {
    pub left: Word,
    pub right: Word,
}

/// Every occurrence of `v` inside `u`, in left-to-right order.
pub fn find_inclusions(u: &Word, v: &Word) -> Vec<Inclusion> {
    let mut out = Vec::new();
    if v.len() > u.len() {
        return out;
    }
    for i in 0..=u.len() - v.len() {
        if u.letters()[i..i + v.len()] == *v.letters() {
            out.push(Inclusion {
                left: u.prefix(i),
                right: u.suffix_from(i + v.len()),
            });
        }
    }
    out
}

/// The maximal common prefix of `u` and `v`.
pub fn longest_common_prefix(u: &Word, v: &Word) -> Word {
    let n = u
        .letters()
        .iter()
        .zip(v.letters())
        .take_while(|(a, b)| a == b)
        .count();
    u.prefix(n)
}
