//! The parametric presentations whose relator sides interleave x-free blocks
//! with `w·x`, forcing every relator derivative with respect to `x` to share
//! the right divisor `dw/dx + w`.
//!
//! A relator side with blocks `b_1, ..., b_p` assembles as
//! `b_1 (w x) b_2 (w x) ... (w x) b_p`; a side with a single block is that
//! block alone. The distinguished generator is always named `x`, the others
//! `y1, ..., yl`, ordered `x > x^-1 > y1 > y1^-1 > ...`.

use serde_json::json;
use thiserror::Error;

use num_traits::One;

use crate::fox::{fox_derivative, fox_of_relator};
use crate::groupring::{ParseError, Presentation, PresentationKind};
use crate::ncpoly::Polynomial;
use crate::words::{Alphabet, Word};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FamilyError {
    #[error("invalid family spec: {0}")]
    Invalid(Violation),
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum RightDivideError {
    #[error("not_divisible")]
    NotDivisible,
    #[error("divisor is zero")]
    DivisorZero,
    #[error("divisor is not monic")]
    DivisorNotMonic,
}

/// A violated side condition, named after the clause it breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WMustBeNonempty,
    WInvolvesX,
    EmptyRow { relator: usize, side: u8 },
    RowCountMismatch,
    BlockInvolvesX { relator: usize, side: u8, block: usize },
    NotFreelyReduced { relator: usize, side: u8 },
    CrossSubword { container: (usize, u8), contained: (usize, u8) },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::WMustBeNonempty => write!(f, "w_must_be_nonempty"),
            Violation::WInvolvesX => write!(f, "w_involves_x"),
            Violation::EmptyRow { relator, side } => {
                write!(f, "empty_row({relator},{side})")
            }
            Violation::RowCountMismatch => write!(f, "row_count_mismatch"),
            Violation::BlockInvolvesX { relator, side, block } => {
                write!(f, "block_involves_x({relator},{side},{block})")
            }
            Violation::NotFreelyReduced { relator, side } => {
                write!(f, "not_freely_reduced({relator},{side})")
            }
            Violation::CrossSubword { container, contained } => write!(
                f,
                "cross_subword({},{})",
                container.0, contained.0
            ),
        }
    }
}

/// Which of the four leading-term possibilities the elimination step hits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Phi1Zero,
    LtUDfBar,
    LtR2,
    LtUF1,
    None,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Phi1Zero => "phi1_zero",
            CaseTag::LtUDfBar => "lt_u_dfbar",
            CaseTag::LtR2 => "lt_r2",
            CaseTag::LtUF1 => "lt_u_f1",
            CaseTag::None => "none",
        }
    }
}

/// Combinatorial data of one family member: the block word `w` and the
/// ragged block arrays of the two relator sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    alphabet: Alphabet,
    y_count: usize,
    pub w: Word,
    pub u: Vec<Vec<Word>>,
    pub v: Vec<Vec<Word>>,
}

/// The generator `x` is always index 0 in a family alphabet.
pub const X: u32 = 0;

pub fn family_alphabet(y_count: usize) -> Alphabet {
    let mut names = vec!["x".to_string()];
    names.extend((1..=y_count).map(|i| format!("y{i}")));
    Alphabet::new(names).expect("generated names are valid")
}

impl FamilySpec {
    pub fn new(y_count: usize, w: Word, u: Vec<Vec<Word>>, v: Vec<Vec<Word>>) -> Self {
        FamilySpec { alphabet: family_alphabet(y_count), y_count, w, u, v }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn y_count(&self) -> usize {
        self.y_count
    }

    pub fn relator_count(&self) -> usize {
        self.u.len()
    }

    /// Interleave blocks with `w·x`: `b_1 (wx) b_2 (wx) ... (wx) b_p`.
    fn assemble(&self, blocks: &[Word]) -> Word {
        let wx = self.w.concat(&Word::power(X, 1));
        let mut out = Word::empty();
        for (i, block) in blocks.iter().enumerate() {
            if i > 0 {
                out = out.concat(&wx);
            }
            out = out.concat(block);
        }
        out
    }

    pub fn relator_side(&self, relator: usize, side: u8) -> Word {
        let blocks = if side == 1 { &self.u[relator] } else { &self.v[relator] };
        self.assemble(blocks)
    }

    /// All violated side conditions; empty means the spec is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.w.is_empty() {
            out.push(Violation::WMustBeNonempty);
        }
        if self.w.involves(X) {
            out.push(Violation::WInvolvesX);
        }
        if self.u.len() != self.v.len() {
            out.push(Violation::RowCountMismatch);
            return out;
        }
        for (i, row) in self.u.iter().enumerate() {
            if row.is_empty() {
                out.push(Violation::EmptyRow { relator: i + 1, side: 1 });
            }
        }
        for (i, row) in self.v.iter().enumerate() {
            if row.is_empty() {
                out.push(Violation::EmptyRow { relator: i + 1, side: 2 });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, row) in self.u.iter().enumerate() {
            for (j, block) in row.iter().enumerate() {
                if block.involves(X) {
                    out.push(Violation::BlockInvolvesX { relator: i + 1, side: 1, block: j + 1 });
                }
            }
        }
        for (i, row) in self.v.iter().enumerate() {
            for (j, block) in row.iter().enumerate() {
                if block.involves(X) {
                    out.push(Violation::BlockInvolvesX { relator: i + 1, side: 2, block: j + 1 });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let n = self.relator_count();
        let sides: Vec<Vec<Word>> = (0..n)
            .map(|i| vec![self.relator_side(i, 1), self.relator_side(i, 2)])
            .collect();
        for (i, pair) in sides.iter().enumerate() {
            for (s, word) in pair.iter().enumerate() {
                if !word.is_freely_reduced() {
                    out.push(Violation::NotFreelyReduced { relator: i + 1, side: s as u8 + 1 });
                }
            }
        }
        // No side may contain a side of a different relation as a subword;
        // empty sides are skipped.
        for i in 0..n {
            for s in 0..2 {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for t in 0..2 {
                        let inner = &sides[j][t];
                        if inner.is_empty() {
                            continue;
                        }
                        if sides[i][s].contains_subword(inner) {
                            out.push(Violation::CrossSubword {
                                container: (i + 1, s as u8 + 1),
                                contained: (j + 1, t as u8 + 1),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Assemble the group presentation, failing on the first violated clause.
    pub fn build(&self) -> Result<Presentation, FamilyError> {
        if let Some(v) = self.validate().into_iter().next() {
            return Err(FamilyError::Invalid(v));
        }
        let relators = (0..self.relator_count())
            .map(|i| (self.relator_side(i, 1), self.relator_side(i, 2)))
            .collect();
        Ok(Presentation::new(self.alphabet.clone(), relators, PresentationKind::Group))
    }

    /// Parse the family file format:
    ///
    /// ```text
    /// family
    /// y-generators: 1
    /// w: y1
    /// relator 1: u = 1, 1, y1 ; v = y1
    /// ```
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let mut saw_header = false;
        let mut y_count: Option<usize> = None;
        let mut alphabet: Option<Alphabet> = None;
        let mut w: Option<Word> = None;
        let mut u: Vec<Vec<Word>> = Vec::new();
        let mut v: Vec<Vec<Word>> = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if !saw_header {
                if line != "family" {
                    return Err(ParseError { line: line_no, message: format!("expected `family`, found `{line}`") });
                }
                saw_header = true;
                continue;
            }
            if let Some(rest) = line.strip_prefix("y-generators:") {
                let count: usize = rest.trim().parse().map_err(|_| ParseError {
                    line: line_no,
                    message: format!("invalid y-generator count `{}`", rest.trim()),
                })?;
                y_count = Some(count);
                alphabet = Some(family_alphabet(count));
                continue;
            }
            if let Some(rest) = line.strip_prefix("w:") {
                let alphabet = alphabet.as_ref().ok_or_else(|| ParseError {
                    line: line_no,
                    message: "w before y-generators".into(),
                })?;
                w = Some(alphabet.parse_word(rest).map_err(|e| ParseError {
                    line: line_no,
                    message: e.to_string(),
                })?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("relator") {
                let alphabet = alphabet.as_ref().ok_or_else(|| ParseError {
                    line: line_no,
                    message: "relator before y-generators".into(),
                })?;
                let (index_part, body) = rest.split_once(':').ok_or_else(|| ParseError {
                    line: line_no,
                    message: "relator line needs `relator N: ...`".into(),
                })?;
                let index: usize = index_part.trim().parse().map_err(|_| ParseError {
                    line: line_no,
                    message: format!("invalid relator index `{}`", index_part.trim()),
                })?;
                if index != u.len() + 1 {
                    return Err(ParseError {
                        line: line_no,
                        message: format!("expected relator {}, found {index}", u.len() + 1),
                    });
                }
                let (u_part, v_part) = body.split_once(';').ok_or_else(|| ParseError {
                    line: line_no,
                    message: "relator line needs `u = ... ; v = ...`".into(),
                })?;
                u.push(parse_block_list(alphabet, u_part, "u", line_no)?);
                v.push(parse_block_list(alphabet, v_part, "v", line_no)?);
                continue;
            }
            return Err(ParseError { line: line_no, message: format!("unrecognized line `{line}`") });
        }
        if !saw_header {
            return Err(ParseError { line: 1, message: "missing `family` line".into() });
        }
        let y_count = y_count.ok_or(ParseError { line: 1, message: "missing y-generators line".into() })?;
        let w = w.ok_or(ParseError { line: 1, message: "missing w line".into() })?;
        Ok(FamilySpec::new(y_count, w, u, v))
    }

    /// Canonical file form.
    pub fn display(&self) -> String {
        let mut out = String::from("family\n");
        out.push_str(&format!("y-generators: {}\n", self.y_count));
        out.push_str(&format!("w: {}\n", self.alphabet.display_word(&self.w)));
        for i in 0..self.relator_count() {
            let list = |blocks: &[Word]| {
                blocks
                    .iter()
                    .map(|b| self.alphabet.display_word(b))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            out.push_str(&format!(
                "relator {}: u = {} ; v = {}\n",
                i + 1,
                list(&self.u[i]),
                list(&self.v[i])
            ));
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_block_list(
    alphabet: &Alphabet,
    part: &str,
    name: &str,
    line_no: usize,
) -> Result<Vec<Word>, ParseError> {
    let part = part.trim();
    let rest = part
        .strip_prefix(name)
        .and_then(|s| s.trim_start().strip_prefix('='))
        .ok_or_else(|| ParseError {
            line: line_no,
            message: format!("expected `{name} = ...`"),
        })?;
    rest.split(',')
        .map(|token| {
            alphabet.parse_word(token).map_err(|e| ParseError {
                line: line_no,
                message: e.to_string(),
            })
        })
        .collect()
}

/// The common right divisor and the per-relator left cofactors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationReport {
    /// `dw/dx + w`; for x-free `w` this is the single monomial `w`.
    pub f: Polynomial,
    pub d: Vec<Polynomial>,
    pub exact: bool,
}

impl FactorizationReport {
    pub fn report_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        out.push_str(&format!("f: {}\n", self.f.display(alphabet)));
        for (i, d) in self.d.iter().enumerate() {
            out.push_str(&format!("D[{}]: {}\n", i + 1, d.display(alphabet)));
        }
        out.push_str(&format!("exact: {}\n", self.exact));
        out
    }

    pub fn report_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        json!({
            "f": self.f.display(alphabet),
            "D": self.d.iter().map(|d| d.display(alphabet)).collect::<Vec<_>>(),
            "exact": self.exact,
        })
    }
}

/// Factor every relator derivative as `D_i · f` with `f = dw/dx + w` and
/// `D_i` the alternating sum of proper prefixes of the two sides ending just
/// before each `w·x` block. `exact` records that `D_i · f` reproduces
/// `d(r_i)/dx` term for term in the free algebra.
pub fn factor_derivatives(spec: &FamilySpec) -> Result<FactorizationReport, FamilyError> {
    if let Some(v) = spec.validate().into_iter().next() {
        return Err(FamilyError::Invalid(v));
    }
    let f = &fox_derivative(&spec.w, X) + &Polynomial::monomial(spec.w.clone());
    let mut d = Vec::with_capacity(spec.relator_count());
    let mut exact = true;
    for i in 0..spec.relator_count() {
        let mut cofactor = Polynomial::zero();
        for (blocks, sign) in [(&spec.u[i], 1), (&spec.v[i], -1)] {
            let mut prefix = Word::empty();
            let wx = spec.w.concat(&Word::power(X, 1));
            for (j, block) in blocks.iter().enumerate() {
                if j > 0 {
                    prefix = prefix.concat(&wx);
                }
                prefix = prefix.concat(block);
                if j + 1 < blocks.len() {
                    cofactor.add_term(prefix.clone(), num_bigint::BigInt::from(sign));
                }
            }
        }
        let derivative = fox_of_relator(&spec.relator_side(i, 1), &spec.relator_side(i, 2), X);
        if &cofactor * &f != derivative {
            exact = false;
        }
        d.push(cofactor);
    }
    Ok(FactorizationReport { f, d, exact })
}

/// Exact right division by a monic `f`: repeatedly match the leading term of
/// the remainder against `(monomial)·LT(f)` and subtract. Succeeds with `D`
/// such that `D·f = p`; signals `not_divisible` when the leading monomial of
/// a nonzero remainder does not end in `LT(f)`.
pub fn right_divide(
    p: &Polynomial,
    f: &Polynomial,
    alphabet: &Alphabet,
) -> Result<Polynomial, RightDivideError> {
    let lt_f = f.leading_term(alphabet).map_err(|_| RightDivideError::DivisorZero)?;
    if !lt_f.coefficient.is_one() {
        return Err(RightDivideError::DivisorNotMonic);
    }
    let mut remainder = p.clone();
    let mut quotient = Polynomial::zero();
    while !remainder.is_zero() {
        let lt = remainder.leading_term(alphabet).expect("nonzero remainder");
        if !lt.monomial.ends_with(&lt_f.monomial) {
            return Err(RightDivideError::NotDivisible);
        }
        let stem = lt.monomial.prefix(lt.monomial.len() - lt_f.monomial.len());
        let piece = f.conjugate_words(&stem, &Word::empty()).scale(&lt.coefficient);
        remainder = &remainder - &piece;
        quotient.add_term(stem, lt.coefficient);
    }
    Ok(quotient)
}

/// Classify the first elimination step for relator `i` (0-based) against the
/// divisor `f`: compute `phi_1 = d(r_i)/dx - u_i·f` where
/// `LT(d(r_i1)/dx) = u_i·LT(f)`, and report which summand carries its leading
/// term. Returns `None` when the leading term does not factor through `LT(f)`.
pub fn classify_phi1(spec: &FamilySpec, i: usize, f: &Polynomial) -> CaseTag {
    let alphabet = spec.alphabet();
    let r1 = spec.relator_side(i, 1);
    let r2 = spec.relator_side(i, 2);
    let d1 = fox_derivative(&r1, X);
    let (Ok(lt1), Ok(lt_f)) = (d1.leading_term(alphabet), f.leading_term(alphabet)) else {
        return CaseTag::None;
    };
    if !lt1.coefficient.is_one() || !lt_f.coefficient.is_one() {
        return CaseTag::None;
    }
    let fbar = lt_f.monomial;
    if !lt1.monomial.ends_with(&fbar) {
        return CaseTag::None;
    }
    let stem = lt1.monomial.prefix(lt1.monomial.len() - fbar.len());
    let phi1 = &fox_of_relator(&r1, &r2, X) - &f.conjugate_words(&stem, &Word::empty());
    if phi1.is_zero() {
        return CaseTag::Phi1Zero;
    }
    let lt_phi = phi1.leading_term(alphabet).expect("nonzero phi1").monomial;
    let dfbar = fox_derivative(&fbar, X);
    if let Ok(lt) = dfbar.leading_term(alphabet) {
        if lt_phi == stem.concat(&lt.monomial) {
            return CaseTag::LtUDfBar;
        }
    }
    let dr2 = fox_derivative(&r2, X);
    if let Ok(lt) = dr2.leading_term(alphabet) {
        if lt_phi == lt.monomial {
            return CaseTag::LtR2;
        }
    }
    let f1 = &phi1_tail(f, &fbar);
    if let Ok(lt) = f1.leading_term(alphabet) {
        if lt_phi == stem.concat(&lt.monomial) {
            return CaseTag::LtUF1;
        }
    }
    CaseTag::None
}

/// `f1 = f - fbar`, the divisor with its leading monomial removed.
fn phi1_tail(f: &Polynomial, fbar: &Word) -> Polynomial {
    f - &Polynomial::monomial(fbar.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::parse_polynomial;

    fn word(a: &Alphabet, s: &str) -> Word {
        a.parse_word(s).unwrap()
    }

    /// The flagship instance: one y-generator, w = y1, blocks 1, 1, y1
    /// against the single block y1, giving y1 x y1 x y1 = y1.
    fn flagship() -> FamilySpec {
        let a = family_alphabet(1);
        FamilySpec::new(
            1,
            word(&a, "y1"),
            vec![vec![Word::empty(), Word::empty(), word(&a, "y1")]],
            vec![vec![word(&a, "y1")]],
        )
    }

    #[test]
    fn build_flagship() {
        let spec = flagship();
        let p = spec.build().unwrap();
        let a = spec.alphabet();
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].0, word(a, "y1 x y1 x y1"));
        assert_eq!(p.relators[0].1, word(a, "y1"));
    }

    #[test]
    fn build_rejects_empty_w() {
        let spec = FamilySpec::new(1, Word::empty(), vec![vec![Word::empty()]], vec![vec![Word::empty()]]);
        assert_eq!(
            spec.build(),
            Err(FamilyError::Invalid(Violation::WMustBeNonempty))
        );
    }

    #[test]
    fn build_rejects_x_in_block() {
        let a = family_alphabet(1);
        let spec = FamilySpec::new(
            1,
            word(&a, "y1"),
            vec![vec![word(&a, "x"), Word::empty()]],
            vec![vec![word(&a, "y1")]],
        );
        assert_eq!(
            spec.build(),
            Err(FamilyError::Invalid(Violation::BlockInvolvesX {
                relator: 1,
                side: 1,
                block: 1
            }))
        );
    }

    #[test]
    fn validate_flagship_is_clean() {
        assert!(flagship().validate().is_empty());
    }

    #[test]
    fn validate_reports_cross_subword() {
        let a = family_alphabet(2);
        // r21 = y2 y1 x contains r12 = y2; no other containment across
        // relations, and same-relation containments do not count.
        let spec = FamilySpec::new(
            2,
            word(&a, "y1"),
            vec![
                vec![word(&a, "y1"), word(&a, "y1")],
                vec![word(&a, "y2"), Word::empty()],
            ],
            vec![vec![word(&a, "y2")], vec![word(&a, "y1 y1 y1")]],
        );
        assert_eq!(
            spec.validate(),
            vec![Violation::CrossSubword { container: (2, 1), contained: (1, 2) }]
        );
    }

    #[test]
    fn validate_reports_unreduced_side() {
        let a = family_alphabet(1);
        let spec = FamilySpec::new(
            1,
            word(&a, "y1"),
            vec![vec![word(&a, "y1 y1^-1"), Word::empty()]],
            vec![vec![word(&a, "y1")]],
        );
        assert!(spec
            .validate()
            .contains(&Violation::NotFreelyReduced { relator: 1, side: 1 }));
    }

    #[test]
    fn factor_flagship() {
        let spec = flagship();
        let a = spec.alphabet();
        let report = factor_derivatives(&spec).unwrap();
        assert_eq!(report.f, parse_polynomial(a, "y1").unwrap());
        assert_eq!(report.d, vec![parse_polynomial(a, "1 + y1 x").unwrap()]);
        assert!(report.exact);
        assert_eq!(
            &report.d[0] * &report.f,
            parse_polynomial(a, "y1 + y1 x y1").unwrap()
        );
    }

    #[test]
    fn factor_single_block_sides_give_zero_cofactor() {
        let a = family_alphabet(2);
        let spec = FamilySpec::new(
            2,
            word(&a, "y1"),
            vec![vec![word(&a, "y2")]],
            vec![vec![word(&a, "y1 y1")]],
        );
        let report = factor_derivatives(&spec).unwrap();
        assert!(report.d[0].is_zero());
        assert!(report.exact);
    }

    #[test]
    fn right_divide_examples() {
        let a = family_alphabet(1);
        let p = parse_polynomial(&a, "y1 + y1 x y1").unwrap();
        let f = parse_polynomial(&a, "y1").unwrap();
        assert_eq!(
            right_divide(&p, &f, &a).unwrap(),
            parse_polynomial(&a, "1 + y1 x").unwrap()
        );
        assert_eq!(right_divide(&f, &f, &a).unwrap(), Polynomial::one());
        assert_eq!(
            right_divide(&parse_polynomial(&a, "x").unwrap(), &f, &a),
            Err(RightDivideError::NotDivisible)
        );
        assert_eq!(
            right_divide(&p, &Polynomial::zero(), &a),
            Err(RightDivideError::DivisorZero)
        );
        assert_eq!(
            right_divide(&p, &parse_polynomial(&a, "2*y1").unwrap(), &a),
            Err(RightDivideError::DivisorNotMonic)
        );
    }

    #[test]
    fn classify_flagship_is_none() {
        // phi1 = y1: its leading term stems from d(u_i)/dx, which is not one
        // of the four tracked summands.
        let spec = flagship();
        let report = factor_derivatives(&spec).unwrap();
        assert_eq!(classify_phi1(&spec, 0, &report.f), CaseTag::None);
    }

    #[test]
    fn classify_phi1_zero() {
        let a = family_alphabet(1);
        let spec = FamilySpec::new(
            1,
            word(&a, "y1"),
            vec![vec![Word::empty(), Word::empty()]],
            vec![vec![word(&a, "y1")]],
        );
        let report = factor_derivatives(&spec).unwrap();
        assert_eq!(classify_phi1(&spec, 0, &report.f), CaseTag::Phi1Zero);
    }

    #[test]
    fn classify_lt_r2() {
        let a = family_alphabet(1);
        let spec = FamilySpec::new(
            1,
            word(&a, "y1"),
            vec![vec![Word::empty(), Word::empty(), Word::empty()]],
            vec![vec![word(&a, "y1"), Word::empty()]],
        );
        let report = factor_derivatives(&spec).unwrap();
        assert_eq!(classify_phi1(&spec, 0, &report.f), CaseTag::LtR2);
    }

    #[test]
    fn classify_lt_u_f1_with_supplied_divisor() {
        let a = family_alphabet(2);
        let spec = FamilySpec::new(
            2,
            word(&a, "y1"),
            vec![vec![word(&a, "y1"), Word::empty()]],
            vec![vec![word(&a, "y2")]],
        );
        // r11 = y1 y1 x, LT(d r11/dx) = y1^2 = 1 · (y1^2 + y1)'s leading word
        let f = parse_polynomial(&a, "y1^2 + y1").unwrap();
        assert_eq!(classify_phi1(&spec, 0, &f), CaseTag::LtUF1);
    }

    #[test]
    fn classify_lt_u_dfbar_with_supplied_divisor() {
        let a = family_alphabet(1);
        let spec = FamilySpec::new(
            1,
            word(&a, "y1"),
            vec![vec![Word::empty(), Word::empty(), Word::empty()]],
            vec![vec![word(&a, "y1")]],
        );
        // r11 = y1 x y1 x, LT(d r11/dx) = y1 x y1 ends with x y1
        let f = parse_polynomial(&a, "x y1").unwrap();
        assert_eq!(classify_phi1(&spec, 0, &f), CaseTag::LtUDfBar);
    }

    #[test]
    fn file_round_trip() {
        let text = "family\ny-generators: 1\nw: y1\nrelator 1: u = 1, 1, y1 ; v = y1\n";
        let spec = FamilySpec::parse(text).unwrap();
        assert_eq!(spec, flagship());
        assert_eq!(spec.display(), text);
        assert_eq!(FamilySpec::parse(&spec.display()).unwrap(), spec);
    }

    #[test]
    fn file_with_comment_and_q0_single_word() {
        let text = "family\ny-generators: 1\nw: y1\nrelator 1: u = 1, 1, 1 ; v = y1   # p=3 blocks, q=0 single word\n";
        let spec = FamilySpec::parse(text).unwrap();
        assert_eq!(spec.y_count(), 1);
        assert_eq!(spec.relator_count(), 1);
        assert_eq!(spec.relator_side(0, 1), spec.alphabet().parse_word("y1 x y1 x").unwrap());
        assert_eq!(spec.relator_side(0, 2), spec.alphabet().parse_word("y1").unwrap());
    }

    #[test]
    fn parse_errors_cite_lines() {
        let err = FamilySpec::parse("family\ny-generators: 1\nw: y1\nrelator 2: u = 1 ; v = 1\n")
            .unwrap_err();
        assert_eq!(err.line, 4);
    }
}
