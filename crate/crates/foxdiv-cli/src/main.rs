//! Command-line front end: parse presentation and family files, run the
//! analyses, and emit text or JSON reports.
//!
//! Exit codes: 0 success, 1 analysis-negative (the run succeeded but the
//! answer is "no": a vanishing witness search, a false torsion identity, an
//! unclassified elimination case, an inexact factorization), 2 input error,
//! 3 completion limits exceeded. Reports are byte-deterministic for fixed
//! inputs and flags. `FOXDIV_LOG` (off, info, debug) controls diagnostics on
//! standard error.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use foxdiv::family::{classify_phi1, factor_derivatives, FamilySpec};
use foxdiv::groupring::{
    presentation_to_rules, to_semigroup, ChainComplex, GroupRing, ParseError, Presentation,
    PresentationKind, RingBuildError,
};
use foxdiv::gsbasis::{shirshov_complete, CompletionLimits, CompletionStatus};
use foxdiv::ncpoly::parse_polynomial;
use foxdiv::witness::{search_kernel, torsion_identity_check, verify_witness, WitnessError};
use foxdiv::{Alphabet, ChainVector, Polynomial};

#[derive(Parser)]
#[command(name = "foxdiv", version, about = "Rewriting, Fox calculus, and zero-divisor certificates for finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LimitArgs {
    /// Maximum number of rules before completion gives up
    #[arg(long = "max-rules", default_value_t = 500)]
    max_rules: usize,
    /// Maximum number of rewrite steps before completion gives up
    #[arg(long = "max-steps", default_value_t = 100_000)]
    max_steps: u64,
    /// Maximum leading-word length of a derived rule
    #[arg(long = "max-degree", default_value_t = 24)]
    max_degree: usize,
}

impl LimitArgs {
    fn build(&self) -> Result<CompletionLimits, CliError> {
        CompletionLimits::new(self.max_rules, self.max_steps, self.max_degree)
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word in the quotient of a presentation
    Normalform {
        /// Presentation or family file
        input: PathBuf,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        json: bool,
    },
    /// Complete the rewrite system of a presentation and print the report
    Complete {
        input: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate irreducible words of the completed system
    Irr {
        input: PathBuf,
        #[arg(long = "max-len")]
        max_len: usize,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        json: bool,
    },
    /// Fox derivative of a word with respect to a generator
    Fox {
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'x', long = "generator")]
        generator: String,
        #[arg(long)]
        json: bool,
    },
    /// Factor the relator derivatives of a family instance
    Factor {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify the first elimination step of one relator of a family instance
    Classify {
        input: PathBuf,
        /// 1-based relator index
        #[arg(short = 'i', long = "index")]
        index: usize,
        #[arg(long)]
        json: bool,
    },
    /// Search for kernel vectors and emit zero-divisor certificates
    Witness {
        input: PathBuf,
        #[arg(long = "support-len", default_value_t = 1)]
        support_len: usize,
        #[arg(long = "coeff-bound", default_value_t = 1)]
        coeff_bound: u32,
        /// File with one beta polynomial per line instead of searching
        #[arg(long)]
        beta: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        json: bool,
    },
    /// Verify the torsion zero-divisor identity in the cyclic group of order n
    TorsionCheck {
        #[arg(short = 'n', long = "order")]
        n: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Limit(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Limit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Limit(m) => m,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

enum InputFile {
    Presentation(Presentation),
    Family(FamilySpec),
}

fn read_input(path: &Path) -> Result<InputFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let first = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => l[..i].trim(),
            None => l.trim(),
        })
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first == "family" {
        Ok(InputFile::Family(FamilySpec::parse(&text)?))
    } else {
        Ok(InputFile::Presentation(Presentation::parse(&text)?))
    }
}

fn presentation_of(input: InputFile) -> Result<Presentation, CliError> {
    match input {
        InputFile::Presentation(p) => Ok(p),
        InputFile::Family(spec) => spec.build().map_err(|e| CliError::Input(e.to_string())),
    }
}

fn family_of(input: InputFile) -> Result<FamilySpec, CliError> {
    match input {
        InputFile::Family(spec) => Ok(spec),
        InputFile::Presentation(_) => {
            Err(CliError::Input("this command needs a family file".to_string()))
        }
    }
}

fn build_ring(
    presentation: &Presentation,
    limits: &CompletionLimits,
) -> Result<Arc<GroupRing>, CliError> {
    GroupRing::from_presentation(presentation, limits).map_err(|e| match e {
        RingBuildError::LimitExceeded(system) => CliError::Limit(format!(
            "completion exceeded its limits after {} rules",
            system.rules().len()
        )),
        RingBuildError::Ring(inner) => CliError::Input(inner.to_string()),
    })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Normalform { input, word, limits, json } => {
            let presentation = presentation_of(read_input(&input)?)?;
            let limits = limits.build()?;
            let ring = build_ring(&presentation, &limits)?;
            let parsed = ring
                .alphabet()
                .parse_word(&word)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let normal = ring
                .normal_form(&parsed)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let shown = ring.alphabet().display_word(&normal);
            if json {
                println!("{}", json!({"word": word, "normal_form": shown}));
            } else {
                println!("{shown}");
            }
            Ok(0)
        }
        Command::Complete { input, limits, json } => {
            let presentation = presentation_of(read_input(&input)?)?;
            let limits = limits.build()?;
            let semigroup = match presentation.kind {
                PresentationKind::Group => {
                    to_semigroup(&presentation).map_err(|e| CliError::Input(e.to_string()))?
                }
                PresentationKind::Semigroup => presentation,
            };
            let raw =
                presentation_to_rules(&semigroup).map_err(|e| CliError::Input(e.to_string()))?;
            let completed =
                shirshov_complete(&raw, &limits).map_err(|e| CliError::Input(e.to_string()))?;
            if json {
                println!("{}", completed.report_json());
            } else {
                print!("{}", completed.report_text());
            }
            if completed.status() == CompletionStatus::LimitExceeded {
                log::info!("completion stopped at {} rules", completed.rules().len());
                return Ok(3);
            }
            Ok(0)
        }
        Command::Irr { input, max_len, limits, json } => {
            let presentation = presentation_of(read_input(&input)?)?;
            let limits = limits.build()?;
            let ring = build_ring(&presentation, &limits)?;
            let words = ring.system().irr_enumerate(max_len);
            let shown: Vec<String> =
                words.iter().map(|w| ring.alphabet().display_word(w)).collect();
            if json {
                println!("{}", json!({"max_len": max_len, "count": shown.len(), "words": shown}));
            } else {
                for word in &shown {
                    println!("{word}");
                }
            }
            Ok(0)
        }
        Command::Fox { word, generator, json } => {
            let alphabet = free_alphabet_for(&word, &generator)?;
            let parsed = alphabet
                .parse_word(&word)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let x = alphabet
                .generator(&generator)
                .ok_or_else(|| CliError::Input(format!("unknown generator `{generator}`")))?;
            let derivative = foxdiv::fox_derivative(&parsed, x);
            let shown = derivative.display(&alphabet);
            if json {
                println!(
                    "{}",
                    json!({"word": word, "generator": generator, "derivative": shown})
                );
            } else {
                println!("{shown}");
            }
            Ok(0)
        }
        Command::Factor { input, json } => {
            let spec = family_of(read_input(&input)?)?;
            let report = factor_derivatives(&spec).map_err(|e| CliError::Input(e.to_string()))?;
            if json {
                println!("{}", report.report_json(spec.alphabet()));
            } else {
                print!("{}", report.report_text(spec.alphabet()));
            }
            Ok(if report.exact { 0 } else { 1 })
        }
        Command::Classify { input, index, json } => {
            let spec = family_of(read_input(&input)?)?;
            if index == 0 || index > spec.relator_count() {
                return Err(CliError::Input(format!(
                    "relator index {index} out of range 1..={}",
                    spec.relator_count()
                )));
            }
            let report = factor_derivatives(&spec).map_err(|e| CliError::Input(e.to_string()))?;
            let tag = classify_phi1(&spec, index - 1, &report.f);
            if json {
                println!("{}", json!({"relator": index, "case": tag.as_str()}));
            } else {
                println!("{}", tag.as_str());
            }
            Ok(if tag == foxdiv::CaseTag::None { 1 } else { 0 })
        }
        Command::Witness { input, support_len, coeff_bound, beta, limits, json } => {
            let limits = limits.build()?;
            let (presentation, factorization) = match read_input(&input)? {
                InputFile::Family(spec) => {
                    let report =
                        factor_derivatives(&spec).map_err(|e| CliError::Input(e.to_string()))?;
                    let presentation =
                        spec.build().map_err(|e| CliError::Input(e.to_string()))?;
                    (presentation, report)
                }
                InputFile::Presentation(p) => {
                    if p.relator_count() != 1 {
                        return Err(CliError::Input(
                            "witness on a plain presentation needs exactly one relator; use a family file"
                                .to_string(),
                        ));
                    }
                    let (r1, r2) = &p.relators[0];
                    let f = foxdiv::fox_of_relator(r1, r2, 0);
                    if f.is_zero() {
                        return Err(CliError::Input(
                            "the relator derivative with respect to the first generator is zero"
                                .to_string(),
                        ));
                    }
                    let report =
                        foxdiv::FactorizationReport { f, d: vec![Polynomial::one()], exact: true };
                    (p, report)
                }
            };
            let ring = build_ring(&presentation, &limits)?;
            let complex = ChainComplex::new(&presentation, Arc::clone(&ring));
            let betas: Vec<ChainVector> = match beta {
                Some(path) => vec![read_beta(&path, &complex)?],
                None => search_kernel(&complex, support_len, coeff_bound),
            };
            let mut reports = Vec::new();
            let mut kernel_failures = Vec::new();
            for candidate in &betas {
                match verify_witness(&complex, candidate, &factorization) {
                    Ok(report) => reports.push(report),
                    Err(WitnessError::BetaNotInKernel { image }) => {
                        let shown: Vec<String> =
                            image.iter().map(|p| p.display(ring.alphabet())).collect();
                        kernel_failures.push(shown);
                    }
                    Err(e) => return Err(CliError::Input(e.to_string())),
                }
            }
            if json {
                let value = json!({
                    "witnesses": reports
                        .iter()
                        .map(|r| r.report_json(ring.alphabet()))
                        .collect::<Vec<_>>(),
                    "kernel_failures": kernel_failures,
                });
                println!("{value}");
            } else {
                println!("witnesses: {}", reports.len());
                for (i, report) in reports.iter().enumerate() {
                    println!();
                    println!("witness {}:", i + 1);
                    print!("{}", report.report_text(ring.alphabet()));
                }
                for image in &kernel_failures {
                    println!();
                    println!("beta_not_in_kernel: d1 image [{}]", image.join(", "));
                }
            }
            let conclusive = reports.iter().any(|r| r.product_zero && r.nontrivial);
            Ok(if conclusive && kernel_failures.is_empty() { 0 } else { 1 })
        }
        Command::TorsionCheck { n, json } => {
            let holds = torsion_identity_check(n).map_err(|e| match e {
                WitnessError::TorsionOrderTooSmall(_) => CliError::Input(e.to_string()),
                WitnessError::Build(RingBuildError::LimitExceeded(_)) => {
                    CliError::Limit(e.to_string())
                }
                other => CliError::Input(other.to_string()),
            })?;
            if json {
                println!("{}", json!({"n": n, "holds": holds}));
            } else {
                println!("{holds}");
            }
            Ok(if holds { 0 } else { 1 })
        }
    }
}

/// Free alphabet covering the word's generators plus the differentiation
/// variable, ordered by name for reproducible output.
fn free_alphabet_for(word: &str, generator: &str) -> Result<Alphabet, CliError> {
    let mut names = std::collections::BTreeSet::new();
    names.insert(generator.to_string());
    for token in word.split_whitespace() {
        if token == "1" {
            continue;
        }
        let name = token.split_once('^').map(|(n, _)| n).unwrap_or(token);
        names.insert(name.to_string());
    }
    Alphabet::new(names.into_iter().collect::<Vec<_>>())
        .map_err(|e| CliError::Input(e.to_string()))
}

/// Read a beta file: one polynomial literal per relator line; `#` comments
/// and blank lines are ignored.
fn read_beta(path: &Path, complex: &ChainComplex) -> Result<ChainVector, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let alphabet = complex.ring().alphabet();
    let mut polys = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => raw[..i].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        let poly = parse_polynomial(alphabet, line)
            .map_err(|e| CliError::Input(format!("line {}: {e}", idx + 1)))?;
        polys.push(poly);
    }
    let expected = complex.presentation().relator_count();
    if polys.len() != expected {
        return Err(CliError::Input(format!(
            "beta file has {} entries, expected {expected}",
            polys.len()
        )));
    }
    Ok(ChainVector::from_polynomials(complex.ring(), &polys))
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FOXDIV_LOG", "off"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.code());
        }
    }
}
