//! Loading proof files and running them through checking, extraction and
//! bounded verification.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checker::{
    self, Universe, Verdict, DEFAULT_BLOCK_CAP, DEFAULT_BOUND, DEFAULT_FUEL, DEFAULT_SET_CAP,
};
use crate::extract::{extract, realizability_sequent, ExtractError, Extraction};
use crate::interp::{BaseInterpretation, InterpError, InterpName};
use crate::kernel::{parse_proof_file, KernelError, ProofFile};
use crate::sexp::{self, Sexp};
use crate::target::STATE_PARAM;
use crate::term::Term;
use crate::types::{check_type, RType};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error("bad realizer file: {0}")]
    Realizer(String),
    #[error("bad config: {0}")]
    Config(String),
}

fn io_error(path: &Path, e: std::io::Error) -> PipelineError {
    PipelineError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn theorem_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

pub fn load_proof(path: &Path) -> Result<ProofFile, PipelineError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(parse_proof_file(&theorem_name(path), &text)?)
}

/// The `.proof` files directly inside `dir`, sorted by name.
pub fn proof_files(dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| io_error(dir, e))? {
        let p = entry.map_err(|e| io_error(dir, e))?.path();
        if p.is_file() && p.extension().is_some_and(|x| x == "proof") {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Verification settings, also readable from a TOML file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub bound: u64,
    pub fuel: u64,
    pub set_cap: usize,
    pub block_cap: usize,
    pub interps: Vec<InterpName>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound: DEFAULT_BOUND,
            fuel: DEFAULT_FUEL,
            set_cap: DEFAULT_SET_CAP,
            block_cap: DEFAULT_BLOCK_CAP,
            interps: InterpName::ALL.to_vec(),
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, PipelineError> {
        toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))
    }

    pub fn universe(&self) -> Universe {
        let mut u = Universe::new(self.bound);
        u.set_cap = self.set_cap;
        u.block_cap = self.block_cap;
        u
    }
}

/// An extracted realizer as written to disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizerFile {
    pub theorem: String,
    pub interp: InterpName,
    pub terms: Vec<Term>,
    /// Absent for untyped instances.
    pub types: Option<Vec<RType>>,
}

impl RealizerFile {
    pub fn from_extraction(theorem: &str, e: &Extraction) -> RealizerFile {
        let types = if e.interp.typed() {
            e.conclusion_types().ok()
        } else {
            None
        };
        RealizerFile {
            theorem: theorem.to_string(),
            interp: e.interp.name,
            terms: e.terms.clone(),
            types,
        }
    }

    pub fn to_sexp(&self) -> Sexp {
        let mut items = vec![
            Sexp::atom("realizer"),
            Sexp::list(vec![
                Sexp::atom("theorem"),
                Sexp::atom(self.theorem.as_str()),
            ]),
            Sexp::list(vec![Sexp::atom("interp"), Sexp::atom(self.interp.as_str())]),
        ];
        let mut terms = vec![Sexp::atom("terms")];
        terms.extend(self.terms.iter().map(Term::to_sexp));
        items.push(Sexp::list(terms));
        if let Some(ts) = &self.types {
            let mut ty = vec![Sexp::atom("type")];
            for t in ts {
                ty.push(sexp::parse_one(&t.to_string()).expect("types print as s-expressions"));
            }
            items.push(Sexp::list(ty));
        }
        Sexp::list(items)
    }

    pub fn parse(text: &str) -> Result<RealizerFile, PipelineError> {
        let bad = |m: String| PipelineError::Realizer(m);
        let e = sexp::parse_one(text).map_err(|e| bad(e.to_string()))?;
        if e.head() != Some("realizer") {
            return Err(bad("expected (realizer ...)".into()));
        }
        let (mut theorem, mut interp, mut terms, mut types) = (None, None, None, None);
        for item in &e.as_list().unwrap_or(&[])[1..] {
            let rest = item.as_list().map(|l| &l[1..]).unwrap_or(&[]);
            match item.head() {
                Some("theorem") => theorem = rest.first().and_then(Sexp::as_atom).map(String::from),
                Some("interp") => {
                    let name = rest.first().and_then(Sexp::as_atom).unwrap_or("");
                    interp = Some(name.parse::<InterpName>().map_err(|e| bad(e.to_string()))?);
                }
                Some("terms") => {
                    terms = Some(
                        rest.iter()
                            .map(Term::from_sexp)
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| bad(e.to_string()))?,
                    )
                }
                Some("type") => {
                    types = Some(
                        rest.iter()
                            .map(RType::from_sexp)
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|e| bad(e.to_string()))?,
                    )
                }
                _ => return Err(bad(format!("unexpected entry {item}"))),
            }
        }
        Ok(RealizerFile {
            theorem: theorem.ok_or_else(|| bad("missing (theorem ...)".into()))?,
            interp: interp.ok_or_else(|| bad("missing (interp ...)".into()))?,
            terms: terms.ok_or_else(|| bad("missing (terms ...)".into()))?,
            types,
        })
    }
}

impl fmt::Display for RealizerFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp().pretty(80))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
    /// The instance has no realizer for some axiom or predicate used.
    Unsupported,
    /// The proof or the supplied realizer was rejected.
    Rejected,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
            Status::Unsupported => "unsupported",
            Status::Rejected => "rejected",
        }
    }
}

/// The outcome of verifying one theorem under one interpretation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub theorem: String,
    pub interp: InterpName,
    pub verdict: Status,
    pub bound: u64,
    pub fuel_used: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} (bound {}, fuel {})",
            self.theorem,
            self.interp,
            self.verdict.as_str(),
            self.bound,
            self.fuel_used
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        if let Some(r) = &self.reason {
            write!(f, " [{r}]")?;
        }
        Ok(())
    }
}

fn is_unsupported(e: &InterpError) -> bool {
    matches!(
        e,
        InterpError::UnsupportedAxiom { .. }
            | InterpError::UnsupportedPredicate { .. }
            | InterpError::NotApplicable(_)
    )
}

/// Replaces the extracted terms with `terms`, checking arity and, for typed
/// instances, the types.
pub fn substitute_realizer(e: &Extraction, terms: Vec<Term>) -> Result<Extraction, PipelineError> {
    let shape = e.conclusion_types().map_err(ExtractError::from)?;
    if shape.len() != terms.len() {
        return Err(PipelineError::Realizer(format!(
            "expected {} terms, got {}",
            shape.len(),
            terms.len()
        )));
    }
    if e.interp.typed() {
        let mut ctx = e.flat_context_vars();
        if e.interp.uses_state() {
            ctx.push((STATE_PARAM.to_string(), RType::State));
        }
        for (t, ty) in terms.iter().zip(&shape) {
            check_type(t, ty, &ctx).map_err(|err| PipelineError::Realizer(err.to_string()))?;
        }
    }
    Ok(Extraction { terms, ..e.clone() })
}

/// Checks, extracts and verifies one proof, optionally with a supplied
/// realizer in place of the extracted one.
pub fn verify_proof(
    pf: &ProofFile,
    interp: InterpName,
    cfg: &Config,
    realizer: Option<&[Term]>,
) -> Report {
    let mut report = Report {
        theorem: pf.theorem.clone(),
        interp,
        verdict: Status::Rejected,
        bound: cfg.bound,
        fuel_used: 0,
        counterexample: None,
        reason: None,
    };
    let checked = match pf.check() {
        Ok(c) => c,
        Err(e) => {
            report.reason = Some(e.to_string());
            return report;
        }
    };
    let mut ex = match extract(&checked, &BaseInterpretation::new(interp)) {
        Ok(ex) => ex,
        Err(ExtractError::Interp(e)) if is_unsupported(&e) => {
            report.verdict = Status::Unsupported;
            report.reason = Some(e.to_string());
            return report;
        }
        Err(e) => {
            report.verdict = Status::Unknown;
            report.reason = Some(e.to_string());
            return report;
        }
    };
    if let Some(terms) = realizer {
        match substitute_realizer(&ex, terms.to_vec()) {
            Ok(e) => ex = e,
            Err(e) => {
                report.reason = Some(e.to_string());
                return report;
            }
        }
    }
    let phi = match realizability_sequent(&ex) {
        Ok(phi) => phi,
        Err(e) => {
            report.verdict = if is_unsupported(&e) {
                Status::Unsupported
            } else {
                Status::Unknown
            };
            report.reason = Some(e.to_string());
            return report;
        }
    };
    let out = checker::verify(&phi, &cfg.universe(), cfg.fuel);
    report.fuel_used = out.fuel_used;
    match out.verdict {
        Verdict::Holds => report.verdict = Status::Holds,
        Verdict::Fails(c) => {
            report.verdict = Status::Fails;
            report.counterexample = Some(c.to_string());
        }
        Verdict::Unknown(r) => {
            report.verdict = Status::Unknown;
            report.reason = Some(r);
        }
    }
    report
}

/// Verifies every proof under every configured interpretation in parallel.
/// Reports are sorted by theorem, then interpretation.
pub fn verify_all(proofs: &[ProofFile], cfg: &Config) -> Vec<Report> {
    let jobs: Vec<(&ProofFile, InterpName)> = proofs
        .iter()
        .flat_map(|p| cfg.interps.iter().map(move |&i| (p, i)))
        .collect();
    let mut out: Vec<Report> = jobs
        .into_par_iter()
        .map(|(p, i)| verify_proof(p, i, cfg, None))
        .collect();
    out.sort_by(|a, b| (&a.theorem, a.interp).cmp(&(&b.theorem, b.interp)));
    out
}
