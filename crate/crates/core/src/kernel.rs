//! Derivations in Heyting arithmetic and their checker.
//!
//! Contexts flow from the root towards the leaves: a derivation is checked
//! against a context and the checker computes the conclusion of every node.
//! Weakening and contraction are therefore implicit: a hypothesis leaf only
//! needs its formula to occur somewhere in the current context.

use std::fmt;

use thiserror::Error;

use crate::sexp::{self, Sexp, SexpError};
use crate::syntax::{
    parse_formula, parse_formula_sexp, Formula, Macros, Pred, Sequent, SrcTerm, SyntaxError, Var,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InductionMode {
    /// `A(0) ∧ ∀n:ℕ(A(n) → A(succ n)) → ∀n:ℕ A(n)`
    Restricted,
    /// `A(0) ∧ ∀n(A(n) → A(succ n)) → ∀n:ℕ A(n)`
    Unrestricted,
}

impl InductionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            InductionMode::Restricted => "restricted",
            InductionMode::Unrestricted => "unrestricted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomInstance {
    ExFalso(Formula),
    Refl,
    Sym,
    Trans,
    NatEq,
    NatZero,
    NatSucc,
    SuccInj,
    SuccNotZero,
    Induction {
        var: Var,
        formula: Formula,
        mode: InductionMode,
    },
    /// `(A → ∃x B) → ∃x (A → B)` for negated `A` without `x` free.
    IndependenceOfPremise {
        premise: Formula,
        var: Var,
        body: Formula,
    },
    StZero,
    StSucc,
}

impl AxiomInstance {
    pub fn schema_name(&self) -> &'static str {
        match self {
            AxiomInstance::ExFalso(_) => "efq",
            AxiomInstance::Refl => "refl",
            AxiomInstance::Sym => "sym",
            AxiomInstance::Trans => "trans",
            AxiomInstance::NatEq => "nat-eq",
            AxiomInstance::NatZero => "nat-zero",
            AxiomInstance::NatSucc => "nat-succ",
            AxiomInstance::SuccInj => "succ-inj",
            AxiomInstance::SuccNotZero => "succ-not-zero",
            AxiomInstance::Induction { .. } => "ind",
            AxiomInstance::IndependenceOfPremise { .. } => "ip",
            AxiomInstance::StZero => "st-zero",
            AxiomInstance::StSucc => "st-succ",
        }
    }

    pub fn to_sexp(&self) -> Sexp {
        let mut items = vec![Sexp::atom("axiom"), Sexp::atom(self.schema_name())];
        match self {
            AxiomInstance::ExFalso(a) => items.push(a.to_sexp()),
            AxiomInstance::Induction { var, formula, mode } => {
                items.push(Sexp::atom(var.clone()));
                items.push(formula.to_sexp());
                items.push(Sexp::atom(mode.as_str()));
            }
            AxiomInstance::IndependenceOfPremise { premise, var, body } => {
                items.push(premise.to_sexp());
                items.push(Sexp::atom(var.clone()));
                items.push(body.to_sexp());
            }
            _ => {}
        }
        Sexp::list(items)
    }
}

impl fmt::Display for AxiomInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// Logical axiom `Γ, A ⊢ A`.
    Hyp(Formula),
    AndIntro(Box<Derivation>, Box<Derivation>),
    /// Projection onto the first (`1`) or second (`2`) conjunct.
    AndElim(u8, Box<Derivation>),
    /// Discharges the hypothesis `A`.
    ImpIntro(Formula, Box<Derivation>),
    ImpElim(Box<Derivation>, Box<Derivation>),
    /// Concludes `goal = ∃x A` from a proof of `A[witness/x]`.
    ExIntro {
        goal: Formula,
        witness: SrcTerm,
        premise: Box<Derivation>,
    },
    /// From `Γ ⊢ ∃x A` and `Γ, A[eigen/x] ⊢ B` conclude `Γ ⊢ B`.
    ExElim {
        eigen: Var,
        major: Box<Derivation>,
        minor: Box<Derivation>,
    },
    /// From `Γ ⊢ A` conclude `Γ ⊢ ∀eigen A`.
    AllIntro {
        eigen: Var,
        premise: Box<Derivation>,
    },
    AllElim {
        term: SrcTerm,
        premise: Box<Derivation>,
    },
    Axiom(AxiomInstance),
}

impl Derivation {
    pub fn premises(&self) -> Vec<&Derivation> {
        match self {
            Derivation::Hyp(_) | Derivation::Axiom(_) => vec![],
            Derivation::AndIntro(a, b) | Derivation::ImpElim(a, b) => vec![a, b],
            Derivation::ExElim { major, minor, .. } => vec![major, minor],
            Derivation::AndElim(_, p)
            | Derivation::ImpIntro(_, p)
            | Derivation::ExIntro { premise: p, .. }
            | Derivation::AllIntro { premise: p, .. }
            | Derivation::AllElim { premise: p, .. } => vec![p],
        }
    }

    pub fn axioms(&self) -> Vec<&AxiomInstance> {
        let mut out = Vec::new();
        self.collect_axioms(&mut out);
        out
    }

    fn collect_axioms<'a>(&'a self, out: &mut Vec<&'a AxiomInstance>) {
        if let Derivation::Axiom(a) = self {
            out.push(a);
        }
        for p in self.premises() {
            p.collect_axioms(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises().iter().map(|p| p.size()).sum::<usize>()
    }

    pub fn to_sexp(&self) -> Sexp {
        let rule = |tag: &str, mut rest: Vec<Sexp>| {
            let mut items = vec![Sexp::atom("rule"), Sexp::atom(tag)];
            items.append(&mut rest);
            Sexp::list(items)
        };
        match self {
            Derivation::Hyp(a) => rule("hyp", vec![a.to_sexp()]),
            Derivation::AndIntro(a, b) => rule("and-intro", vec![a.to_sexp(), b.to_sexp()]),
            Derivation::AndElim(i, p) => {
                rule("and-elim", vec![Sexp::atom(i.to_string()), p.to_sexp()])
            }
            Derivation::ImpIntro(a, p) => rule("imp-intro", vec![a.to_sexp(), p.to_sexp()]),
            Derivation::ImpElim(a, b) => rule("imp-elim", vec![a.to_sexp(), b.to_sexp()]),
            Derivation::ExIntro {
                goal,
                witness,
                premise,
            } => rule(
                "ex-intro",
                vec![goal.to_sexp(), witness.to_sexp(), premise.to_sexp()],
            ),
            Derivation::ExElim {
                eigen,
                major,
                minor,
            } => rule(
                "ex-elim",
                vec![Sexp::atom(eigen.clone()), major.to_sexp(), minor.to_sexp()],
            ),
            Derivation::AllIntro { eigen, premise } => rule(
                "all-intro",
                vec![Sexp::atom(eigen.clone()), premise.to_sexp()],
            ),
            Derivation::AllElim { term, premise } => {
                rule("all-elim", vec![term.to_sexp(), premise.to_sexp()])
            }
            Derivation::Axiom(a) => a.to_sexp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("at {path}: {reason}")]
    RuleMismatch { path: String, reason: String },
    #[error("at {path}: eigenvariable `{var}` {reason}")]
    EigenvariableViolation {
        path: String,
        var: Var,
        reason: String,
    },
}

impl KernelError {
    pub fn path(&self) -> Option<&str> {
        match self {
            KernelError::Syntax(_) => None,
            KernelError::RuleMismatch { path, .. }
            | KernelError::EigenvariableViolation { path, .. } => Some(path),
        }
    }
}

impl From<SexpError> for KernelError {
    fn from(e: SexpError) -> Self {
        KernelError::Syntax(e.into())
    }
}

fn mismatch(path: &str, reason: impl Into<String>) -> KernelError {
    KernelError::RuleMismatch {
        path: path.to_string(),
        reason: reason.into(),
    }
}

fn axiom_formula(text: &str) -> Formula {
    parse_formula(text).expect("built-in axiom text parses")
}

/// The sequent asserted by an axiom instance, with qualified quantifiers
/// already unfolded.
pub fn axiom_sequent(a: &AxiomInstance) -> Result<Sequent, KernelError> {
    let closed = |t: &str| Ok(Sequent::closed(axiom_formula(t)));
    match a {
        AxiomInstance::ExFalso(b) => Ok(Sequent {
            context: vec![Formula::falsity()],
            conclusion: b.clone(),
        }),
        AxiomInstance::Refl => closed("(all n (= n n))"),
        AxiomInstance::Sym => closed("(all n (all m (-> (= n m) (= m n))))"),
        AxiomInstance::Trans => {
            closed("(all n (all i (all m (-> (and (= n i) (= i m)) (= n m)))))")
        }
        AxiomInstance::NatEq => closed("(all n (all m (-> (and (N n) (= n m)) (N m))))"),
        AxiomInstance::NatZero => closed("(N 0)"),
        AxiomInstance::NatSucc => closed("(allN n (N (s n)))"),
        AxiomInstance::SuccInj => closed("(allN n (allN m (-> (= (s n) (s m)) (= n m))))"),
        AxiomInstance::SuccNotZero => closed("(allN n (not (= (s n) 0)))"),
        AxiomInstance::StZero => closed("(st 0)"),
        AxiomInstance::StSucc => closed("(all n (-> (st n) (st (s n))))"),
        AxiomInstance::Induction { var, formula, mode } => {
            let n = var.as_str();
            let nv = SrcTerm::var(n);
            let base = formula.substitute(n, &SrcTerm::Zero);
            let next = formula.substitute(n, &SrcTerm::succ(nv.clone()));
            let step_body = Formula::imp(formula.clone(), next);
            let step = match mode {
                InductionMode::Restricted => Formula::forall_in(Pred::Nat, n, step_body),
                InductionMode::Unrestricted => Formula::forall(n, step_body),
            };
            Ok(Sequent::closed(Formula::imp(
                Formula::and(base, step),
                Formula::forall_in(Pred::Nat, n, formula.clone()),
            )))
        }
        AxiomInstance::IndependenceOfPremise { premise, var, body } => {
            if premise.has_free(var) {
                return Err(mismatch(
                    "root",
                    format!("independence of premise: `{var}` occurs free in the premise"),
                ));
            }
            if !matches!(premise, Formula::Imp(_, c) if **c == Formula::falsity()) {
                return Err(mismatch(
                    "root",
                    "independence of premise: the premise must be a negation",
                ));
            }
            Ok(Sequent::closed(Formula::imp(
                Formula::imp(premise.clone(), Formula::exists(var, body.clone())),
                Formula::exists(var, Formula::imp(premise.clone(), body.clone())),
            )))
        }
    }
}

/// A derivation annotated with the context and conclusion of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checked {
    pub context: Vec<Formula>,
    pub conclusion: Formula,
    pub node: CheckedNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckedNode {
    /// Index of the first context formula matching the hypothesis.
    Hyp(usize),
    AndIntro(Box<Checked>, Box<Checked>),
    AndElim(u8, Box<Checked>),
    ImpIntro(Box<Checked>),
    ImpElim(Box<Checked>, Box<Checked>),
    ExIntro(Box<Checked>),
    ExElim(Box<Checked>, Box<Checked>),
    AllIntro(Box<Checked>),
    AllElim(Box<Checked>),
    /// Positions in the context of the axiom's own hypotheses.
    Axiom(AxiomInstance, Vec<usize>),
}

impl Checked {
    pub fn sequent(&self) -> Sequent {
        Sequent {
            context: self.context.clone(),
            conclusion: self.conclusion.clone(),
        }
    }
}

fn find_in(ctx: &[Formula], a: &Formula) -> Option<usize> {
    ctx.iter().position(|g| g.alpha_eq(a))
}

fn ctx_has_free(ctx: &[Formula], x: &str) -> bool {
    ctx.iter().any(|g| g.has_free(x))
}

/// Checks `d` under `context` and returns the annotated tree.
pub fn check_tree(d: &Derivation, context: &[Formula]) -> Result<Checked, KernelError> {
    check_at(d, context, "root")
}

/// Checks `d` under `context` and returns the sequent it proves.
pub fn check(d: &Derivation, context: &[Formula]) -> Result<Sequent, KernelError> {
    Ok(check_tree(d, context)?.sequent())
}

fn check_at(d: &Derivation, ctx: &[Formula], path: &str) -> Result<Checked, KernelError> {
    let sub = |i: usize| format!("{path}/{i}");
    let done = |conclusion: Formula, node: CheckedNode| {
        Ok(Checked {
            context: ctx.to_vec(),
            conclusion,
            node,
        })
    };
    match d {
        Derivation::Hyp(a) => match find_in(ctx, a) {
            Some(i) => done(ctx[i].clone(), CheckedNode::Hyp(i)),
            None => Err(mismatch(
                path,
                format!("hypothesis {a} is not in the context"),
            )),
        },
        Derivation::AndIntro(p, q) => {
            let l = check_at(p, ctx, &sub(0))?;
            let r = check_at(q, ctx, &sub(1))?;
            done(
                Formula::and(l.conclusion.clone(), r.conclusion.clone()),
                CheckedNode::AndIntro(Box::new(l), Box::new(r)),
            )
        }
        Derivation::AndElim(i, p) => {
            let c = check_at(p, ctx, &sub(0))?;
            let part = match (&c.conclusion, i) {
                (Formula::And(a, _), 1) => (**a).clone(),
                (Formula::And(_, b), 2) => (**b).clone(),
                (Formula::And(..), _) => {
                    return Err(mismatch(path, "and-elim index must be 1 or 2"))
                }
                (other, _) => {
                    return Err(mismatch(
                        path,
                        format!("and-elim on non-conjunction {other}"),
                    ))
                }
            };
            done(part, CheckedNode::AndElim(*i, Box::new(c)))
        }
        Derivation::ImpIntro(a, p) => {
            let mut inner = ctx.to_vec();
            inner.push(a.clone());
            let c = check_at(p, &inner, &sub(0))?;
            done(
                Formula::imp(a.clone(), c.conclusion.clone()),
                CheckedNode::ImpIntro(Box::new(c)),
            )
        }
        Derivation::ImpElim(p, q) => {
            let f = check_at(p, ctx, &sub(0))?;
            let a = check_at(q, ctx, &sub(1))?;
            let b = match &f.conclusion {
                Formula::Imp(lhs, rhs) if lhs.alpha_eq(&a.conclusion) => (**rhs).clone(),
                Formula::Imp(lhs, _) => {
                    return Err(mismatch(
                        path,
                        format!("imp-elim: antecedent {lhs} does not match {}", a.conclusion),
                    ))
                }
                other => {
                    return Err(mismatch(
                        path,
                        format!("imp-elim on non-implication {other}"),
                    ))
                }
            };
            done(b, CheckedNode::ImpElim(Box::new(f), Box::new(a)))
        }
        Derivation::ExIntro {
            goal,
            witness,
            premise,
        } => {
            let (x, body) = match goal {
                Formula::Exists(x, body) => (x, body),
                other => {
                    return Err(mismatch(
                        path,
                        format!("ex-intro goal {other} is not existential"),
                    ))
                }
            };
            let c = check_at(premise, ctx, &sub(0))?;
            let expected = body.substitute(x, witness);
            if !c.conclusion.alpha_eq(&expected) {
                return Err(mismatch(
                    path,
                    format!(
                        "ex-intro: premise proves {} but witness {witness} needs {expected}",
                        c.conclusion
                    ),
                ));
            }
            done(goal.clone(), CheckedNode::ExIntro(Box::new(c)))
        }
        Derivation::ExElim {
            eigen,
            major,
            minor,
        } => {
            let m = check_at(major, ctx, &sub(0))?;
            let (x, body) = match &m.conclusion {
                Formula::Exists(x, body) => (x, body),
                other => {
                    return Err(mismatch(
                        path,
                        format!("ex-elim on non-existential {other}"),
                    ))
                }
            };
            let eig = |reason: &str| KernelError::EigenvariableViolation {
                path: path.to_string(),
                var: eigen.clone(),
                reason: reason.to_string(),
            };
            if ctx_has_free(ctx, eigen) {
                return Err(eig("occurs free in the context"));
            }
            if m.conclusion.has_free(eigen) {
                return Err(eig("occurs free in the eliminated formula"));
            }
            let mut inner = ctx.to_vec();
            inner.push(body.substitute(x, &SrcTerm::var(eigen)));
            let n = check_at(minor, &inner, &sub(1))?;
            if n.conclusion.has_free(eigen) {
                return Err(eig("occurs free in the conclusion"));
            }
            done(
                n.conclusion.clone(),
                CheckedNode::ExElim(Box::new(m), Box::new(n)),
            )
        }
        Derivation::AllIntro { eigen, premise } => {
            if ctx_has_free(ctx, eigen) {
                return Err(KernelError::EigenvariableViolation {
                    path: path.to_string(),
                    var: eigen.clone(),
                    reason: "occurs free in the context".into(),
                });
            }
            let c = check_at(premise, ctx, &sub(0))?;
            done(
                Formula::forall(eigen, c.conclusion.clone()),
                CheckedNode::AllIntro(Box::new(c)),
            )
        }
        Derivation::AllElim { term, premise } => {
            let c = check_at(premise, ctx, &sub(0))?;
            let inst = match &c.conclusion {
                Formula::Forall(x, body) => body.substitute(x, term),
                other => return Err(mismatch(path, format!("all-elim on non-universal {other}"))),
            };
            done(inst, CheckedNode::AllElim(Box::new(c)))
        }
        Derivation::Axiom(a) => {
            let seq = axiom_sequent(a).map_err(|e| match e {
                KernelError::RuleMismatch { reason, .. } => mismatch(path, reason),
                other => other,
            })?;
            let mut hyps = Vec::new();
            for h in &seq.context {
                match find_in(ctx, h) {
                    Some(i) => hyps.push(i),
                    None => {
                        return Err(mismatch(
                            path,
                            format!("axiom {} needs {h} in the context", a.schema_name()),
                        ))
                    }
                }
            }
            done(seq.conclusion, CheckedNode::Axiom(a.clone(), hyps))
        }
    }
}

/// A parsed proof file: formula abbreviations, the claimed sequent and the
/// derivation.
#[derive(Debug, Clone)]
pub struct ProofFile {
    pub theorem: String,
    pub claim: Sequent,
    pub proof: Derivation,
}

impl ProofFile {
    /// Checks the derivation under the claimed context and compares the
    /// result with the claimed conclusion.
    pub fn check(&self) -> Result<Checked, KernelError> {
        let c = check_tree(&self.proof, &self.claim.context)?;
        if !c.conclusion.alpha_eq(&self.claim.conclusion) {
            return Err(mismatch(
                "root",
                format!(
                    "claim mismatch: the proof concludes {} but the claim is {}",
                    c.conclusion, self.claim.conclusion
                ),
            ));
        }
        Ok(c)
    }
}

pub fn parse_proof_file(theorem: &str, text: &str) -> Result<ProofFile, KernelError> {
    let mut macros = Macros::default();
    let mut claim = None;
    let mut proof = None;
    for item in sexp::parse_all(text)? {
        match item.head() {
            Some("def") => macros.define_from_sexp(&item)?,
            Some("claim") => claim = Some(parse_claim(&item, &macros)?),
            Some("proof") => {
                let body = match item.as_list() {
                    Some([_, d]) => d,
                    _ => {
                        return Err(SyntaxError::at(&item, "expected `(proof <derivation>)`").into())
                    }
                };
                proof = Some(parse_derivation(body, &macros)?);
            }
            _ => return Err(SyntaxError::at(&item, "expected `def`, `claim` or `proof`").into()),
        }
    }
    let missing = |what: &str| {
        KernelError::Syntax(SyntaxError::Malformed {
            pos: sexp::Pos { line: 1, col: 1 },
            msg: format!("proof file has no `{what}` form"),
        })
    };
    Ok(ProofFile {
        theorem: theorem.to_string(),
        claim: claim.ok_or_else(|| missing("claim"))?,
        proof: proof.ok_or_else(|| missing("proof"))?,
    })
}

fn parse_claim(e: &Sexp, macros: &Macros) -> Result<Sequent, KernelError> {
    let items = e.as_list().unwrap_or(&[]);
    match items {
        [_, concl] => Ok(Sequent::closed(parse_formula_sexp(concl, macros)?)),
        [_, ctx, concl] if ctx.head() == Some("ctx") => {
            let context = ctx.as_list().unwrap()[1..]
                .iter()
                .map(|g| parse_formula_sexp(g, macros))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Sequent {
                context,
                conclusion: parse_formula_sexp(concl, macros)?,
            })
        }
        _ => Err(SyntaxError::at(e, "expected `(claim (ctx A...) C)` or `(claim C)`").into()),
    }
}

fn var_atom(e: &Sexp) -> Result<Var, KernelError> {
    e.as_atom()
        .filter(|a| crate::syntax::is_identifier(a))
        .map(str::to_string)
        .ok_or_else(|| SyntaxError::at(e, "expected a variable").into())
}

pub fn parse_derivation(e: &Sexp, macros: &Macros) -> Result<Derivation, KernelError> {
    let items = e
        .as_list()
        .ok_or_else(|| SyntaxError::at(e, "expected `(rule ...)` or `(axiom ...)`"))?;
    let tag = items.get(1).and_then(Sexp::as_atom);
    let args = items.get(2..).unwrap_or(&[]);
    let arity = |n: usize| -> Result<(), KernelError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(SyntaxError::at(
                e,
                format!(
                    "`{}` expects {n} argument(s), got {}",
                    tag.unwrap_or("?"),
                    args.len()
                ),
            )
            .into())
        }
    };
    let formula = |i: usize| parse_formula_sexp(&args[i], macros).map_err(KernelError::from);
    let deriv = |i: usize| parse_derivation(&args[i], macros).map(Box::new);
    let term = |i: usize| SrcTerm::from_sexp(&args[i]).map_err(KernelError::from);
    match (e.head(), tag) {
        (Some("rule"), Some(tag)) => match tag {
            "hyp" => {
                arity(1)?;
                Ok(Derivation::Hyp(formula(0)?))
            }
            "and-intro" => {
                arity(2)?;
                Ok(Derivation::AndIntro(deriv(0)?, deriv(1)?))
            }
            "and-elim" => {
                arity(2)?;
                let i = match args[0].as_atom() {
                    Some("1") => 1,
                    Some("2") => 2,
                    _ => return Err(SyntaxError::at(&args[0], "expected 1 or 2").into()),
                };
                Ok(Derivation::AndElim(i, deriv(1)?))
            }
            "imp-intro" => {
                arity(2)?;
                Ok(Derivation::ImpIntro(formula(0)?, deriv(1)?))
            }
            "imp-elim" => {
                arity(2)?;
                Ok(Derivation::ImpElim(deriv(0)?, deriv(1)?))
            }
            "ex-intro" => {
                arity(3)?;
                Ok(Derivation::ExIntro {
                    goal: formula(0)?,
                    witness: term(1)?,
                    premise: deriv(2)?,
                })
            }
            "ex-elim" => {
                arity(3)?;
                Ok(Derivation::ExElim {
                    eigen: var_atom(&args[0])?,
                    major: deriv(1)?,
                    minor: deriv(2)?,
                })
            }
            "all-intro" => {
                arity(2)?;
                Ok(Derivation::AllIntro {
                    eigen: var_atom(&args[0])?,
                    premise: deriv(1)?,
                })
            }
            "all-elim" => {
                arity(2)?;
                Ok(Derivation::AllElim {
                    term: term(0)?,
                    premise: deriv(1)?,
                })
            }
            other => Err(SyntaxError::at(e, format!("unknown rule `{other}`")).into()),
        },
        (Some("axiom"), Some(schema)) => {
            let plain = |a: AxiomInstance| arity(0).map(|_| Derivation::Axiom(a));
            match schema {
                "refl" => plain(AxiomInstance::Refl),
                "sym" => plain(AxiomInstance::Sym),
                "trans" => plain(AxiomInstance::Trans),
                "nat-eq" => plain(AxiomInstance::NatEq),
                "nat-zero" => plain(AxiomInstance::NatZero),
                "nat-succ" => plain(AxiomInstance::NatSucc),
                "succ-inj" => plain(AxiomInstance::SuccInj),
                "succ-not-zero" => plain(AxiomInstance::SuccNotZero),
                "st-zero" => plain(AxiomInstance::StZero),
                "st-succ" => plain(AxiomInstance::StSucc),
                "efq" => {
                    arity(1)?;
                    Ok(Derivation::Axiom(AxiomInstance::ExFalso(formula(0)?)))
                }
                "ind" => {
                    arity(3)?;
                    let mode = match args[2].as_atom() {
                        Some("restricted") => InductionMode::Restricted,
                        Some("unrestricted") => InductionMode::Unrestricted,
                        _ => {
                            return Err(SyntaxError::at(
                                &args[2],
                                "expected `restricted` or `unrestricted`",
                            )
                            .into())
                        }
                    };
                    Ok(Derivation::Axiom(AxiomInstance::Induction {
                        var: var_atom(&args[0])?,
                        formula: formula(1)?,
                        mode,
                    }))
                }
                "ip" => {
                    arity(3)?;
                    Ok(Derivation::Axiom(AxiomInstance::IndependenceOfPremise {
                        premise: formula(0)?,
                        var: var_atom(&args[1])?,
                        body: formula(2)?,
                    }))
                }
                other => Err(SyntaxError::at(e, format!("unknown axiom schema `{other}`")).into()),
            }
        }
        _ => {
            Err(SyntaxError::at(e, "expected `(rule <tag> ...)` or `(axiom <schema> ...)`").into())
        }
    }
}
