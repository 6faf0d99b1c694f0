//! Realizability translation and program extraction from checked
//! derivations.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::interp::{BaseInterpretation, InterpError};
use crate::kernel::{Checked, CheckedNode};
use crate::syntax::Formula;
use crate::target::TargetFormula;
use crate::term::{normalize, NormalizeError, Term};
use crate::types::RType;

/// Step budget for β-normalizing extracted terms.
pub const NORMALIZE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

struct Fresh {
    prefix: &'static str,
    next: usize,
    avoid: BTreeSet<String>,
}

impl Fresh {
    fn new(prefix: &'static str, avoid: BTreeSet<String>) -> Self {
        Fresh {
            prefix,
            next: 0,
            avoid,
        }
    }

    fn take(&mut self) -> String {
        loop {
            let name = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if !self.avoid.contains(&name) {
                return name;
            }
        }
    }

    fn take_typed(&mut self, tys: &[RType]) -> Vec<(String, RType)> {
        tys.iter().map(|t| (self.take(), t.clone())).collect()
    }
}

fn var_terms(vs: &[(String, RType)]) -> Vec<Term> {
    vs.iter().map(|(v, _)| Term::var(v)).collect()
}

/// `|A|_a⃗`: the formula expressing that the tuple `a⃗` realizes `A`.
pub fn translate(
    a: &Formula,
    interp: &BaseInterpretation,
    realizer: &[Term],
) -> Result<TargetFormula, InterpError> {
    let mut avoid = BTreeSet::new();
    for t in realizer {
        avoid.extend(t.free_vars());
    }
    translate_with(a, interp, realizer, &mut Fresh::new("_a", avoid))
}

fn translate_with(
    a: &Formula,
    interp: &BaseInterpretation,
    r: &[Term],
    fresh: &mut Fresh,
) -> Result<TargetFormula, InterpError> {
    let arity = |n: usize| {
        if r.len() == n {
            Ok(())
        } else {
            Err(InterpError::ArityMismatch {
                expected: n,
                got: r.len(),
            })
        }
    };
    match a {
        Formula::Atom(p, args) => interp.bounding(*p, args, r),
        Formula::And(x, y) => {
            let k = interp.shape(x)?.len();
            arity(k + interp.shape(y)?.len())?;
            let left = translate_with(x, interp, &r[..k], fresh)?;
            let right = translate_with(y, interp, &r[k..], fresh)?;
            Ok(TargetFormula::and(left, right))
        }
        Formula::Imp(x, y) => {
            arity(interp.shape(y)?.len())?;
            let bs = fresh.take_typed(&interp.shape(x)?);
            let args = var_terms(&bs);
            let applied: Vec<Term> = r
                .iter()
                .map(|f| Term::app(f.clone(), args.clone()))
                .collect();
            let hyp = translate_with(x, interp, &args, fresh)?;
            let mut concl = Vec::new();
            if !interp.total() && !applied.is_empty() {
                concl.push(TargetFormula::Defined(applied.clone()));
            }
            concl.push(translate_with(y, interp, &applied, fresh)?);
            Ok(TargetFormula::forall_real(
                bs,
                TargetFormula::imp(hyp, TargetFormula::conj(concl)),
            ))
        }
        Formula::Exists(x, body) => Ok(TargetFormula::exists_src(
            x,
            translate_with(body, interp, r, fresh)?,
        )),
        Formula::Forall(x, body) => Ok(TargetFormula::forall_src(
            x,
            translate_with(body, interp, r, fresh)?,
        )),
    }
}

/// The result of extracting a realizer from a checked derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub interp: BaseInterpretation,
    pub context: Vec<Formula>,
    /// Realizer variables of each context formula, in context order.
    pub context_vars: Vec<Vec<(String, RType)>>,
    pub conclusion: Formula,
    /// β-normal realizer tuple, open in the context variables.
    pub terms: Vec<Term>,
}

impl Extraction {
    pub fn conclusion_types(&self) -> Result<Vec<RType>, InterpError> {
        self.interp.shape(&self.conclusion)
    }

    pub fn flat_context_vars(&self) -> Vec<(String, RType)> {
        self.context_vars.iter().flatten().cloned().collect()
    }
}

/// Compiles a checked derivation into a realizer following the soundness
/// proof, one case per rule.
pub fn extract(c: &Checked, interp: &BaseInterpretation) -> Result<Extraction, ExtractError> {
    let mut context_vars = Vec::with_capacity(c.context.len());
    for (i, g) in c.context.iter().enumerate() {
        let tys = interp.shape(g)?;
        context_vars.push(
            tys.into_iter()
                .enumerate()
                .map(|(j, t)| (format!("_g{i}_{j}"), t))
                .collect::<Vec<_>>(),
        );
    }
    let mut env: Vec<Vec<Term>> = context_vars.iter().map(|vs| var_terms(vs)).collect();
    let mut hyp_counter = 0;
    let raw = walk(c, interp, &mut env, &mut hyp_counter)?;
    let terms = raw
        .iter()
        .map(|t| normalize(t, NORMALIZE_BUDGET))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Extraction {
        interp: *interp,
        context: c.context.clone(),
        context_vars,
        conclusion: c.conclusion.clone(),
        terms,
    })
}

fn walk(
    c: &Checked,
    interp: &BaseInterpretation,
    env: &mut Vec<Vec<Term>>,
    counter: &mut usize,
) -> Result<Vec<Term>, ExtractError> {
    Ok(match &c.node {
        CheckedNode::Hyp(i) => env[*i].clone(),
        CheckedNode::AndIntro(p, q) => {
            let mut out = walk(p, interp, env, counter)?;
            out.extend(walk(q, interp, env, counter)?);
            out
        }
        CheckedNode::AndElim(i, p) => {
            let r = walk(p, interp, env, counter)?;
            let k = match &p.conclusion {
                Formula::And(left, _) => interp.shape(left)?.len(),
                _ => unreachable!("checked and-elim premise is a conjunction"),
            };
            if *i == 1 {
                r[..k].to_vec()
            } else {
                r[k..].to_vec()
            }
        }
        CheckedNode::ImpIntro(p) => {
            let hyp = p.context.last().expect("imp-intro pushes its hypothesis");
            let n = interp.shape(hyp)?.len();
            let params: Vec<String> = (0..n).map(|j| format!("_h{}_{j}", *counter)).collect();
            *counter += 1;
            env.push(params.iter().map(|v| Term::var(v)).collect());
            let body = walk(p, interp, env, counter);
            env.pop();
            body?
                .into_iter()
                .map(|t| Term::lam(params.clone(), t))
                .collect()
        }
        CheckedNode::ImpElim(f, a) => {
            let rf = walk(f, interp, env, counter)?;
            let ra = walk(a, interp, env, counter)?;
            rf.into_iter().map(|t| Term::app(t, ra.clone())).collect()
        }
        CheckedNode::ExIntro(p) | CheckedNode::AllIntro(p) | CheckedNode::AllElim(p) => {
            walk(p, interp, env, counter)?
        }
        CheckedNode::ExElim(major, minor) => {
            let rm = walk(major, interp, env, counter)?;
            env.push(rm);
            let r = walk(minor, interp, env, counter);
            env.pop();
            r?
        }
        CheckedNode::Axiom(ax, hyps) => {
            let args: Vec<Term> = hyps.iter().flat_map(|h| env[*h].clone()).collect();
            interp
                .axiom_realizer(ax)?
                .into_iter()
                .map(|t| Term::app(t, args.clone()))
                .collect()
        }
    })
}

/// The statement that the extracted realizer is correct:
/// `∀x⃗ ∀γ⃗ (|Γ|_γ⃗ → t⃗↓ ∧ |A|_t⃗)` over the free source variables `x⃗`.
/// Definedness is only asserted for partial instances.
pub fn realizability_sequent(e: &Extraction) -> Result<TargetFormula, InterpError> {
    let interp = &e.interp;
    let mut avoid: BTreeSet<String> = e.flat_context_vars().into_iter().map(|(v, _)| v).collect();
    for t in &e.terms {
        avoid.extend(t.free_vars());
    }
    let mut fresh = Fresh::new("_a", avoid);
    let mut hyps = Vec::with_capacity(e.context.len());
    for (g, vs) in e.context.iter().zip(&e.context_vars) {
        hyps.push(translate_with(g, interp, &var_terms(vs), &mut fresh)?);
    }
    let mut concl = Vec::new();
    if !interp.total() && !e.terms.is_empty() {
        concl.push(TargetFormula::Defined(e.terms.clone()));
    }
    concl.push(translate_with(&e.conclusion, interp, &e.terms, &mut fresh)?);
    let body = if hyps.is_empty() {
        TargetFormula::conj(concl)
    } else {
        TargetFormula::imp(TargetFormula::conj(hyps), TargetFormula::conj(concl))
    };
    let mut out = TargetFormula::forall_real(e.flat_context_vars(), body);
    let mut free = e.conclusion.free_vars();
    for g in &e.context {
        free.extend(g.free_vars());
    }
    for x in free.iter().rev() {
        out = TargetFormula::forall_src(x, out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::InterpName;
    use crate::kernel::parse_proof_file;
    use crate::syntax::parse_formula;

    fn interp(n: InterpName) -> BaseInterpretation {
        BaseInterpretation::new(n)
    }

    #[test]
    fn nat_atom_under_kleene() {
        let t = translate(
            &parse_formula("(N n)").unwrap(),
            &interp(InterpName::Kleene),
            &[Term::var("m")],
        )
        .unwrap();
        assert_eq!(t.to_string(), "(= n m)");
    }

    #[test]
    fn qualified_universal_under_kreisel() {
        let a = parse_formula("(allN n (N (s n)))").unwrap();
        let t = translate(&a, &interp(InterpName::Kreisel), &[Term::var("f")]).unwrap();
        assert_eq!(
            t.to_string(),
            "(all n (all* ((_a0 nat)) (-> (= n _a0) (= (s n) (app f _a0)))))"
        );
    }

    #[test]
    fn kleene_keeps_definedness() {
        let a = parse_formula("(allN n (N (s n)))").unwrap();
        let t = translate(&a, &interp(InterpName::Kleene), &[Term::var("f")]).unwrap();
        assert!(t.to_string().contains("(defined (app f _a0))"), "{t}");
    }

    #[test]
    fn qualified_existential_under_herbrand() {
        let a = parse_formula("(exN n (st n))").unwrap();
        let t = translate(&a, &interp(InterpName::Herbrand), &[Term::var("S")]).unwrap();
        assert_eq!(t.to_string(), "(ex n (and true (in n S)))");
    }

    #[test]
    fn identity_proof_extracts_identity() {
        let pf = parse_proof_file(
            "id",
            "(claim (-> (N 0) (N 0)))\n(proof (rule imp-intro (N 0) (rule hyp (N 0))))",
        )
        .unwrap();
        let e = extract(&pf.check().unwrap(), &interp(InterpName::Kreisel)).unwrap();
        assert_eq!(e.terms, vec![Term::lam1("_h0_0", Term::var("_h0_0"))]);
    }

    #[test]
    fn sequent_with_context_abstracts_hypotheses() {
        let pf =
            parse_proof_file("ctx", "(claim (ctx (N n)) (N n))\n(proof (rule hyp (N n)))").unwrap();
        let e = extract(&pf.check().unwrap(), &interp(InterpName::Kreisel)).unwrap();
        assert_eq!(e.terms, vec![Term::var("_g0_0")]);
        let s = realizability_sequent(&e).unwrap();
        assert_eq!(
            s.to_string(),
            "(all n (all* ((_g0_0 nat)) (-> (= n _g0_0) (= n _g0_0))))"
        );
    }

    #[test]
    fn uniform_theorem_has_empty_realizer() {
        let pf = parse_proof_file("refl", "(claim (all n (= n n)))\n(proof (axiom refl))").unwrap();
        let e = extract(&pf.check().unwrap(), &interp(InterpName::Kleene)).unwrap();
        assert!(e.terms.is_empty());
        let s = realizability_sequent(&e).unwrap();
        assert_eq!(s, TargetFormula::embed(&pf.claim.conclusion));
    }
}
