//! Base interpretations: how each instance reads atomic formulas, which
//! realizer types it assigns, and which realizers it supplies for the
//! non-logical axioms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{AxiomInstance, InductionMode};
use crate::syntax::{Formula, Pred, SrcTerm};
use crate::target::{TargetFormula, STATE_PARAM};
use crate::term::{State, Term};
use crate::types::RType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InterpName {
    Kleene,
    Kreisel,
    Herbrand,
    Classical,
    ClassicalFriedman,
    Learning,
    Bounded,
}

impl InterpName {
    pub const ALL: [InterpName; 7] = [
        InterpName::Kleene,
        InterpName::Kreisel,
        InterpName::Herbrand,
        InterpName::Classical,
        InterpName::ClassicalFriedman,
        InterpName::Learning,
        InterpName::Bounded,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InterpName::Kleene => "kleene",
            InterpName::Kreisel => "kreisel",
            InterpName::Herbrand => "herbrand",
            InterpName::Classical => "classical",
            InterpName::ClassicalFriedman => "classical-friedman",
            InterpName::Learning => "learning",
            InterpName::Bounded => "bounded",
        }
    }
}

impl fmt::Display for InterpName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InterpName {
    type Err = InterpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InterpName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| InterpError::UnknownInterpretation(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NatMode {
    /// `ℕ(n)` has no realizer.
    Uniform,
    /// The realizer carries partial information, ordered and joinable.
    Approximate,
    /// The realizer determines `n`.
    Precise,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("unknown interpretation `{0}`")]
    UnknownInterpretation(String),
    #[error("{0} is untyped")]
    NotTyped(InterpName),
    #[error("{interp} does not interpret the predicate {pred}")]
    UnsupportedPredicate { interp: InterpName, pred: Pred },
    #[error("{interp} has no realizer for axiom {axiom}: {reason}")]
    UnsupportedAxiom {
        interp: InterpName,
        axiom: String,
        reason: String,
    },
    #[error("realizer arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

/// A base interpretation, selected by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseInterpretation {
    pub name: InterpName,
}

fn st_to_nat() -> RType {
    RType::arrow(vec![RType::State], RType::Nat)
}

fn st_to_st() -> RType {
    RType::arrow(vec![RType::State], RType::State)
}

fn state_param() -> Term {
    Term::var(STATE_PARAM)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn vars(ns: &[String]) -> Vec<Term> {
    ns.iter().map(|n| Term::var(n)).collect()
}

impl BaseInterpretation {
    pub fn new(name: InterpName) -> Self {
        BaseInterpretation { name }
    }

    pub fn all() -> Vec<BaseInterpretation> {
        InterpName::ALL.into_iter().map(Self::new).collect()
    }

    /// Realizers always denote values; only Kleene application is partial.
    pub fn total(&self) -> bool {
        self.name != InterpName::Kleene
    }

    pub fn typed(&self) -> bool {
        self.name != InterpName::Kleene
    }

    pub fn nat_mode(&self) -> NatMode {
        match self.name {
            InterpName::Herbrand => NatMode::Uniform,
            InterpName::Bounded => NatMode::Approximate,
            _ => NatMode::Precise,
        }
    }

    pub fn uses_state(&self) -> bool {
        self.name == InterpName::Learning
    }

    pub fn uses_opaque_predicate(&self) -> bool {
        matches!(
            self.name,
            InterpName::Classical | InterpName::ClassicalFriedman
        )
    }

    pub fn supports_pred(&self, p: Pred) -> bool {
        p != Pred::St || self.name == InterpName::Herbrand
    }

    /// Realizer types of the atom `p`. Kleene shares the Kreisel table, used
    /// internally only to size and enumerate realizers.
    pub fn atom_types(&self, p: Pred) -> Result<Vec<RType>, InterpError> {
        use InterpName::*;
        if !self.supports_pred(p) {
            return Err(InterpError::UnsupportedPredicate {
                interp: self.name,
                pred: p,
            });
        }
        Ok(match (self.name, p) {
            (Herbrand, Pred::St) => vec![RType::set_of(RType::Nat)],
            (Herbrand, _) => vec![],
            (Kleene | Kreisel | Bounded, Pred::Nat) => vec![RType::Nat],
            (Kleene | Kreisel | Bounded, _) => vec![],
            (Classical, Pred::Eq) => vec![],
            (Classical | ClassicalFriedman, _) => vec![RType::Nat],
            (Learning, Pred::Nat) => vec![st_to_nat()],
            (Learning, _) => vec![st_to_st()],
        })
    }

    /// Interpreted without realizer and read literally.
    pub fn is_uniform_pred(&self, p: Pred) -> bool {
        match self.atom_types(p) {
            Ok(ts) => ts.is_empty() && (p != Pred::Nat),
            Err(_) => false,
        }
    }

    /// The bounding relation `x⃗ ◁_P a⃗`.
    pub fn bounding(
        &self,
        p: Pred,
        args: &[SrcTerm],
        a: &[Term],
    ) -> Result<TargetFormula, InterpError> {
        use InterpName::*;
        let expected = self.atom_types(p)?.len();
        if a.len() != expected {
            return Err(InterpError::ArityMismatch {
                expected,
                got: a.len(),
            });
        }
        let x: Vec<Term> = args.iter().map(Term::from_src).collect();
        let s = state_param;
        Ok(match (self.name, p) {
            (Learning, Pred::Falsity) => {
                TargetFormula::negation(TargetFormula::StateEq(Term::app1(a[0].clone(), s()), s()))
            }
            (Learning, Pred::Nat) => TargetFormula::Eq(Term::app1(a[0].clone(), s()), x[0].clone()),
            (Learning, Pred::Eq) => TargetFormula::imp(
                TargetFormula::StateEq(Term::app1(a[0].clone(), s()), s()),
                TargetFormula::Eq(x[0].clone(), x[1].clone()),
            ),
            (Classical | ClassicalFriedman, Pred::Falsity) => TargetFormula::OpaqueP(a[0].clone()),
            (ClassicalFriedman, Pred::Eq) => TargetFormula::or(
                TargetFormula::Eq(x[0].clone(), x[1].clone()),
                TargetFormula::OpaqueP(a[0].clone()),
            ),
            (Herbrand, Pred::Nat) => TargetFormula::True,
            (Herbrand, Pred::St) => TargetFormula::Member(x[0].clone(), a[0].clone()),
            (Bounded, Pred::Nat) => TargetFormula::Le(x[0].clone(), a[0].clone()),
            (_, Pred::Nat) => TargetFormula::Eq(x[0].clone(), a[0].clone()),
            (_, Pred::Falsity) => TargetFormula::False,
            (_, Pred::Eq) => TargetFormula::Eq(x[0].clone(), x[1].clone()),
            (_, Pred::St) => unreachable!("st is rejected by atom_types"),
        })
    }

    /// `τ(A)` by the usual recursion, available for every instance.
    pub fn shape(&self, a: &Formula) -> Result<Vec<RType>, InterpError> {
        match a {
            Formula::Atom(p, _) => self.atom_types(*p),
            Formula::And(x, y) => {
                let mut out = self.shape(x)?;
                out.extend(self.shape(y)?);
                Ok(out)
            }
            Formula::Imp(x, y) => Ok(RType::tuple_arrow(&self.shape(x)?, &self.shape(y)?)),
            Formula::Exists(_, x) | Formula::Forall(_, x) => self.shape(x),
        }
    }

    /// `τ(A)`; undefined for the untyped Kleene instance.
    pub fn type_of_formula(&self, a: &Formula) -> Result<Vec<RType>, InterpError> {
        if !self.typed() {
            return Err(InterpError::NotTyped(self.name));
        }
        self.shape(a)
    }

    fn unsupported(&self, ax: &AxiomInstance, reason: &str) -> InterpError {
        InterpError::UnsupportedAxiom {
            interp: self.name,
            axiom: ax.schema_name().to_string(),
            reason: reason.to_string(),
        }
    }

    /// Realizer tuple for the sequent of an axiom instance. For ex-falso the
    /// components are functions of the realizer of the `⊥` hypothesis
    /// (when `⊥` has realizers in this instance).
    pub fn axiom_realizer(&self, ax: &AxiomInstance) -> Result<Vec<Term>, InterpError> {
        use AxiomInstance as A;
        use InterpName::*;
        let b = || Term::var("_b");
        let id = |x: &str| Term::lam1(x, Term::var(x));
        let u = "_u";
        let name = self.name;
        match (ax, name) {
            (A::StZero | A::StSucc, n) if n != Herbrand => {
                Err(self.unsupported(ax, "the st predicate is only interpreted by herbrand"))
            }
            (A::StZero, _) => Ok(vec![Term::set(vec![Term::Num(0)])]),
            (A::StSucc, _) => Ok(vec![Term::lam1(
                "_S",
                Term::set_bind(
                    Term::var("_S"),
                    Term::lam1("_x", Term::set(vec![Term::succ(Term::var("_x"))])),
                ),
            )]),
            (A::IndependenceOfPremise { body, .. }, Kreisel) => {
                let rho = self.shape(body)?;
                let ps = names("_b", rho.len());
                Ok((0..rho.len())
                    .map(|i| Term::lam(ps.clone(), Term::var(&ps[i])))
                    .collect())
            }
            (A::IndependenceOfPremise { .. }, _) => Err(self.unsupported(
                ax,
                "the identity realizer is only justified for modified realizability",
            )),
            (A::ExFalso(goal), _) => self.ex_falso_realizer(ax, goal),
            (A::Induction { var, formula, mode }, _) => {
                let rho = self.shape(formula)?;
                if rho.is_empty() {
                    return Ok(vec![]);
                }
                let _ = var;
                if self.nat_mode() == NatMode::Uniform {
                    return Err(self.unsupported(
                        ax,
                        "with uniform ℕ the induction formula must have no realizers",
                    ));
                }
                let t = names("_t", rho.len());
                let f = names("_f", rho.len());
                let psi = self.induction_realizer(&vars(&t), &vars(&f), &rho, *mode)?;
                let mut params = t;
                params.extend(f);
                Ok(psi
                    .into_iter()
                    .map(|p| Term::lam(params.clone(), p))
                    .collect())
            }
            (
                A::Refl | A::Sym | A::Trans | A::SuccInj | A::SuccNotZero,
                Kleene | Kreisel | Herbrand | Bounded,
            ) => Ok(vec![]),
            (A::NatEq | A::NatZero | A::NatSucc, Herbrand) => Ok(vec![]),
            (A::NatEq, Kleene | Kreisel | Bounded | Classical) => Ok(vec![id("_b")]),
            (A::NatZero, Learning) => Ok(vec![Term::lam1(u, Term::Num(0))]),
            (A::NatZero, _) => Ok(vec![Term::Num(0)]),
            (A::NatSucc, Learning) => Ok(vec![Term::lam1(
                "_a",
                Term::lam1(u, Term::succ(Term::app1(Term::var("_a"), Term::var(u)))),
            )]),
            (A::NatSucc, _) => Ok(vec![Term::lam1("_b", Term::succ(b()))]),
            (A::Refl | A::Sym | A::Trans | A::SuccInj, Classical) => Ok(vec![]),
            (A::SuccNotZero, Classical) => Ok(vec![Term::lam1("_b", Term::Num(0))]),
            (A::Refl, ClassicalFriedman) => Ok(vec![Term::Num(0)]),
            (A::Sym, ClassicalFriedman) => Ok(vec![id("_a")]),
            (A::Trans, ClassicalFriedman) => Err(self.unsupported(
                ax,
                "choosing between the two witnesses would require deciding P",
            )),
            (A::NatEq, ClassicalFriedman) => Err(self.unsupported(
                ax,
                "the realizer of ℕ(m) would have to compute m from a witness of P",
            )),
            (A::SuccInj, ClassicalFriedman) => {
                Ok(vec![Term::lam1("_b", Term::lam1("_c", id("_a")))])
            }
            (A::SuccNotZero, ClassicalFriedman) => Ok(vec![Term::lam1("_b", id("_a"))]),
            (A::Refl, Learning) => Ok(vec![id(u)]),
            (A::Sym, Learning) => Ok(vec![id("_g")]),
            (A::Trans, Learning) => Ok(vec![Term::lam(
                vec!["_g".into(), "_h".into()],
                Term::lam1(
                    u,
                    Term::state_join(
                        Term::app1(Term::var("_g"), Term::var(u)),
                        Term::app1(Term::var("_h"), Term::var(u)),
                    ),
                ),
            )]),
            (A::NatEq, Learning) => Err(self.unsupported(
                ax,
                "when γ(s) ≠ s nothing determines the value of the ℕ(m) realizer at s",
            )),
            (A::SuccInj, Learning) => Ok(vec![Term::lam1("_a", Term::lam1("_c", id("_g")))]),
            (A::SuccNotZero, Learning) => Ok(vec![Term::lam1("_a", id("_g"))]),
        }
    }

    fn ex_falso_realizer(
        &self,
        ax: &AxiomInstance,
        goal: &Formula,
    ) -> Result<Vec<Term>, InterpError> {
        use InterpName::*;
        match self.name {
            Kleene | Kreisel | Herbrand | Bounded => Ok(self
                .shape(goal)?
                .iter()
                .map(default_value)
                .collect()),
            Classical => Err(self.unsupported(
                ax,
                "minimal-logic mode reads equations literally, so a witness of P cannot realize them",
            )),
            ClassicalFriedman | Learning => {
                let mut counter = 0;
                let lifted = self
                    .lift(goal, &Term::var("_w"), &mut counter)
                    .map_err(|reason| self.unsupported(ax, &reason))?;
                Ok(lifted
                    .into_iter()
                    .map(|t| Term::lam1("_w", t))
                    .collect())
            }
        }
    }

    /// Realizer of `A` built from a realizer `w` of `⊥`, for instances where
    /// every atom can be witnessed by the falsity witness.
    fn lift(&self, a: &Formula, w: &Term, counter: &mut usize) -> Result<Vec<Term>, String> {
        match a {
            Formula::Atom(Pred::Falsity | Pred::Eq, _) => Ok(vec![w.clone()]),
            Formula::Atom(Pred::Nat, args) => match args[0].as_numeral() {
                Some(n) if self.uses_state() => Ok(vec![Term::lam1("_u", Term::Num(n))]),
                Some(n) => Ok(vec![Term::Num(n)]),
                None => Err(format!(
                    "ℕ({}) is not closed, so its realizer is unknown",
                    args[0]
                )),
            },
            Formula::Atom(Pred::St, _) => Err("st is not interpreted".into()),
            Formula::And(x, y) => {
                let mut out = self.lift(x, w, counter)?;
                out.extend(self.lift(y, w, counter)?);
                Ok(out)
            }
            Formula::Imp(x, y) => {
                let sigma = self.shape(x).map_err(|e| e.to_string())?;
                let ps: Vec<String> = (0..sigma.len())
                    .map(|_| {
                        *counter += 1;
                        format!("_e{}", *counter - 1)
                    })
                    .collect();
                Ok(self
                    .lift(y, w, counter)?
                    .into_iter()
                    .map(|t| Term::lam(ps.clone(), t))
                    .collect())
            }
            Formula::Exists(x, body) => self.lift(&body.substitute(x, &SrcTerm::Zero), w, counter),
            Formula::Forall(_, body) => self.lift(body, w, counter),
        }
    }

    /// The recursor `ψ` for induction with base realizers `base` and step
    /// realizers `step` (curried: the step first takes the realizer of
    /// `ℕ(k)` when the mode is restricted). Returns one term per component
    /// of `τ(A)`, each a function of the realizer of `ℕ(n)`.
    pub fn induction_realizer(
        &self,
        base: &[Term],
        step: &[Term],
        rho: &[RType],
        mode: InductionMode,
    ) -> Result<Vec<Term>, InterpError> {
        let r = rho.len();
        if base.len() != r || step.len() != r {
            return Err(InterpError::ArityMismatch {
                expected: r,
                got: base.len().min(step.len()),
            });
        }
        if r == 0 {
            return Ok(vec![]);
        }
        let (k, acc) = ("_k", "_r");
        let prev: Vec<Term> = (0..r).map(|i| Term::proj(i, Term::var(acc))).collect();
        let (nat_params, rec_arg, nat_at_k) = match self.nat_mode() {
            NatMode::Uniform => {
                return Err(InterpError::NotApplicable(
                    "with uniform ℕ there is no argument to recurse on".into(),
                ))
            }
            _ if self.uses_state() => (
                vec!["_n".to_string()],
                Term::app1(Term::var("_n"), state_param()),
                Term::lam1("_u", Term::var(k)),
            ),
            _ => (vec!["_n".to_string()], Term::var("_n"), Term::var(k)),
        };
        let next: Vec<Term> = (0..r)
            .map(|j| {
                let head = match mode {
                    InductionMode::Restricted => Term::app1(step[j].clone(), nat_at_k.clone()),
                    InductionMode::Unrestricted => step[j].clone(),
                };
                let applied = Term::app(head, prev.clone());
                if self.nat_mode() == NatMode::Approximate {
                    self.join(&rho[j], prev[j].clone(), applied)
                } else {
                    applied
                }
            })
            .collect();
        let step_fn = Term::lam(vec![k.to_string(), acc.to_string()], Term::Tuple(next));
        let rec = Term::rec(Term::Tuple(base.to_vec()), step_fn, rec_arg);
        Ok((0..r)
            .map(|i| Term::lam(nat_params.clone(), Term::proj(i, rec.clone())))
            .collect())
    }

    /// Join-mode recursion for herbrand in set-passing form: the result maps
    /// a finite set `S` to the union over `m ∈ S` of the `m`-th iterate of
    /// `step` from `base`, each iterate joined with its predecessor.
    pub fn herbrand_recursor(
        &self,
        base: &[Term],
        step: &[Term],
        rho: &[RType],
    ) -> Result<Vec<Term>, InterpError> {
        let r = rho.len();
        if base.len() != r || step.len() != r {
            return Err(InterpError::ArityMismatch {
                expected: r,
                got: base.len().min(step.len()),
            });
        }
        let prev: Vec<Term> = (0..r).map(|i| Term::proj(i, Term::var("_r"))).collect();
        let next: Vec<Term> = (0..r)
            .map(|j| {
                let applied = Term::app(step[j].clone(), prev.clone());
                self.join(&rho[j], prev[j].clone(), applied)
            })
            .collect();
        let step_fn = Term::lam(vec!["_k".into(), "_r".into()], Term::Tuple(next));
        let rec = Term::rec(Term::Tuple(base.to_vec()), step_fn, Term::var("_n"));
        (0..r)
            .map(|i| {
                let point = Term::lam1("_n", Term::proj(i, rec.clone()));
                self.herbrand_convert(ConvertDirection::PointToSet, &point, &rho[i])
            })
            .collect()
    }

    /// Least upper bound of two realizers of type `ty` in the realizer
    /// order of approximate instances: maximum on numbers, union on sets
    /// and states, pointwise on functions.
    pub fn join(&self, ty: &RType, a: Term, b: Term) -> Term {
        join_at(ty, a, b, &mut 0)
    }

    /// Converts between the set-passing form `f : ℕ* → τ` and the
    /// point form `g : ℕ → τ` of Herbrand realizers of `∀x(st(x) → A)`;
    /// `result` is the type `τ` of one component.
    pub fn herbrand_convert(
        &self,
        direction: ConvertDirection,
        h: &Term,
        result: &RType,
    ) -> Result<Term, InterpError> {
        if self.name != InterpName::Herbrand {
            return Err(InterpError::NotApplicable(
                "set/point conversion is specific to herbrand".into(),
            ));
        }
        if !joinable(result) {
            return Err(InterpError::NotApplicable(format!(
                "results of type {result} have no union"
            )));
        }
        Ok(match direction {
            ConvertDirection::SetToPoint => Term::lam1(
                "_n",
                Term::app1(h.clone(), Term::set(vec![Term::var("_n")])),
            ),
            ConvertDirection::PointToSet => {
                Term::lam1("_S", big_union(result, Term::var("_S"), h.clone(), &mut 0))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertDirection {
    /// `g(n) := f({n})`
    SetToPoint,
    /// `f(S) := ⋃_{n ∈ S} g(n)`
    PointToSet,
}

fn joinable(ty: &RType) -> bool {
    match ty {
        RType::SetOf(_) => true,
        RType::Arrow(_, r) => joinable(r),
        _ => false,
    }
}

/// `⋃_{n ∈ s} g(n)` at result type `ty`.
fn big_union(ty: &RType, s: Term, g: Term, counter: &mut usize) -> Term {
    match ty {
        RType::Arrow(args, r) => {
            let ps: Vec<String> = (0..args.len())
                .map(|_| {
                    *counter += 1;
                    format!("_j{}", *counter - 1)
                })
                .collect();
            let inner = Term::lam1("_m", Term::app(Term::app1(g, Term::var("_m")), vars(&ps)));
            Term::lam(ps, big_union(r, s, inner, counter))
        }
        _ => Term::set_bind(s, g),
    }
}

fn join_at(ty: &RType, a: Term, b: Term, counter: &mut usize) -> Term {
    match ty {
        RType::Nat => Term::max(a, b),
        RType::SetOf(_) => Term::union(a, b),
        RType::State => Term::state_join(a, b),
        RType::Arrow(args, r) => {
            let ps: Vec<String> = (0..args.len())
                .map(|_| {
                    *counter += 1;
                    format!("_j{}", *counter - 1)
                })
                .collect();
            let xs = vars(&ps);
            let body = join_at(r, Term::app(a, xs.clone()), Term::app(b, xs), counter);
            Term::lam(ps, body)
        }
        RType::Prod(ts) => Term::Tuple(
            ts.iter()
                .enumerate()
                .map(|(i, t)| {
                    join_at(
                        t,
                        Term::proj(i, a.clone()),
                        Term::proj(i, b.clone()),
                        counter,
                    )
                })
                .collect(),
        ),
        RType::Meta(_) => Term::max(a, b),
    }
}

/// A canonical inhabitant of a realizer type.
pub fn default_value(ty: &RType) -> Term {
    match ty {
        RType::Nat | RType::Meta(_) => Term::Num(0),
        RType::SetOf(t) => Term::set(vec![default_value(t)]),
        RType::State => Term::StateLit(State::new()),
        RType::Arrow(args, r) => Term::lam(names("_d", args.len()), default_value(r)),
        RType::Prod(ts) => Term::Tuple(ts.iter().map(default_value).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;
    use crate::term::{evaluate, EvalResult};
    use crate::types::check_type;

    fn interp(n: InterpName) -> BaseInterpretation {
        BaseInterpretation::new(n)
    }

    fn eval1(t: Term) -> Term {
        match evaluate(&[t], &[], 10_000) {
            EvalResult::Value(mut v) => v.remove(0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn names_roundtrip() {
        for n in InterpName::ALL {
            assert_eq!(n.as_str().parse::<InterpName>().unwrap(), n);
        }
        assert!("lifschitz".parse::<InterpName>().is_err());
    }

    #[test]
    fn bounding_examples() {
        let n = SrcTerm::var("n");
        let m = SrcTerm::var("m");
        let k = interp(InterpName::Kleene)
            .bounding(Pred::Nat, std::slice::from_ref(&n), &[Term::var("_m")])
            .unwrap();
        assert_eq!(k.to_string(), "(= n _m)");
        let h = interp(InterpName::Herbrand)
            .bounding(Pred::Nat, std::slice::from_ref(&n), &[])
            .unwrap();
        assert_eq!(h, TargetFormula::True);
        let l = interp(InterpName::Learning)
            .bounding(Pred::Eq, &[n.clone(), m], &[Term::var("_g")])
            .unwrap();
        assert_eq!(l.to_string(), "(-> (state= (app _g _s) _s) (= n m))");
        assert!(matches!(
            interp(InterpName::Kreisel).bounding(Pred::Nat, &[n], &[]),
            Err(InterpError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn kleene_and_kreisel_share_a_table() {
        let (k, r) = (interp(InterpName::Kleene), interp(InterpName::Kreisel));
        for p in [Pred::Falsity, Pred::Nat, Pred::Eq] {
            let args: Vec<SrcTerm> = (0..p.arity())
                .map(|i| SrcTerm::var(&format!("x{i}")))
                .collect();
            let a: Vec<Term> = (0..k.atom_types(p).unwrap().len())
                .map(|_| Term::var("_a"))
                .collect();
            assert_eq!(k.bounding(p, &args, &a), r.bounding(p, &args, &a));
        }
    }

    #[test]
    fn types_of_formulas() {
        let nat = parse_formula("(N n)").unwrap();
        assert_eq!(
            interp(InterpName::Kreisel).type_of_formula(&nat).unwrap(),
            vec![RType::Nat]
        );
        let eq = parse_formula("(= n m)").unwrap();
        assert!(interp(InterpName::Kreisel)
            .type_of_formula(&eq)
            .unwrap()
            .is_empty());
        let bot = parse_formula("(⊥)").unwrap();
        assert_eq!(
            interp(InterpName::Classical).type_of_formula(&bot).unwrap(),
            vec![RType::Nat]
        );
        assert_eq!(
            interp(InterpName::Learning).type_of_formula(&nat).unwrap(),
            vec![RType::arrow(vec![RType::State], RType::Nat)]
        );
        assert_eq!(
            interp(InterpName::Kleene).type_of_formula(&nat),
            Err(InterpError::NotTyped(InterpName::Kleene))
        );
    }

    #[test]
    fn precise_recursor_unrolls() {
        let i = interp(InterpName::Kreisel);
        let step = Term::lam1("m", Term::lam1("r", Term::succ(Term::var("r"))));
        let psi = i
            .induction_realizer(
                &[Term::Num(0)],
                &[step],
                &[RType::Nat],
                InductionMode::Restricted,
            )
            .unwrap();
        assert_eq!(
            eval1(Term::app1(psi[0].clone(), Term::Num(3))),
            Term::Num(3)
        );
        assert_eq!(
            eval1(Term::app1(psi[0].clone(), Term::Num(0))),
            Term::Num(0)
        );
    }

    #[test]
    fn join_recursor_accumulates() {
        let i = interp(InterpName::Bounded);
        let set = RType::set_of(RType::Nat);
        // ψ(2) = {0} ∪ {1} ∪ {2} when the step adds {m+1}
        let step = Term::lam1(
            "m",
            Term::lam1("S", Term::set(vec![Term::succ(Term::var("m"))])),
        );
        let base = Term::set(vec![Term::Num(0)]);
        let psi = i
            .induction_realizer(&[base], &[step], &[set], InductionMode::Restricted)
            .unwrap();
        let expected = Term::set(vec![Term::Num(0), Term::Num(1), Term::Num(2)]);
        assert_eq!(eval1(Term::app1(psi[0].clone(), Term::Num(2))), expected);
    }

    #[test]
    fn axiom_realizers_are_well_typed() {
        let axioms = [
            AxiomInstance::Refl,
            AxiomInstance::Sym,
            AxiomInstance::Trans,
            AxiomInstance::NatEq,
            AxiomInstance::NatZero,
            AxiomInstance::NatSucc,
            AxiomInstance::SuccInj,
            AxiomInstance::SuccNotZero,
            AxiomInstance::Induction {
                var: "n".into(),
                formula: parse_formula("(exN m (= m n))").unwrap(),
                mode: InductionMode::Restricted,
            },
            AxiomInstance::Induction {
                var: "n".into(),
                formula: parse_formula("(N n)").unwrap(),
                mode: InductionMode::Unrestricted,
            },
        ];
        for i in BaseInterpretation::all().into_iter().filter(|i| i.typed()) {
            for ax in &axioms {
                let seq = crate::kernel::axiom_sequent(ax).unwrap();
                let Ok(r) = i.axiom_realizer(ax) else {
                    continue;
                };
                let ty = i.type_of_formula(&seq.conclusion).unwrap();
                assert_eq!(r.len(), ty.len(), "{} {ax}", i.name);
                let ctx = vec![(STATE_PARAM.to_string(), RType::State)];
                for (t, ty) in r.iter().zip(&ty) {
                    check_type(t, ty, &ctx).unwrap_or_else(|e| panic!("{} {ax}: {e}", i.name));
                }
            }
        }
    }

    #[test]
    fn herbrand_conversion_examples() {
        let h = interp(InterpName::Herbrand);
        let set = RType::set_of(RType::Nat);
        let f = Term::lam1("S", Term::var("S"));
        let g = h
            .herbrand_convert(ConvertDirection::SetToPoint, &f, &set)
            .unwrap();
        assert_eq!(
            eval1(Term::app1(g.clone(), Term::Num(2))),
            Term::set(vec![Term::Num(2)])
        );
        let back = h
            .herbrand_convert(ConvertDirection::PointToSet, &g, &set)
            .unwrap();
        let s = Term::set(vec![Term::Num(0), Term::Num(3)]);
        assert_eq!(eval1(Term::app1(back, s.clone())), s);
    }

    #[test]
    fn unsupported_axioms_are_reported() {
        let efq = AxiomInstance::ExFalso(parse_formula("(= 0 (s 0))").unwrap());
        assert!(matches!(
            interp(InterpName::Classical).axiom_realizer(&efq),
            Err(InterpError::UnsupportedAxiom { .. })
        ));
        assert!(interp(InterpName::ClassicalFriedman)
            .axiom_realizer(&efq)
            .is_ok());
        assert!(interp(InterpName::Learning)
            .axiom_realizer(&AxiomInstance::NatEq)
            .is_err());
    }
}
