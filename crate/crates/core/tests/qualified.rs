//! Qualified quantifiers: `∀n(ℕ(n) → A)` and `∃n(ℕ(n) ∧ A)` unfold to
//! quantification over ℕ-realizers, and collapse further when the bounding
//! relation is equality or trivial. Each equivalence is checked by the
//! bounded checker.

use unireal::checker::{verify, Universe, Verdict};
use unireal::extract::translate;
use unireal::interp::{BaseInterpretation, InterpName};
use unireal::syntax::{parse_formula, Formula, Pred, SrcTerm};
use unireal::target::TargetFormula as F;
use unireal::term::Term;
use unireal::types::RType;

fn body() -> Formula {
    parse_formula("(exN m (= m (s n)))").unwrap()
}

fn iff(a: F, b: F) -> F {
    F::and(F::imp(a.clone(), b.clone()), F::imp(b, a))
}

fn vars(prefix: &str, tys: &[RType]) -> Vec<(String, RType)> {
    tys.iter()
        .enumerate()
        .map(|(i, t)| (format!("{prefix}{i}"), t.clone()))
        .collect()
}

fn terms(vs: &[(String, RType)]) -> Vec<Term> {
    vs.iter().map(|(v, _)| Term::var(v)).collect()
}

fn holds(i: &BaseInterpretation, phi: &F) {
    let out = verify(phi, &Universe::new(4), 100_000);
    assert_eq!(out.verdict, Verdict::Holds, "{}: {phi}", i.name);
}

fn with_defined(i: &BaseInterpretation, ts: &[Term], phi: F) -> F {
    if i.total() || ts.is_empty() {
        phi
    } else {
        F::and(F::Defined(ts.to_vec()), phi)
    }
}

fn equality_bounded(n: InterpName) -> bool {
    matches!(
        n,
        InterpName::Kleene
            | InterpName::Kreisel
            | InterpName::Classical
            | InterpName::ClassicalFriedman
    )
}

#[test]
fn qualified_universal_unfolds() {
    let a = body();
    let all = Formula::forall_in(Pred::Nat, "n", a.clone());
    for i in BaseInterpretation::all() {
        let fs = vars("f", &i.shape(&all).unwrap());
        let bs = vars("b", &i.atom_types(Pred::Nat).unwrap());
        let applied: Vec<Term> = terms(&fs)
            .into_iter()
            .map(|f| Term::app(f, terms(&bs)))
            .collect();
        let lhs = translate(&all, &i, &terms(&fs)).unwrap();
        let bound = i
            .bounding(Pred::Nat, &[SrcTerm::var("n")], &terms(&bs))
            .unwrap();
        let inner = with_defined(&i, &applied, translate(&a, &i, &applied).unwrap());
        let rhs = F::forall_real(bs.clone(), F::forall_src("n", F::imp(bound, inner)));
        holds(&i, &F::forall_real(fs.clone(), iff(lhs.clone(), rhs)));

        let special = if equality_bounded(i.name) {
            let at_b = a.substitute("n", &SrcTerm::var("b0"));
            let inner = with_defined(&i, &applied, translate(&at_b, &i, &applied).unwrap());
            // The realizer variable b0 doubles as the source variable.
            Some(F::forall_real(bs.clone(), inner))
        } else if i.name == InterpName::Herbrand {
            Some(F::forall_src("n", translate(&a, &i, &terms(&fs)).unwrap()))
        } else {
            None
        };
        if let Some(rhs) = special {
            holds(&i, &F::forall_real(fs, iff(lhs, rhs)));
        }
    }
}

#[test]
fn qualified_existential_unfolds() {
    let a = body();
    let ex = Formula::exists_in(Pred::Nat, "n", a.clone());
    for i in BaseInterpretation::all() {
        let bs = vars("b", &i.atom_types(Pred::Nat).unwrap());
        let avs = vars("a", &i.shape(&a).unwrap());
        let mut all_vars = bs.clone();
        all_vars.extend(avs.clone());
        let lhs = translate(&ex, &i, &terms(&all_vars)).unwrap();
        let bound = i
            .bounding(Pred::Nat, &[SrcTerm::var("n")], &terms(&bs))
            .unwrap();
        let rhs = F::exists_src("n", F::and(bound, translate(&a, &i, &terms(&avs)).unwrap()));
        holds(&i, &F::forall_real(all_vars.clone(), iff(lhs.clone(), rhs)));

        if equality_bounded(i.name) {
            let at_b = a.substitute("n", &SrcTerm::var("b0"));
            let rhs = translate(&at_b, &i, &terms(&avs)).unwrap();
            holds(&i, &F::forall_real(all_vars, iff(lhs, rhs)));
        }
    }
}

#[test]
fn a_wrong_collapse_is_refuted() {
    let i = BaseInterpretation::new(InterpName::Kreisel);
    let a = body();
    let all = Formula::forall_in(Pred::Nat, "n", a.clone());
    let fs = vars("f", &i.shape(&all).unwrap());
    let applied: Vec<Term> = terms(&fs)
        .into_iter()
        .map(|f| Term::app(f, vec![Term::var("b0")]))
        .collect();
    let lhs = translate(&all, &i, &terms(&fs)).unwrap();
    let shifted = a.substitute("n", &SrcTerm::succ(SrcTerm::var("b0")));
    let rhs = F::forall_real(
        vec![("b0".into(), RType::Nat)],
        translate(&shifted, &i, &applied).unwrap(),
    );
    let out = verify(
        &F::forall_real(fs, iff(lhs, rhs)),
        &Universe::new(4),
        100_000,
    );
    assert!(matches!(out.verdict, Verdict::Fails(_)));
}
