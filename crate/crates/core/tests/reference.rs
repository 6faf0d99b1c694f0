//! A second, deliberately naive evaluator for target formulas. It shares the
//! term evaluator and the quantifier domains with the checker but none of its
//! search: no witness suggestions, no pruning, no caching.

use std::path::PathBuf;

use unireal::checker::{cap_block, domain, verify, Universe, Verdict};
use unireal::extract::{extract, realizability_sequent};
use unireal::interp::{default_value, BaseInterpretation, InterpName};
use unireal::pipeline::{load_proof, proof_files, substitute_realizer};
use unireal::target::{TargetFormula, STATE_PARAM};
use unireal::term::{evaluate, EvalResult, Term};
use unireal::types::RType;

use unireal::checker::OpaquePred;

const FUEL: u64 = 100_000;

struct Naive<'a> {
    u: &'a Universe,
    p: Option<OpaquePred>,
    env: Vec<(String, Term)>,
}

enum V {
    Val(Term),
    Stuck,
    Diverged,
}

fn and3(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

fn or3(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    }
}

fn not3(a: Option<bool>) -> Option<bool> {
    a.map(|x| !x)
}

impl Naive<'_> {
    fn val(&self, t: &Term) -> V {
        match evaluate(std::slice::from_ref(t), &self.env, FUEL) {
            EvalResult::Value(mut v) => V::Val(v.remove(0)),
            EvalResult::Stuck(_) => V::Stuck,
            EvalResult::Diverged => V::Diverged,
        }
    }

    fn atom(&self, a: &Term, b: &Term, f: impl Fn(&Term, &Term) -> Option<bool>) -> Option<bool> {
        match (self.val(a), self.val(b)) {
            (V::Stuck, _) | (_, V::Stuck) => Some(false),
            (V::Val(x), V::Val(y)) => f(&x, &y),
            _ => None,
        }
    }

    fn all(&mut self, x: &str, values: Vec<Term>, body: &TargetFormula) -> Option<bool> {
        let mut acc = Some(true);
        for v in values {
            self.env.push((x.to_string(), v));
            let r = self.truth(body);
            self.env.pop();
            acc = and3(acc, r);
            if acc == Some(false) {
                break;
            }
        }
        acc
    }

    fn some(&mut self, x: &str, values: Vec<Term>, body: &TargetFormula) -> Option<bool> {
        let mut acc = Some(false);
        for v in values {
            self.env.push((x.to_string(), v));
            let r = self.truth(body);
            self.env.pop();
            acc = or3(acc, r);
            if acc == Some(true) {
                break;
            }
        }
        acc
    }

    fn block(&mut self, vs: &[(String, RType)], body: &TargetFormula, univ: bool) -> Option<bool> {
        let mut doms: Vec<Vec<Term>> = vs.iter().map(|(_, t)| domain(self.u, t)).collect();
        cap_block(self.u, vs, &mut doms);
        self.nested(vs, 0, &doms, body, univ)
    }

    fn nested(
        &mut self,
        vs: &[(String, RType)],
        i: usize,
        doms: &[Vec<Term>],
        body: &TargetFormula,
        univ: bool,
    ) -> Option<bool> {
        if i == vs.len() {
            return self.truth(body);
        }
        let mut acc = Some(univ);
        for v in &doms[i] {
            self.env.push((vs[i].0.clone(), v.clone()));
            let r = self.nested(vs, i + 1, doms, body, univ);
            self.env.pop();
            acc = if univ { and3(acc, r) } else { or3(acc, r) };
            if acc == Some(!univ) {
                break;
            }
        }
        acc
    }

    fn truth(&mut self, f: &TargetFormula) -> Option<bool> {
        use TargetFormula as F;
        match f {
            F::True => Some(true),
            F::False => Some(false),
            F::Eq(a, b) => self.atom(a, b, |x, y| {
                if matches!(x, Term::Lam(..)) || matches!(y, Term::Lam(..)) {
                    None
                } else {
                    Some(x == y)
                }
            }),
            F::Le(a, b) => self.atom(a, b, |x, y| Some(x.as_num()? <= y.as_num()?)),
            F::Member(a, b) => self.atom(a, b, |x, s| match s {
                Term::Set(items) => Some(items.contains(x)),
                _ => None,
            }),
            F::StateEq(a, b) => self.atom(a, b, |x, y| match (x, y) {
                (Term::StateLit(p), Term::StateLit(q)) => Some(p == q),
                _ => None,
            }),
            F::Defined(ts) => Some(ts.iter().all(|t| matches!(self.val(t), V::Val(_)))),
            F::OpaqueP(a) => match self.val(a) {
                V::Stuck => Some(false),
                V::Diverged => None,
                V::Val(v) => Some(self.p?.holds(v.as_num()?)),
            },
            F::And(a, b) => {
                let x = self.truth(a);
                if x == Some(false) {
                    return x;
                }
                and3(x, self.truth(b))
            }
            F::Or(a, b) => {
                let x = self.truth(a);
                if x == Some(true) {
                    return x;
                }
                or3(x, self.truth(b))
            }
            F::Imp(a, b) => {
                let x = not3(self.truth(a));
                if x == Some(true) {
                    return x;
                }
                or3(x, self.truth(b))
            }
            F::ForallSrc(x, b) => {
                let vals = (0..=self.u.bound).map(Term::Num).collect();
                self.all(x, vals, b)
            }
            F::ExistsSrc(x, b) => {
                let vals = (0..=4 * self.u.bound + 8).map(Term::Num).collect();
                self.some(x, vals, b)
            }
            F::ForallReal(vs, b) => self.block(vs, b, true),
            F::ExistsReal(vs, b) => self.block(vs, b, false),
        }
    }
}

fn mentions_p(f: &TargetFormula) -> bool {
    matches!(f, TargetFormula::OpaqueP(_)) || f.children().into_iter().any(mentions_p)
}

fn naive_truth(phi: &TargetFormula, u: &Universe) -> Option<bool> {
    let preds: Vec<Option<OpaquePred>> = if mentions_p(phi) {
        u.predicates.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let states: Vec<Option<Term>> = if phi.free_vars().contains(STATE_PARAM) {
        u.states
            .iter()
            .cloned()
            .map(|s| Some(Term::StateLit(s)))
            .collect()
    } else {
        vec![None]
    };
    let mut acc = Some(true);
    for p in &preds {
        for s in &states {
            let mut n = Naive {
                u,
                p: *p,
                env: s
                    .iter()
                    .map(|s| (STATE_PARAM.to_string(), s.clone()))
                    .collect(),
            };
            acc = and3(acc, n.truth(phi));
        }
    }
    acc
}

fn as_option(v: &Verdict) -> Option<bool> {
    match v {
        Verdict::Holds => Some(true),
        Verdict::Fails(_) => Some(false),
        Verdict::Unknown(_) => None,
    }
}

fn small_universe() -> Universe {
    let mut u = Universe::new(3);
    u.block_cap = 64;
    u
}

/// Every realizability sequent of the corpus, plus one with each realizer
/// replaced by default values.
fn corpus_formulas() -> Vec<(String, TargetFormula)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut out = vec![];
    for f in proof_files(&dir).unwrap() {
        let pf = load_proof(&f).unwrap();
        let c = pf.check().unwrap();
        for i in InterpName::ALL {
            let Ok(e) = extract(&c, &BaseInterpretation::new(i)) else {
                continue;
            };
            let label = format!("{} {i}", pf.theorem);
            out.push((label.clone(), realizability_sequent(&e).unwrap()));
            let shape = e.conclusion_types().unwrap();
            if !shape.is_empty() {
                let wrong: Vec<Term> = shape.iter().map(default_value).collect();
                if wrong != e.terms {
                    if let Ok(w) = substitute_realizer(&e, wrong) {
                        out.push((
                            format!("{label} defaults"),
                            realizability_sequent(&w).unwrap(),
                        ));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn checker_agrees_with_naive_evaluator_on_corpus_formulas() {
    let u = small_universe();
    let formulas = corpus_formulas();
    assert!(formulas.len() > 100);
    let mut falses = 0;
    for (label, phi) in &formulas {
        let fast = as_option(&verify(phi, &u, FUEL).verdict);
        let slow = naive_truth(phi, &u);
        assert_eq!(fast, slow, "{label}: {phi}");
        if slow == Some(false) {
            falses += 1;
        }
    }
    assert!(
        falses > 5,
        "too few refuted formulas ({falses}) to exercise the comparison"
    );
}

#[test]
fn agreement_on_small_formulas() {
    use TargetFormula as F;
    let u = small_universe();
    let v = Term::var;
    let nat_fn = RType::arrow(vec![RType::Nat], RType::Nat);
    let app = |f: &str, a: Term| Term::app(v(f), vec![a]);
    let cases = [
        F::forall_src("n", F::exists_src("m", F::Eq(v("m"), Term::succ(v("n"))))),
        F::forall_src("n", F::Le(v("n"), Term::Num(3))),
        F::forall_real(
            vec![("f".into(), nat_fn.clone())],
            F::exists_src("m", F::Eq(v("m"), app("f", Term::Num(0)))),
        ),
        F::exists_real(
            vec![("f".into(), nat_fn.clone())],
            F::forall_src("n", F::Eq(app("f", v("n")), Term::succ(v("n")))),
        ),
        F::forall_real(
            vec![("a".into(), RType::set_of(RType::Nat))],
            F::exists_src("m", F::Member(v("m"), v("a"))),
        ),
        F::forall_src(
            "n",
            F::imp(F::Eq(v("n"), Term::Num(1)), F::Eq(v("n"), Term::Num(0))),
        ),
        F::forall_real(
            vec![("f".into(), nat_fn.clone()), ("g".into(), nat_fn)],
            F::imp(
                F::forall_src("n", F::Eq(app("f", v("n")), app("g", v("n")))),
                F::Eq(app("f", Term::Num(2)), app("g", Term::Num(2))),
            ),
        ),
    ];
    for phi in &cases {
        let fast = as_option(&verify(phi, &u, FUEL).verdict);
        assert_eq!(fast, naive_truth(phi, &u), "{phi}");
    }
}
