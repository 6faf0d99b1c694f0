use proptest::prelude::*;

use unireal::syntax::{parse_formula, Formula, SrcTerm};
use unireal::term::{evaluate, normalize, EvalResult, State, StateKey, Term};

const NAMES: [&str; 3] = ["x", "y", "z"];

fn src_term() -> impl Strategy<Value = SrcTerm> {
    let leaf = prop_oneof![
        Just(SrcTerm::Zero),
        prop::sample::select(&NAMES[..]).prop_map(SrcTerm::var),
    ];
    leaf.prop_recursive(3, 6, 1, |t| t.prop_map(SrcTerm::succ))
}

fn formula() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        Just(Formula::falsity()),
        src_term().prop_map(Formula::nat),
        src_term().prop_map(Formula::st),
        (src_term(), src_term()).prop_map(|(a, b)| Formula::eq(a, b)),
    ];
    atom.prop_recursive(4, 24, 2, |f| {
        let v = prop::sample::select(&NAMES[..]);
        prop_oneof![
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (f.clone(), f.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (v.clone(), f.clone()).prop_map(|(x, a)| Formula::forall(x, a)),
            (v, f).prop_map(|(x, a)| Formula::exists(x, a)),
        ]
    })
}

/// Closed terms of type nat; `scope` lists the nat variables in scope.
fn nat_term(scope: Vec<String>, depth: u32) -> BoxedStrategy<Term> {
    let mut leaves = vec![(0u64..4).prop_map(Term::Num).boxed()];
    if !scope.is_empty() {
        leaves.push(
            prop::sample::select(scope.clone())
                .prop_map(|x| Term::var(&x))
                .boxed(),
        );
    }
    let leaf = prop::strategy::Union::new(leaves).boxed();
    if depth == 0 {
        return leaf;
    }
    let sub = nat_term(scope.clone(), depth - 1);
    let fresh = format!("v{}", scope.len());
    let mut inner = scope.clone();
    inner.push(fresh.clone());
    let body = nat_term(inner.clone(), depth - 1);
    let acc = format!("r{}", scope.len());
    let mut step_scope = inner;
    step_scope.push(acc.clone());
    let step = nat_term(step_scope, depth - 1);
    prop_oneof![
        2 => leaf,
        1 => sub.clone().prop_map(Term::succ),
        1 => (sub.clone(), sub.clone()).prop_map(|(a, b)| Term::max(a, b)),
        1 => (sub.clone(), sub.clone(), sub.clone(), sub.clone())
            .prop_map(|(a, b, c, d)| Term::if_eq(a, b, c, d)),
        1 => (body, sub.clone()).prop_map({
            let x = fresh.clone();
            move |(b, a)| Term::app1(Term::lam1(&x, b), a)
        }),
        1 => (sub.clone(), step, 0u64..4).prop_map(move |(base, s, n)| {
            Term::rec(
                base,
                Term::lam(vec![fresh.clone(), acc.clone()], s),
                Term::Num(n),
            )
        }),
    ]
    .boxed()
}

fn state() -> impl Strategy<Value = State> {
    prop::collection::btree_map(0u64..4, 0u64..3, 0..4).prop_map(|m| {
        m.into_iter().fold(State::new(), |s, (k, w)| {
            s.with(StateKey::new("P", &[k]), w)
        })
    })
}

fn value(t: &Term) -> Term {
    match evaluate(std::slice::from_ref(t), &[], 1_000_000) {
        EvalResult::Value(mut v) => v.remove(0),
        other => panic!("{t}: {other:?}"),
    }
}

proptest! {
    #[test]
    fn formulas_print_and_parse_back(a in formula()) {
        let back = parse_formula(&a.to_string()).unwrap();
        prop_assert!(back.alpha_eq(&a), "{a} reparsed as {back}");
    }

    #[test]
    fn substituting_a_variable_for_itself_is_identity(a in formula(), x in prop::sample::select(&NAMES[..])) {
        prop_assert!(a.substitute(x, &SrcTerm::var(x)).alpha_eq(&a));
    }

    #[test]
    fn substitution_removes_the_variable(a in formula(), x in prop::sample::select(&NAMES[..])) {
        let b = a.substitute(x, &SrcTerm::succ(SrcTerm::Zero));
        prop_assert!(!b.free_vars().contains(x));
    }

    #[test]
    fn terms_print_and_parse_back(t in nat_term(vec![], 3)) {
        prop_assert_eq!(Term::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn normalizing_preserves_the_value(t in nat_term(vec![], 3)) {
        let n = normalize(&t, 1_000_000).unwrap();
        prop_assert_eq!(value(&n), value(&t));
    }

    #[test]
    fn closed_nat_terms_evaluate_to_numerals(t in nat_term(vec![], 3)) {
        prop_assert!(value(&t).as_num().is_some());
    }

    #[test]
    fn join_is_a_semilattice(a in state(), b in state(), c in state()) {
        prop_assert_eq!(a.join(&a), a.clone());
        prop_assert_eq!(a.join(&b), b.join(&a));
        prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
        let compatible = a.0.iter().all(|(k, v)| b.0.get(k).is_none_or(|w| w == v));
        if compatible {
            prop_assert!(a.join(&b).extends(&a));
        }
    }

    #[test]
    fn join_equal_to_a_common_base_forces_both(s in state(), a in state(), b in state()) {
        let x = s.join(&a);
        let y = s.join(&b);
        if x.join(&y) == s {
            prop_assert_eq!(x, s.clone());
            prop_assert_eq!(y, s);
        }
    }

    #[test]
    fn sets_are_canonical(items in prop::collection::vec(0u64..6, 1..8)) {
        let a = Term::set(items.iter().copied().map(Term::Num).collect());
        let mut rev = items.clone();
        rev.reverse();
        rev.extend(items.iter().copied());
        prop_assert_eq!(a, Term::set(rev.into_iter().map(Term::Num).collect()));
    }
}
