//! Bounded model checking of target formulas.
//!
//! Source quantifiers range over `0..=B` (existentials also try witnesses
//! read off the equations in their body), realizer quantifiers over finite
//! per-type enumerations. Function types are enumerated by a fixed family of
//! small λ-terms, so realizer quantification under-approximates the target
//! theory: a `Fails` verdict is a genuine counterexample, a `Holds` verdict
//! is relative to the universe.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::target::{TargetFormula, STATE_PARAM};
use crate::term::{Halt, Machine, State, StateKey, Term};
use crate::types::RType;

/// A decidable reading of the opaque predicate `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpaquePred {
    Never,
    Always,
    Equals(u64),
    Odd,
    AtLeast(u64),
}

impl OpaquePred {
    pub fn holds(self, n: u64) -> bool {
        match self {
            OpaquePred::Never => false,
            OpaquePred::Always => true,
            OpaquePred::Equals(k) => n == k,
            OpaquePred::Odd => n % 2 == 1,
            OpaquePred::AtLeast(k) => n >= k,
        }
    }
}

impl fmt::Display for OpaquePred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpaquePred::Never => f.write_str("never"),
            OpaquePred::Always => f.write_str("always"),
            OpaquePred::Equals(k) => write!(f, "equals({k})"),
            OpaquePred::Odd => f.write_str("odd"),
            OpaquePred::AtLeast(k) => write!(f, "at-least({k})"),
        }
    }
}

pub const DEFAULT_BOUND: u64 = 6;
pub const DEFAULT_SET_CAP: usize = 4;
pub const DEFAULT_FUEL: u64 = 100_000;
pub const DEFAULT_BLOCK_CAP: usize = 256;

/// Limit on the number of functions enumerated per arrow type.
const FUNCTION_CAP: usize = 512;

#[derive(Debug, Clone)]
pub struct Universe {
    pub bound: u64,
    pub set_cap: usize,
    /// Values of state-typed quantifiers and of the learning state parameter.
    pub states: Vec<State>,
    /// Readings of `P` for the classical instances.
    pub predicates: Vec<OpaquePred>,
    /// Extra terms tried first when quantifying over their type.
    pub hints: Vec<(RType, Term)>,
    /// Bound on the number of joint assignments to the function-typed
    /// variables of one quantifier block.
    pub block_cap: usize,
}

impl Universe {
    pub fn new(bound: u64) -> Self {
        Universe {
            bound,
            set_cap: DEFAULT_SET_CAP,
            states: small_states(&[StateKey::new("P", &[0]), StateKey::new("P", &[1])], 1),
            predicates: vec![
                OpaquePred::Never,
                OpaquePred::Equals(0),
                OpaquePred::Equals(2),
                OpaquePred::Odd,
                OpaquePred::AtLeast(3),
            ],
            hints: vec![],
            block_cap: DEFAULT_BLOCK_CAP,
        }
    }
}

impl Default for Universe {
    fn default() -> Self {
        Universe::new(DEFAULT_BOUND)
    }
}

/// Every state over `keys` with witnesses in `0..=max_witness`.
pub fn small_states(keys: &[StateKey], max_witness: u64) -> Vec<State> {
    let mut out = vec![State::new()];
    for k in keys {
        let mut next = Vec::new();
        for s in &out {
            next.push(s.clone());
            for w in 0..=max_witness {
                next.push(s.clone().with(k.clone(), w));
            }
        }
        out = next;
    }
    out
}

/// Non-empty subsets of `0..=bound` with at most `cap` elements, by size
/// and then lexicographically.
pub fn small_sets(bound: u64, cap: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for size in 1..=cap.min(bound as usize + 1) {
        let mut combo: Vec<u64> = (0..size as u64).collect();
        loop {
            out.push(combo.clone());
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if combo[i] < bound - (size - 1 - i) as u64 {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Bindings along the failing path, outermost first.
    pub assignment: Vec<(String, String)>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, v)) in self.assignment.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
    /// A resource cap was hit before the formula was decided.
    Unknown(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Largest number of steps any single evaluation needed.
    pub fuel_used: u64,
}

enum Truth {
    True,
    False(Vec<(String, String)>),
    Unknown(String),
}

impl Truth {
    fn prefixed(self, name: &str, value: &Term) -> Truth {
        match self {
            Truth::False(mut a) => {
                a.insert(0, (name.to_string(), value.to_string()));
                Truth::False(a)
            }
            other => other,
        }
    }
}

enum Val {
    V(Term),
    Undefined,
    Timeout,
}

struct Run<'u> {
    u: &'u Universe,
    fuel: u64,
    peak: u64,
    pred: Option<OpaquePred>,
    env: HashMap<String, Term>,
    cache: HashMap<RType, std::rc::Rc<Vec<Term>>>,
}

/// Decides `phi` in the universe `u`. A free learning state parameter is
/// quantified over the universe's states; the opaque predicate `P`, if it
/// occurs, over the universe's predicate readings.
pub fn verify(phi: &TargetFormula, u: &Universe, fuel: u64) -> Outcome {
    let mut phi = phi.clone();
    if phi.free_vars().contains(STATE_PARAM) {
        phi =
            TargetFormula::ForallReal(vec![(STATE_PARAM.to_string(), RType::State)], Box::new(phi));
    }
    let preds: Vec<Option<OpaquePred>> = if mentions_p(&phi) {
        u.predicates.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let mut peak = 0;
    let mut unknown = None;
    for p in preds {
        let mut run = Run {
            u,
            fuel,
            peak: 0,
            pred: p,
            env: HashMap::new(),
            cache: HashMap::new(),
        };
        let t = run.eval(&phi);
        peak = peak.max(run.peak);
        match t {
            Truth::True => {}
            Truth::False(mut a) => {
                if let Some(p) = p {
                    a.insert(0, ("P".to_string(), p.to_string()));
                }
                return Outcome {
                    verdict: Verdict::Fails(Counterexample { assignment: a }),
                    fuel_used: peak,
                };
            }
            Truth::Unknown(r) => {
                unknown.get_or_insert(r);
            }
        }
    }
    Outcome {
        verdict: match unknown {
            Some(r) => Verdict::Unknown(r),
            None => Verdict::Holds,
        },
        fuel_used: peak,
    }
}

fn mentions_p(f: &TargetFormula) -> bool {
    matches!(f, TargetFormula::OpaqueP(_)) || f.children().into_iter().any(mentions_p)
}

impl Run<'_> {
    fn value(&mut self, t: &Term) -> Val {
        let closed = t.close(&self.env);
        let mut m = Machine::new(self.fuel);
        let r = m.eval(&closed);
        self.peak = self.peak.max(m.used());
        match r {
            Ok(v) => Val::V(v),
            Err(Halt::OutOfFuel) => Val::Timeout,
            Err(Halt::Stuck(_)) => Val::Undefined,
        }
    }

    /// Evaluates both sides of a binary atom and applies `test`; undefined
    /// terms make the atom false.
    fn binary(&mut self, a: &Term, b: &Term, test: impl Fn(&Term, &Term) -> Option<bool>) -> Truth {
        let x = match self.value(a) {
            Val::V(v) => v,
            Val::Undefined => return Truth::False(vec![]),
            Val::Timeout => return Truth::Unknown(format!("fuel exhausted evaluating {a}")),
        };
        let y = match self.value(b) {
            Val::V(v) => v,
            Val::Undefined => return Truth::False(vec![]),
            Val::Timeout => return Truth::Unknown(format!("fuel exhausted evaluating {b}")),
        };
        match test(&x, &y) {
            Some(true) => Truth::True,
            Some(false) => Truth::False(vec![]),
            None => Truth::Unknown(format!("cannot compare {x} and {y}")),
        }
    }

    fn eval(&mut self, f: &TargetFormula) -> Truth {
        match f {
            TargetFormula::True => Truth::True,
            TargetFormula::False => Truth::False(vec![]),
            TargetFormula::Eq(a, b) => self.binary(a, b, |x, y| match (x, y) {
                (Term::Lam(..), _) | (_, Term::Lam(..)) => None,
                _ => Some(x == y),
            }),
            TargetFormula::StateEq(a, b) => self.binary(a, b, |x, y| match (x, y) {
                (Term::StateLit(p), Term::StateLit(q)) => Some(p == q),
                _ => None,
            }),
            TargetFormula::Le(a, b) => self.binary(a, b, |x, y| match (x, y) {
                (Term::Num(p), Term::Num(q)) => Some(p <= q),
                _ => None,
            }),
            TargetFormula::Member(a, b) => self.binary(a, b, |x, y| match y {
                Term::Set(items) => Some(items.contains(x)),
                _ => None,
            }),
            TargetFormula::Defined(ts) => {
                for t in ts {
                    match self.value(t) {
                        Val::V(_) => {}
                        Val::Undefined | Val::Timeout => return Truth::False(vec![]),
                    }
                }
                Truth::True
            }
            TargetFormula::OpaqueP(a) => match (self.value(a), self.pred) {
                (Val::V(Term::Num(n)), Some(p)) => {
                    if p.holds(n) {
                        Truth::True
                    } else {
                        Truth::False(vec![])
                    }
                }
                (Val::Undefined, _) => Truth::False(vec![]),
                (Val::Timeout, _) => Truth::Unknown(format!("fuel exhausted evaluating {a}")),
                (_, _) => Truth::Unknown(format!("P applied to non-numeral {a}")),
            },
            TargetFormula::And(a, b) => match self.eval(a) {
                Truth::False(x) => Truth::False(x),
                Truth::True => self.eval(b),
                Truth::Unknown(r) => match self.eval(b) {
                    Truth::False(x) => Truth::False(x),
                    _ => Truth::Unknown(r),
                },
            },
            TargetFormula::Or(a, b) => match self.eval(a) {
                Truth::True => Truth::True,
                Truth::False(_) => self.eval(b),
                Truth::Unknown(r) => match self.eval(b) {
                    Truth::True => Truth::True,
                    _ => Truth::Unknown(r),
                },
            },
            TargetFormula::Imp(a, b) => match self.eval(a) {
                Truth::False(_) => Truth::True,
                Truth::True => self.eval(b),
                Truth::Unknown(r) => match self.eval(b) {
                    Truth::True => Truth::True,
                    _ => Truth::Unknown(r),
                },
            },
            TargetFormula::ForallSrc(x, body) => {
                let values: Vec<Term> = (0..=self.u.bound).map(Term::Num).collect();
                self.forall(&[(x.clone(), values)], body)
            }
            TargetFormula::ExistsSrc(x, body) => {
                // Suggested witnesses go first; the verdict does not depend
                // on the order.
                let mut cands = BTreeSet::new();
                self.witness_candidates(x, body, &mut cands);
                let rest: Vec<u64> = (0..=self.u.bound).filter(|n| !cands.contains(n)).collect();
                let values: Vec<Term> = cands.into_iter().chain(rest).map(Term::Num).collect();
                self.exists(&[(x.clone(), values)], body)
            }
            TargetFormula::ForallReal(vs, body) => {
                let doms = self.domains(vs);
                self.forall(&doms, body)
            }
            TargetFormula::ExistsReal(vs, body) => {
                let doms = self.domains(vs);
                self.exists(&doms, body)
            }
        }
    }

    fn domains(&mut self, vs: &[(String, RType)]) -> Vec<(String, Vec<Term>)> {
        let mut doms: Vec<Vec<Term>> = vs
            .iter()
            .map(|(_, ty)| self.enumerate(ty).as_ref().clone())
            .collect();
        cap_block(self.u, vs, &mut doms);
        vs.iter().map(|(v, _)| v.clone()).zip(doms).collect()
    }

    fn bind(&mut self, x: &str, v: Term) -> Option<Term> {
        self.env.insert(x.to_string(), v)
    }

    fn unbind(&mut self, x: &str, old: Option<Term>) {
        match old {
            Some(o) => self.env.insert(x.to_string(), o),
            None => self.env.remove(x),
        };
    }

    fn forall(&mut self, doms: &[(String, Vec<Term>)], body: &TargetFormula) -> Truth {
        // Conjuncts of an antecedent are tested as soon as their variables
        // are bound, so bindings that falsify the antecedent are skipped.
        let mut guards: Vec<Vec<&TargetFormula>> = vec![vec![]; doms.len()];
        let mut concl = None;
        if let TargetFormula::Imp(ante, c) = body {
            let mut parts = vec![];
            conjuncts(ante, &mut parts);
            let mut all_guarded = true;
            for p in parts {
                let fv = p.free_vars();
                match doms.iter().rposition(|(x, _)| fv.contains(x)) {
                    Some(i) => guards[i].push(p),
                    None => all_guarded = false,
                }
            }
            if all_guarded {
                concl = Some(&**c);
            }
        }
        self.forall_guarded(doms, &guards, body, concl, true)
    }

    /// `concl` is the conclusion to evaluate alone once every guard has come
    /// out true.
    fn forall_guarded(
        &mut self,
        doms: &[(String, Vec<Term>)],
        guards: &[Vec<&TargetFormula>],
        body: &TargetFormula,
        concl: Option<&TargetFormula>,
        guards_true: bool,
    ) -> Truth {
        let Some(((x, values), rest)) = doms.split_first() else {
            return match concl {
                Some(c) if guards_true => self.eval(c),
                _ => self.eval(body),
            };
        };
        let mut unknown = None;
        for v in values {
            let old = self.bind(x, v.clone());
            let mut pruned = false;
            let mut all_true = guards_true;
            for g in &guards[0] {
                match self.eval(g) {
                    Truth::True => {}
                    Truth::False(_) => {
                        pruned = true;
                        break;
                    }
                    Truth::Unknown(_) => all_true = false,
                }
            }
            let t = if pruned {
                Truth::True
            } else {
                self.forall_guarded(rest, &guards[1..], body, concl, all_true)
            };
            self.unbind(x, old);
            match t {
                Truth::True => {}
                Truth::False(_) => return t.prefixed(x, v),
                Truth::Unknown(r) => {
                    unknown.get_or_insert(r);
                }
            }
        }
        match unknown {
            Some(r) => Truth::Unknown(r),
            None => Truth::True,
        }
    }

    fn exists(&mut self, doms: &[(String, Vec<Term>)], body: &TargetFormula) -> Truth {
        let Some(((x, values), rest)) = doms.split_first() else {
            return self.eval(body);
        };
        let mut unknown = None;
        for v in values {
            let old = self.bind(x, v.clone());
            let t = self.exists(rest, body);
            self.unbind(x, old);
            match t {
                Truth::True => return Truth::True,
                Truth::False(_) => {}
                Truth::Unknown(r) => {
                    unknown.get_or_insert(r);
                }
            }
        }
        match unknown {
            Some(r) => Truth::Unknown(r),
            None => Truth::False(vec![]),
        }
    }

    /// Values for `x` suggested by atoms `succ^k(x) = t`, `x ≤ t` and
    /// `x ∈ S` whose other side can already be evaluated.
    fn witness_candidates(&mut self, x: &str, f: &TargetFormula, out: &mut BTreeSet<u64>) {
        match f {
            TargetFormula::Eq(a, b) => {
                self.candidate_from_eq(x, a, b, out);
                self.candidate_from_eq(x, b, a, out);
            }
            TargetFormula::Le(Term::Var(y), b) if y == x => {
                if let Some(Term::Num(n)) = self.evaluable(b) {
                    out.insert(n);
                }
            }
            TargetFormula::Member(Term::Var(y), s) if y == x => {
                if let Some(Term::Set(items)) = self.evaluable(s) {
                    out.extend(items.iter().filter_map(Term::as_num));
                }
            }
            TargetFormula::ForallSrc(y, _) | TargetFormula::ExistsSrc(y, _) if y == x => {}
            _ => {
                for c in f.children() {
                    self.witness_candidates(x, c, out);
                }
            }
        }
    }

    fn candidate_from_eq(&mut self, x: &str, a: &Term, b: &Term, out: &mut BTreeSet<u64>) {
        let mut k = 0;
        let mut cur = a;
        while let Term::Succ(inner) = cur {
            k += 1;
            cur = inner;
        }
        if matches!(cur, Term::Var(y) if y == x) {
            if let Some(Term::Num(n)) = self.evaluable(b) {
                if n >= k {
                    out.insert(n - k);
                }
            }
        }
    }

    fn evaluable(&mut self, t: &Term) -> Option<Term> {
        if !t.free_vars().iter().all(|v| self.env.contains_key(v)) {
            return None;
        }
        match self.value(t) {
            Val::V(v) => Some(v),
            _ => None,
        }
    }

    fn enumerate(&mut self, ty: &RType) -> std::rc::Rc<Vec<Term>> {
        if let Some(v) = self.cache.get(ty) {
            return v.clone();
        }
        let out = domain(self.u, ty);
        let rc = std::rc::Rc::new(out);
        self.cache.insert(ty.clone(), rc.clone());
        rc
    }
}

fn conjuncts<'a>(f: &'a TargetFormula, out: &mut Vec<&'a TargetFormula>) {
    match f {
        TargetFormula::And(a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        _ => out.push(f),
    }
}

/// Shrinks the domains of one quantifier block: while the function-typed
/// variables together exceed `u.block_cap` joint assignments, the largest of
/// their domains is halved. Hints sit at the front and survive.
pub fn cap_block(u: &Universe, vs: &[(String, RType)], doms: &mut [Vec<Term>]) {
    let funs: Vec<usize> = (0..vs.len())
        .filter(|&i| matches!(vs[i].1, RType::Arrow(..)))
        .collect();
    loop {
        let product = funs
            .iter()
            .try_fold(1usize, |acc, &i| acc.checked_mul(doms[i].len()))
            .unwrap_or(usize::MAX);
        if product <= u.block_cap {
            return;
        }
        let Some(&i) = funs.iter().rev().max_by_key(|&&i| doms[i].len()) else {
            return;
        };
        let n = doms[i].len();
        if n <= 1 {
            return;
        }
        doms[i].truncate(n.div_ceil(2));
    }
}

/// Hints for `ty` followed by the rest of its enumeration.
pub fn domain(u: &Universe, ty: &RType) -> Vec<Term> {
    let mut out: Vec<Term> = u
        .hints
        .iter()
        .filter(|(t, _)| t == ty)
        .map(|(_, h)| h.clone())
        .collect();
    for t in enumerate_type(u, ty) {
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// The values a realizer quantifier over `ty` ranges over, in order.
pub fn enumerate_type(u: &Universe, ty: &RType) -> Vec<Term> {
    match ty {
        RType::Nat | RType::Meta(_) => (0..=u.bound).map(Term::Num).collect(),
        RType::SetOf(inner) if **inner == RType::Nat => small_sets(u.bound, u.set_cap)
            .into_iter()
            .map(|s| Term::set(s.into_iter().map(Term::Num).collect()))
            .collect(),
        RType::SetOf(inner) => enumerate_type(u, inner)
            .into_iter()
            .map(|t| Term::set(vec![t]))
            .collect(),
        RType::State => u.states.iter().cloned().map(Term::StateLit).collect(),
        RType::Prod(ts) => {
            let mut out = vec![vec![]];
            for t in ts {
                let vals = enumerate_type(u, t);
                out = out
                    .into_iter()
                    .flat_map(|prefix: Vec<Term>| {
                        vals.iter().map(move |v| {
                            let mut p = prefix.clone();
                            p.push(v.clone());
                            p
                        })
                    })
                    .collect();
            }
            out.into_iter().map(Term::Tuple).collect()
        }
        RType::Arrow(args, r) => {
            let params: Vec<(String, RType)> = args
                .iter()
                .enumerate()
                .map(|(i, t)| (format!("_x{i}"), t.clone()))
                .collect();
            let mut out: Vec<Term> = bodies(u, &params, r, 0)
                .into_iter()
                .map(|b| Term::lam(params.iter().map(|(p, _)| p.clone()).collect(), b))
                .collect();
            out.truncate(FUNCTION_CAP);
            out
        }
    }
}

/// Candidate function bodies of type `r` over the variables `scope`.
fn bodies(u: &Universe, scope: &[(String, RType)], r: &RType, depth: usize) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    let push = |t: Term, out: &mut Vec<Term>| {
        if !out.contains(&t) {
            out.push(t);
        }
    };
    if let RType::Arrow(args, r2) = r {
        let params: Vec<(String, RType)> = args
            .iter()
            .enumerate()
            .map(|(i, t)| (format!("_x{}_{i}", depth + 1), t.clone()))
            .collect();
        let mut inner_scope = scope.to_vec();
        inner_scope.extend(params.iter().cloned());
        let names: Vec<String> = params.iter().map(|(p, _)| p.clone()).collect();
        for b in bodies(u, &inner_scope, r2, depth + 1) {
            push(Term::lam(names.clone(), b), &mut out);
        }
        return out;
    }
    for (x, t) in scope {
        if t == r {
            push(Term::var(x), &mut out);
        }
    }
    for (x, t) in scope {
        if *t == RType::Nat && *r == RType::Nat {
            push(Term::succ(Term::var(x)), &mut out);
        }
        if let RType::Arrow(fargs, fr) = t {
            if **fr == *r {
                if let Some(args) = fill_args(u, scope, fargs) {
                    push(Term::app(Term::var(x), args), &mut out);
                }
            }
        }
    }
    match r {
        RType::Nat => {
            for n in 0..=u.bound {
                push(Term::Num(n), &mut out);
            }
            let small: Vec<u64> = (0..=u.bound.min(2)).collect();
            for (x, t) in scope {
                if *t != RType::Nat {
                    continue;
                }
                for &c in &small {
                    for &v in &small {
                        for &w in &small {
                            if v != w {
                                push(
                                    Term::if_eq(
                                        Term::var(x),
                                        Term::Num(c),
                                        Term::Num(v),
                                        Term::Num(w),
                                    ),
                                    &mut out,
                                );
                            }
                        }
                    }
                }
            }
        }
        RType::SetOf(inner) if **inner == RType::Nat => {
            for s in small_sets(u.bound, 2) {
                push(Term::set(s.into_iter().map(Term::Num).collect()), &mut out);
            }
            for (x, t) in scope {
                if t == r {
                    for c in 0..=u.bound.min(2) {
                        push(
                            Term::union(Term::var(x), Term::set(vec![Term::Num(c)])),
                            &mut out,
                        );
                    }
                    push(
                        Term::set_bind(
                            Term::var(x),
                            Term::lam1("_y", Term::set(vec![Term::succ(Term::var("_y"))])),
                        ),
                        &mut out,
                    );
                }
            }
        }
        RType::State => {
            // learning updates: extend one state with one more fact
            for (x, t) in scope {
                if *t != RType::State {
                    continue;
                }
                for s0 in &u.states {
                    for s1 in &u.states {
                        if s1 != s0 && s1.extends(s0) {
                            push(
                                Term::if_eq(
                                    Term::var(x),
                                    Term::StateLit(s0.clone()),
                                    Term::StateLit(s1.clone()),
                                    Term::var(x),
                                ),
                                &mut out,
                            );
                        }
                    }
                }
            }
        }
        other => {
            for v in enumerate_type(u, other).into_iter().take(8) {
                push(v, &mut out);
            }
        }
    }
    out
}

fn fill_args(u: &Universe, scope: &[(String, RType)], tys: &[RType]) -> Option<Vec<Term>> {
    tys.iter()
        .map(|t| {
            scope
                .iter()
                .find(|(_, st)| st == t)
                .map(|(x, _)| Term::var(x))
                .or_else(|| enumerate_type(u, t).into_iter().next())
        })
        .collect()
}
