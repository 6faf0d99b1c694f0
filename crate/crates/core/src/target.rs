//! Formulas of the target theory: what a realizability translation produces
//! and what the checker decides.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::sexp::Sexp;
use crate::syntax::{Formula, Pred, Var};
use crate::term::Term;
use crate::types::RType;

/// The name of the fixed state parameter of the learning instance.
pub const STATE_PARAM: &str = "_s";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TargetFormula {
    True,
    False,
    Eq(Term, Term),
    Le(Term, Term),
    /// Element, set.
    Member(Term, Term),
    StateEq(Term, Term),
    /// Every component evaluates to a value.
    Defined(Vec<Term>),
    /// The designated decidable predicate of the classical instance.
    OpaqueP(Term),
    And(Box<TargetFormula>, Box<TargetFormula>),
    Imp(Box<TargetFormula>, Box<TargetFormula>),
    Or(Box<TargetFormula>, Box<TargetFormula>),
    ForallSrc(Var, Box<TargetFormula>),
    ExistsSrc(Var, Box<TargetFormula>),
    ForallReal(Vec<(Var, RType)>, Box<TargetFormula>),
    ExistsReal(Vec<(Var, RType)>, Box<TargetFormula>),
}

impl TargetFormula {
    pub fn and(a: TargetFormula, b: TargetFormula) -> TargetFormula {
        TargetFormula::And(Box::new(a), Box::new(b))
    }

    pub fn imp(a: TargetFormula, b: TargetFormula) -> TargetFormula {
        TargetFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn or(a: TargetFormula, b: TargetFormula) -> TargetFormula {
        TargetFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn negation(a: TargetFormula) -> TargetFormula {
        TargetFormula::imp(a, TargetFormula::False)
    }

    /// Right-nested conjunction; `True` when empty.
    pub fn conj(parts: Vec<TargetFormula>) -> TargetFormula {
        let mut it = parts.into_iter().rev();
        match it.next() {
            None => TargetFormula::True,
            Some(last) => it.fold(last, |acc, p| TargetFormula::and(p, acc)),
        }
    }

    pub fn forall_real(vars: Vec<(Var, RType)>, body: TargetFormula) -> TargetFormula {
        if vars.is_empty() {
            body
        } else {
            TargetFormula::ForallReal(vars, Box::new(body))
        }
    }

    pub fn exists_real(vars: Vec<(Var, RType)>, body: TargetFormula) -> TargetFormula {
        if vars.is_empty() {
            body
        } else {
            TargetFormula::ExistsReal(vars, Box::new(body))
        }
    }

    pub fn forall_src(x: &str, body: TargetFormula) -> TargetFormula {
        TargetFormula::ForallSrc(x.to_string(), Box::new(body))
    }

    pub fn exists_src(x: &str, body: TargetFormula) -> TargetFormula {
        TargetFormula::ExistsSrc(x.to_string(), Box::new(body))
    }

    /// A source formula read as a target formula. Only meaningful for
    /// formulas over `⊥` and `=`; other atoms map to their literal reading
    /// (`ℕ` to `True`, `st` is not representable and maps to `True` too).
    pub fn embed(a: &Formula) -> TargetFormula {
        match a {
            Formula::Atom(Pred::Falsity, _) => TargetFormula::False,
            Formula::Atom(Pred::Eq, args) => {
                TargetFormula::Eq(Term::from_src(&args[0]), Term::from_src(&args[1]))
            }
            Formula::Atom(_, _) => TargetFormula::True,
            Formula::And(x, y) => TargetFormula::and(Self::embed(x), Self::embed(y)),
            Formula::Imp(x, y) => TargetFormula::imp(Self::embed(x), Self::embed(y)),
            Formula::Exists(v, x) => TargetFormula::exists_src(v, Self::embed(x)),
            Formula::Forall(v, x) => TargetFormula::forall_src(v, Self::embed(x)),
        }
    }

    fn terms_mut(&mut self) -> Vec<&mut Term> {
        match self {
            TargetFormula::Eq(a, b)
            | TargetFormula::Le(a, b)
            | TargetFormula::Member(a, b)
            | TargetFormula::StateEq(a, b) => vec![a, b],
            TargetFormula::Defined(ts) => ts.iter_mut().collect(),
            TargetFormula::OpaqueP(a) => vec![a],
            _ => vec![],
        }
    }

    fn terms(&self) -> Vec<&Term> {
        match self {
            TargetFormula::Eq(a, b)
            | TargetFormula::Le(a, b)
            | TargetFormula::Member(a, b)
            | TargetFormula::StateEq(a, b) => vec![a, b],
            TargetFormula::Defined(ts) => ts.iter().collect(),
            TargetFormula::OpaqueP(a) => vec![a],
            _ => vec![],
        }
    }

    pub fn children(&self) -> Vec<&TargetFormula> {
        match self {
            TargetFormula::And(a, b) | TargetFormula::Imp(a, b) | TargetFormula::Or(a, b) => {
                vec![a, b]
            }
            TargetFormula::ForallSrc(_, a)
            | TargetFormula::ExistsSrc(_, a)
            | TargetFormula::ForallReal(_, a)
            | TargetFormula::ExistsReal(_, a) => vec![a],
            _ => vec![],
        }
    }

    /// Names bound by this node, if it is a quantifier.
    fn binders(&self) -> Vec<&Var> {
        match self {
            TargetFormula::ForallSrc(x, _) | TargetFormula::ExistsSrc(x, _) => vec![x],
            TargetFormula::ForallReal(vs, _) | TargetFormula::ExistsReal(vs, _) => {
                vs.iter().map(|(v, _)| v).collect()
            }
            _ => vec![],
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for t in self.terms() {
            out.extend(t.free_vars());
        }
        let bound: Vec<&Var> = self.binders();
        for c in self.children() {
            for v in c.free_vars() {
                if !bound.contains(&&v) {
                    out.insert(v);
                }
            }
        }
        out
    }

    /// Replaces free occurrences of `x` by `t`. `t` is a numeral or a
    /// variable that is not bound anywhere in `self`, so no renaming occurs.
    pub fn substitute(&self, x: &str, t: &Term) -> TargetFormula {
        if self.binders().iter().any(|b| b.as_str() == x) {
            return self.clone();
        }
        let mut out = match self {
            TargetFormula::And(a, b) => TargetFormula::and(a.substitute(x, t), b.substitute(x, t)),
            TargetFormula::Imp(a, b) => TargetFormula::imp(a.substitute(x, t), b.substitute(x, t)),
            TargetFormula::Or(a, b) => TargetFormula::or(a.substitute(x, t), b.substitute(x, t)),
            TargetFormula::ForallSrc(v, a) => TargetFormula::forall_src(v, a.substitute(x, t)),
            TargetFormula::ExistsSrc(v, a) => TargetFormula::exists_src(v, a.substitute(x, t)),
            TargetFormula::ForallReal(vs, a) => {
                TargetFormula::ForallReal(vs.clone(), Box::new(a.substitute(x, t)))
            }
            TargetFormula::ExistsReal(vs, a) => {
                TargetFormula::ExistsReal(vs.clone(), Box::new(a.substitute(x, t)))
            }
            other => other.clone(),
        };
        let mut map = HashMap::new();
        map.insert(x.to_string(), t.clone());
        for term in out.terms_mut() {
            *term = term.substitute(&map);
        }
        out
    }

    /// Renames every bound variable (of formulas and of λ-terms inside
    /// atoms) to a canonical name determined by its position, so that
    /// α-equivalent formulas become equal.
    pub fn canonical(&self) -> TargetFormula {
        let mut counter = 0;
        canon(self, &HashMap::new(), &mut counter)
    }

    pub fn alpha_eq(&self, other: &TargetFormula) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn to_sexp(&self) -> Sexp {
        let a = |s: &str| Sexp::atom(s);
        let l = Sexp::list;
        let typed = |vs: &[(Var, RType)]| {
            l(vs.iter()
                .map(|(v, ty)| l(vec![Sexp::atom(v.clone()), Sexp::atom(ty.to_string())]))
                .collect())
        };
        match self {
            TargetFormula::True => a("true"),
            TargetFormula::False => a("false"),
            TargetFormula::Eq(x, y) => l(vec![a("="), x.to_sexp(), y.to_sexp()]),
            TargetFormula::Le(x, y) => l(vec![a("<="), x.to_sexp(), y.to_sexp()]),
            TargetFormula::Member(x, y) => l(vec![a("in"), x.to_sexp(), y.to_sexp()]),
            TargetFormula::StateEq(x, y) => l(vec![a("state="), x.to_sexp(), y.to_sexp()]),
            TargetFormula::Defined(ts) => {
                let mut items = vec![a("defined")];
                items.extend(ts.iter().map(Term::to_sexp));
                l(items)
            }
            TargetFormula::OpaqueP(x) => l(vec![a("P"), x.to_sexp()]),
            TargetFormula::And(x, y) => l(vec![a("and"), x.to_sexp(), y.to_sexp()]),
            TargetFormula::Imp(x, y) => l(vec![a("->"), x.to_sexp(), y.to_sexp()]),
            TargetFormula::Or(x, y) => l(vec![a("or"), x.to_sexp(), y.to_sexp()]),
            TargetFormula::ForallSrc(v, x) => l(vec![a("all"), a(v), x.to_sexp()]),
            TargetFormula::ExistsSrc(v, x) => l(vec![a("ex"), a(v), x.to_sexp()]),
            TargetFormula::ForallReal(vs, x) => l(vec![a("all*"), typed(vs), x.to_sexp()]),
            TargetFormula::ExistsReal(vs, x) => l(vec![a("ex*"), typed(vs), x.to_sexp()]),
        }
    }
}

impl fmt::Display for TargetFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

fn canon_name(counter: &mut usize) -> String {
    *counter += 1;
    format!("#{}", *counter - 1)
}

fn canon(a: &TargetFormula, ren: &HashMap<String, String>, counter: &mut usize) -> TargetFormula {
    let rename_term = |t: &Term, counter: &mut usize| canon_term(t, ren, counter);
    match a {
        TargetFormula::ForallSrc(v, b) | TargetFormula::ExistsSrc(v, b) => {
            let mut inner = ren.clone();
            let name = canon_name(counter);
            inner.insert(v.clone(), name.clone());
            let body = Box::new(canon(b, &inner, counter));
            if matches!(a, TargetFormula::ForallSrc(..)) {
                TargetFormula::ForallSrc(name, body)
            } else {
                TargetFormula::ExistsSrc(name, body)
            }
        }
        TargetFormula::ForallReal(vs, b) | TargetFormula::ExistsReal(vs, b) => {
            let mut inner = ren.clone();
            let vs: Vec<(Var, RType)> = vs
                .iter()
                .map(|(v, ty)| {
                    let name = canon_name(counter);
                    inner.insert(v.clone(), name.clone());
                    (name, ty.clone())
                })
                .collect();
            let body = Box::new(canon(b, &inner, counter));
            if matches!(a, TargetFormula::ForallReal(..)) {
                TargetFormula::ForallReal(vs, body)
            } else {
                TargetFormula::ExistsReal(vs, body)
            }
        }
        TargetFormula::And(x, y) => {
            let x = canon(x, ren, counter);
            TargetFormula::and(x, canon(y, ren, counter))
        }
        TargetFormula::Imp(x, y) => {
            let x = canon(x, ren, counter);
            TargetFormula::imp(x, canon(y, ren, counter))
        }
        TargetFormula::Or(x, y) => {
            let x = canon(x, ren, counter);
            TargetFormula::or(x, canon(y, ren, counter))
        }
        other => {
            let mut out = other.clone();
            for t in out.terms_mut() {
                *t = rename_term(t, counter);
            }
            out
        }
    }
}

fn canon_term(t: &Term, ren: &HashMap<String, String>, counter: &mut usize) -> Term {
    match t {
        Term::Var(x) => Term::Var(ren.get(x).cloned().unwrap_or_else(|| x.clone())),
        Term::Lam(ps, body) => {
            let mut inner = ren.clone();
            let names: Vec<String> = ps
                .iter()
                .map(|p| {
                    let name = canon_name(counter);
                    inner.insert(p.clone(), name.clone());
                    name
                })
                .collect();
            Term::Lam(names, Box::new(canon_term(body, &inner, counter)))
        }
        Term::Num(_) | Term::StateLit(_) | Term::Opaque(_) => t.clone(),
        Term::Succ(u) => Term::Succ(Box::new(canon_term(u, ren, counter))),
        Term::Proj(i, u) => Term::Proj(*i, Box::new(canon_term(u, ren, counter))),
        Term::App(h, args) => {
            let h = canon_term(h, ren, counter);
            Term::App(
                Box::new(h),
                args.iter().map(|a| canon_term(a, ren, counter)).collect(),
            )
        }
        Term::Tuple(ts) => Term::Tuple(ts.iter().map(|a| canon_term(a, ren, counter)).collect()),
        Term::Set(ts) => Term::Set(ts.iter().map(|a| canon_term(a, ren, counter)).collect()),
        Term::Rec(x, y, z) => {
            let x = canon_term(x, ren, counter);
            let y = canon_term(y, ren, counter);
            Term::rec(x, y, canon_term(z, ren, counter))
        }
        Term::Union(x, y) => {
            let x = canon_term(x, ren, counter);
            Term::union(x, canon_term(y, ren, counter))
        }
        Term::SetBind(x, y) => {
            let x = canon_term(x, ren, counter);
            Term::set_bind(x, canon_term(y, ren, counter))
        }
        Term::StateJoin(x, y) => {
            let x = canon_term(x, ren, counter);
            Term::state_join(x, canon_term(y, ren, counter))
        }
        Term::Max(x, y) => {
            let x = canon_term(x, ren, counter);
            Term::max(x, canon_term(y, ren, counter))
        }
        Term::IfEq(w, x, y, z) => {
            let w = canon_term(w, ren, counter);
            let x = canon_term(x, ren, counter);
            let y = canon_term(y, ren, counter);
            Term::if_eq(w, x, y, canon_term(z, ren, counter))
        }
    }
}
