//! Realizer terms: tuple-friendly λ-terms over numerals, finite sets and
//! learning states, with a fuel-bounded call-by-value evaluator and a
//! β-normalizer for open terms.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::sexp::{self, Sexp};
use crate::syntax::SrcTerm;

/// Key of a learned fact: a predicate name with numeral arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey {
    pub pred: String,
    pub args: Vec<u64>,
}

impl StateKey {
    pub fn new(pred: &str, args: &[u64]) -> Self {
        StateKey {
            pred: pred.to_string(),
            args: args.to_vec(),
        }
    }
}

/// A finite record of witness triples `⟨P, m⃗, n⟩`, stored as a map from
/// `(P, m⃗)` to the witness `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub BTreeMap<StateKey, u64>);

impl State {
    pub fn new() -> Self {
        State::default()
    }

    pub fn with(mut self, key: StateKey, witness: u64) -> Self {
        self.0.insert(key, witness);
        self
    }

    /// Map union. Two different witnesses for the same key resolve to the
    /// smaller one, which keeps the operation commutative.
    pub fn join(&self, other: &State) -> State {
        let mut out = self.0.clone();
        for (k, &v) in &other.0 {
            out.entry(k.clone())
                .and_modify(|w| *w = (*w).min(v))
                .or_insert(v);
        }
        State(out)
    }

    /// `self` records every triple of `other` unchanged.
    pub fn extends(&self, other: &State) -> bool {
        other.0.iter().all(|(k, v)| self.0.get(k) == Some(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Term::StateLit(self.clone()).to_sexp())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Numeral literal; `Succ` of a literal is always folded into a literal.
    Num(u64),
    Succ(Box<Term>),
    Lam(Vec<String>, Box<Term>),
    App(Box<Term>, Vec<Term>),
    Tuple(Vec<Term>),
    Proj(usize, Box<Term>),
    /// Primitive recursion: `rec b f 0 = b`, `rec b f (m+1) = f m (rec b f m)`.
    Rec(Box<Term>, Box<Term>, Box<Term>),
    /// Non-empty finite set, elements sorted and deduplicated.
    Set(Vec<Term>),
    Union(Box<Term>, Box<Term>),
    /// `⋃_{n ∈ S} g(n)` for set-valued `g`.
    SetBind(Box<Term>, Box<Term>),
    StateLit(State),
    StateJoin(Box<Term>, Box<Term>),
    Max(Box<Term>, Box<Term>),
    /// Compares two first-order values; evaluates only the chosen branch.
    IfEq(Box<Term>, Box<Term>, Box<Term>, Box<Term>),
    /// Uninterpreted constant.
    Opaque(String),
}

pub type TermTuple = Vec<Term>;

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(x.to_string())
    }

    pub fn succ(t: Term) -> Term {
        match t {
            Term::Num(n) => Term::Num(n + 1),
            t => Term::Succ(Box::new(t)),
        }
    }

    /// `λx⃗.body`; with no parameters this is `body` itself.
    pub fn lam(params: Vec<String>, body: Term) -> Term {
        if params.is_empty() {
            body
        } else {
            Term::Lam(params, Box::new(body))
        }
    }

    pub fn lam1(x: &str, body: Term) -> Term {
        Term::lam(vec![x.to_string()], body)
    }

    /// `f(a⃗)`; with no arguments this is `f` itself.
    pub fn app(f: Term, args: Vec<Term>) -> Term {
        if args.is_empty() {
            f
        } else {
            Term::App(Box::new(f), args)
        }
    }

    pub fn app1(f: Term, a: Term) -> Term {
        Term::app(f, vec![a])
    }

    pub fn proj(i: usize, t: Term) -> Term {
        Term::Proj(i, Box::new(t))
    }

    pub fn rec(base: Term, step: Term, arg: Term) -> Term {
        Term::Rec(Box::new(base), Box::new(step), Box::new(arg))
    }

    /// # Panics
    /// When `items` is empty: finite sets here are never empty.
    pub fn set(mut items: Vec<Term>) -> Term {
        assert!(!items.is_empty(), "set literals are non-empty");
        items.sort();
        items.dedup();
        Term::Set(items)
    }

    pub fn union(a: Term, b: Term) -> Term {
        Term::Union(Box::new(a), Box::new(b))
    }

    pub fn set_bind(s: Term, g: Term) -> Term {
        Term::SetBind(Box::new(s), Box::new(g))
    }

    pub fn state_join(a: Term, b: Term) -> Term {
        Term::StateJoin(Box::new(a), Box::new(b))
    }

    pub fn max(a: Term, b: Term) -> Term {
        Term::Max(Box::new(a), Box::new(b))
    }

    pub fn if_eq(a: Term, b: Term, then: Term, other: Term) -> Term {
        Term::IfEq(Box::new(a), Box::new(b), Box::new(then), Box::new(other))
    }

    pub fn from_src(t: &SrcTerm) -> Term {
        match t {
            SrcTerm::Var(x) => Term::Var(x.clone()),
            SrcTerm::Zero => Term::Num(0),
            SrcTerm::Succ(u) => Term::succ(Term::from_src(u)),
        }
    }

    pub fn as_num(&self) -> Option<u64> {
        match self {
            Term::Num(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_value(&self) -> bool {
        match self {
            Term::Num(_) | Term::Lam(..) | Term::StateLit(_) | Term::Opaque(_) => true,
            Term::Tuple(ts) | Term::Set(ts) => ts.iter().all(Term::is_value),
            _ => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out, &mut Vec::new());
        out
    }

    fn free_vars_into(&self, out: &mut BTreeSet<String>, bound: &mut Vec<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Num(_) | Term::StateLit(_) | Term::Opaque(_) => {}
            Term::Lam(ps, body) => {
                let n = bound.len();
                bound.extend(ps.iter().cloned());
                body.free_vars_into(out, bound);
                bound.truncate(n);
            }
            _ => self.for_each_child(|c| c.free_vars_into(out, bound)),
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::Num(_) | Term::StateLit(_) | Term::Opaque(_) => false,
            Term::Lam(ps, body) => !ps.iter().any(|p| p == x) && body.has_free(x),
            _ => {
                let mut found = false;
                self.for_each_child(|c| found = found || c.has_free(x));
                found
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn for_each_child<'a>(&'a self, mut f: impl FnMut(&'a Term)) {
        match self {
            Term::Var(_) | Term::Num(_) | Term::StateLit(_) | Term::Opaque(_) => {}
            Term::Succ(t) | Term::Proj(_, t) | Term::Lam(_, t) => f(t),
            Term::App(h, args) => {
                f(h);
                args.iter().for_each(f);
            }
            Term::Tuple(ts) | Term::Set(ts) => ts.iter().for_each(f),
            Term::Rec(a, b, c) => {
                f(a);
                f(b);
                f(c);
            }
            Term::Union(a, b) | Term::SetBind(a, b) | Term::StateJoin(a, b) | Term::Max(a, b) => {
                f(a);
                f(b);
            }
            Term::IfEq(a, b, c, d) => {
                f(a);
                f(b);
                f(c);
                f(d);
            }
        }
    }

    fn map_children(&self, mut f: impl FnMut(&Term) -> Term) -> Term {
        let mut b = |t: &Term| Box::new(f(t));
        match self {
            Term::Var(_) | Term::Num(_) | Term::StateLit(_) | Term::Opaque(_) => self.clone(),
            Term::Succ(t) => Term::succ(*b(t)),
            Term::Proj(i, t) => Term::Proj(*i, b(t)),
            Term::Lam(ps, t) => Term::Lam(ps.clone(), b(t)),
            Term::App(h, args) => {
                let h = b(h);
                Term::App(h, args.iter().map(|a| *b(a)).collect())
            }
            Term::Tuple(ts) => Term::Tuple(ts.iter().map(|t| *b(t)).collect()),
            Term::Set(ts) => Term::set(ts.iter().map(|t| *b(t)).collect()),
            Term::Rec(x, y, z) => Term::Rec(b(x), b(y), b(z)),
            Term::Union(x, y) => Term::Union(b(x), b(y)),
            Term::SetBind(x, y) => Term::SetBind(b(x), b(y)),
            Term::StateJoin(x, y) => Term::StateJoin(b(x), b(y)),
            Term::Max(x, y) => Term::Max(b(x), b(y)),
            Term::IfEq(w, x, y, z) => Term::IfEq(b(w), b(x), b(y), b(z)),
        }
    }

    /// Capture-avoiding simultaneous substitution.
    pub fn substitute(&self, map: &HashMap<String, Term>) -> Term {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(x) => map.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Lam(ps, body) => {
                let mut inner: HashMap<String, Term> = map
                    .iter()
                    .filter(|(k, _)| !ps.contains(k) && body.has_free(k))
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect();
                if inner.is_empty() {
                    return self.clone();
                }
                let mut incoming = BTreeSet::new();
                for v in inner.values() {
                    incoming.extend(v.free_vars());
                }
                let mut new_ps = Vec::with_capacity(ps.len());
                for p in ps {
                    if incoming.contains(p) {
                        let mut avoid = incoming.clone();
                        avoid.extend(body.free_vars());
                        avoid.extend(ps.iter().cloned());
                        avoid.extend(new_ps.iter().cloned());
                        let fresh = fresh_term_var(p, &avoid);
                        inner.insert(p.clone(), Term::Var(fresh.clone()));
                        new_ps.push(fresh);
                    } else {
                        new_ps.push(p.clone());
                    }
                }
                Term::Lam(new_ps, Box::new(body.substitute(&inner)))
            }
            _ => self.map_children(|c| c.substitute(map)),
        }
    }

    pub fn substitute1(&self, x: &str, t: &Term) -> Term {
        let mut map = HashMap::new();
        map.insert(x.to_string(), t.clone());
        self.substitute(&map)
    }

    /// Substitution of closed values for free variables; no renaming is
    /// ever needed.
    pub fn close(&self, env: &HashMap<String, Term>) -> Term {
        match self {
            Term::Var(x) => env.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Num(_) | Term::StateLit(_) | Term::Opaque(_) => self.clone(),
            Term::Lam(ps, body) => {
                if ps.iter().any(|p| env.contains_key(p)) {
                    let inner: HashMap<String, Term> = env
                        .iter()
                        .filter(|(k, _)| !ps.contains(k))
                        .map(|(k, v)| (k.clone(), v.clone()))
                        .collect();
                    Term::Lam(ps.clone(), Box::new(body.close(&inner)))
                } else {
                    Term::Lam(ps.clone(), Box::new(body.close(env)))
                }
            }
            _ => self.map_children(|c| c.close(env)),
        }
    }

    /// Substitution of closed values; no renaming is ever needed.
    fn instantiate(&self, params: &[String], values: &[Term]) -> Term {
        match self {
            Term::Var(x) => match params.iter().rposition(|p| p == x) {
                Some(i) => values[i].clone(),
                None => self.clone(),
            },
            Term::Num(_) | Term::StateLit(_) | Term::Opaque(_) => self.clone(),
            Term::Lam(ps, body) => {
                if ps.iter().any(|p| params.contains(p)) {
                    let (kept_p, kept_v): (Vec<String>, Vec<Term>) = params
                        .iter()
                        .zip(values)
                        .filter(|(p, _)| !ps.contains(p))
                        .map(|(p, v)| (p.clone(), v.clone()))
                        .unzip();
                    Term::Lam(ps.clone(), Box::new(body.instantiate(&kept_p, &kept_v)))
                } else {
                    Term::Lam(ps.clone(), Box::new(body.instantiate(params, values)))
                }
            }
            _ => self.map_children(|c| c.instantiate(params, values)),
        }
    }

    pub fn to_sexp(&self) -> Sexp {
        fn a(s: impl Into<String>) -> Sexp {
            Sexp::atom(s)
        }
        let l = Sexp::list;
        match self {
            Term::Var(x) => a(x.clone()),
            Term::Num(n) => (0..*n).fold(a("0"), |acc, _| l(vec![a("s"), acc])),
            Term::Succ(t) => l(vec![a("s"), t.to_sexp()]),
            Term::Lam(ps, body) => l(vec![
                a("lam"),
                l(ps.iter().map(|p| a(p.clone())).collect()),
                body.to_sexp(),
            ]),
            Term::App(h, args) => {
                let mut items = vec![a("app"), h.to_sexp()];
                items.extend(args.iter().map(Term::to_sexp));
                l(items)
            }
            Term::Tuple(ts) => {
                let mut items = vec![a("tuple")];
                items.extend(ts.iter().map(Term::to_sexp));
                l(items)
            }
            Term::Proj(i, t) => l(vec![a("proj"), a(i.to_string()), t.to_sexp()]),
            Term::Rec(x, y, z) => l(vec![a("rec"), x.to_sexp(), y.to_sexp(), z.to_sexp()]),
            Term::Set(ts) => {
                let mut items = vec![a("set")];
                items.extend(ts.iter().map(Term::to_sexp));
                l(items)
            }
            Term::Union(x, y) => l(vec![a("union"), x.to_sexp(), y.to_sexp()]),
            Term::SetBind(x, y) => l(vec![a("bind"), x.to_sexp(), y.to_sexp()]),
            Term::StateLit(s) => {
                let mut items = vec![a("state")];
                for (k, v) in &s.0 {
                    let mut key = vec![a(k.pred.clone())];
                    key.extend(k.args.iter().map(|n| a(n.to_string())));
                    items.push(l(vec![l(key), a(v.to_string())]));
                }
                l(items)
            }
            Term::StateJoin(x, y) => l(vec![a("join"), x.to_sexp(), y.to_sexp()]),
            Term::Max(x, y) => l(vec![a("max"), x.to_sexp(), y.to_sexp()]),
            Term::IfEq(w, x, y, z) => l(vec![
                a("ifeq"),
                w.to_sexp(),
                x.to_sexp(),
                y.to_sexp(),
                z.to_sexp(),
            ]),
            Term::Opaque(name) => l(vec![a("opaque"), a(name.clone())]),
        }
    }

    pub fn parse(text: &str) -> Result<Term, sexp::SexpError> {
        Term::from_sexp(&sexp::parse_one(text)?)
    }

    pub fn from_sexp(e: &Sexp) -> Result<Term, sexp::SexpError> {
        let items = match e {
            Sexp::Atom(s, _) => {
                return if let Ok(n) = s.parse::<u64>() {
                    Ok(Term::Num(n))
                } else {
                    Ok(Term::Var(s.clone()))
                }
            }
            Sexp::List(items, _) => items,
        };
        let head = e
            .head()
            .ok_or_else(|| e.error("term must start with a keyword"))?;
        let args = &items[1..];
        let sub = |i: usize| -> Result<Term, sexp::SexpError> {
            args.get(i)
                .ok_or_else(|| e.error(format!("`{head}` is missing an operand")))
                .and_then(Term::from_sexp)
        };
        let exact = |n: usize| -> Result<(), sexp::SexpError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(e.error(format!("`{head}` expects {n} operand(s)")))
            }
        };
        let all = || {
            args.iter()
                .map(Term::from_sexp)
                .collect::<Result<Vec<_>, _>>()
        };
        let num = |s: &Sexp| -> Result<u64, sexp::SexpError> {
            s.as_atom()
                .and_then(|a| a.parse().ok())
                .ok_or_else(|| s.error("expected a number"))
        };
        Ok(match head {
            "s" => {
                exact(1)?;
                Term::succ(sub(0)?)
            }
            "lam" => {
                exact(2)?;
                let ps = args[0]
                    .as_list()
                    .ok_or_else(|| args[0].error("expected parameter list"))?
                    .iter()
                    .map(|p| {
                        p.as_atom()
                            .map(str::to_string)
                            .ok_or_else(|| p.error("bad parameter"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Term::lam(ps, sub(1)?)
            }
            "app" => {
                let mut ts = all()?;
                if ts.is_empty() {
                    return Err(e.error("`app` needs a head"));
                }
                let h = ts.remove(0);
                Term::app(h, ts)
            }
            "tuple" => Term::Tuple(all()?),
            "proj" => {
                exact(2)?;
                Term::proj(num(&args[0])? as usize, sub(1)?)
            }
            "rec" => {
                exact(3)?;
                Term::rec(sub(0)?, sub(1)?, sub(2)?)
            }
            "set" => {
                if args.is_empty() {
                    return Err(e.error("set literals must be non-empty"));
                }
                Term::set(all()?)
            }
            "union" => {
                exact(2)?;
                Term::union(sub(0)?, sub(1)?)
            }
            "bind" => {
                exact(2)?;
                Term::set_bind(sub(0)?, sub(1)?)
            }
            "join" => {
                exact(2)?;
                Term::state_join(sub(0)?, sub(1)?)
            }
            "max" => {
                exact(2)?;
                Term::max(sub(0)?, sub(1)?)
            }
            "ifeq" => {
                exact(4)?;
                Term::if_eq(sub(0)?, sub(1)?, sub(2)?, sub(3)?)
            }
            "opaque" => {
                exact(1)?;
                Term::Opaque(
                    args[0]
                        .as_atom()
                        .ok_or_else(|| args[0].error("expected a name"))?
                        .to_string(),
                )
            }
            "state" => {
                let mut st = State::new();
                for entry in args {
                    let (key, val) = match entry.as_list() {
                        Some([key, val]) => (key, val),
                        _ => return Err(entry.error("expected `((P m...) n)`")),
                    };
                    let key_items = key
                        .as_list()
                        .ok_or_else(|| key.error("expected `(P m...)`"))?;
                    let pred = key_items
                        .first()
                        .and_then(Sexp::as_atom)
                        .ok_or_else(|| key.error("expected a predicate name"))?;
                    let ks = key_items[1..]
                        .iter()
                        .map(num)
                        .collect::<Result<Vec<_>, _>>()?;
                    st.0.insert(StateKey::new(pred, &ks), num(val)?);
                }
                Term::StateLit(st)
            }
            other => return Err(e.error(format!("unknown term former `{other}`"))),
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

pub fn fresh_term_var(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut cand = base.to_string();
    while avoid.contains(&cand) {
        cand.push('\'');
    }
    cand
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalResult {
    Value(TermTuple),
    Diverged,
    Stuck(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Halt {
    #[error("fuel exhausted")]
    OutOfFuel,
    #[error("stuck: {0}")]
    Stuck(String),
}

/// Call-by-value, left-to-right evaluator for closed terms. Every reduction
/// step costs one unit of fuel.
#[derive(Debug, Clone)]
pub struct Machine {
    fuel: u64,
    used: u64,
}

impl Machine {
    pub fn new(fuel: u64) -> Self {
        Machine { fuel, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<(), Halt> {
        if self.used >= self.fuel {
            return Err(Halt::OutOfFuel);
        }
        self.used += 1;
        Ok(())
    }

    pub fn eval(&mut self, t: &Term) -> Result<Term, Halt> {
        self.tick()?;
        match t {
            Term::Var(x) => Err(Halt::Stuck(format!("free variable `{x}`"))),
            Term::Num(_) | Term::Lam(..) | Term::StateLit(_) | Term::Opaque(_) => Ok(t.clone()),
            Term::Succ(u) => match self.eval(u)? {
                Term::Num(n) => Ok(Term::Num(n + 1)),
                v => Err(Halt::Stuck(format!("successor of non-numeral {v}"))),
            },
            Term::App(h, args) => {
                let f = self.eval(h)?;
                let vals = args
                    .iter()
                    .map(|a| self.eval(a))
                    .collect::<Result<Vec<_>, _>>()?;
                self.apply(&f, &vals)
            }
            Term::Tuple(ts) => Ok(Term::Tuple(
                ts.iter().map(|u| self.eval(u)).collect::<Result<_, _>>()?,
            )),
            Term::Proj(i, u) => match self.eval(u)? {
                Term::Tuple(mut vs) if *i < vs.len() => Ok(vs.swap_remove(*i)),
                v => Err(Halt::Stuck(format!("projection {i} of {v}"))),
            },
            Term::Rec(base, step, arg) => {
                let n = match self.eval(arg)? {
                    Term::Num(n) => n,
                    v => return Err(Halt::Stuck(format!("recursion on non-numeral {v}"))),
                };
                let mut acc = self.eval(base)?;
                let step = self.eval(step)?;
                for m in 0..n {
                    acc = self.apply(&step, &[Term::Num(m), acc])?;
                }
                Ok(acc)
            }
            Term::Set(ts) => {
                let vs = ts
                    .iter()
                    .map(|u| self.eval(u))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Term::set(vs))
            }
            Term::Union(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                match (x, y) {
                    (Term::Set(mut xs), Term::Set(ys)) => {
                        xs.extend(ys);
                        Ok(Term::set(xs))
                    }
                    (x, y) => Err(Halt::Stuck(format!("union of {x} and {y}"))),
                }
            }
            Term::SetBind(s, g) => {
                let elems = match self.eval(s)? {
                    Term::Set(xs) => xs,
                    v => return Err(Halt::Stuck(format!("set comprehension over {v}"))),
                };
                let g = self.eval(g)?;
                let mut out = Vec::new();
                for x in elems {
                    match self.apply(&g, &[x])? {
                        Term::Set(ys) => out.extend(ys),
                        v => return Err(Halt::Stuck(format!("comprehension body gave {v}"))),
                    }
                }
                Ok(Term::set(out))
            }
            Term::StateJoin(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Term::StateLit(x), Term::StateLit(y)) => Ok(Term::StateLit(x.join(&y))),
                (x, y) => Err(Halt::Stuck(format!("state join of {x} and {y}"))),
            },
            Term::Max(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Term::Num(x), Term::Num(y)) => Ok(Term::Num(x.max(y))),
                (x, y) => Err(Halt::Stuck(format!("max of {x} and {y}"))),
            },
            Term::IfEq(a, b, then, other) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                if matches!(x, Term::Lam(..)) || matches!(y, Term::Lam(..)) {
                    return Err(Halt::Stuck("equality test on functions".into()));
                }
                if x == y {
                    self.eval(then)
                } else {
                    self.eval(other)
                }
            }
        }
    }

    /// Applies a function value to argument values.
    pub fn apply(&mut self, f: &Term, args: &[Term]) -> Result<Term, Halt> {
        if args.is_empty() {
            return Ok(f.clone());
        }
        match f {
            Term::Lam(ps, body) if ps.len() == args.len() => {
                self.tick()?;
                self.eval(&body.instantiate(ps, args))
            }
            Term::Lam(ps, _) => Err(Halt::Stuck(format!(
                "arity mismatch: function of {} argument(s) applied to {}",
                ps.len(),
                args.len()
            ))),
            v => Err(Halt::Stuck(format!("applying non-function {v}"))),
        }
    }
}

/// Evaluates each component of `t` after closing it with `env`.
pub fn evaluate(t: &[Term], env: &[(String, Term)], fuel: u64) -> EvalResult {
    let map: HashMap<String, Term> = env.iter().cloned().collect();
    let mut m = Machine::new(fuel);
    let mut out = Vec::with_capacity(t.len());
    for c in t {
        match m.eval(&c.substitute(&map)) {
            Ok(v) => out.push(v),
            Err(Halt::OutOfFuel) => return EvalResult::Diverged,
            Err(Halt::Stuck(s)) => return EvalResult::Stuck(s),
        }
    }
    EvalResult::Value(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("normalization did not finish within {0} steps")]
pub struct NormalizeError(pub u64);

/// β-normal form (plus projection of tuples and numeral folding), under
/// binders. Recursors, set and state operations are left alone.
pub fn normalize(t: &Term, budget: u64) -> Result<Term, NormalizeError> {
    let mut steps = 0;
    norm(t, &mut steps, budget)
}

fn norm(t: &Term, steps: &mut u64, budget: u64) -> Result<Term, NormalizeError> {
    *steps += 1;
    if *steps > budget {
        return Err(NormalizeError(budget));
    }
    match t {
        Term::App(h, args) => {
            let h = norm(h, steps, budget)?;
            let args = args
                .iter()
                .map(|a| norm(a, steps, budget))
                .collect::<Result<Vec<_>, _>>()?;
            match h {
                Term::Lam(ps, body) if ps.len() == args.len() => {
                    let map = ps.into_iter().zip(args).collect();
                    norm(&body.substitute(&map), steps, budget)
                }
                h => Ok(Term::app(h, args)),
            }
        }
        Term::Proj(i, u) => match norm(u, steps, budget)? {
            Term::Tuple(mut ts) if *i < ts.len() => Ok(ts.swap_remove(*i)),
            u => Ok(Term::proj(*i, u)),
        },
        Term::Lam(ps, body) => Ok(Term::lam(ps.clone(), norm(body, steps, budget)?)),
        _ => {
            let mut err = None;
            let out = t.map_children(|c| match norm(c, steps, budget) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    c.clone()
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(out),
            }
        }
    }
}
