//! Source-theory syntax: terms, formulas, sequents, parsing and substitution.
//!
//! The only function symbols are `0` and `s`, so closed terms are numerals.
//! Qualified quantifiers, disjunction and negation exist only in the surface
//! syntax ([`Surface`]) and are removed by [`desugar`]; the kernel and the
//! extraction pipeline only ever see [`Formula`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::sexp::{self, Pos, Sexp, SexpError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("{pos}: {msg}")]
    Malformed { pos: Pos, msg: String },
    #[error("{pos}: predicate `{pred}` expects {expected} argument(s), got {got}")]
    Arity {
        pos: Pos,
        pred: String,
        expected: usize,
        got: usize,
    },
}

impl SyntaxError {
    pub(crate) fn at(e: &Sexp, msg: impl Into<String>) -> Self {
        SyntaxError::Malformed {
            pos: e.pos(),
            msg: msg.into(),
        }
    }
}

pub type Var = String;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SrcTerm {
    Var(Var),
    Zero,
    Succ(Box<SrcTerm>),
}

impl SrcTerm {
    pub fn var(name: &str) -> SrcTerm {
        SrcTerm::Var(name.to_string())
    }

    pub fn numeral(n: u64) -> SrcTerm {
        (0..n).fold(SrcTerm::Zero, |t, _| SrcTerm::succ(t))
    }

    pub fn succ(t: SrcTerm) -> SrcTerm {
        SrcTerm::Succ(Box::new(t))
    }

    /// The value of a closed term.
    pub fn as_numeral(&self) -> Option<u64> {
        match self {
            SrcTerm::Zero => Some(0),
            SrcTerm::Succ(t) => t.as_numeral().map(|n| n + 1),
            SrcTerm::Var(_) => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.as_numeral().is_some()
    }

    pub fn mentions(&self, x: &str) -> bool {
        match self {
            SrcTerm::Var(y) => y == x,
            SrcTerm::Zero => false,
            SrcTerm::Succ(t) => t.mentions(x),
        }
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            SrcTerm::Var(y) => {
                out.insert(y.clone());
            }
            SrcTerm::Zero => {}
            SrcTerm::Succ(t) => t.free_vars_into(out),
        }
    }

    pub fn substitute(&self, x: &str, t: &SrcTerm) -> SrcTerm {
        match self {
            SrcTerm::Var(y) if y == x => t.clone(),
            SrcTerm::Var(_) | SrcTerm::Zero => self.clone(),
            SrcTerm::Succ(u) => SrcTerm::succ(u.substitute(x, t)),
        }
    }

    pub fn to_sexp(&self) -> Sexp {
        match self {
            SrcTerm::Var(x) => Sexp::atom(x.clone()),
            SrcTerm::Zero => Sexp::atom("0"),
            SrcTerm::Succ(t) => Sexp::list(vec![Sexp::atom("s"), t.to_sexp()]),
        }
    }

    pub fn from_sexp(e: &Sexp) -> Result<SrcTerm, SyntaxError> {
        match e {
            Sexp::Atom(a, _) => {
                if let Ok(n) = a.parse::<u64>() {
                    Ok(SrcTerm::numeral(n))
                } else if is_identifier(a) {
                    Ok(SrcTerm::Var(a.clone()))
                } else {
                    Err(SyntaxError::at(e, format!("`{a}` is not a term")))
                }
            }
            Sexp::List(items, _) => match items.as_slice() {
                [h, t] if h.as_atom() == Some("s") => Ok(SrcTerm::succ(SrcTerm::from_sexp(t)?)),
                _ => Err(SyntaxError::at(e, "expected `0`, `(s t)` or a variable")),
            },
        }
    }
}

impl fmt::Display for SrcTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

const KEYWORDS: &[&str] = &[
    "s", "N", "st", "and", "->", "ex", "all", "exN", "allN", "exSt", "allSt", "or", "not", "bot",
    "⊥", "=",
];

/// Source identifiers start with an ASCII letter. Names starting with `_`
/// are reserved for realizer variables.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') && !KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pred {
    Falsity,
    Nat,
    Eq,
    St,
}

impl Pred {
    pub const ALL: [Pred; 4] = [Pred::Falsity, Pred::Nat, Pred::Eq, Pred::St];

    pub fn arity(self) -> usize {
        match self {
            Pred::Falsity => 0,
            Pred::Nat | Pred::St => 1,
            Pred::Eq => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Pred::Falsity => "⊥",
            Pred::Nat => "N",
            Pred::Eq => "=",
            Pred::St => "st",
        }
    }

    fn from_symbol(s: &str) -> Option<Pred> {
        match s {
            "⊥" | "bot" => Some(Pred::Falsity),
            "N" => Some(Pred::Nat),
            "=" => Some(Pred::Eq),
            "st" => Some(Pred::St),
            _ => None,
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Pred, Vec<SrcTerm>),
    And(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn falsity() -> Formula {
        Formula::Atom(Pred::Falsity, vec![])
    }

    pub fn nat(t: SrcTerm) -> Formula {
        Formula::Atom(Pred::Nat, vec![t])
    }

    pub fn st(t: SrcTerm) -> Formula {
        Formula::Atom(Pred::St, vec![t])
    }

    pub fn eq(a: SrcTerm, b: SrcTerm) -> Formula {
        Formula::Atom(Pred::Eq, vec![a, b])
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn negation(a: Formula) -> Formula {
        Formula::imp(a, Formula::falsity())
    }

    pub fn exists(x: &str, a: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(a))
    }

    pub fn forall(x: &str, a: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(a))
    }

    /// `∀x (P(x) → A)`
    pub fn forall_in(p: Pred, x: &str, a: Formula) -> Formula {
        Formula::forall(x, Formula::imp(Formula::Atom(p, vec![SrcTerm::var(x)]), a))
    }

    /// `∃x (P(x) ∧ A)`
    pub fn exists_in(p: Pred, x: &str, a: Formula) -> Formula {
        Formula::exists(x, Formula::and(Formula::Atom(p, vec![SrcTerm::var(x)]), a))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
            Formula::And(a, b) | Formula::Imp(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula::Exists(x, a) | Formula::Forall(x, a) => {
                let mut inner = BTreeSet::new();
                a.free_vars_into(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().any(|t| t.mentions(x)),
            Formula::And(a, b) | Formula::Imp(a, b) => a.has_free(x) || b.has_free(x),
            Formula::Exists(y, a) | Formula::Forall(y, a) => y != x && a.has_free(x),
        }
    }

    /// All variable names occurring anywhere, bound or free.
    pub fn all_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
            Formula::And(a, b) | Formula::Imp(a, b) => {
                a.all_vars(out);
                b.all_vars(out);
            }
            Formula::Exists(x, a) | Formula::Forall(x, a) => {
                out.insert(x.clone());
                a.all_vars(out);
            }
        }
    }

    pub fn preds(&self, out: &mut BTreeSet<Pred>) {
        match self {
            Formula::Atom(p, _) => {
                out.insert(*p);
            }
            Formula::And(a, b) | Formula::Imp(a, b) => {
                a.preds(out);
                b.preds(out);
            }
            Formula::Exists(_, a) | Formula::Forall(_, a) => a.preds(out),
        }
    }

    /// Capture-avoiding substitution `self[t/x]`. A binder that would capture
    /// a variable of `t` is renamed to the first fresh `name'`, `name''`, ...
    pub fn substitute(&self, x: &str, t: &SrcTerm) -> Formula {
        match self {
            Formula::Atom(p, args) => {
                Formula::Atom(*p, args.iter().map(|a| a.substitute(x, t)).collect())
            }
            Formula::And(a, b) => Formula::and(a.substitute(x, t), b.substitute(x, t)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(x, t), b.substitute(x, t)),
            Formula::Exists(y, a) | Formula::Forall(y, a) => {
                let rebuild = |y: &str, body: Formula| match self {
                    Formula::Exists(..) => Formula::exists(y, body),
                    _ => Formula::forall(y, body),
                };
                if y == x || !a.has_free(x) {
                    return self.clone();
                }
                if t.mentions(y) {
                    let mut avoid = a.free_vars();
                    t.free_vars_into(&mut avoid);
                    avoid.insert(x.to_string());
                    let fresh = fresh_name(y, &avoid);
                    let renamed = a.substitute(y, &SrcTerm::Var(fresh.clone()));
                    rebuild(&fresh, renamed.substitute(x, t))
                } else {
                    rebuild(y, a.substitute(x, t))
                }
            }
        }
    }

    /// Simultaneous substitution of terms for variables.
    pub fn substitute_all(&self, pairs: &[(Var, SrcTerm)]) -> Formula {
        // rename targets to names that cannot clash, then substitute one by one
        let mut avoid = BTreeSet::new();
        self.all_vars(&mut avoid);
        for (x, t) in pairs {
            avoid.insert(x.clone());
            t.free_vars_into(&mut avoid);
        }
        let mut staged = self.clone();
        let mut temps = Vec::new();
        for (x, _) in pairs {
            let tmp = fresh_name(&format!("{x}_tmp"), &avoid);
            avoid.insert(tmp.clone());
            staged = staged.substitute(x, &SrcTerm::Var(tmp.clone()));
            temps.push(tmp);
        }
        for (tmp, (_, t)) in temps.iter().zip(pairs) {
            staged = staged.substitute(tmp, t);
        }
        staged
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_eq_in(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Bound variables renamed to `v0`, `v1`, ... by binding depth, skipping
    /// names that occur free. Alpha-equivalent formulas have equal canonical
    /// forms.
    pub fn canonical(&self) -> Formula {
        let free = self.free_vars();
        canon(self, &free, 0)
    }

    pub fn to_sexp(&self) -> Sexp {
        match self {
            Formula::Atom(p, args) => {
                let mut items = vec![Sexp::atom(p.symbol())];
                items.extend(args.iter().map(SrcTerm::to_sexp));
                Sexp::list(items)
            }
            Formula::And(a, b) => Sexp::list(vec![Sexp::atom("and"), a.to_sexp(), b.to_sexp()]),
            Formula::Imp(a, b) => Sexp::list(vec![Sexp::atom("->"), a.to_sexp(), b.to_sexp()]),
            Formula::Exists(x, a) => {
                Sexp::list(vec![Sexp::atom("ex"), Sexp::atom(x.clone()), a.to_sexp()])
            }
            Formula::Forall(x, a) => {
                Sexp::list(vec![Sexp::atom("all"), Sexp::atom(x.clone()), a.to_sexp()])
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

fn canon(a: &Formula, free: &BTreeSet<Var>, depth: usize) -> Formula {
    match a {
        Formula::Atom(..) => a.clone(),
        Formula::And(l, r) => Formula::and(canon(l, free, depth), canon(r, free, depth)),
        Formula::Imp(l, r) => Formula::imp(canon(l, free, depth), canon(r, free, depth)),
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let mut k = depth;
            let name = loop {
                let cand = format!("v{k}");
                if !free.contains(&cand) {
                    break cand;
                }
                k += 1;
            };
            // the canonical name is fresh for the body, so plain renaming is safe
            let renamed = rename_bound(body, x, &name);
            let inner = canon(&renamed, free, k + 1);
            match a {
                Formula::Exists(..) => Formula::exists(&name, inner),
                _ => Formula::forall(&name, inner),
            }
        }
    }
}

fn rename_bound(a: &Formula, from: &str, to: &str) -> Formula {
    if from == to {
        return a.clone();
    }
    a.substitute(from, &SrcTerm::var(to))
}

fn alpha_eq_in(a: &Formula, b: &Formula, env_a: &mut Vec<Var>, env_b: &mut Vec<Var>) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q
                && xs.len() == ys.len()
                && xs
                    .iter()
                    .zip(ys)
                    .all(|(x, y)| term_alpha_eq(x, y, env_a, env_b))
        }
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            alpha_eq_in(a1, b1, env_a, env_b) && alpha_eq_in(a2, b2, env_a, env_b)
        }
        (Formula::Exists(x, a1), Formula::Exists(y, b1))
        | (Formula::Forall(x, a1), Formula::Forall(y, b1)) => {
            env_a.push(x.clone());
            env_b.push(y.clone());
            let r = alpha_eq_in(a1, b1, env_a, env_b);
            env_a.pop();
            env_b.pop();
            r
        }
        _ => false,
    }
}

fn term_alpha_eq(a: &SrcTerm, b: &SrcTerm, env_a: &[Var], env_b: &[Var]) -> bool {
    match (a, b) {
        (SrcTerm::Zero, SrcTerm::Zero) => true,
        (SrcTerm::Succ(x), SrcTerm::Succ(y)) => term_alpha_eq(x, y, env_a, env_b),
        (SrcTerm::Var(x), SrcTerm::Var(y)) => {
            let ia = env_a.iter().rposition(|v| v == x);
            let ib = env_b.iter().rposition(|v| v == y);
            match (ia, ib) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        _ => false,
    }
}

/// First of `base`, `base'`, `base''`, ... not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Var>) -> Var {
    let mut cand = base.to_string();
    while avoid.contains(&cand) {
        cand.push('\'');
    }
    cand
}

/// A sequent `Γ ⊢ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent {
    pub context: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn closed(conclusion: Formula) -> Sequent {
        Sequent {
            context: vec![],
            conclusion,
        }
    }

    pub fn alpha_eq(&self, other: &Sequent) -> bool {
        self.context.len() == other.context.len()
            && self
                .context
                .iter()
                .zip(&other.context)
                .all(|(a, b)| a.alpha_eq(b))
            && self.conclusion.alpha_eq(&other.conclusion)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = self.conclusion.free_vars();
        for g in &self.context {
            out.extend(g.free_vars());
        }
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.context.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        if !self.context.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "⊢ {}", self.conclusion)
    }
}

/// Surface syntax: the core connectives plus qualified quantifiers,
/// disjunction and negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Surface {
    Atom(Pred, Vec<SrcTerm>),
    And(Box<Surface>, Box<Surface>),
    Imp(Box<Surface>, Box<Surface>),
    Exists(Var, Box<Surface>),
    Forall(Var, Box<Surface>),
    ExistsIn(Pred, Var, Box<Surface>),
    ForallIn(Pred, Var, Box<Surface>),
    Or(Box<Surface>, Box<Surface>),
    Not(Box<Surface>),
}

impl Surface {
    /// Core formulas are surface formulas without sugar.
    pub fn embed(a: &Formula) -> Surface {
        match a {
            Formula::Atom(p, args) => Surface::Atom(*p, args.clone()),
            Formula::And(l, r) => {
                Surface::And(Box::new(Surface::embed(l)), Box::new(Surface::embed(r)))
            }
            Formula::Imp(l, r) => {
                Surface::Imp(Box::new(Surface::embed(l)), Box::new(Surface::embed(r)))
            }
            Formula::Exists(x, b) => Surface::Exists(x.clone(), Box::new(Surface::embed(b))),
            Formula::Forall(x, b) => Surface::Forall(x.clone(), Box::new(Surface::embed(b))),
        }
    }
}

/// Removes qualified quantifiers, `or` and `not`:
///
/// * `∃x:P A ↦ ∃x (P(x) ∧ A)` and `∀x:P A ↦ ∀x (P(x) → A)`
/// * `A ∨ B ↦ ∃k ((k = 0 → A) ∧ ((k = 0 → ⊥) → B))` with `k` fresh
/// * `¬A ↦ A → ⊥`
pub fn desugar(a: &Surface) -> Formula {
    match a {
        Surface::Atom(p, args) => Formula::Atom(*p, args.clone()),
        Surface::And(l, r) => Formula::and(desugar(l), desugar(r)),
        Surface::Imp(l, r) => Formula::imp(desugar(l), desugar(r)),
        Surface::Exists(x, b) => Formula::exists(x, desugar(b)),
        Surface::Forall(x, b) => Formula::forall(x, desugar(b)),
        Surface::ExistsIn(p, x, b) => Formula::exists_in(*p, x, desugar(b)),
        Surface::ForallIn(p, x, b) => Formula::forall_in(*p, x, desugar(b)),
        Surface::Not(b) => Formula::negation(desugar(b)),
        Surface::Or(l, r) => {
            let (l, r) = (desugar(l), desugar(r));
            let mut avoid = l.free_vars();
            avoid.extend(r.free_vars());
            let k = fresh_name("k", &avoid);
            let is_zero = Formula::eq(SrcTerm::var(&k), SrcTerm::Zero);
            Formula::exists(
                &k,
                Formula::and(
                    Formula::imp(is_zero.clone(), l),
                    Formula::imp(Formula::negation(is_zero), r),
                ),
            )
        }
    }
}

/// Formula abbreviations `(def Name (params...) body)` usable as
/// `(Name t1 ... tn)` inside formulas.
#[derive(Debug, Clone, Default)]
pub struct Macros {
    defs: HashMap<String, (Vec<Var>, Formula)>,
}

impl Macros {
    pub fn define(&mut self, name: &str, params: Vec<Var>, body: Formula) {
        self.defs.insert(name.to_string(), (params, body));
    }

    pub fn get(&self, name: &str) -> Option<&(Vec<Var>, Formula)> {
        self.defs.get(name)
    }

    /// Parses and registers one `(def ...)` form.
    pub fn define_from_sexp(&mut self, e: &Sexp) -> Result<(), SyntaxError> {
        let items = e.as_list().unwrap_or(&[]);
        let (name, params, body) = match items {
            [_, name, params, body] => (name, params, body),
            _ => {
                return Err(SyntaxError::at(
                    e,
                    "expected `(def Name (params...) formula)`",
                ))
            }
        };
        let name = name
            .as_atom()
            .filter(|n| is_identifier(n) && Pred::from_symbol(n).is_none())
            .ok_or_else(|| SyntaxError::at(name, "bad abbreviation name"))?;
        let params = params
            .as_list()
            .ok_or_else(|| SyntaxError::at(params, "expected parameter list"))?
            .iter()
            .map(|p| {
                p.as_atom()
                    .filter(|a| is_identifier(a))
                    .map(str::to_string)
                    .ok_or_else(|| SyntaxError::at(p, "bad parameter"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let body = desugar(&parse_surface_sexp(body, self)?);
        self.define(name, params, body);
        Ok(())
    }
}

pub fn parse_surface(text: &str) -> Result<Surface, SyntaxError> {
    parse_surface_sexp(&sexp::parse_one(text)?, &Macros::default())
}

/// Parses a formula in the s-expression grammar and desugars it.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    Ok(desugar(&parse_surface(text)?))
}

pub fn parse_formula_sexp(e: &Sexp, macros: &Macros) -> Result<Formula, SyntaxError> {
    Ok(desugar(&parse_surface_sexp(e, macros)?))
}

pub fn parse_surface_sexp(e: &Sexp, macros: &Macros) -> Result<Surface, SyntaxError> {
    let items = e
        .as_list()
        .ok_or_else(|| SyntaxError::at(e, "expected a parenthesized formula"))?;
    let head = items
        .first()
        .and_then(Sexp::as_atom)
        .ok_or_else(|| SyntaxError::at(e, "formula must start with a keyword"))?;
    let args = &items[1..];
    let sub = |i: usize| parse_surface_sexp(&args[i], macros).map(Box::new);
    let binder = |e: &Sexp| -> Result<Var, SyntaxError> {
        e.as_atom()
            .filter(|a| is_identifier(a))
            .map(str::to_string)
            .ok_or_else(|| SyntaxError::at(e, "expected a variable"))
    };
    let want = |n: usize| -> Result<(), SyntaxError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(SyntaxError::at(
                e,
                format!("`{head}` expects {n} operand(s), got {}", args.len()),
            ))
        }
    };
    if let Some(p) = Pred::from_symbol(head) {
        if args.len() != p.arity() {
            return Err(SyntaxError::Arity {
                pos: e.pos(),
                pred: p.symbol().to_string(),
                expected: p.arity(),
                got: args.len(),
            });
        }
        let terms = args
            .iter()
            .map(SrcTerm::from_sexp)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Surface::Atom(p, terms));
    }
    match head {
        "and" | "->" | "or" => {
            want(2)?;
            let (l, r) = (sub(0)?, sub(1)?);
            Ok(match head {
                "and" => Surface::And(l, r),
                "->" => Surface::Imp(l, r),
                _ => Surface::Or(l, r),
            })
        }
        "not" => {
            want(1)?;
            Ok(Surface::Not(sub(0)?))
        }
        "ex" | "all" | "exN" | "allN" | "exSt" | "allSt" => {
            want(2)?;
            let x = binder(&args[0])?;
            let body = sub(1)?;
            Ok(match head {
                "ex" => Surface::Exists(x, body),
                "all" => Surface::Forall(x, body),
                "exN" => Surface::ExistsIn(Pred::Nat, x, body),
                "allN" => Surface::ForallIn(Pred::Nat, x, body),
                "exSt" => Surface::ExistsIn(Pred::St, x, body),
                _ => Surface::ForallIn(Pred::St, x, body),
            })
        }
        name => {
            let (params, body) = macros
                .get(name)
                .ok_or_else(|| SyntaxError::at(e, format!("unknown connective `{name}`")))?;
            if params.len() != args.len() {
                return Err(SyntaxError::Arity {
                    pos: e.pos(),
                    pred: name.to_string(),
                    expected: params.len(),
                    got: args.len(),
                });
            }
            let terms = args
                .iter()
                .map(SrcTerm::from_sexp)
                .collect::<Result<Vec<_>, _>>()?;
            let pairs: Vec<_> = params.iter().cloned().zip(terms).collect();
            Ok(Surface::embed(&body.substitute_all(&pairs)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parses_literal_atom() {
        assert_eq!(f("(= 0 0)"), Formula::eq(SrcTerm::Zero, SrcTerm::Zero));
    }

    #[test]
    fn parses_quantified_implication() {
        let n = SrcTerm::var("n");
        assert_eq!(
            f("(all n (-> (N n) (N (s n))))"),
            Formula::forall(
                "n",
                Formula::imp(Formula::nat(n.clone()), Formula::nat(SrcTerm::succ(n)))
            )
        );
    }

    #[test]
    fn qualified_quantifiers_desugar_at_parse_time() {
        let n = SrcTerm::var("n");
        assert_eq!(
            f("(exN n (= n (s 0)))"),
            Formula::exists(
                "n",
                Formula::and(Formula::nat(n.clone()), Formula::eq(n, SrcTerm::numeral(1)))
            )
        );
        assert!(f("(allN n (= n n))").alpha_eq(&f("(all n (-> (N n) (= n n)))")));
        assert!(f("(allSt n (st n))").alpha_eq(&f("(all n (-> (st n) (st n)))")));
    }

    #[test]
    fn disjunction_desugars_with_tag() {
        let got = f("(or (= x 0) (N x))");
        let want = f("(ex k (and (-> (= k 0) (= x 0)) (-> (-> (= k 0) (⊥)) (N x))))");
        assert!(got.alpha_eq(&want), "{got}");
        // the tag variable avoids free variables of the disjuncts
        let got = f("(or (= k 0) (⊥))");
        assert!(got.to_string().starts_with("(ex k' "), "{got}");
    }

    #[test]
    fn negation_desugars() {
        assert_eq!(
            f("(not (⊥))"),
            Formula::imp(Formula::falsity(), Formula::falsity())
        );
    }

    #[test]
    fn arity_errors_are_reported() {
        let err = parse_formula("(= 0)").unwrap_err();
        assert!(
            matches!(
                err,
                SyntaxError::Arity {
                    expected: 2,
                    got: 1,
                    ..
                }
            ),
            "{err}"
        );
        assert!(parse_formula("(N 0 0)").is_err());
        assert!(parse_formula("(foo 0)").is_err());
        assert!(parse_formula("(and (⊥)").is_err());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(
            f("(N x)").substitute("x", &SrcTerm::numeral(1)),
            f("(N (s 0))")
        );
        assert_eq!(
            f("(all x (N x))").substitute("x", &SrcTerm::Zero),
            f("(all x (N x))")
        );
        assert_eq!(
            f("(= x y)").substitute("x", &SrcTerm::var("y")),
            f("(= y y)")
        );
    }

    #[test]
    fn substitution_avoids_capture() {
        let a = f("(all y (= x y))");
        let b = a.substitute("x", &SrcTerm::var("y"));
        assert!(b.alpha_eq(&f("(all z (= y z))")), "{b}");
        assert!(!b.alpha_eq(&f("(all z (= z z))")));
    }

    #[test]
    fn macros_expand_simultaneously() {
        let mut m = Macros::default();
        m.define_from_sexp(&sexp::parse_one("(def P (a b) (= a b))").unwrap())
            .unwrap();
        let e = sexp::parse_one("(P b a)").unwrap();
        assert_eq!(parse_formula_sexp(&e, &m).unwrap(), f("(= b a)"));
    }

    pub(crate) fn arb_term(vars: &'static [&'static str]) -> impl Strategy<Value = SrcTerm> {
        let leaf = prop_oneof![
            Just(SrcTerm::Zero),
            proptest::sample::select(vars).prop_map(SrcTerm::var),
        ];
        leaf.prop_recursive(3, 4, 1, |inner| inner.prop_map(SrcTerm::succ))
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        const VARS: &[&str] = &["x", "y", "z"];
        let atom = prop_oneof![
            Just(Formula::falsity()),
            arb_term(VARS).prop_map(Formula::nat),
            arb_term(VARS).prop_map(Formula::st),
            (arb_term(VARS), arb_term(VARS)).prop_map(|(a, b)| Formula::eq(a, b)),
        ];
        atom.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                (proptest::sample::select(VARS), inner.clone())
                    .prop_map(|(x, a)| Formula::exists(x, a)),
                (proptest::sample::select(VARS), inner).prop_map(|(x, a)| Formula::forall(x, a)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(a in arb_formula()) {
            let back = parse_formula(&a.to_string()).unwrap();
            prop_assert!(back.alpha_eq(&a));
        }

        #[test]
        fn fresh_rename_roundtrip(a in arb_formula()) {
            let mut avoid = BTreeSet::new();
            a.all_vars(&mut avoid);
            let fresh = fresh_name("w", &avoid);
            let there = a.substitute("x", &SrcTerm::var(&fresh));
            let back = there.substitute(&fresh, &SrcTerm::var("x"));
            prop_assert!(back.alpha_eq(&a));
        }

        #[test]
        fn desugar_is_idempotent(a in arb_formula()) {
            let once = desugar(&Surface::embed(&a));
            prop_assert_eq!(desugar(&Surface::embed(&once)), once);
        }

        #[test]
        fn canonical_form_decides_alpha_equivalence(a in arb_formula(), b in arb_formula()) {
            prop_assert_eq!(a.alpha_eq(&b), a.canonical() == b.canonical());
            prop_assert!(a.canonical().alpha_eq(&a));
        }
    }
}
