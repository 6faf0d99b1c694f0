//! Realizer types and type inference for realizer terms.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::sexp::{self, Sexp, SexpError};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RType {
    Nat,
    SetOf(Box<RType>),
    State,
    /// Multi-argument function type; the argument list is never empty.
    Arrow(Vec<RType>, Box<RType>),
    Prod(Vec<RType>),
    /// Unification variable, only present during inference.
    Meta(u32),
}

impl RType {
    pub fn set_of(t: RType) -> RType {
        RType::SetOf(Box::new(t))
    }

    /// `σ⃗ → ρ`, which is `ρ` itself when `σ⃗` is empty.
    pub fn arrow(args: Vec<RType>, ret: RType) -> RType {
        if args.is_empty() {
            ret
        } else {
            RType::Arrow(args, Box::new(ret))
        }
    }

    /// Tuple arrow `σ⃗ → ρ⃗`: one arrow per component of `ρ⃗`.
    pub fn tuple_arrow(args: &[RType], rets: &[RType]) -> Vec<RType> {
        rets.iter()
            .map(|r| RType::arrow(args.to_vec(), r.clone()))
            .collect()
    }

    pub fn is_base(&self) -> bool {
        match self {
            RType::Nat | RType::State => true,
            RType::SetOf(t) => t.is_base(),
            _ => false,
        }
    }

    fn has_meta(&self) -> bool {
        match self {
            RType::Meta(_) => true,
            RType::Nat | RType::State => false,
            RType::SetOf(t) => t.has_meta(),
            RType::Arrow(a, r) => a.iter().any(RType::has_meta) || r.has_meta(),
            RType::Prod(ts) => ts.iter().any(RType::has_meta),
        }
    }
}

impl fmt::Display for RType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RType::Nat => f.write_str("nat"),
            RType::State => f.write_str("state"),
            RType::SetOf(t) => write!(f, "(set {t})"),
            RType::Arrow(args, r) => {
                f.write_str("(->")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, " {r})")
            }
            RType::Prod(ts) => {
                f.write_str("(prod")?;
                for t in ts {
                    write!(f, " {t}")?;
                }
                f.write_str(")")
            }
            RType::Meta(i) => write!(f, "?{i}"),
        }
    }
}

impl RType {
    pub fn parse(text: &str) -> Result<RType, SexpError> {
        RType::from_sexp(&sexp::parse_one(text)?)
    }

    pub fn from_sexp(e: &Sexp) -> Result<RType, SexpError> {
        if let Some(a) = e.as_atom() {
            return match a {
                "nat" => Ok(RType::Nat),
                "state" => Ok(RType::State),
                _ => Err(e.error(format!("unknown type `{a}`"))),
            };
        }
        let items = e.as_list().unwrap_or(&[]);
        let parts = || {
            items[1..]
                .iter()
                .map(RType::from_sexp)
                .collect::<Result<Vec<_>, _>>()
        };
        match e.head() {
            Some("set") if items.len() == 2 => Ok(RType::set_of(RType::from_sexp(&items[1])?)),
            Some("->") if items.len() >= 3 => {
                let mut ts = parts()?;
                let r = ts.pop().unwrap();
                Ok(RType::arrow(ts, r))
            }
            Some("prod") => Ok(RType::Prod(parts()?)),
            _ => Err(e.error("malformed type")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("ill-typed at {path}: {reason}")]
    IllTyped { path: String, reason: String },
}

fn ill(path: &str, reason: impl Into<String>) -> TypeError {
    TypeError::IllTyped {
        path: path.to_string(),
        reason: reason.into(),
    }
}

#[derive(Default)]
struct Unifier {
    subst: HashMap<u32, RType>,
    next: u32,
}

impl Unifier {
    fn fresh(&mut self) -> RType {
        self.next += 1;
        RType::Meta(self.next - 1)
    }

    fn resolve(&self, t: &RType) -> RType {
        match t {
            RType::Meta(i) => match self.subst.get(i) {
                Some(u) => self.resolve(u),
                None => t.clone(),
            },
            RType::Nat | RType::State => t.clone(),
            RType::SetOf(u) => RType::set_of(self.resolve(u)),
            RType::Arrow(a, r) => RType::Arrow(
                a.iter().map(|x| self.resolve(x)).collect(),
                Box::new(self.resolve(r)),
            ),
            RType::Prod(ts) => RType::Prod(ts.iter().map(|x| self.resolve(x)).collect()),
        }
    }

    fn occurs(&self, i: u32, t: &RType) -> bool {
        match self.resolve(t) {
            RType::Meta(j) => i == j,
            RType::Nat | RType::State => false,
            RType::SetOf(u) => self.occurs(i, &u),
            RType::Arrow(a, r) => a.iter().any(|x| self.occurs(i, x)) || self.occurs(i, &r),
            RType::Prod(ts) => ts.iter().any(|x| self.occurs(i, x)),
        }
    }

    fn unify(&mut self, a: &RType, b: &RType, path: &str) -> Result<(), TypeError> {
        let (a, b) = (self.resolve(a), self.resolve(b));
        let mismatch = || ill(path, format!("expected {b}, found {a}"));
        match (&a, &b) {
            (RType::Meta(i), RType::Meta(j)) if i == j => Ok(()),
            (RType::Meta(i), t) | (t, RType::Meta(i)) => {
                if self.occurs(*i, t) {
                    return Err(ill(path, format!("infinite type ?{i} = {t}")));
                }
                self.subst.insert(*i, t.clone());
                Ok(())
            }
            (RType::Nat, RType::Nat) | (RType::State, RType::State) => Ok(()),
            (RType::SetOf(x), RType::SetOf(y)) => self.unify(x, y, path),
            (RType::Arrow(xa, xr), RType::Arrow(ya, yr)) => {
                if xa.len() != ya.len() {
                    return Err(mismatch());
                }
                for (x, y) in xa.iter().zip(ya) {
                    self.unify(x, y, path)?;
                }
                self.unify(xr, yr, path)
            }
            (RType::Prod(xs), RType::Prod(ys)) if xs.len() == ys.len() => {
                for (x, y) in xs.iter().zip(ys) {
                    self.unify(x, y, path)?;
                }
                Ok(())
            }
            _ => Err(mismatch()),
        }
    }

    fn infer_under(
        &mut self,
        ps: &[String],
        tys: &[RType],
        body: &Term,
        ctx: &mut Vec<(String, RType)>,
        path: &str,
    ) -> Result<RType, TypeError> {
        let n = ctx.len();
        ctx.extend(ps.iter().cloned().zip(tys.iter().cloned()));
        let r = self.infer(body, ctx, path);
        ctx.truncate(n);
        r
    }

    fn infer(
        &mut self,
        t: &Term,
        ctx: &mut Vec<(String, RType)>,
        path: &str,
    ) -> Result<RType, TypeError> {
        let child = |i: usize| format!("{path}/{i}");
        match t {
            Term::Var(x) => ctx
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, ty)| ty.clone())
                .ok_or_else(|| ill(path, format!("unbound variable `{x}`"))),
            Term::Num(_) | Term::Opaque(_) => Ok(RType::Nat),
            Term::StateLit(_) => Ok(RType::State),
            Term::Succ(u) => {
                let ty = self.infer(u, ctx, &child(0))?;
                self.unify(&ty, &RType::Nat, &child(0))?;
                Ok(RType::Nat)
            }
            Term::Max(a, b) => {
                for (i, u) in [a, b].into_iter().enumerate() {
                    let ty = self.infer(u, ctx, &child(i))?;
                    self.unify(&ty, &RType::Nat, &child(i))?;
                }
                Ok(RType::Nat)
            }
            Term::Lam(ps, body) => {
                let args: Vec<RType> = ps.iter().map(|_| self.fresh()).collect();
                let n = ctx.len();
                ctx.extend(ps.iter().cloned().zip(args.iter().cloned()));
                let r = self.infer(body, ctx, &child(0));
                ctx.truncate(n);
                Ok(RType::arrow(args, r?))
            }
            Term::App(h, args) => {
                let mut arg_tys = Vec::with_capacity(args.len());
                for (i, a) in args.iter().enumerate() {
                    arg_tys.push(self.infer(a, ctx, &child(i + 1))?);
                }
                // a literal λ head is checked with its parameters already typed
                if let Term::Lam(ps, body) = &**h {
                    if ps.len() == arg_tys.len() {
                        return self.infer_under(
                            ps,
                            &arg_tys,
                            body,
                            ctx,
                            &format!("{}/0", child(0)),
                        );
                    }
                }
                let hty = self.infer(h, ctx, &child(0))?;
                let ret = self.fresh();
                self.unify(&hty, &RType::arrow(arg_tys, ret.clone()), &child(0))?;
                Ok(ret)
            }
            Term::Tuple(ts) => {
                let mut tys = Vec::with_capacity(ts.len());
                for (i, u) in ts.iter().enumerate() {
                    tys.push(self.infer(u, ctx, &child(i))?);
                }
                Ok(RType::Prod(tys))
            }
            Term::Proj(i, u) => {
                let ty = self.infer(u, ctx, &child(0))?;
                match self.resolve(&ty) {
                    RType::Prod(ts) if *i < ts.len() => Ok(ts[*i].clone()),
                    other => Err(ill(path, format!("projection {i} from {other}"))),
                }
            }
            Term::Rec(base, step, arg) => {
                let aty = self.infer(arg, ctx, &child(2))?;
                self.unify(&aty, &RType::Nat, &child(2))?;
                let bty = self.infer(base, ctx, &child(0))?;
                if let Term::Lam(ps, body) = &**step {
                    if ps.len() == 2 {
                        let tys = [RType::Nat, bty.clone()];
                        let rty =
                            self.infer_under(ps, &tys, body, ctx, &format!("{}/0", child(1)))?;
                        self.unify(&rty, &bty, &child(1))?;
                        return Ok(bty);
                    }
                }
                let sty = self.infer(step, ctx, &child(1))?;
                self.unify(
                    &sty,
                    &RType::arrow(vec![RType::Nat, bty.clone()], bty.clone()),
                    &child(1),
                )?;
                Ok(bty)
            }
            Term::Set(ts) => {
                let elem = self.fresh();
                for (i, u) in ts.iter().enumerate() {
                    let ty = self.infer(u, ctx, &child(i))?;
                    self.unify(&ty, &elem, &child(i))?;
                }
                Ok(RType::set_of(elem))
            }
            Term::Union(a, b) => {
                let elem = RType::set_of(self.fresh());
                for (i, u) in [a, b].into_iter().enumerate() {
                    let ty = self.infer(u, ctx, &child(i))?;
                    self.unify(&ty, &elem, &child(i))?;
                }
                Ok(elem)
            }
            Term::SetBind(s, g) => {
                let (x, y) = (self.fresh(), self.fresh());
                let sty = self.infer(s, ctx, &child(0))?;
                self.unify(&sty, &RType::set_of(x.clone()), &child(0))?;
                let gty = self.infer(g, ctx, &child(1))?;
                let out = RType::set_of(y);
                self.unify(&gty, &RType::arrow(vec![x], out.clone()), &child(1))?;
                Ok(out)
            }
            Term::StateJoin(a, b) => {
                for (i, u) in [a, b].into_iter().enumerate() {
                    let ty = self.infer(u, ctx, &child(i))?;
                    self.unify(&ty, &RType::State, &child(i))?;
                }
                Ok(RType::State)
            }
            Term::IfEq(a, b, c, d) => {
                let x = self.infer(a, ctx, &child(0))?;
                let y = self.infer(b, ctx, &child(1))?;
                self.unify(&y, &x, &child(1))?;
                let u = self.infer(c, ctx, &child(2))?;
                let v = self.infer(d, ctx, &child(3))?;
                self.unify(&v, &u, &child(3))?;
                Ok(u)
            }
        }
    }
}

/// Infers the type of `t` under `ctx`. Types left undetermined (such as the
/// argument of `λa.a`) are reported as an error.
pub fn infer_type(t: &Term, ctx: &[(String, RType)]) -> Result<RType, TypeError> {
    let mut u = Unifier::default();
    let ty = u.infer(t, &mut ctx.to_vec(), "root")?;
    let ty = u.resolve(&ty);
    if ty.has_meta() {
        return Err(ill("root", format!("type is not determined: {ty}")));
    }
    Ok(ty)
}

/// Checks `t` against `expected` under `ctx`.
pub fn check_type(t: &Term, expected: &RType, ctx: &[(String, RType)]) -> Result<(), TypeError> {
    let mut u = Unifier::default();
    let ty = u.infer(t, &mut ctx.to_vec(), "root")?;
    u.unify(&ty, expected, "root")
}

/// Checks each component of a realizer tuple against its expected type.
pub fn check_tuple(
    ts: &[Term],
    expected: &[RType],
    ctx: &[(String, RType)],
) -> Result<(), TypeError> {
    if ts.len() != expected.len() {
        return Err(ill(
            "root",
            format!(
                "expected {} component(s), found {}",
                expected.len(),
                ts.len()
            ),
        ));
    }
    for (i, (t, ty)) in ts.iter().zip(expected).enumerate() {
        check_type(t, ty, ctx).map_err(|TypeError::IllTyped { path, reason }| {
            ill(&path.replacen("root", &format!("root[{i}]"), 1), reason)
        })?;
    }
    Ok(())
}
