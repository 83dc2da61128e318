//! Interface typing for processes: inputs on the left, outputs on the right.
//!
//! Checking only. Restricted names get a metavariable on both sides; the
//! given context is rigid and extra entries are fine (weakening).

use std::collections::BTreeMap;
use std::fmt;

use crate::lex::ParseError;
use crate::pi::{Datum, Name, Proc};
use crate::symbol::{FreshSupply, Symbol};
use crate::types::{parse_context_entries, SimpleType, Unifier, UnifyError};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiContextPair {
    pub gamma: BTreeMap<Name, SimpleType>,
    pub delta: BTreeMap<Name, SimpleType>,
}

impl PiContextPair {
    pub fn new() -> PiContextPair {
        PiContextPair::default()
    }

    pub fn input(mut self, a: &str, t: SimpleType) -> PiContextPair {
        self.gamma.insert(Symbol::intern(a), t);
        self
    }

    pub fn output(mut self, a: &str, t: SimpleType) -> PiContextPair {
        self.delta.insert(Symbol::intern(a), t);
        self
    }

    pub fn to_file(&self) -> String {
        let mut s = String::new();
        for (k, t) in &self.gamma {
            s.push_str(&format!("in {} : {}\n", k, t));
        }
        for (k, t) in &self.delta {
            s.push_str(&format!("out {} : {}\n", k, t));
        }
        s
    }
}

impl fmt::Display for PiContextPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &BTreeMap<Name, SimpleType>| m.iter().map(|(k, t)| format!("{} : {}", k, t)).collect::<Vec<_>>().join(", ");
        let (g, d) = (side(&self.gamma), side(&self.delta));
        let mut s = String::new();
        if !g.is_empty() {
            s.push_str(&g);
            s.push(' ');
        }
        s.push_str("|-");
        if !d.is_empty() {
            s.push(' ');
            s.push_str(&d);
        }
        write!(f, "{}", s)
    }
}

pub fn parse_pi_context(src: &str) -> Result<PiContextPair, ParseError> {
    let mut ctx = PiContextPair::new();
    for (side, name, ty) in parse_context_entries(src, ["in", "out"])? {
        if side == 0 {
            ctx.gamma.insert(name, ty);
        } else {
            ctx.delta.insert(name, ty);
        }
    }
    Ok(ctx)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PiTypeError {
    #[error("`{name}` is not an input in the context (at `{at}`)")]
    NotInput { name: Name, at: String },
    #[error("`{name}` is not an output in the context (at `{at}`)")]
    NotOutput { name: Name, at: String },
    #[error("`{name}` is neither an input nor an output in the context (at `{at}`)")]
    Unknown { name: Name, at: String },
    #[error("{reason} (at `{at}`)")]
    Constraint { reason: UnifyError, at: String },
    #[error("no rule types `{at}`")]
    NoRule { at: String },
}

struct Checker {
    u: Unifier,
    gamma: Vec<(Name, SimpleType)>,
    delta: Vec<(Name, SimpleType)>,
}

fn lookup(side: &[(Name, SimpleType)], a: Name) -> Option<SimpleType> {
    side.iter().rev().find(|(k, _)| *k == a).map(|(_, t)| t.clone())
}

impl Checker {
    fn unify(&mut self, s: &SimpleType, t: &SimpleType, at: &Proc) -> Result<(), PiTypeError> {
        self.u.unify(s, t).map_err(|reason| PiTypeError::Constraint { reason, at: at.to_string() })
    }

    fn input(&self, a: Name, at: &Proc) -> Result<SimpleType, PiTypeError> {
        lookup(&self.gamma, a).ok_or_else(|| PiTypeError::NotInput { name: a, at: at.to_string() })
    }

    fn output(&self, a: Name, at: &Proc) -> Result<SimpleType, PiTypeError> {
        lookup(&self.delta, a).ok_or_else(|| PiTypeError::NotOutput { name: a, at: at.to_string() })
    }

    fn check(&mut self, p: &Proc) -> Result<(), PiTypeError> {
        match p {
            Proc::Nil => Ok(()),
            Proc::Repl(q) => self.check(q),
            Proc::Par(q, r) => {
                self.check(q)?;
                self.check(r)
            }
            Proc::New(a, q) => {
                let t = self.u.fresh();
                self.both(*a, t, q)
            }
            Proc::In(a, x, q) => {
                let t = self.input(*a, p)?;
                self.both(*x, t, q)
            }
            Proc::Out(a, Datum::Name(b)) => {
                let t = self.output(*a, p)?;
                // The payload sits on both sides of the rule's conclusion;
                // one side is enough, which also covers sending a name
                // over itself.
                let sides = [lookup(&self.gamma, *b), lookup(&self.delta, *b)];
                if sides.iter().all(Option::is_none) {
                    return Err(PiTypeError::Unknown { name: *b, at: p.to_string() });
                }
                for s in sides.into_iter().flatten() {
                    self.unify(&s, &t, p)?;
                }
                Ok(())
            }
            Proc::Out(a, Datum::Pair(b, c)) => {
                let t = self.output(*a, p)?;
                let (tb, tc) = (self.input(*b, p)?, self.output(*c, p)?);
                self.unify(&t, &SimpleType::arrow(tb, tc), p)
            }
            Proc::Let(x, y, Datum::Name(z), q) => {
                let t = self.input(*z, p)?;
                let (ta, tb) = (self.u.fresh(), self.u.fresh());
                self.unify(&t, &SimpleType::arrow(ta.clone(), tb.clone()), p)?;
                self.delta.push((*x, ta));
                self.gamma.push((*y, tb));
                let r = self.check(q);
                self.delta.pop();
                self.gamma.pop();
                r
            }
            Proc::Let(_, _, Datum::Pair(..), _) | Proc::Stuck(..) => Err(PiTypeError::NoRule { at: p.to_string() }),
        }
    }

    fn both(&mut self, x: Name, t: SimpleType, q: &Proc) -> Result<(), PiTypeError> {
        self.gamma.push((x, t.clone()));
        self.delta.push((x, t));
        let r = self.check(q);
        self.gamma.pop();
        self.delta.pop();
        r
    }
}

/// Check `p` against `ctx`, reporting the first failing constraint.
pub fn explain(p: &Proc, ctx: &PiContextPair) -> Result<(), PiTypeError> {
    let p = p.refresh(&mut FreshSupply::above(ctx.gamma.keys().chain(ctx.delta.keys()).copied()));
    let mut c = Checker {
        u: Unifier::rigid(),
        gamma: ctx.gamma.iter().map(|(k, t)| (*k, t.clone())).collect(),
        delta: ctx.delta.iter().map(|(k, t)| (*k, t.clone())).collect(),
    };
    c.check(&p)
}

pub fn pi_check(p: &Proc, ctx: &PiContextPair) -> bool {
    explain(p, ctx).is_ok()
}

/// The derived pair-input rule: `a(<x,y>).P`.
pub fn derive_pair_in(a: Name, x: Name, y: Name, p: &Proc, ctx: &PiContextPair) -> bool {
    let Some(t) = ctx.gamma.get(&a) else { return false };
    let mut u = Unifier::rigid();
    let (ta, tb) = (u.fresh(), u.fresh());
    if u.unify(t, &SimpleType::arrow(ta.clone(), tb.clone())).is_err() {
        return false;
    }
    let (ta, tb) = (u.zonk(&ta), u.zonk(&tb));
    let mut inner = ctx.clone();
    inner.delta.insert(x, ta);
    inner.gamma.insert(y, tb);
    pi_check(p, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::{forwarder, parse_pi};
    use crate::types::parse_type;

    fn t(s: &str) -> SimpleType {
        parse_type(s).unwrap()
    }

    fn n(s: &str) -> Name {
        Symbol::intern(s)
    }

    #[test]
    fn nil_and_forwarder() {
        assert!(pi_check(&Proc::Nil, &PiContextPair::new()));
        assert!(pi_check(&Proc::Nil, &PiContextPair::new().input("q", t("A"))));
        let f = forwarder(n("x"), n("al"), &mut FreshSupply::new());
        assert!(pi_check(&f, &PiContextPair::new().input("x", t("A")).output("al", t("A"))));
        assert!(!pi_check(&f, &PiContextPair::new().input("x", t("A")).output("al", t("B"))));
        assert!(!pi_check(&f, &PiContextPair::new().output("x", t("A")).output("al", t("A"))));
    }

    #[test]
    fn export_shape() {
        // new x. new al. (x(o). al<o> | be<<x,al>>) : |- be : A -> A
        let q = parse_pi("new x. new al. (x(o). al<o> | be<<x,al>>)").unwrap();
        assert!(pi_check(&q, &PiContextPair::new().output("be", t("A -> A"))));
        assert!(!pi_check(&q, &PiContextPair::new().output("be", t("A -> B"))));
    }

    #[test]
    fn self_send() {
        assert!(pi_check(&Proc::out("a", "a"), &PiContextPair::new().output("a", t("A"))));
    }

    #[test]
    fn pair_in() {
        let ctx = PiContextPair::new().input("a", t("A -> B"));
        assert!(derive_pair_in(n("a"), n("x"), n("y"), &Proc::Nil, &ctx));
        let sugared = parse_pi("a(<x,y>). 0").unwrap();
        assert!(pi_check(&sugared, &ctx));
        let flat = PiContextPair::new().input("a", t("P"));
        assert!(!derive_pair_in(n("a"), n("x"), n("y"), &Proc::Nil, &flat));
        assert!(!pi_check(&sugared, &flat));
    }

    #[test]
    fn explain_names_the_constraint() {
        let e = explain(&Proc::out("a", "b"), &PiContextPair::new().output("a", t("A")).input("b", t("B"))).unwrap_err();
        assert!(matches!(e, PiTypeError::Constraint { .. }), "{}", e);
        let e = explain(&Proc::out("a", "b"), &PiContextPair::new().input("b", t("B"))).unwrap_err();
        assert_eq!(e.to_string(), "`a` is not an output in the context (at `a<b>`)");
    }

    #[test]
    fn stuck_is_untypeable() {
        let q = parse_pi("stuck(<a,b> / x; x<c>)").unwrap();
        assert!(!pi_check(&q, &PiContextPair::new()));
    }

    #[test]
    fn context_file() {
        let c = parse_pi_context("in x : A\nout x : A -> B\n").unwrap();
        assert_eq!(c, PiContextPair::new().input("x", t("A")).output("x", t("A -> B")));
        assert_eq!(parse_pi_context(&c.to_file()).unwrap(), c);
        assert_eq!(c.to_string(), "x : A |- x : A -> B");
    }
}
