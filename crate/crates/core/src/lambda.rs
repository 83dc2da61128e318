//! Untyped lambda terms, their simple types, beta steps and their image in
//! X and in processes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::encode::encode_x;
use crate::lex::{ParseError, Parser, Tok};
use crate::pi::Proc;
use crate::symbol::{FreshSupply, Symbol};
use crate::types::{pretty_renaming, SimpleType, Unifier, UnifyError};
use crate::xnet::{Net, Plug};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LamTerm {
    Var(Symbol),
    Abs(Symbol, Arc<LamTerm>),
    App(Arc<LamTerm>, Arc<LamTerm>),
}

impl LamTerm {
    pub fn var(x: &str) -> LamTerm {
        LamTerm::Var(Symbol::intern(x))
    }

    pub fn abs(x: &str, body: LamTerm) -> LamTerm {
        LamTerm::Abs(Symbol::intern(x), Arc::new(body))
    }

    pub fn app(m: LamTerm, n: LamTerm) -> LamTerm {
        LamTerm::App(Arc::new(m), Arc::new(n))
    }

    pub fn size(&self) -> usize {
        match self {
            LamTerm::Var(_) => 1,
            LamTerm::Abs(_, m) => 1 + m.size(),
            LamTerm::App(m, n) => 1 + m.size() + n.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        match self {
            LamTerm::Var(x) => [*x].into(),
            LamTerm::Abs(x, m) => {
                let mut s = m.free_vars();
                s.remove(x);
                s
            }
            LamTerm::App(m, n) => &m.free_vars() | &n.free_vars(),
        }
    }

    pub fn all_symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.symbols_into(&mut out);
        out
    }

    fn symbols_into(&self, out: &mut Vec<Symbol>) {
        match self {
            LamTerm::Var(x) => out.push(*x),
            LamTerm::Abs(x, m) => {
                out.push(*x);
                m.symbols_into(out);
            }
            LamTerm::App(m, n) => {
                m.symbols_into(out);
                n.symbols_into(out);
            }
        }
    }

    /// Distinct fresh binders.
    pub fn refresh(&self, supply: &mut FreshSupply) -> LamTerm {
        supply.bump_past(self.all_symbols());
        self.rename(&mut HashMap::new(), supply)
    }

    fn rename(&self, env: &mut HashMap<Symbol, Symbol>, s: &mut FreshSupply) -> LamTerm {
        match self {
            LamTerm::Var(x) => LamTerm::Var(*env.get(x).unwrap_or(x)),
            LamTerm::Abs(x, m) => {
                let y = s.fresh(*x);
                let old = env.insert(*x, y);
                let body = m.rename(env, s);
                match old {
                    Some(o) => env.insert(*x, o),
                    None => env.remove(x),
                };
                LamTerm::Abs(y, Arc::new(body))
            }
            LamTerm::App(m, n) => LamTerm::App(Arc::new(m.rename(env, s)), Arc::new(n.rename(env, s))),
        }
    }

    pub fn alpha_eq(&self, other: &LamTerm) -> bool {
        fn go(a: &LamTerm, b: &LamTerm, env: &mut Vec<(Symbol, Symbol)>) -> bool {
            match (a, b) {
                (LamTerm::Var(x), LamTerm::Var(y)) => {
                    match (env.iter().rev().find(|p| p.0 == *x), env.iter().rev().find(|p| p.1 == *y)) {
                        (Some(p), Some(q)) => p == q,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (LamTerm::Abs(x, m), LamTerm::Abs(y, n)) => {
                    env.push((*x, *y));
                    let r = go(m, n, env);
                    env.pop();
                    r
                }
                (LamTerm::App(m1, n1), LamTerm::App(m2, n2)) => go(m1, m2, env) && go(n1, n2, env),
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }

    /// Capture-avoiding `self[n/x]`; binders are renamed apart from `n`.
    pub fn subst(&self, x: Symbol, n: &LamTerm, s: &mut FreshSupply) -> LamTerm {
        match self {
            LamTerm::Var(y) if *y == x => n.clone(),
            LamTerm::Var(_) => self.clone(),
            LamTerm::Abs(y, _) if *y == x => self.clone(),
            LamTerm::Abs(y, m) => {
                if n.free_vars().contains(y) {
                    let z = s.fresh(*y);
                    let m2 = m.subst(*y, &LamTerm::Var(z), s);
                    LamTerm::Abs(z, Arc::new(m2.subst(x, n, s)))
                } else {
                    LamTerm::Abs(*y, Arc::new(m.subst(x, n, s)))
                }
            }
            LamTerm::App(m1, m2) => LamTerm::App(Arc::new(m1.subst(x, n, s)), Arc::new(m2.subst(x, n, s))),
        }
    }

    /// Every one-step beta reduct, leftmost redex first.
    pub fn beta_steps(&self) -> Vec<LamTerm> {
        let mut s = FreshSupply::above(self.all_symbols());
        let mut out = Vec::new();
        self.steps_into(&mut s, &mut out);
        out
    }

    fn steps_into(&self, s: &mut FreshSupply, out: &mut Vec<LamTerm>) {
        match self {
            LamTerm::Var(_) => {}
            LamTerm::Abs(x, m) => {
                let mut inner = Vec::new();
                m.steps_into(s, &mut inner);
                out.extend(inner.into_iter().map(|m2| LamTerm::Abs(*x, Arc::new(m2))));
            }
            LamTerm::App(m, n) => {
                if let LamTerm::Abs(x, body) = &**m {
                    out.push(body.subst(*x, n, s));
                }
                let mut inner = Vec::new();
                m.steps_into(s, &mut inner);
                out.extend(inner.into_iter().map(|m2| LamTerm::App(Arc::new(m2), n.clone())));
                let mut inner = Vec::new();
                n.steps_into(s, &mut inner);
                out.extend(inner.into_iter().map(|n2| LamTerm::App(m.clone(), Arc::new(n2))));
            }
        }
    }
}

impl fmt::Display for LamTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LamTerm::Var(x) => write!(f, "{}", x),
            LamTerm::Abs(x, m) => write!(f, "\\{}. {}", x, m),
            LamTerm::App(m, n) => {
                match &**m {
                    LamTerm::Abs(..) => write!(f, "({})", m)?,
                    _ => write!(f, "{}", m)?,
                }
                match &**n {
                    LamTerm::Var(_) => write!(f, " {}", n),
                    _ => write!(f, " ({})", n),
                }
            }
        }
    }
}

/// `\x. M` or `λx. M`; application is juxtaposition, left-associative.
pub fn parse_lam(src: &str) -> Result<LamTerm, ParseError> {
    let mut p = Parser::new(src)?;
    let t = term(&mut p)?;
    p.expect_end()?;
    Ok(t)
}

fn term(p: &mut Parser) -> Result<LamTerm, ParseError> {
    if p.eat_sym("\\") || p.eat_sym("λ") {
        let x = Symbol::intern(&p.ident("a variable")?);
        p.expect_sym(".")?;
        return Ok(LamTerm::Abs(x, Arc::new(term(p)?)));
    }
    let mut acc = atom(p)?;
    loop {
        match p.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Sym("(")) => acc = LamTerm::app(acc, atom(p)?),
            Some(Tok::Sym("\\")) | Some(Tok::Sym("λ")) => return Ok(LamTerm::app(acc, term(p)?)),
            _ => return Ok(acc),
        }
    }
}

fn atom(p: &mut Parser) -> Result<LamTerm, ParseError> {
    if p.eat_sym("(") {
        let t = term(p)?;
        p.expect_sym(")")?;
        return Ok(t);
    }
    Ok(LamTerm::Var(Symbol::intern(&p.ident("a term")?)))
}

/// Principal pair: a context for the free variables and a type, with
/// variables named `A`, `B`, ...
pub fn infer_lam(m: &LamTerm) -> Result<(BTreeMap<Symbol, SimpleType>, SimpleType), UnifyError> {
    fn go(m: &LamTerm, env: &mut Vec<(Symbol, SimpleType)>, free: &mut BTreeMap<Symbol, SimpleType>, u: &mut Unifier) -> Result<SimpleType, UnifyError> {
        match m {
            LamTerm::Var(x) => Ok(match env.iter().rev().find(|(y, _)| y == x) {
                Some((_, t)) => t.clone(),
                None => free.entry(*x).or_insert_with(|| u.fresh()).clone(),
            }),
            LamTerm::Abs(x, body) => {
                let a = u.fresh();
                env.push((*x, a.clone()));
                let b = go(body, env, free, u);
                env.pop();
                Ok(SimpleType::arrow(a, b?))
            }
            LamTerm::App(f, a) => {
                let tf = go(f, env, free, u)?;
                let ta = go(a, env, free, u)?;
                let r = u.fresh();
                u.unify(&tf, &SimpleType::arrow(ta, r.clone()))?;
                Ok(r)
            }
        }
    }
    let mut u = Unifier::flexible();
    let mut free = BTreeMap::new();
    let t = go(m, &mut Vec::new(), &mut free, &mut u)?;
    let t = u.zonk(&t);
    let free: BTreeMap<Symbol, SimpleType> = free.iter().map(|(k, v)| (*k, u.zonk(v))).collect();
    let ren = pretty_renaming(free.values().chain(std::iter::once(&t)));
    Ok((free.iter().map(|(k, v)| (*k, v.rename_vars(&ren))).collect(), t.rename_vars(&ren)))
}

pub fn encode_lam_to_x(m: &LamTerm, alpha: Plug) -> Net {
    let mut s = FreshSupply::above(m.all_symbols().into_iter().chain([alpha.0]));
    lam_to_x(m, alpha, &mut s)
}

fn lam_to_x(m: &LamTerm, alpha: Plug, s: &mut FreshSupply) -> Net {
    match m {
        LamTerm::Var(x) => Net::capsule(*x, alpha),
        LamTerm::Abs(x, body) => {
            let beta = Plug(s.fresh_str("b"));
            Net::export(*x, lam_to_x(body, beta, s), beta, alpha)
        }
        LamTerm::App(f, a) => {
            let gamma = Plug(s.fresh_str("g"));
            let beta = Plug(s.fresh_str("b"));
            let x = s.fresh_str("x");
            let y = s.fresh_str("y");
            let arg = Net::import(lam_to_x(a, beta, s), beta, x, y, Net::capsule(y, alpha));
            Net::cut(lam_to_x(f, gamma, s), gamma, x, arg)
        }
    }
}

pub fn encode_lam_to_pi(m: &LamTerm, alpha: Plug) -> Proc {
    encode_x(&encode_lam_to_x(m, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::parse_type;
    use crate::xtypes::infer_x;

    fn l(s: &str) -> LamTerm {
        parse_lam(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in ["\\x. x", "x y z", "x (y z)", "(\\x. x) y", "\\x. \\y. x", "f (\\x. x)"] {
            assert_eq!(l(s).to_string(), s);
        }
        assert_eq!(l("λx. x"), l("\\x. x"));
        assert_eq!(l("f \\x. x"), l("f (\\x. x)"));
        assert!(parse_lam("\\x x").is_err());
    }

    #[test]
    fn inference() {
        let (g, t) = infer_lam(&l("\\x. x")).unwrap();
        assert!(g.is_empty());
        assert_eq!(t, parse_type("A -> A").unwrap());
        let (_, t) = infer_lam(&l("\\x. \\y. x")).unwrap();
        assert_eq!(t, parse_type("A -> B -> A").unwrap());
        assert!(matches!(infer_lam(&l("\\x. x x")), Err(UnifyError::OccursCheck { .. })));
        let (g, t) = infer_lam(&l("f y")).unwrap();
        assert_eq!(t, parse_type("B").unwrap());
        assert_eq!(g[&Symbol::intern("f")], parse_type("A -> B").unwrap());
    }

    #[test]
    fn beta() {
        let r = l("(\\x. x) y").beta_steps();
        assert_eq!(r, vec![l("y")]);
        // capture is avoided
        let r = l("(\\x. \\y. x) y").beta_steps();
        assert_eq!(r.len(), 1);
        assert!(!r[0].alpha_eq(&l("\\y. y")));
        assert!(r[0].alpha_eq(&l("\\z. y")));
        assert_eq!(l("(\\x. x x) ((\\y. y) z)").beta_steps().len(), 2);
    }

    #[test]
    fn into_x() {
        let a = Plug::from("al");
        assert_eq!(encode_lam_to_x(&l("x"), a), Net::capsule("x", "al"));
        let id = encode_lam_to_x(&l("\\x. x"), a);
        let Net::Export { socket, body, plug, out } = &id else { panic!("{}", id) };
        assert_eq!(**body, Net::capsule(*socket, *plug));
        assert_eq!(*out, a);
        let app = encode_lam_to_x(&l("(\\x. x) y"), a);
        assert_eq!(app.free_plugs(), [a].into());
        let (ctx, _) = infer_x(&app).unwrap();
        assert_eq!(ctx.to_string(), "y : A |- al : A");
    }
}
