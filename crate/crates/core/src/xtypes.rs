//! Principal typing and checking for X nets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::lex::ParseError;
use crate::symbol::Symbol;
use crate::types::{match_into, parse_context_entries, pretty_renaming, SimpleType, Substitution, Unifier, UnifyError};
use crate::xnet::{Net, Plug, Socket};

/// Socket context on the left, plug context on the right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContextPair {
    pub gamma: BTreeMap<Socket, SimpleType>,
    pub delta: BTreeMap<Plug, SimpleType>,
}

impl ContextPair {
    pub fn new() -> ContextPair {
        ContextPair::default()
    }

    pub fn sock(mut self, x: &str, t: SimpleType) -> ContextPair {
        self.gamma.insert(Socket::from(x), t);
        self
    }

    pub fn plug(mut self, a: &str, t: SimpleType) -> ContextPair {
        self.delta.insert(Plug::from(a), t);
        self
    }

    fn types(&self) -> impl Iterator<Item = &SimpleType> {
        self.gamma.values().chain(self.delta.values())
    }

    /// Type variables renamed `A`, `B`, ... by first appearance.
    pub fn prettified(&self) -> ContextPair {
        let ren = pretty_renaming(self.types());
        ContextPair {
            gamma: self.gamma.iter().map(|(k, t)| (*k, t.rename_vars(&ren))).collect(),
            delta: self.delta.iter().map(|(k, t)| (*k, t.rename_vars(&ren))).collect(),
        }
    }

    /// Context-file rendering (`sock x : T` / `plug a : T`).
    pub fn to_file(&self) -> String {
        let mut s = String::new();
        for (k, t) in &self.gamma {
            s.push_str(&format!("sock {} : {}\n", k, t));
        }
        for (k, t) in &self.delta {
            s.push_str(&format!("plug {} : {}\n", k, t));
        }
        s
    }
}

impl fmt::Display for ContextPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: Vec<String>| m.join(", ");
        let g = side(self.gamma.iter().map(|(k, t)| format!("{} : {}", k, t)).collect());
        let d = side(self.delta.iter().map(|(k, t)| format!("{} : {}", k, t)).collect());
        match (g.is_empty(), d.is_empty()) {
            (true, true) => write!(f, "|-"),
            (true, false) => write!(f, "|- {}", d),
            (false, true) => write!(f, "{} |-", g),
            (false, false) => write!(f, "{} |- {}", g, d),
        }
    }
}

pub fn parse_x_context(src: &str) -> Result<ContextPair, ParseError> {
    let mut ctx = ContextPair::new();
    for (side, name, ty) in parse_context_entries(src, ["sock", "plug"])? {
        if side == 0 {
            ctx.gamma.insert(Socket(name), ty);
        } else {
            ctx.delta.insert(Plug(name), ty);
        }
    }
    Ok(ctx)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("untypeable: {reason} (at `{at}`)")]
pub struct TypeError {
    pub reason: UnifyError,
    /// The sub-net whose rule produced the failing constraint.
    pub at: String,
}

struct Infer {
    u: Unifier,
}

type Ctx = (HashMap<Socket, SimpleType>, HashMap<Plug, SimpleType>);

impl Infer {
    fn err(&self, e: UnifyError, net: &Net) -> TypeError {
        TypeError { reason: e, at: net.to_string() }
    }

    fn merge(&mut self, mut a: Ctx, b: Ctx, net: &Net) -> Result<Ctx, TypeError> {
        for (k, t) in b.0 {
            match a.0.get(&k) {
                Some(s) => {
                    let s = s.clone();
                    self.u.unify(&s, &t).map_err(|e| self.err(e, net))?
                }
                None => {
                    a.0.insert(k, t);
                }
            }
        }
        for (k, t) in b.1 {
            match a.1.get(&k) {
                Some(s) => {
                    let s = s.clone();
                    self.u.unify(&s, &t).map_err(|e| self.err(e, net))?
                }
                None => {
                    a.1.insert(k, t);
                }
            }
        }
        Ok(a)
    }

    fn net(&mut self, net: &Net) -> Result<Ctx, TypeError> {
        match net {
            Net::Capsule { socket, plug } => {
                let t = self.u.fresh();
                Ok(([(*socket, t.clone())].into(), [(*plug, t)].into()))
            }
            Net::Export { socket, body, plug, out } => {
                let (mut g, mut d) = self.net(body)?;
                let a = g.remove(socket).unwrap_or_else(|| self.u.fresh());
                let b = d.remove(plug).unwrap_or_else(|| self.u.fresh());
                let arrow = SimpleType::arrow(a, b);
                self.merge((g, d), (HashMap::new(), [(*out, arrow)].into()), net)
            }
            Net::Import { left, plug, middle, socket, right } => {
                let (g1, mut d1) = self.net(left)?;
                let a = d1.remove(plug).unwrap_or_else(|| self.u.fresh());
                let (mut g2, d2) = self.net(right)?;
                let b = g2.remove(socket).unwrap_or_else(|| self.u.fresh());
                let c = self.merge((g1, d1), (g2, d2), net)?;
                self.merge(c, ([(*middle, SimpleType::arrow(a, b))].into(), HashMap::new()), net)
            }
            Net::Cut { left, plug, socket, right, .. } => {
                let (g1, mut d1) = self.net(left)?;
                let a = d1.remove(plug).unwrap_or_else(|| self.u.fresh());
                let (mut g2, d2) = self.net(right)?;
                let b = g2.remove(socket).unwrap_or_else(|| self.u.fresh());
                self.u.unify(&a, &b).map_err(|e| self.err(e, net))?;
                self.merge((g1, d1), (g2, d2), net)
            }
        }
    }
}

/// Principal typing. The returned context uses variables `A`, `B`, ...;
/// the substitution maps the inference metavariables to their final types.
pub fn infer_x(net: &Net) -> Result<(ContextPair, Substitution), TypeError> {
    let mut inf = Infer { u: Unifier::flexible() };
    let (g, d) = inf.net(net)?;
    let raw = ContextPair {
        gamma: g.iter().map(|(k, t)| (*k, inf.u.zonk(t))).collect(),
        delta: d.iter().map(|(k, t)| (*k, inf.u.zonk(t))).collect(),
    };
    let ren = pretty_renaming(raw.types());
    let ctx = raw.prettified();
    let mut subst = inf.u.substitution();
    for t in subst.map.values_mut() {
        *t = t.rename_vars(&ren);
    }
    Ok((ctx, subst))
}

/// Is `ctx` an instance of the principal typing of `net`, up to weakening?
pub fn check_x(net: &Net, ctx: &ContextPair) -> bool {
    match infer_x(net) {
        Ok((principal, _)) => is_instance(&principal, ctx),
        Err(_) => false,
    }
}

/// `general` maps into `ctx` under one substitution; extra entries of `ctx`
/// are allowed.
pub fn is_instance(general: &ContextPair, ctx: &ContextPair) -> bool {
    let mut sigma: HashMap<Symbol, SimpleType> = HashMap::new();
    general.gamma.iter().all(|(k, t)| ctx.gamma.get(k).is_some_and(|u| match_into(t, u, &mut sigma)))
        && general.delta.iter().all(|(k, t)| ctx.delta.get(k).is_some_and(|u| match_into(t, u, &mut sigma)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::parse_type;
    use crate::xnet::parse_xnet;

    fn t(s: &str) -> SimpleType {
        parse_type(s).unwrap()
    }

    #[test]
    fn capsule() {
        let (c, _) = infer_x(&Net::capsule("x", "a")).unwrap();
        assert_eq!(c, ContextPair::new().sock("x", t("A")).plug("a", t("A")));
        assert_eq!(c.to_string(), "x : A |- a : A");
    }

    #[test]
    fn peirce() {
        let p = parse_xnet("exp(z; imp(exp(y; <y.d> ; h).a | a / [z] / w | <w.d>); d).g").unwrap();
        let (c, _) = infer_x(&p).unwrap();
        assert_eq!(c.to_string(), "|- g : ((A -> B) -> A) -> A");
        assert!(check_x(&p, &ContextPair::new().plug("g", t("((A -> B) -> A) -> A"))));
        assert!(check_x(&p, &ContextPair::new().plug("g", t("((P -> P) -> P) -> P"))));
        assert!(!check_x(&p, &ContextPair::new().plug("g", t("((A -> B) -> B) -> A"))));
    }

    #[test]
    fn cut_of_capsules() {
        let n = Net::cut(Net::capsule("x", "a"), "a", "y", Net::capsule("y", "b"));
        let (c, _) = infer_x(&n).unwrap();
        assert_eq!(c.to_string(), "x : A |- b : A");
    }

    #[test]
    fn checking_examples() {
        let c = Net::capsule("x", "a");
        assert!(check_x(&c, &ContextPair::new().sock("x", t("A -> B")).plug("a", t("A -> B"))));
        assert!(!check_x(&c, &ContextPair::new().sock("x", t("A")).plug("a", t("B"))));
        // weakening
        assert!(check_x(&c, &ContextPair::new().sock("x", t("A")).sock("q", t("B")).plug("a", t("A"))));
        // missing subject
        assert!(!check_x(&c, &ContextPair::new().sock("x", t("A"))));
    }

    #[test]
    fn untypeable_reports_constraint() {
        // y is used both as an arrow (import middle) and, via the capsule cut, at the type of its own result
        let n = parse_xnet("imp(<y.a> | a / [y] / x | <x.b>)").unwrap();
        let e = infer_x(&n).unwrap_err();
        assert!(matches!(e.reason, UnifyError::OccursCheck { .. }), "{}", e);
    }

    #[test]
    fn context_file_round_trip() {
        let ctx = ContextPair::new().sock("x", t("A -> B")).plug("a", t("A"));
        assert_eq!(parse_x_context(&ctx.to_file()).unwrap(), ctx);
    }
}
