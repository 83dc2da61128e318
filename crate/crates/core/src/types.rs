//! Simple implicative types, substitutions and first-order unification.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::lex::{ParseError, Parser, Tok};
use crate::symbol::Symbol;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    Var(Symbol),
    Arrow(Arc<SimpleType>, Arc<SimpleType>),
}

impl SimpleType {
    pub fn var(name: &str) -> SimpleType {
        SimpleType::Var(Symbol::intern(name))
    }

    pub fn arrow(a: SimpleType, b: SimpleType) -> SimpleType {
        SimpleType::Arrow(Arc::new(a), Arc::new(b))
    }

    pub fn occurs(&self, v: Symbol) -> bool {
        match self {
            SimpleType::Var(w) => *w == v,
            SimpleType::Arrow(a, b) => a.occurs(v) || b.occurs(v),
        }
    }

    pub fn vars_in_order(&self, out: &mut Vec<Symbol>) {
        match self {
            SimpleType::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            SimpleType::Arrow(a, b) => {
                a.vars_in_order(out);
                b.vars_in_order(out);
            }
        }
    }

    pub fn rename_vars(&self, map: &HashMap<Symbol, Symbol>) -> SimpleType {
        match self {
            SimpleType::Var(v) => SimpleType::Var(*map.get(v).unwrap_or(v)),
            SimpleType::Arrow(a, b) => SimpleType::arrow(a.rename_vars(map), b.rename_vars(map)),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Var(v) => write!(f, "{}", v),
            SimpleType::Arrow(a, b) => match &**a {
                SimpleType::Arrow(..) => write!(f, "({}) -> {}", a, b),
                SimpleType::Var(_) => write!(f, "{} -> {}", a, b),
            },
        }
    }
}

impl fmt::Debug for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub fn parse_type(src: &str) -> Result<SimpleType, ParseError> {
    let mut p = Parser::new(src)?;
    let t = type_expr(&mut p)?;
    p.expect_end()?;
    Ok(t)
}

pub(crate) fn type_expr(p: &mut Parser) -> Result<SimpleType, ParseError> {
    let left = if p.eat_sym("(") {
        let t = type_expr(p)?;
        p.expect_sym(")")?;
        t
    } else {
        SimpleType::Var(Symbol::intern(&p.ident("a type")?))
    };
    if p.eat_sym("->") {
        Ok(SimpleType::arrow(left, type_expr(p)?))
    } else {
        Ok(left)
    }
}

/// Variable names `A`, `B`, ..., `Z`, `A1`, ... in order.
pub fn pretty_var(k: usize) -> Symbol {
    let letter = (b'A' + (k % 26) as u8) as char;
    if k < 26 {
        Symbol::intern(&letter.to_string())
    } else {
        Symbol::intern(&format!("{}{}", letter, k / 26))
    }
}

/// Renaming of the variables of `types` to `A`, `B`, ... by first appearance.
pub fn pretty_renaming<'a>(types: impl IntoIterator<Item = &'a SimpleType>) -> HashMap<Symbol, Symbol> {
    let mut order = Vec::new();
    for t in types {
        t.vars_in_order(&mut order);
    }
    order.into_iter().enumerate().map(|(i, v)| (v, pretty_var(i))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UnifyError {
    #[error("occurs check: {var} occurs in {ty}")]
    OccursCheck { var: Symbol, ty: SimpleType },
    #[error("cannot unify {left} with {right}")]
    Clash { left: SimpleType, right: SimpleType },
}

/// An idempotent substitution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub map: BTreeMap<Symbol, SimpleType>,
}

impl Substitution {
    pub fn identity() -> Substitution {
        Substitution::default()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, t: &SimpleType) -> SimpleType {
        match t {
            SimpleType::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            SimpleType::Arrow(a, b) => SimpleType::arrow(self.apply(a), self.apply(b)),
        }
    }

    /// `self` after `first`: applying the result equals applying `first` then `self`.
    pub fn compose(&self, first: &Substitution) -> Substitution {
        let mut map: BTreeMap<Symbol, SimpleType> = first.map.iter().map(|(v, t)| (*v, self.apply(t))).collect();
        for (v, t) in &self.map {
            map.entry(*v).or_insert_with(|| t.clone());
        }
        map.retain(|v, t| *t != SimpleType::Var(*v));
        Substitution { map }
    }
}

/// Most general unifier of two types; every variable is flexible.
pub fn unify(a: &SimpleType, b: &SimpleType) -> Result<Substitution, UnifyError> {
    let mut u = Unifier::flexible();
    u.unify(a, b)?;
    Ok(u.substitution())
}

/// Incremental unifier with triangular bindings.
///
/// In rigid mode only metavariables (created by [`Unifier::fresh`]) can be
/// bound; the other variables behave as constants.
#[derive(Clone, Debug)]
pub struct Unifier {
    bind: HashMap<Symbol, SimpleType>,
    next: usize,
    rigid: bool,
}

pub fn is_meta(v: Symbol) -> bool {
    v.as_str().starts_with('?')
}

impl Unifier {
    pub fn flexible() -> Unifier {
        Unifier { bind: HashMap::new(), next: 0, rigid: false }
    }

    pub fn rigid() -> Unifier {
        Unifier { bind: HashMap::new(), next: 0, rigid: true }
    }

    pub fn fresh(&mut self) -> SimpleType {
        self.next += 1;
        SimpleType::Var(Symbol::intern(&format!("?{}", self.next)))
    }

    fn bindable(&self, v: Symbol) -> bool {
        !self.rigid || is_meta(v)
    }

    fn shallow(&self, t: &SimpleType) -> SimpleType {
        let mut t = t.clone();
        while let SimpleType::Var(v) = &t {
            match self.bind.get(v) {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    }

    pub fn zonk(&self, t: &SimpleType) -> SimpleType {
        match self.shallow(t) {
            SimpleType::Arrow(a, b) => SimpleType::arrow(self.zonk(&a), self.zonk(&b)),
            v => v,
        }
    }

    fn occurs(&self, v: Symbol, t: &SimpleType) -> bool {
        match self.shallow(t) {
            SimpleType::Var(w) => w == v,
            SimpleType::Arrow(a, b) => self.occurs(v, &a) || self.occurs(v, &b),
        }
    }

    pub fn unify(&mut self, a: &SimpleType, b: &SimpleType) -> Result<(), UnifyError> {
        let (a, b) = (self.shallow(a), self.shallow(b));
        match (&a, &b) {
            (SimpleType::Var(v), SimpleType::Var(w)) if v == w => Ok(()),
            (SimpleType::Var(v), _) if self.bindable(*v) => self.bind_var(*v, &b),
            (_, SimpleType::Var(w)) if self.bindable(*w) => self.bind_var(*w, &a),
            (SimpleType::Arrow(a1, a2), SimpleType::Arrow(b1, b2)) => {
                self.unify(a1, b1)?;
                self.unify(a2, b2)
            }
            _ => Err(UnifyError::Clash { left: self.zonk(&a), right: self.zonk(&b) }),
        }
    }

    fn bind_var(&mut self, v: Symbol, t: &SimpleType) -> Result<(), UnifyError> {
        if self.occurs(v, t) {
            return Err(UnifyError::OccursCheck { var: v, ty: self.zonk(t) });
        }
        self.bind.insert(v, t.clone());
        Ok(())
    }

    pub fn substitution(&self) -> Substitution {
        let map = self.bind.keys().map(|v| (*v, self.zonk(&SimpleType::Var(*v)))).collect();
        Substitution { map }
    }
}

/// One-way matching: extend `sigma` so that `sigma(pattern) == target`.
pub fn match_into(pattern: &SimpleType, target: &SimpleType, sigma: &mut HashMap<Symbol, SimpleType>) -> bool {
    match (pattern, target) {
        (SimpleType::Var(v), _) => match sigma.get(v) {
            Some(t) => t == target,
            None => {
                sigma.insert(*v, target.clone());
                true
            }
        },
        (SimpleType::Arrow(a, b), SimpleType::Arrow(c, d)) => match_into(a, c, sigma) && match_into(b, d, sigma),
        _ => false,
    }
}

/// Entries of a context file: `<keyword> <name> : <type>` per line, `//`
/// comments allowed. `keywords` are the two accepted line keywords.
pub fn parse_context_entries(src: &str, keywords: [&str; 2]) -> Result<Vec<(usize, Symbol, SimpleType)>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut out: Vec<(usize, Symbol, SimpleType)> = Vec::new();
    while !p.at_end() {
        let at = p.here();
        let side = match p.peek() {
            Some(Tok::Ident(w)) if w == keywords[0] => 0,
            Some(Tok::Ident(w)) if w == keywords[1] => 1,
            _ => return p.error(format!("expected `{}` or `{}`", keywords[0], keywords[1])),
        };
        p.bump();
        let name = Symbol::intern(&p.ident("a name")?);
        p.expect_sym(":")?;
        let ty = type_expr(&mut p)?;
        if let Some((_, _, old)) = out.iter().find(|(s, n, _)| *s == side && *n == name) {
            if *old != ty {
                return p.error_at(at, format!("`{}` declared twice with different types", name));
            }
            continue;
        }
        out.push((side, name, ty));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SimpleType {
        parse_type(s).unwrap()
    }

    #[test]
    fn printing_is_right_associative() {
        assert_eq!(t("((A -> B) -> A) -> A").to_string(), "((A -> B) -> A) -> A");
        assert_eq!(t("A -> (B -> C)").to_string(), "A -> B -> C");
        assert_eq!(t("A -> B -> C"), t("A -> (B -> C)"));
    }

    #[test]
    fn unification_examples() {
        assert!(unify(&t("p1"), &t("p1")).unwrap().is_identity());
        let s = unify(&t("p1 -> p2"), &t("p3")).unwrap();
        assert_eq!(s.apply(&t("p3")), t("p1 -> p2"));
        assert!(matches!(unify(&t("p1"), &t("p1 -> p2")), Err(UnifyError::OccursCheck { .. })));
    }

    #[test]
    fn rigid_variables_clash() {
        let mut u = Unifier::rigid();
        assert!(u.unify(&t("A"), &t("B")).is_err());
        let m = u.fresh();
        u.unify(&m, &t("A -> B")).unwrap();
        assert_eq!(u.zonk(&m), t("A -> B"));
        assert!(u.unify(&m, &t("A")).is_err());
    }

    #[test]
    fn composition() {
        let s1 = unify(&t("a"), &t("b -> c")).unwrap();
        let s2 = unify(&t("b"), &t("d")).unwrap();
        let c = s2.compose(&s1);
        let ty = t("a -> b");
        assert_eq!(c.apply(&ty), s2.apply(&s1.apply(&ty)));
    }

    #[test]
    fn matching() {
        let mut s = HashMap::new();
        assert!(match_into(&t("X -> X"), &t("A -> A"), &mut s));
        let mut s = HashMap::new();
        assert!(!match_into(&t("X -> X"), &t("A -> B"), &mut s));
    }

    #[test]
    fn context_lines() {
        let e = parse_context_entries("// iface\nsock x : A -> B\nplug a : A\n", ["sock", "plug"]).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].0, 0);
        assert!(parse_context_entries("sock x : A\nsock x : B", ["sock", "plug"]).is_err());
        assert!(parse_context_entries("in x : A", ["sock", "plug"]).is_err());
    }
}
