//! Processes of the asynchronous pi-calculus with pairing.

mod cnf;
mod sim;
mod step;
mod text;

pub use cnf::{cnf, struct_eq};
pub use sim::{bounded_simulates, find_simulating, SimReport, Simulator, Verdict};
pub use step::{barbs, pi_step, weak_barb, Explorer};
pub use text::{parse_pi, reserved_word};

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write;
use std::sync::Arc;

use crate::symbol::{FreshSupply, Symbol};

pub type Name = Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Datum {
    Name(Name),
    Pair(Name, Name),
}

impl Datum {
    pub fn names(self) -> impl Iterator<Item = Name> {
        let (a, b) = match self {
            Datum::Name(a) => (a, None),
            Datum::Pair(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Proc {
    Nil,
    Par(Arc<Proc>, Arc<Proc>),
    Repl(Arc<Proc>),
    /// Restriction, binding the name in the body.
    New(Name, Arc<Proc>),
    /// `a(x).P`, binding `x`.
    In(Name, Name, Arc<Proc>),
    Out(Name, Datum),
    /// `let <x,y> = d in P`, binding `x` and `y`.
    Let(Name, Name, Datum, Arc<Proc>),
    /// `P[d/x]` where the substitution would put a pair in subject position
    /// or inside another pair. Binds `x` in `P`; never reduces, never
    /// shows a barb, and has no typing.
    Stuck(Name, Datum, Arc<Proc>),
}

fn n(s: &str) -> Name {
    Symbol::intern(s)
}

impl Proc {
    pub fn par(p: Proc, q: Proc) -> Proc {
        Proc::Par(Arc::new(p), Arc::new(q))
    }

    /// Right-nested parallel composition; `Nil` when empty.
    pub fn par_all(ps: Vec<Proc>) -> Proc {
        let mut it = ps.into_iter().rev();
        match it.next() {
            None => Proc::Nil,
            Some(last) => it.fold(last, |acc, p| Proc::par(p, acc)),
        }
    }

    pub fn repl(p: Proc) -> Proc {
        Proc::Repl(Arc::new(p))
    }

    pub fn new(x: &str, p: Proc) -> Proc {
        Proc::New(n(x), Arc::new(p))
    }

    pub fn input(a: &str, x: &str, p: Proc) -> Proc {
        Proc::In(n(a), n(x), Arc::new(p))
    }

    pub fn out(a: &str, b: &str) -> Proc {
        Proc::Out(n(a), Datum::Name(n(b)))
    }

    pub fn out_pair(a: &str, b: &str, c: &str) -> Proc {
        Proc::Out(n(a), Datum::Pair(n(b), n(c)))
    }

    pub fn let_(x: &str, y: &str, z: &str, p: Proc) -> Proc {
        Proc::Let(n(x), n(y), Datum::Name(n(z)), Arc::new(p))
    }

    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self {
            Proc::Nil | Proc::Out(..) => 1,
            Proc::Par(p, q) => 1 + p.size() + q.size(),
            Proc::Repl(p) | Proc::New(_, p) | Proc::In(_, _, p) | Proc::Let(_, _, _, p) | Proc::Stuck(_, _, p) => {
                1 + p.size()
            }
        }
    }

    pub fn has_free(&self, x: Name) -> bool {
        match self {
            Proc::Nil => false,
            Proc::Par(p, q) => p.has_free(x) || q.has_free(x),
            Proc::Repl(p) => p.has_free(x),
            Proc::New(b, p) => *b != x && p.has_free(x),
            Proc::In(a, b, p) => *a == x || (*b != x && p.has_free(x)),
            Proc::Out(a, d) => *a == x || d.names().any(|m| m == x),
            Proc::Let(y, z, d, p) => d.names().any(|m| m == x) || (*y != x && *z != x && p.has_free(x)),
            Proc::Stuck(v, d, p) => d.names().any(|m| m == x) || (*v != x && p.has_free(x)),
        }
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        let mut see = |x: Name, bound: &Vec<Name>| {
            if !bound.contains(&x) {
                out.insert(x);
            }
        };
        match self {
            Proc::Nil => {}
            Proc::Par(p, q) => {
                p.collect_free(bound, out);
                q.collect_free(bound, out);
            }
            Proc::Repl(p) => p.collect_free(bound, out),
            Proc::New(b, p) => {
                bound.push(*b);
                p.collect_free(bound, out);
                bound.pop();
            }
            Proc::In(a, b, p) => {
                see(*a, bound);
                bound.push(*b);
                p.collect_free(bound, out);
                bound.pop();
            }
            Proc::Out(a, d) => {
                see(*a, bound);
                for m in d.names() {
                    see(m, bound);
                }
            }
            Proc::Let(x, y, d, p) => {
                for m in d.names() {
                    see(m, bound);
                }
                bound.push(*x);
                bound.push(*y);
                p.collect_free(bound, out);
                bound.pop();
                bound.pop();
            }
            Proc::Stuck(v, d, p) => {
                for m in d.names() {
                    see(m, bound);
                }
                bound.push(*v);
                p.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn symbols(&self, out: &mut Vec<Name>) {
        match self {
            Proc::Nil => {}
            Proc::Par(p, q) => {
                p.symbols(out);
                q.symbols(out);
            }
            Proc::Repl(p) => p.symbols(out),
            Proc::New(b, p) => {
                out.push(*b);
                p.symbols(out);
            }
            Proc::In(a, b, p) => {
                out.extend([*a, *b]);
                p.symbols(out);
            }
            Proc::Out(a, d) => {
                out.push(*a);
                out.extend(d.names());
            }
            Proc::Let(x, y, d, p) => {
                out.extend([*x, *y]);
                out.extend(d.names());
                p.symbols(out);
            }
            Proc::Stuck(v, d, p) => {
                out.push(*v);
                out.extend(d.names());
                p.symbols(out);
            }
        }
    }

    pub fn all_symbols(&self) -> Vec<Name> {
        let mut v = Vec::new();
        self.symbols(&mut v);
        v
    }

    pub fn binders(&self, out: &mut Vec<Name>) {
        match self {
            Proc::Nil | Proc::Out(..) => {}
            Proc::Par(p, q) => {
                p.binders(out);
                q.binders(out);
            }
            Proc::Repl(p) => p.binders(out),
            Proc::New(b, p) | Proc::In(_, b, p) | Proc::Stuck(b, _, p) => {
                out.push(*b);
                p.binders(out);
            }
            Proc::Let(x, y, _, p) => {
                out.extend([*x, *y]);
                p.binders(out);
            }
        }
    }

    pub fn is_barendregt(&self) -> bool {
        let mut b = Vec::new();
        self.binders(&mut b);
        let k = b.len();
        b.sort();
        b.dedup();
        if b.len() != k {
            return false;
        }
        let free = self.free_names();
        b.iter().all(|x| !free.contains(x))
    }

    /// Rename every binder fresh. The supply is bumped past all suffixes.
    pub fn refresh(&self, supply: &mut FreshSupply) -> Proc {
        supply.bump_past(self.all_symbols());
        self.refresh_in(supply, &mut Vec::new())
    }

    pub fn refreshed(&self) -> Proc {
        self.refresh(&mut FreshSupply::new())
    }

    fn refresh_in(&self, supply: &mut FreshSupply, env: &mut Vec<(Name, Name)>) -> Proc {
        let look = |x: Name, env: &Vec<(Name, Name)>| env.iter().rev().find(|(o, _)| *o == x).map_or(x, |(_, m)| *m);
        let dat = |d: Datum, env: &Vec<(Name, Name)>| match d {
            Datum::Name(a) => Datum::Name(look(a, env)),
            Datum::Pair(a, b) => Datum::Pair(look(a, env), look(b, env)),
        };
        match self {
            Proc::Nil => Proc::Nil,
            Proc::Par(p, q) => Proc::Par(Arc::new(p.refresh_in(supply, env)), Arc::new(q.refresh_in(supply, env))),
            Proc::Repl(p) => Proc::Repl(Arc::new(p.refresh_in(supply, env))),
            Proc::New(b, p) => {
                let b2 = supply.fresh(*b);
                env.push((*b, b2));
                let p = p.refresh_in(supply, env);
                env.pop();
                Proc::New(b2, Arc::new(p))
            }
            Proc::In(a, b, p) => {
                let a = look(*a, env);
                let b2 = supply.fresh(*b);
                env.push((*b, b2));
                let p = p.refresh_in(supply, env);
                env.pop();
                Proc::In(a, b2, Arc::new(p))
            }
            Proc::Out(a, d) => Proc::Out(look(*a, env), dat(*d, env)),
            Proc::Let(x, y, d, p) => {
                let d = dat(*d, env);
                let (x2, y2) = (supply.fresh(*x), supply.fresh(*y));
                env.push((*x, x2));
                env.push((*y, y2));
                let p = p.refresh_in(supply, env);
                env.pop();
                env.pop();
                Proc::Let(x2, y2, d, Arc::new(p))
            }
            Proc::Stuck(v, d, p) => {
                let d = dat(*d, env);
                let v2 = supply.fresh(*v);
                env.push((*v, v2));
                let p = p.refresh_in(supply, env);
                env.pop();
                Proc::Stuck(v2, d, Arc::new(p))
            }
        }
    }

    /// Alpha-invariant key: bound names as de Bruijn indices.
    pub fn key(&self) -> String {
        let mut s = String::new();
        self.key_into(&mut Vec::new(), None, None, &mut s);
        s
    }

    /// As [`Proc::key`], but free names outside `visible` print as `*`.
    pub fn masked_key(&self, visible: &HashSet<Name>) -> String {
        let mut s = String::new();
        self.key_into(&mut Vec::new(), Some(visible), None, &mut s);
        s
    }

    /// As [`Proc::masked_key`], with `mark` printed as `@`.
    pub fn marked_key(&self, visible: &HashSet<Name>, mark: Name) -> String {
        let mut s = String::new();
        self.key_into(&mut Vec::new(), Some(visible), Some(mark), &mut s);
        s
    }

    fn key_into(&self, stack: &mut Vec<Name>, visible: Option<&HashSet<Name>>, mark: Option<Name>, s: &mut String) {
        let name = |x: Name, stack: &Vec<Name>, s: &mut String| match stack.iter().rev().position(|b| *b == x) {
            Some(i) => {
                let _ = write!(s, "#{}", i);
            }
            None if mark == Some(x) => s.push('@'),
            None if visible.is_some_and(|m| !m.contains(&x)) => s.push('*'),
            None => s.push_str(x.as_str()),
        };
        let datum = |d: Datum, stack: &Vec<Name>, s: &mut String| match d {
            Datum::Name(a) => name(a, stack, s),
            Datum::Pair(a, b) => {
                s.push('<');
                name(a, stack, s);
                s.push(',');
                name(b, stack, s);
                s.push('>');
            }
        };
        match self {
            Proc::Nil => s.push('0'),
            Proc::Par(p, q) => {
                s.push('(');
                p.key_into(stack, visible, mark, s);
                s.push('|');
                q.key_into(stack, visible, mark, s);
                s.push(')');
            }
            Proc::Repl(p) => {
                s.push('!');
                p.key_into(stack, visible, mark, s);
            }
            Proc::New(b, p) => {
                s.push_str("v.");
                stack.push(*b);
                p.key_into(stack, visible, mark, s);
                stack.pop();
            }
            Proc::In(a, b, p) => {
                name(*a, stack, s);
                s.push_str("().");
                stack.push(*b);
                p.key_into(stack, visible, mark, s);
                stack.pop();
            }
            Proc::Out(a, d) => {
                name(*a, stack, s);
                s.push('<');
                datum(*d, stack, s);
                s.push('>');
            }
            Proc::Let(x, y, d, p) => {
                s.push_str("let ");
                datum(*d, stack, s);
                s.push('.');
                stack.push(*x);
                stack.push(*y);
                p.key_into(stack, visible, mark, s);
                stack.pop();
                stack.pop();
            }
            Proc::Stuck(v, d, p) => {
                s.push_str("stuck ");
                datum(*d, stack, s);
                s.push('.');
                stack.push(*v);
                p.key_into(stack, visible, mark, s);
                stack.pop();
            }
        }
    }

    pub fn alpha_eq(&self, other: &Proc) -> bool {
        self.key() == other.key()
    }

    pub fn contains_stuck(&self) -> bool {
        match self {
            Proc::Nil | Proc::Out(..) => false,
            Proc::Stuck(..) => true,
            Proc::Par(p, q) => p.contains_stuck() || q.contains_stuck(),
            Proc::Repl(p) | Proc::New(_, p) | Proc::In(_, _, p) | Proc::Let(_, _, _, p) => p.contains_stuck(),
        }
    }
}

/// Capture-avoiding substitution of `d` for the free occurrences of `x`.
///
/// A pair landing in subject position or inside another pair freezes the
/// offending prefix as [`Proc::Stuck`].
pub fn subst_data(p: &Proc, x: Name, d: Datum) -> Proc {
    subst_many(p, &[(x, d)])
}

/// Simultaneous substitution.
pub fn subst_many(p: &Proc, map: &[(Name, Datum)]) -> Proc {
    if !map.iter().any(|(x, _)| p.has_free(*x)) {
        return p.clone();
    }
    let mut supply = FreshSupply::above(p.all_symbols().into_iter().chain(map.iter().flat_map(|(x, d)| {
        std::iter::once(*x).chain(d.names())
    })));
    let mut env: Vec<(Name, Option<Datum>)> = map.iter().map(|(x, d)| (*x, Some(*d))).collect();
    Subst { supply: &mut supply }.go(p, &mut env)
}

struct Subst<'a> {
    supply: &'a mut FreshSupply,
}

enum Look {
    Keep,
    To(Datum),
}

impl Subst<'_> {
    fn look(env: &[(Name, Option<Datum>)], x: Name) -> Look {
        match env.iter().rev().find(|(o, _)| *o == x) {
            Some((_, Some(d))) => Look::To(*d),
            _ => Look::Keep,
        }
    }

    /// Substitute a name that must stay a name; `Err` carries the pair.
    fn name(env: &[(Name, Option<Datum>)], x: Name) -> Result<Name, (Name, Datum)> {
        match Self::look(env, x) {
            Look::Keep => Ok(x),
            Look::To(Datum::Name(b)) => Ok(b),
            Look::To(d) => Err((x, d)),
        }
    }

    fn datum(env: &[(Name, Option<Datum>)], d: Datum) -> Result<Datum, (Name, Datum)> {
        match d {
            Datum::Name(a) => Ok(match Self::look(env, a) {
                Look::Keep => d,
                Look::To(e) => e,
            }),
            Datum::Pair(a, b) => Ok(Datum::Pair(Self::name(env, a)?, Self::name(env, b)?)),
        }
    }

    /// Enter a binder: shadow it, renaming it when it would capture a name
    /// of the substituted data.
    fn bind(&mut self, env: &mut Vec<(Name, Option<Datum>)>, b: Name) -> Name {
        let captures = env.iter().any(|(_, d)| d.is_some_and(|d| d.names().any(|m| m == b)));
        if captures {
            let b2 = self.supply.fresh(b);
            env.push((b, Some(Datum::Name(b2))));
            b2
        } else {
            env.push((b, None));
            b
        }
    }

    /// Freeze `p` with the pair binding for `x` left pending.
    fn stuck(&mut self, p: &Proc, env: &mut Vec<(Name, Option<Datum>)>, x: Name, d: Datum) -> Proc {
        env.push((x, None));
        let body = self.go(p, env);
        env.pop();
        Proc::Stuck(x, d, Arc::new(body))
    }

    fn go(&mut self, p: &Proc, env: &mut Vec<(Name, Option<Datum>)>) -> Proc {
        match p {
            Proc::Nil => Proc::Nil,
            Proc::Par(a, b) => Proc::Par(Arc::new(self.go(a, env)), Arc::new(self.go(b, env))),
            Proc::Repl(a) => Proc::Repl(Arc::new(self.go(a, env))),
            Proc::New(b, q) => {
                let b2 = self.bind(env, *b);
                let q = self.go(q, env);
                env.pop();
                Proc::New(b2, Arc::new(q))
            }
            Proc::In(a, b, q) => match Self::name(env, *a) {
                Err((x, d)) => self.stuck(p, env, x, d),
                Ok(a2) => {
                    let b2 = self.bind(env, *b);
                    let q = self.go(q, env);
                    env.pop();
                    Proc::In(a2, b2, Arc::new(q))
                }
            },
            Proc::Out(a, d) => match (Self::name(env, *a), Self::datum(env, *d)) {
                (Ok(a2), Ok(d2)) => Proc::Out(a2, d2),
                (Err((x, e)), _) | (_, Err((x, e))) => self.stuck(p, env, x, e),
            },
            Proc::Let(x, y, d, q) => match Self::datum(env, *d) {
                Err((v, e)) => self.stuck(p, env, v, e),
                Ok(d2) => {
                    let x2 = self.bind(env, *x);
                    let y2 = self.bind(env, *y);
                    let q = self.go(q, env);
                    env.pop();
                    env.pop();
                    Proc::Let(x2, y2, d2, Arc::new(q))
                }
            },
            Proc::Stuck(v, d, q) => {
                // Pending pair components must stay names.
                match Self::datum(env, *d) {
                    Err((w, e)) => self.stuck(p, env, w, e),
                    Ok(d2) => {
                        let v2 = self.bind(env, *v);
                        let q = self.go(q, env);
                        env.pop();
                        Proc::Stuck(v2, d2, Arc::new(q))
                    }
                }
            }
        }
    }
}

/// `a(o).b<o>` with `o` drawn from `supply`.
pub fn forwarder(a: Name, b: Name, supply: &mut FreshSupply) -> Proc {
    let o = supply.fresh_str("o");
    Proc::In(a, o, Arc::new(Proc::Out(b, Datum::Name(o))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Proc {
        parse_pi(s).unwrap()
    }

    #[test]
    fn free_names() {
        let q = p("new n. (n<a> | m(x). x<n>)");
        assert_eq!(q.free_names(), [n("a"), n("m")].into());
        assert!(q.has_free(n("m")));
        assert!(!q.has_free(n("n")));
        assert!(!q.has_free(n("x")));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(subst_data(&p("x<b>"), n("x"), Datum::Name(n("c"))), p("c<b>"));
        let l = subst_data(&p("let <u,v> = x in u<v>"), n("x"), Datum::Pair(n("a"), n("b")));
        assert_eq!(l, Proc::Let(n("u"), n("v"), Datum::Pair(n("a"), n("b")), Arc::new(p("u<v>"))));
        let s = subst_data(&p("x(z). z<q>"), n("x"), Datum::Pair(n("a"), n("b")));
        assert!(matches!(s, Proc::Stuck(..)));
        assert!(s.contains_stuck());
        assert_eq!(s.free_names(), [n("a"), n("b"), n("q")].into());
        // pair inside a pair
        let s = subst_data(&p("c<<x,y>>"), n("x"), Datum::Pair(n("a"), n("b")));
        assert!(matches!(s, Proc::Stuck(..)));
        // datum position takes the whole pair
        let s = subst_data(&p("c<x>"), n("x"), Datum::Pair(n("a"), n("b")));
        assert_eq!(s, p("c<<a,b>>"));
    }

    #[test]
    fn substitution_avoids_capture() {
        let q = subst_data(&p("new b. x<b>"), n("x"), Datum::Name(n("b")));
        let Proc::New(b2, body) = &q else { panic!() };
        assert_ne!(*b2, n("b"));
        assert_eq!(**body, Proc::Out(n("b"), Datum::Name(*b2)));
    }

    #[test]
    fn keys_are_alpha_invariant() {
        assert!(p("new a. a<b>").alpha_eq(&p("new c. c<b>")));
        assert!(!p("new a. a<b>").alpha_eq(&p("new c. c<d>")));
        let q = p("new n. a(x). (x<n> | !b(y). let <u,v> = y in u<v>)");
        assert!(q.alpha_eq(&q.refreshed()));
        assert!(q.refreshed().is_barendregt());
    }
}
