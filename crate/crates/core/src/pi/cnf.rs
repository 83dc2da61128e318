//! Congruence normal form.
//!
//! Parallel soups are flattened and sorted, `0` components dropped,
//! restrictions pushed to the smallest scope containing every component that
//! mentions them, and `let` on a literal pair eliminated. Replication is
//! never unfolded.

use std::collections::HashSet;
use std::sync::Arc;

use super::{subst_many, Datum, Name, Proc};
use crate::symbol::FreshSupply;

pub fn cnf(p: &Proc) -> Proc {
    let fresh = p.refresh(&mut FreshSupply::new());
    let free: HashSet<Name> = fresh.free_names().into_iter().collect();
    Norm { free }.norm(&fresh)
}

pub fn struct_eq(p: &Proc, q: &Proc) -> bool {
    cnf(p).key() == cnf(q).key()
}

struct Norm {
    free: HashSet<Name>,
}

struct Comp {
    proc: Proc,
    /// Soup binders mentioned by this component.
    uses: Vec<Name>,
}

impl Norm {
    fn norm(&self, p: &Proc) -> Proc {
        match p {
            Proc::Nil | Proc::Out(..) => p.clone(),
            Proc::In(a, x, b) => Proc::In(*a, *x, Arc::new(self.norm(b))),
            Proc::Repl(b) => Proc::Repl(Arc::new(self.norm(b))),
            Proc::Let(x, y, Datum::Pair(a, b), body) => {
                self.norm(&subst_many(body, &[(*x, Datum::Name(*a)), (*y, Datum::Name(*b))]))
            }
            Proc::Let(x, y, d, b) => Proc::Let(*x, *y, *d, Arc::new(self.norm(b))),
            Proc::Stuck(v, d, b) => Proc::Stuck(*v, *d, Arc::new(self.norm(b))),
            Proc::Par(..) | Proc::New(..) => {
                let (mut binders, mut comps) = (Vec::new(), Vec::new());
                self.collect(p, &mut binders, &mut comps);
                self.place(binders, comps)
            }
        }
    }

    fn collect(&self, p: &Proc, binders: &mut Vec<Name>, comps: &mut Vec<Proc>) {
        match p {
            Proc::Nil => {}
            Proc::Par(a, b) => {
                self.collect(a, binders, comps);
                self.collect(b, binders, comps);
            }
            Proc::New(n, b) => {
                binders.push(*n);
                self.collect(b, binders, comps);
            }
            _ => match self.norm(p) {
                q @ (Proc::Nil | Proc::Par(..) | Proc::New(..)) => self.collect_normal(&q, binders, comps),
                q => comps.push(q),
            },
        }
    }

    /// Like `collect` on an already normal process.
    fn collect_normal(&self, p: &Proc, binders: &mut Vec<Name>, comps: &mut Vec<Proc>) {
        match p {
            Proc::Nil => {}
            Proc::Par(a, b) => {
                self.collect_normal(a, binders, comps);
                self.collect_normal(b, binders, comps);
            }
            Proc::New(n, b) => {
                binders.push(*n);
                self.collect_normal(b, binders, comps);
            }
            q => comps.push(q.clone()),
        }
    }

    /// Wrap the components with the binders, each at its smallest scope.
    fn place(&self, binders: Vec<Name>, comps: Vec<Proc>) -> Proc {
        let comps: Vec<Comp> = comps
            .into_iter()
            .map(|proc| {
                let uses = binders.iter().copied().filter(|b| proc.has_free(*b)).collect();
                Comp { proc, uses }
            })
            .collect();
        let mut parts = self.group(comps);
        let keyed: Vec<(String, String, Proc)> = parts
            .drain(..)
            .map(|p| (p.masked_key(&self.free), p.to_string(), p))
            .collect();
        let mut keyed = keyed;
        keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        Proc::par_all(keyed.into_iter().map(|k| k.2).collect())
    }

    /// Split components into groups connected by shared binders and close
    /// each group under its binders.
    fn group(&self, comps: Vec<Comp>) -> Vec<Proc> {
        let k = comps.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        for i in 0..k {
            for j in i + 1..k {
                if comps[i].uses.iter().any(|b| comps[j].uses.contains(b)) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut groups: Vec<Vec<Comp>> = Vec::new();
        let mut root_of: Vec<(usize, usize)> = Vec::new();
        for (i, c) in comps.into_iter().enumerate() {
            let r = find(&mut parent, i);
            match root_of.iter().find(|(rr, _)| *rr == r) {
                Some(&(_, g)) => groups[g].push(c),
                None => {
                    root_of.push((r, groups.len()));
                    groups.push(vec![c]);
                }
            }
        }
        groups.into_iter().map(|g| self.close(g)).collect()
    }

    /// A connected group: pick the outermost binder, recurse on the rest.
    fn close(&self, mut group: Vec<Comp>) -> Proc {
        let mut candidates: Vec<Name> = Vec::new();
        for c in &group {
            for b in &c.uses {
                if !candidates.contains(b) {
                    candidates.push(*b);
                }
            }
        }
        if candidates.is_empty() {
            debug_assert_eq!(group.len(), 1);
            return group.pop().map(|c| c.proc).unwrap_or(Proc::Nil);
        }
        let outer = self.pick_outer(&group, &candidates);
        for c in &mut group {
            c.uses.retain(|b| *b != outer);
        }
        let inner = self.group(group);
        let mut keyed: Vec<(String, String, Proc)> =
            inner.into_iter().map(|p| (p.masked_key(&self.free), p.to_string(), p)).collect();
        keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        Proc::New(outer, Arc::new(Proc::par_all(keyed.into_iter().map(|k| k.2).collect())))
    }

    /// Most widely used binder; ties broken by how the binder is used,
    /// independently of its spelling where possible.
    fn pick_outer(&self, group: &[Comp], candidates: &[Name]) -> Name {
        let mut best: Option<(std::cmp::Reverse<usize>, Vec<String>, Name)> = None;
        for &b in candidates {
            let using: Vec<&Comp> = group.iter().filter(|c| c.uses.contains(&b)).collect();
            let mut sig: Vec<String> = using.iter().map(|c| c.proc.marked_key(&self.free, b)).collect();
            sig.sort();
            let key = (std::cmp::Reverse(using.len()), sig, b);
            if best.as_ref().is_none_or(|bk| key < *bk) {
                best = Some(key);
            }
        }
        best.map(|b| b.2).expect("candidates is non-empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::parse_pi;

    fn p(s: &str) -> Proc {
        parse_pi(s).unwrap()
    }

    #[test]
    fn examples() {
        assert!(cnf(&p("0 | a<b>")).alpha_eq(&p("a<b>")));
        assert_eq!(cnf(&p("new n. 0")), Proc::Nil);
        let q = cnf(&p("new n. (m<b> | n(x). x<b>)"));
        assert!(q.alpha_eq(&p("m<b> | new n. n(x). x<b>")), "{}", q);
    }

    #[test]
    fn struct_eq_examples() {
        assert!(struct_eq(&p("a<b> | c<d>"), &p("c<d> | a<b>")));
        assert!(!struct_eq(&p("!a<b>"), &p("a<b> | !a<b>")));
        assert!(struct_eq(&p("new m. new n. (m<n> | n<m>)"), &p("new n. new m. (m<n> | n<m>)")));
        assert!(struct_eq(&p("let <x,y> = <a,b> in x<y>"), &p("a<b>")));
        assert!(struct_eq(&p("(a<b> | 0) | (c<d> | e<f>)"), &p("e<f> | (c<d> | a<b>)")));
    }

    #[test]
    fn restrictions_scope_minimally() {
        let q = cnf(&p("new a. new b. (a<c> | b<c> | a(x). 0)"));
        assert!(struct_eq(&q, &p("new b. b<c> | new a. (a(x). 0 | a<c>)")), "{}", q);
        assert!(q.alpha_eq(&p("new b. b<c> | new a. (a(x). 0 | a<c>)")), "{}", q);
    }

    #[test]
    fn idempotent_on_samples() {
        for s in [
            "new a. (a<b> | new c. (c<a> | c(x). x<a>))",
            "!(new a. a<b>) | new c. c(y). let <u,v> = y in u<v>",
            "new a. new b. (a<b> | b<a>)",
        ] {
            let once = cnf(&p(s));
            assert_eq!(cnf(&once).key(), once.key(), "{}", s);
        }
    }
}
