//! Brute-force one-step reduction for processes. The process is flattened
//! into a soup of threads under one block of restrictions; every
//! replication may release up to `budget` copies of its body, recursively;
//! and every output/input pair on a common channel fires, provided each
//! released copy contributes to the step. Results are compared up to
//! structural congruence through their normal-form keys.

use std::collections::BTreeSet;
use std::sync::Arc;

use seqpi::pi::{cnf, subst_data, subst_many, Datum, Name, Proc};
use seqpi::{FreshSupply, Symbol};

#[derive(Clone)]
struct Item {
    proc: Proc,
    copy: Option<usize>,
}

#[derive(Clone, Default)]
struct Soup {
    news: Vec<Name>,
    items: Vec<Item>,
    /// Parent of each released copy.
    copies: Vec<Option<usize>>,
}

fn flatten(p: &Proc, copy: Option<usize>, s: &mut FreshSupply, soup: &mut Soup) {
    match p {
        Proc::Nil => {}
        Proc::Par(a, b) => {
            flatten(a, copy, s, soup);
            flatten(b, copy, s, soup);
        }
        Proc::New(n, b) => {
            let m = s.fresh(*n);
            soup.news.push(m);
            flatten(&subst_data(b, *n, Datum::Name(m)), copy, s, soup);
        }
        Proc::Let(x, y, Datum::Pair(a, b), q) => {
            flatten(&subst_many(q, &[(*x, Datum::Name(*a)), (*y, Datum::Name(*b))]), copy, s, soup)
        }
        _ => soup.items.push(Item { proc: p.clone(), copy }),
    }
}

/// Every way of releasing copies from the replications of `soup`, starting
/// with item `from`.
fn expansions(soup: Soup, from: usize, budget: usize, s: &mut FreshSupply, out: &mut Vec<Soup>) {
    let Some(i) = (from..soup.items.len()).find(|&i| matches!(soup.items[i].proc, Proc::Repl(_))) else {
        out.push(soup);
        return;
    };
    let Proc::Repl(body) = soup.items[i].proc.clone() else { unreachable!() };
    let parent = soup.items[i].copy;
    let mut cur = soup;
    for k in 0..=budget {
        if k > 0 {
            let id = cur.copies.len();
            cur.copies.push(parent);
            let fresh = body.refresh(s);
            flatten(&fresh, Some(id), s, &mut cur);
        }
        expansions(cur.clone(), i + 1, budget, s, out);
    }
}

fn lineage(soup: &Soup, mut c: Option<usize>, used: &mut BTreeSet<usize>) {
    while let Some(k) = c {
        used.insert(k);
        c = soup.copies[k];
    }
}

fn all_used(soup: &Soup, participants: &[usize]) -> bool {
    let mut used = BTreeSet::new();
    for &i in participants {
        lineage(soup, soup.items[i].copy, &mut used);
    }
    used.len() == soup.copies.len()
}

fn rebuild(soup: &Soup, skip: &[usize], extra: Vec<Proc>) -> Proc {
    let mut threads: Vec<Proc> =
        soup.items.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, it)| it.proc.clone()).collect();
    threads.extend(extra);
    soup.news.iter().rev().fold(Proc::par_all(threads), |acc, n| Proc::New(*n, Arc::new(acc)))
}

fn raw_reducts(p: &Proc, budget: usize, s: &mut FreshSupply, out: &mut Vec<Proc>) {
    let mut base = Soup::default();
    flatten(p, None, s, &mut base);
    let mut soups = Vec::new();
    expansions(base, 0, budget, s, &mut soups);
    for soup in &soups {
        for (o, out_item) in soup.items.iter().enumerate() {
            let Proc::Out(a, d) = &out_item.proc else { continue };
            for (i, in_item) in soup.items.iter().enumerate() {
                let Proc::In(b, x, q) = &in_item.proc else { continue };
                if a == b && all_used(soup, &[o, i]) {
                    out.push(rebuild(soup, &[o, i], vec![subst_data(q, *x, *d)]));
                }
            }
        }
        for (t, item) in soup.items.iter().enumerate() {
            if !all_used(soup, &[t]) {
                continue;
            }
            let mut inner = Vec::new();
            match &item.proc {
                Proc::In(a, x, q) => {
                    raw_reducts(q, budget, s, &mut inner);
                    out.extend(inner.into_iter().map(|r| rebuild(soup, &[t], vec![Proc::In(*a, *x, Arc::new(r))])));
                }
                Proc::Let(x, y, d @ Datum::Name(_), q) => {
                    raw_reducts(q, budget, s, &mut inner);
                    out.extend(inner.into_iter().map(|r| rebuild(soup, &[t], vec![Proc::Let(*x, *y, *d, Arc::new(r))])));
                }
                _ => {}
            }
        }
    }
}

/// Normal-form keys of every one-step reduct.
pub fn reduct_keys(p: &Proc, budget: usize) -> BTreeSet<String> {
    let mut s = FreshSupply::above(p.all_symbols());
    let mut out = Vec::new();
    raw_reducts(p, budget, &mut s, &mut out);
    out.iter().map(|r| cnf(r).key()).collect()
}

/// Calls `f` on every process of exactly `size` constructors whose free
/// names are among `free`. Binders get names by nesting depth; subjects,
/// objects and pair components range over the `cap` innermost names in
/// scope.
pub struct Procs {
    pub cap: usize,
}

impl Procs {
    pub fn each(&self, size: usize, scope: &mut Vec<Name>, f: &mut dyn FnMut(Proc)) {
        let usable: Vec<Name> = scope[scope.len().saturating_sub(self.cap)..].to_vec();
        if size == 1 {
            f(Proc::Nil);
            for &a in &usable {
                for &b in &usable {
                    f(Proc::Out(a, Datum::Name(b)));
                    for &c in &usable {
                        f(Proc::Out(a, Datum::Pair(b, c)));
                    }
                }
            }
            return;
        }
        let d = scope.len();
        let fresh = |stem: &str| Symbol::intern(&format!("{}{}", stem, d));
        let (n, x, y) = (fresh("n"), fresh("x"), fresh("y"));
        self.each(size - 1, scope, &mut |p| f(Proc::repl(p)));
        scope.push(n);
        self.each(size - 1, scope, &mut |p| f(Proc::New(n, Arc::new(p))));
        scope.pop();
        scope.push(x);
        for &a in &usable {
            self.each(size - 1, scope, &mut |p| f(Proc::In(a, x, Arc::new(p))));
        }
        scope.pop();
        scope.extend([x, y]);
        for &z in &usable {
            self.each(size - 1, scope, &mut |p| f(Proc::Let(x, y, Datum::Name(z), Arc::new(p))));
        }
        scope.truncate(d);
        for l in 1..size - 1 {
            let mut lefts = Vec::new();
            self.each(l, scope, &mut |p| lefts.push(p));
            for left in &lefts {
                self.each(size - 1 - l, scope, &mut |right| f(Proc::par(left.clone(), right)));
            }
        }
    }
}
