//! One-step reduction with bounded replication unfolding, barbs and the
//! cached state-space explorer.
//!
//! A redex is a pair of occurrences (an output and an input on the same
//! channel) reached from the top of a soup through `|`, `new` and `!`.
//! Crossing a `!` means unfolding one copy of its body next to it; two
//! occurrences under the same `!` may sit in one copy or in two. Only copies
//! that contain a participant are ever created. Reduction also proceeds under
//! input prefixes and `let` bodies (non-blocking input).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use indexmap::IndexMap;

use super::{cnf, subst_data, Datum, Name, Proc};
use crate::symbol::FreshSupply;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    L,
    R,
    New,
    Repl,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Out,
    In,
    Let,
}

fn occurrences(p: &Proc, path: &mut Vec<Step>, out: &mut Vec<(Vec<Step>, Kind)>) {
    match p {
        Proc::Par(a, b) => {
            path.push(Step::L);
            occurrences(a, path, out);
            path.pop();
            path.push(Step::R);
            occurrences(b, path, out);
            path.pop();
        }
        Proc::New(_, b) => {
            path.push(Step::New);
            occurrences(b, path, out);
            path.pop();
        }
        Proc::Repl(b) => {
            path.push(Step::Repl);
            occurrences(b, path, out);
            path.pop();
        }
        Proc::Out(..) => out.push((path.clone(), Kind::Out)),
        Proc::In(..) => out.push((path.clone(), Kind::In)),
        Proc::Let(_, _, Datum::Name(_), _) => out.push((path.clone(), Kind::Let)),
        Proc::Let(..) | Proc::Nil | Proc::Stuck(..) => {}
    }
}

fn node_at<'a>(p: &'a Proc, path: &[Step]) -> &'a Proc {
    match (p, path.split_first()) {
        (_, None) => p,
        (Proc::Par(a, _), Some((Step::L, rest))) => node_at(a, rest),
        (Proc::Par(_, b), Some((Step::R, rest))) => node_at(b, rest),
        (Proc::New(_, b), Some((Step::New, rest))) | (Proc::Repl(b), Some((Step::Repl, rest))) => node_at(b, rest),
        _ => panic!("path does not match process"),
    }
}

fn replace_at(p: &Proc, path: &[Step], new: Proc) -> Proc {
    match (p, path.split_first()) {
        (_, None) => new,
        (Proc::Par(a, b), Some((Step::L, rest))) => Proc::Par(Arc::new(replace_at(a, rest, new)), b.clone()),
        (Proc::Par(a, b), Some((Step::R, rest))) => Proc::Par(a.clone(), Arc::new(replace_at(b, rest, new))),
        (Proc::New(n, b), Some((Step::New, rest))) => Proc::New(*n, Arc::new(replace_at(b, rest, new))),
        _ => panic!("path does not match materialized process"),
    }
}

fn crossings(path: &[Step]) -> usize {
    path.iter().filter(|s| **s == Step::Repl).count()
}

/// Unfold the replications along one path; returns the new term and the
/// translated path, which no longer crosses any `!`.
fn unfold1(p: &Proc, path: &[Step], supply: &mut FreshSupply) -> (Proc, Vec<Step>) {
    let Some((step, rest)) = path.split_first() else { return (p.clone(), vec![]) };
    match (p, step) {
        (Proc::Par(a, b), Step::L) => {
            let (m, r) = unfold1(a, rest, supply);
            (Proc::Par(Arc::new(m), b.clone()), prefixed(&[Step::L], r))
        }
        (Proc::Par(a, b), Step::R) => {
            let (m, r) = unfold1(b, rest, supply);
            (Proc::Par(a.clone(), Arc::new(m)), prefixed(&[Step::R], r))
        }
        (Proc::New(n, b), Step::New) => {
            let (m, r) = unfold1(b, rest, supply);
            (Proc::New(*n, Arc::new(m)), prefixed(&[Step::New], r))
        }
        (Proc::Repl(b), Step::Repl) => {
            let copy = b.refresh(supply);
            let (m, r) = unfold1(&copy, rest, supply);
            (Proc::Par(Arc::new(m), Arc::new(p.clone())), prefixed(&[Step::L], r))
        }
        _ => panic!("path does not match process"),
    }
}

fn prefixed(pre: &[Step], rest: Vec<Step>) -> Vec<Step> {
    let mut v = pre.to_vec();
    v.extend(rest);
    v
}

/// Unfold along two paths. `split` is the index (into the shared prefix) of
/// the `!` at which the two occurrences go to separate copies.
fn unfold2(
    p: &Proc,
    po: &[Step],
    pi: &[Step],
    split: Option<usize>,
    depth: usize,
    supply: &mut FreshSupply,
) -> (Proc, Vec<Step>, Vec<Step>) {
    let (so, ro) = po.split_first().expect("output path ends inside the soup");
    let (si, ri) = pi.split_first().expect("input path ends inside the soup");
    if so != si {
        // Diverging at a parallel composition.
        let Proc::Par(a, b) = p else { panic!("paths diverge outside a parallel composition") };
        let (a2, b2, po2, pi2) = if *so == Step::L {
            let (ma, ra) = unfold1(a, ro, supply);
            let (mb, rb) = unfold1(b, ri, supply);
            (ma, mb, prefixed(&[Step::L], ra), prefixed(&[Step::R], rb))
        } else {
            let (ma, ra) = unfold1(a, ri, supply);
            let (mb, rb) = unfold1(b, ro, supply);
            (ma, mb, prefixed(&[Step::R], rb), prefixed(&[Step::L], ra))
        };
        return (Proc::Par(Arc::new(a2), Arc::new(b2)), po2, pi2);
    }
    match (p, so) {
        (Proc::Par(a, b), Step::L) => {
            let (m, x, y) = unfold2(a, ro, ri, split, depth + 1, supply);
            (Proc::Par(Arc::new(m), b.clone()), prefixed(&[Step::L], x), prefixed(&[Step::L], y))
        }
        (Proc::Par(a, b), Step::R) => {
            let (m, x, y) = unfold2(b, ro, ri, split, depth + 1, supply);
            (Proc::Par(a.clone(), Arc::new(m)), prefixed(&[Step::R], x), prefixed(&[Step::R], y))
        }
        (Proc::New(n, b), Step::New) => {
            let (m, x, y) = unfold2(b, ro, ri, split, depth + 1, supply);
            (Proc::New(*n, Arc::new(m)), prefixed(&[Step::New], x), prefixed(&[Step::New], y))
        }
        (Proc::Repl(b), Step::Repl) if split == Some(depth) => {
            let c1 = b.refresh(supply);
            let c2 = b.refresh(supply);
            let (m1, x) = unfold1(&c1, ro, supply);
            let (m2, y) = unfold1(&c2, ri, supply);
            let rest = Proc::Par(Arc::new(m2), Arc::new(p.clone()));
            (Proc::Par(Arc::new(m1), Arc::new(rest)), prefixed(&[Step::L], x), prefixed(&[Step::R, Step::L], y))
        }
        (Proc::Repl(b), Step::Repl) => {
            let c = b.refresh(supply);
            let (m, x, y) = unfold2(&c, ro, ri, split, depth + 1, supply);
            (Proc::Par(Arc::new(m), Arc::new(p.clone())), prefixed(&[Step::L], x), prefixed(&[Step::L], y))
        }
        _ => panic!("path does not match process"),
    }
}

/// Synchronise the output at `po` with the input at `pi` in a term whose
/// paths cross no `!`. Every restriction on either path is extruded to the
/// top of the soup.
fn synchronise(m: &Proc, po: &[Step], pi: &[Step]) -> Option<Proc> {
    let Proc::Out(a, d) = node_at(m, po) else { return None };
    let Proc::In(b, x, q) = node_at(m, pi) else { return None };
    if a != b {
        return None;
    }
    let reduct = subst_data(q, *x, *d);
    let mut news = Vec::new();
    let body = rewrite2(m, po, pi, &reduct, &mut news);
    Some(news.into_iter().rev().fold(body, |acc, n| Proc::New(n, Arc::new(acc))))
}

fn rewrite2(p: &Proc, po: &[Step], pi: &[Step], reduct: &Proc, news: &mut Vec<Name>) -> Proc {
    let (so, ro) = po.split_first().expect("paths end at distinct leaves");
    let (si, ri) = pi.split_first().expect("paths end at distinct leaves");
    match (p, so == si) {
        (Proc::New(n, b), true) => {
            news.push(*n);
            rewrite2(b, ro, ri, reduct, news)
        }
        (Proc::Par(a, b), true) if *so == Step::L => Proc::Par(Arc::new(rewrite2(a, ro, ri, reduct, news)), b.clone()),
        (Proc::Par(a, b), true) => Proc::Par(a.clone(), Arc::new(rewrite2(b, ro, ri, reduct, news))),
        (Proc::Par(a, b), false) => {
            if *so == Step::L {
                let l = rewrite1(a, ro, &Proc::Nil, news);
                let r = rewrite1(b, ri, reduct, news);
                Proc::Par(Arc::new(l), Arc::new(r))
            } else {
                let l = rewrite1(a, ri, reduct, news);
                let r = rewrite1(b, ro, &Proc::Nil, news);
                Proc::Par(Arc::new(l), Arc::new(r))
            }
        }
        _ => panic!("path does not match materialized process"),
    }
}

fn rewrite1(p: &Proc, path: &[Step], leaf: &Proc, news: &mut Vec<Name>) -> Proc {
    match (p, path.split_first()) {
        (_, None) => leaf.clone(),
        (Proc::New(n, b), Some((Step::New, rest))) => {
            news.push(*n);
            rewrite1(b, rest, leaf, news)
        }
        (Proc::Par(a, b), Some((Step::L, rest))) => Proc::Par(Arc::new(rewrite1(a, rest, leaf, news)), b.clone()),
        (Proc::Par(a, b), Some((Step::R, rest))) => Proc::Par(a.clone(), Arc::new(rewrite1(b, rest, leaf, news))),
        _ => panic!("path does not match materialized process"),
    }
}

fn channel(p: &Proc) -> Option<Name> {
    match p {
        Proc::Out(a, _) | Proc::In(a, _, _) => Some(*a),
        _ => None,
    }
}

/// Is `a` bound by a restriction or input strictly inside the shared part
/// of the two paths' replicated scope? Used only to skip hopeless plans.
fn may_match(p: &Proc, po: &[Step], pi: &[Step]) -> bool {
    channel(node_at(p, po)) == channel(node_at(p, pi))
}

/// All one-step reducts of a Barendregt soup, not normalised.
fn reducts(p: &Proc, budget: usize, supply: &mut FreshSupply, out: &mut Vec<Proc>) {
    let mut occs = Vec::new();
    occurrences(p, &mut Vec::new(), &mut occs);
    for (po, ko) in &occs {
        if *ko != Kind::Out {
            continue;
        }
        for (pi, ki) in &occs {
            if *ki != Kind::In || !may_match(p, po, pi) {
                continue;
            }
            let shared = po.iter().zip(pi.iter()).take_while(|(a, b)| a == b).count();
            let total = crossings(po) + crossings(pi) - crossings(&po[..shared]);
            if total > 0 && budget == 0 {
                continue;
            }
            let mut plans = vec![None];
            if budget >= 2 {
                plans.extend((0..shared).filter(|&j| po[j] == Step::Repl).map(Some));
            }
            for split in plans {
                let (m, po2, pi2) = unfold2(p, po, pi, split, 0, supply);
                if let Some(r) = synchronise(&m, &po2, &pi2) {
                    out.push(r);
                }
            }
        }
    }
    for (path, kind) in &occs {
        if *kind == Kind::Out || (crossings(path) > 0 && budget == 0) {
            continue;
        }
        let (m, path2) = unfold1(p, path, supply);
        let mut inner = Vec::new();
        match node_at(&m, &path2) {
            Proc::In(a, x, q) => {
                reducts(q, budget, supply, &mut inner);
                for r in inner {
                    out.push(replace_at(&m, &path2, Proc::In(*a, *x, Arc::new(r))));
                }
            }
            Proc::Let(x, y, d, q) => {
                reducts(q, budget, supply, &mut inner);
                for r in inner {
                    out.push(replace_at(&m, &path2, Proc::Let(*x, *y, *d, Arc::new(r))));
                }
            }
            _ => unreachable!(),
        }
    }
}

/// One-step reducts up to structural congruence, each in normal form, sorted
/// by their alpha-invariant key.
pub fn pi_step(p: &Proc, budget: usize) -> Vec<Proc> {
    step_keyed(p, budget).into_iter().map(|(_, q)| q).collect()
}

pub(crate) fn step_keyed(p: &Proc, budget: usize) -> Vec<(String, Proc)> {
    let start = cnf(p);
    let mut supply = FreshSupply::above(start.all_symbols());
    let mut raw = Vec::new();
    reducts(&start, budget, &mut supply, &mut raw);
    let mut seen: IndexMap<String, Proc> = IndexMap::new();
    for r in raw {
        let c = cnf(&r);
        seen.entry(c.key()).or_insert(c);
    }
    let mut v: Vec<(String, Proc)> = seen.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// Free names with an unguarded output, up to structural congruence.
pub fn barbs(p: &Proc) -> BTreeSet<Name> {
    let c = cnf(p);
    let mut out = BTreeSet::new();
    top_outputs(&c, &mut Vec::new(), &mut out);
    out
}

fn top_outputs(p: &Proc, restricted: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match p {
        Proc::Par(a, b) => {
            top_outputs(a, restricted, out);
            top_outputs(b, restricted, out);
        }
        Proc::Repl(a) => top_outputs(a, restricted, out),
        Proc::New(n, a) => {
            restricted.push(*n);
            top_outputs(a, restricted, out);
            restricted.pop();
        }
        Proc::Out(a, _) if !restricted.contains(a) => {
            out.insert(*a);
        }
        _ => {}
    }
}

/// Does some process reachable in at most `depth` steps show barb `n`?
pub fn weak_barb(p: &Proc, n: Name, depth: usize, budget: usize) -> bool {
    Explorer::new(budget).weak_barbs(p, depth).contains(&n)
}

/// Breadth-first levels of keyed states.
type Levels = Arc<Vec<Vec<(String, Proc)>>>;

/// Memoising explorer of the reduction graph for one replication budget.
pub struct Explorer {
    budget: usize,
    succ: HashMap<String, Arc<Vec<(String, Proc)>>>,
    barbs: HashMap<String, Arc<BTreeSet<Name>>>,
    weak: HashMap<(String, usize), Arc<BTreeSet<Name>>>,
    levels: HashMap<(String, usize), Levels>,
}

impl Explorer {
    pub fn new(budget: usize) -> Explorer {
        Explorer {
            budget,
            succ: HashMap::new(),
            barbs: HashMap::new(),
            weak: HashMap::new(),
            levels: HashMap::new(),
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn states_seen(&self) -> usize {
        self.succ.len()
    }

    /// Normal form and key of an arbitrary process.
    pub fn normal(p: &Proc) -> (String, Proc) {
        let c = cnf(p);
        (c.key(), c)
    }

    pub fn successors(&mut self, key: &str, p: &Proc) -> Arc<Vec<(String, Proc)>> {
        if let Some(s) = self.succ.get(key) {
            return s.clone();
        }
        let s = Arc::new(step_keyed(p, self.budget));
        self.succ.insert(key.to_string(), s.clone());
        s
    }

    /// Fill the successor cache for a whole frontier, in parallel when
    /// enabled; insertion order follows the frontier, so results do not
    /// depend on the number of workers.
    pub(crate) fn expand(&mut self, frontier: &[(String, Proc)]) {
        let todo: Vec<&(String, Proc)> = frontier.iter().filter(|(k, _)| !self.succ.contains_key(k)).collect();
        let budget = self.budget;
        let computed = crate::par::map(&todo, |(_, p)| step_keyed(p, budget));
        for ((k, _), s) in todo.into_iter().zip(computed) {
            self.succ.insert(k.clone(), Arc::new(s));
        }
    }

    pub fn barbs_of(&mut self, key: &str, p: &Proc) -> Arc<BTreeSet<Name>> {
        if let Some(b) = self.barbs.get(key) {
            return b.clone();
        }
        let mut out = BTreeSet::new();
        top_outputs(p, &mut Vec::new(), &mut out);
        let b = Arc::new(out);
        self.barbs.insert(key.to_string(), b.clone());
        b
    }

    /// Breadth-first levels `0..=depth` of distinct states reachable from
    /// a normal-form `p` with key `key`; level 0 is `p` itself.
    pub fn levels(&mut self, key: &str, p: &Proc, depth: usize) -> Levels {
        if let Some(l) = self.levels.get(&(key.to_string(), depth)) {
            return l.clone();
        }
        let mut seen: HashSet<String> = HashSet::new();
        seen.insert(key.to_string());
        let mut levels = vec![vec![(key.to_string(), p.clone())]];
        for _ in 0..depth {
            let frontier = levels.last().expect("at least one level").clone();
            self.expand(&frontier);
            let mut next = Vec::new();
            for (k, _) in &frontier {
                for (k2, q) in self.succ[k].iter() {
                    if seen.insert(k2.clone()) {
                        next.push((k2.clone(), q.clone()));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let l = Arc::new(levels);
        self.levels.insert((key.to_string(), depth), l.clone());
        l
    }

    /// Barbs shown within `depth` steps, including zero.
    pub fn weak_barbs_keyed(&mut self, key: &str, p: &Proc, depth: usize) -> Arc<BTreeSet<Name>> {
        if let Some(w) = self.weak.get(&(key.to_string(), depth)) {
            return w.clone();
        }
        let levels = self.levels(key, p, depth);
        let mut all = BTreeSet::new();
        for level in levels.iter() {
            for (k, q) in level {
                all.extend(self.barbs_of(k, q).iter().copied());
            }
        }
        let w = Arc::new(all);
        self.weak.insert((key.to_string(), depth), w.clone());
        w
    }

    /// The first name of `wanted` that no state within `depth` steps shows.
    /// Stops exploring as soon as every name has been seen.
    pub fn missing_weak_barb(&mut self, key: &str, p: &Proc, wanted: &BTreeSet<Name>, depth: usize) -> Option<Name> {
        if let Some(w) = self.weak.get(&(key.to_string(), depth)) {
            return wanted.iter().find(|n| !w.contains(n)).copied();
        }
        let mut seen_barbs: BTreeSet<Name> = self.barbs_of(key, p).iter().copied().collect();
        let missing = |b: &BTreeSet<Name>| wanted.iter().find(|n| !b.contains(n)).copied();
        // every early return below means nothing is missing
        missing(&seen_barbs)?;
        let mut seen: HashSet<String> = HashSet::from([key.to_string()]);
        let mut frontier = vec![(key.to_string(), p.clone())];
        for _ in 0..depth {
            self.expand(&frontier);
            let mut next = Vec::new();
            for (k, _) in &frontier {
                for (k2, q) in self.succ[k].clone().iter() {
                    if seen.insert(k2.clone()) {
                        seen_barbs.extend(self.barbs_of(k2, q).iter().copied());
                        next.push((k2.clone(), q.clone()));
                    }
                }
            }
            missing(&seen_barbs)?;
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let first = missing(&seen_barbs);
        self.weak.insert((key.to_string(), depth), Arc::new(seen_barbs));
        first
    }

    pub fn weak_barbs(&mut self, p: &Proc, depth: usize) -> BTreeSet<Name> {
        let (k, c) = Explorer::normal(p);
        (*self.weak_barbs_keyed(&k, &c, depth)).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::parse_pi;
    use crate::symbol::Symbol;

    fn p(s: &str) -> Proc {
        parse_pi(s).unwrap()
    }

    fn keys(v: &[Proc]) -> Vec<String> {
        v.iter().map(|q| q.key()).collect()
    }

    #[test]
    fn synchronisation() {
        let r = pi_step(&p("a<b> | a(x). x<c>"), 1);
        assert_eq!(keys(&r), keys(&[cnf(&p("b<c>"))]));
        assert!(pi_step(&Proc::Nil, 2).is_empty());
    }

    #[test]
    fn pair_communication() {
        let r = pi_step(&p("a<<b,c>> | a(<x,y>). x<y>"), 1);
        assert_eq!(keys(&r), keys(&[cnf(&p("b<c>"))]));
        // a pair received by a plain input is substituted whole
        let r = pi_step(&p("a<<b,c>> | a(x). d<x>"), 1);
        assert_eq!(keys(&r), keys(&[cnf(&p("d<<b,c>>"))]));
        // and freezes when it lands in subject position
        let r = pi_step(&p("a<<b,c>> | a(x). x<d>"), 1);
        assert_eq!(r.len(), 1);
        assert!(r[0].contains_stuck());
        assert!(barbs(&r[0]).is_empty());
    }

    #[test]
    fn extrusion() {
        let r = pi_step(&p("new n. (a<n> | n(y). 0) | a(x). x<c>"), 0);
        // after the step the input and output on n share a scope
        assert_eq!(r.len(), 1);
        let r2 = pi_step(&r[0], 0);
        assert_eq!(keys(&r2), keys(&[Proc::Nil]));
    }

    #[test]
    fn replication_budget() {
        let q = p("!a<b> | a(x). c<x>");
        assert!(pi_step(&q, 0).is_empty());
        let r = pi_step(&q, 1);
        assert_eq!(keys(&r), keys(&[cnf(&p("!a<b> | c<b>"))]));
        // two copies of the same replicated body talking to each other
        let q = p("!(a<b> | a(x). c<x>)");
        assert_eq!(pi_step(&q, 1).len(), 1);
        assert_eq!(pi_step(&q, 2).len(), 2);
    }

    #[test]
    fn nesting() {
        let r = pi_step(&p("d(z). (a<b> | a(x). x<c>)"), 0);
        assert_eq!(keys(&r), keys(&[cnf(&p("d(z). b<c>"))]));
    }

    #[test]
    fn barbs_examples() {
        let n = Symbol::intern;
        assert_eq!(barbs(&p("a<b>")), [n("a")].into());
        assert!(barbs(&p("new a. a<b>")).is_empty());
        assert!(barbs(&p("a(x). b<x>")).is_empty());
        assert_eq!(barbs(&p("!(c<d>)")), [n("c")].into());
    }

    #[test]
    fn weak_barbs_examples() {
        let n = Symbol::intern;
        assert!(weak_barb(&p("a<b>"), n("a"), 0, 0));
        assert!(weak_barb(&p("a<b> | a(x). c<x>"), n("c"), 1, 1));
        assert!(!weak_barb(&p("a<b> | a(x). c<x>"), n("c"), 0, 1));
        assert!(!weak_barb(&Proc::Nil, n("a"), 5, 2));
    }

    #[test]
    fn self_loop_forwarder() {
        let r = pi_step(&p("a(o). a<o> | a<c>"), 0);
        assert_eq!(keys(&r), keys(&[cnf(&p("a<c>"))]));
    }
}
