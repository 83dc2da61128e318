//! Bounded barbed simulation, without quantifying over contexts.
//!
//! `A` is simulated by `B` to depth `d` when every barb of `A` is a weak
//! barb of `B` and every step `A -> A'` is answered by `B ->+ B'` (at most
//! `lookahead` steps) with `A'` simulated by `B'` to depth `d - 1`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use super::step::Explorer;
use super::{Name, Proc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Simulates,
    /// A barb of the left process that the right one never shows.
    MissingBarb(Name),
    /// A step of the left process with no matching answer.
    UnmatchedStep(Proc),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        *self == Verdict::Simulates
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Simulates => write!(f, "simulates"),
            Verdict::MissingBarb(n) => write!(f, "barb {} is not matched", n),
            Verdict::UnmatchedStep(p) => write!(f, "step to {} is not matched", p),
        }
    }
}

pub struct Simulator {
    explorer: Explorer,
    lookahead: usize,
    memo: HashMap<(String, String, usize), bool>,
    plus: HashMap<String, Arc<Vec<(String, Proc)>>>,
}

impl Simulator {
    pub fn new(budget: usize, lookahead: usize) -> Simulator {
        Simulator { explorer: Explorer::new(budget), lookahead: lookahead.max(1), memo: HashMap::new(), plus: HashMap::new() }
    }

    pub fn explorer(&mut self) -> &mut Explorer {
        &mut self.explorer
    }

    /// States reachable in one to `lookahead` steps.
    fn plus(&mut self, key: &str, p: &Proc) -> Arc<Vec<(String, Proc)>> {
        if let Some(v) = self.plus.get(key) {
            return v.clone();
        }
        let mut seen = HashSet::new();
        let mut all = Vec::new();
        let mut frontier: Vec<(String, Proc)> = vec![(key.to_string(), p.clone())];
        for _ in 0..self.lookahead {
            let mut next = Vec::new();
            for (k, q) in &frontier {
                for (k2, q2) in self.explorer.successors(k, q).iter() {
                    if seen.insert(k2.clone()) {
                        next.push((k2.clone(), q2.clone()));
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        let v = Arc::new(all);
        self.plus.insert(key.to_string(), v.clone());
        v
    }

    /// Keys and processes must be normal forms from `Explorer::normal`.
    pub fn related(&mut self, ak: &str, a: &Proc, bk: &str, b: &Proc, depth: usize) -> Verdict {
        if ak == bk {
            return Verdict::Simulates;
        }
        let memo_key = (ak.to_string(), bk.to_string(), depth);
        if let Some(&r) = self.memo.get(&memo_key) {
            // only the top level needs a reason, so a cached failure is
            // reported without one
            return if r { Verdict::Simulates } else { Verdict::UnmatchedStep(a.clone()) };
        }
        let verdict = self.decide(ak, a, bk, b, depth);
        self.memo.insert(memo_key, verdict.holds());
        verdict
    }

    fn decide(&mut self, ak: &str, a: &Proc, bk: &str, b: &Proc, depth: usize) -> Verdict {
        let shown = self.explorer.barbs_of(ak, a);
        if let Some(n) = self.explorer.missing_weak_barb(bk, b, &shown, self.lookahead) {
            return Verdict::MissingBarb(n);
        }
        if depth == 0 {
            return Verdict::Simulates;
        }
        let moves = self.explorer.successors(ak, a);
        if moves.is_empty() {
            return Verdict::Simulates;
        }
        let answers = self.plus(bk, b);
        'moves: for (ak2, a2) in moves.iter() {
            if answers.iter().any(|(k, _)| k == ak2) {
                continue;
            }
            for (bk2, b2) in answers.iter() {
                if self.related(ak2, a2, bk2, b2, depth - 1).holds() {
                    continue 'moves;
                }
            }
            return Verdict::UnmatchedStep(a2.clone());
        }
        Verdict::Simulates
    }

    pub fn check(&mut self, a: &Proc, b: &Proc, depth: usize) -> Verdict {
        let (ak, a) = Explorer::normal(a);
        let (bk, b) = Explorer::normal(b);
        self.related(&ak, &a, &bk, &b, depth)
    }
}

/// `a` is simulated by `b` to `depth`, answering with up to `depth` steps.
pub fn bounded_simulates(a: &Proc, b: &Proc, depth: usize, budget: usize) -> bool {
    Simulator::new(budget, depth).check(a, b, depth).holds()
}

/// Outcome of searching the reducts of a process for one that simulates a
/// target.
#[derive(Clone, Debug)]
pub struct SimReport {
    /// From the start state to the witness, one step apart; empty when no
    /// witness was found.
    pub trace: Vec<Proc>,
    pub found: bool,
    pub depth: usize,
    pub budget: usize,
    pub states: usize,
}

impl SimReport {
    /// Steps from the start to the witness.
    pub fn steps(&self) -> Option<usize> {
        self.found.then(|| self.trace.len() - 1)
    }
}

impl fmt::Display for SimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.trace.iter().enumerate() {
            writeln!(f, "STEP {}: {}", k, p)?;
        }
        let yes = if self.found { "yes" } else { "no" };
        writeln!(f, "SIMULATES: {} (depth={}, budget={})", yes, self.depth, self.budget)
    }
}

/// Breadth-first search, up to `search` steps from `start`, for a state that
/// simulates `target` to `depth`. Proper reducts are tried first; `start`
/// itself is the last resort.
pub fn find_simulating(start: &Proc, target: &Proc, search: usize, depth: usize, budget: usize) -> SimReport {
    let mut sim = Simulator::new(budget, depth);
    find_with(&mut sim, start, target, search, depth)
}

pub(crate) fn find_with(sim: &mut Simulator, start: &Proc, target: &Proc, search: usize, depth: usize) -> SimReport {
    let (sk, s) = Explorer::normal(start);
    let (tk, t) = Explorer::normal(target);
    let budget = sim.explorer().budget();
    let mut parent: HashMap<String, (String, Proc)> = HashMap::new();
    let mut seen: HashSet<String> = HashSet::from([sk.clone()]);
    let mut frontier = vec![(sk.clone(), s.clone())];
    let report = |sim: &mut Simulator, trace: Vec<Proc>| {
        let states = sim.explorer().states_seen();
        SimReport { found: !trace.is_empty(), trace, depth, budget, states }
    };
    for _ in 0..search {
        sim.explorer().expand(&frontier);
        let mut next = Vec::new();
        for (k, q) in &frontier {
            for (k2, q2) in sim.explorer().successors(k, q).iter() {
                if seen.insert(k2.clone()) {
                    parent.insert(k2.clone(), (k.clone(), q.clone()));
                    next.push((k2.clone(), q2.clone()));
                }
            }
        }
        for (k, q) in &next {
            if sim.related(&tk, &t, k, q, depth).holds() {
                let mut trace = vec![q.clone()];
                let mut at = k.clone();
                while let Some((pk, pq)) = parent.get(&at) {
                    trace.push(pq.clone());
                    at = pk.clone();
                }
                trace.reverse();
                return report(sim, trace);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    if sim.related(&tk, &t, &sk, &s, depth).holds() {
        return report(sim, vec![s]);
    }
    report(sim, vec![])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::parse_pi;

    fn p(s: &str) -> Proc {
        parse_pi(s).unwrap()
    }

    #[test]
    fn trivial_cases() {
        assert!(!bounded_simulates(&p("a<b>"), &Proc::Nil, 1, 1));
        assert!(bounded_simulates(&Proc::Nil, &p("a<b>"), 3, 1));
        let q = p("!(a(x). b<x>) | a<c>");
        assert!(bounded_simulates(&q, &q, 3, 2));
    }

    #[test]
    fn weak_barbs_count() {
        assert!(bounded_simulates(&p("c<b>"), &p("a<b> | a(x). c<x>"), 2, 1));
        assert!(!bounded_simulates(&p("c<b>"), &p("a<b> | a(x). d<x>"), 2, 1));
    }

    #[test]
    fn moves_must_be_answered() {
        // left can make c visible after a step; right never can
        let a = p("a<b> | a(x). c<x>");
        assert_eq!(Simulator::new(1, 2).check(&a, &p("a<b>"), 2), Verdict::UnmatchedStep(p("c<b>")));
    }

    #[test]
    fn search_reports_trace() {
        let r = find_simulating(&p("a<b> | a(x). c<x>"), &p("c<b>"), 2, 2, 1);
        assert!(r.found);
        assert_eq!(r.steps(), Some(1));
        let text = r.to_string();
        assert!(text.starts_with("STEP 0: "));
        assert!(text.ends_with("SIMULATES: yes (depth=2, budget=1)\n"));
    }
}
