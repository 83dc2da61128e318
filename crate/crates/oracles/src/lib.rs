//! Brute-force reference enumerators, written against the syntax alone, and
//! the exhaustive comparison of the reduction engines with them.

pub mod pi;
pub mod typing;
pub mod x;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use seqpi::pi::pi_step;
use seqpi::suite::{Outcome, TITLES};
use seqpi::xnet::Net;
use seqpi::xrewrite::find_redexes;
use seqpi::{par, Symbol};

/// Sizes of the exhaustive term sets.
#[derive(Clone, Debug)]
pub struct Bounds {
    /// Every net up to this size over two sockets and two plugs.
    pub nets: usize,
    /// Nets of exactly this size, one per renaming orbit.
    pub orbit_nets: Option<usize>,
    /// `(size, cap, budget)`: every process up to `size` constructors over
    /// two free names, where each prefix uses the `cap` innermost names.
    pub procs: Vec<(usize, usize, usize)>,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { nets: 6, orbit_nets: Some(7), procs: vec![(5, 3, 1), (6, 2, 1), (5, 3, 0), (5, 3, 2)] }
    }
}

const BATCH: usize = 8192;
const SHOWN: usize = 10;

#[derive(Default)]
struct Tally {
    checked: usize,
    mismatches: usize,
    shown: Vec<String>,
}

impl Tally {
    fn flush<T: Sync>(&mut self, buf: &mut Vec<T>, check: &(dyn Fn(&T) -> Option<String> + Sync)) {
        self.checked += buf.len();
        for m in par::map(buf, check).into_iter().flatten() {
            self.mismatches += 1;
            if self.shown.len() < SHOWN {
                self.shown.push(m);
            }
        }
        buf.clear();
    }

    fn run<T: Sync>(&mut self, each: impl FnOnce(&mut dyn FnMut(T)), check: &(dyn Fn(&T) -> Option<String> + Sync)) {
        let mut buf = Vec::with_capacity(BATCH);
        each(&mut |t| {
            buf.push(t);
            if buf.len() == BATCH {
                self.flush(&mut buf, check);
            }
        });
        self.flush(&mut buf, check);
    }
}

pub fn net_mismatch(n: &Net) -> Option<String> {
    let mut got: Vec<_> = find_redexes(n).into_iter().map(|r| (r.path, r.rule)).collect();
    got.sort();
    let want = x::redexes(n);
    (got != want).then(|| format!("{}: engine {:?}, oracle {:?}", n, got, want))
}

pub fn proc_mismatch(p: &seqpi::pi::Proc, budget: usize) -> Option<String> {
    let got: BTreeSet<String> = pi_step(p, budget).iter().map(|q| q.key()).collect();
    let want = pi::reduct_keys(p, budget);
    (got != want).then(|| format!("{} (budget {}): engine {:?}, oracle {:?}", p, budget, got, want))
}

/// Compares `find_redexes` and `pi_step` with the oracles on every term
/// within `bounds`.
pub fn criterion(bounds: &Bounds) -> Outcome {
    let start = Instant::now();
    let title = TITLES.iter().find(|t| t.0 == 10).map_or("oracles", |t| t.1);
    let mut o = Outcome { id: 10, title, checked: 0, failures: vec![], notes: vec![], elapsed: Duration::ZERO };

    let nets = x::Nets::new(bounds.nets.min(5));
    let mut t = Tally::default();
    t.run(|f| (1..=bounds.nets).for_each(|size| nets.each(size, f)), &net_mismatch);
    let all = t.checked;
    if let Some(size) = bounds.orbit_nets {
        for shape in 0..x::Nets::shapes(size) {
            t.run(|f| nets.each_shape(size, shape, true, f), &net_mismatch);
        }
        o.notes.push(format!("nets: {} up to size {}, {} of size {} up to renaming", all, bounds.nets, t.checked - all, size));
    } else {
        o.notes.push(format!("nets: {} up to size {}", all, bounds.nets));
    }
    absorb(&mut o, t);

    for &(size, cap, budget) in &bounds.procs {
        let gen = pi::Procs { cap };
        let mut t = Tally::default();
        let check = move |p: &seqpi::pi::Proc| proc_mismatch(p, budget);
        t.run(
            |f| {
                for s in 1..=size {
                    let mut scope = vec![Symbol::intern("a"), Symbol::intern("b")];
                    gen.each(s, &mut scope, f);
                }
            },
            &check,
        );
        o.notes.push(format!("processes: {} up to size {}, {} innermost names, budget {}", t.checked, size, cap, budget));
        absorb(&mut o, t);
    }
    o.elapsed = start.elapsed();
    o
}

fn absorb(o: &mut Outcome, t: Tally) {
    o.checked += t.checked;
    o.failures.extend(t.shown);
    if t.mismatches > SHOWN {
        o.failures.push(format!("... {} mismatches in all", t.mismatches));
    }
}
