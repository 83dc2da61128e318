//! Executable forms of the acceptance criteria that need no external
//! oracle. Each check returns an `Outcome` carrying what was checked, the
//! failures, and notes such as the bounds each simulation needed.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use crate::corpus::{typed_nets, Corpus};
use crate::encode::{encode_x, pi_context};
use crate::lambda::{encode_lam_to_pi, encode_lam_to_x, infer_lam, LamTerm};
use crate::pi::{bounded_simulates, find_simulating, Datum, Explorer, Name, Proc, SimReport};
use crate::pitypes::{explain, PiContextPair};
use crate::symbol::{FreshSupply, Symbol};
use crate::xnet::{parse_xnet, Net, Plug};
use crate::xrewrite::{apply_redex, find_redexes, step_all, XRule};
use crate::xtypes::{check_x, infer_x};

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    /// Steps explored from the encoding of the redex.
    pub search: usize,
    /// Depth of the simulation check.
    pub sim_depth: usize,
    /// Largest replication budget tried; smaller ones are tried first.
    pub max_budget: usize,
    /// Levels explored for witness reduction and free names in processes.
    pub pi_depth: usize,
    pub generated_nets: usize,
    pub generated_size: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            seed: crate::corpus::DEFAULT_SEED,
            search: 8,
            sim_depth: 2,
            max_budget: 2,
            pi_depth: 3,
            generated_nets: 200,
            generated_size: 9,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{}] {:>2} {} ({} checks, {} failures)", status, self.id, self.title, self.checked, self.failures.len())
    }
}

pub const TITLES: [(u8, &str); 11] = [
    (1, "Peirce's law principal typing"),
    (2, "logical rules on capsules"),
    (3, "non-confluence witness"),
    (4, "X witness reduction"),
    (5, "pi witness reduction"),
    (6, "encoding preserves types"),
    (7, "simulation of single steps"),
    (8, "capsule-cut table"),
    (9, "lambda corollary"),
    (10, "brute-force oracles"),
    (11, "free-name monotonicity"),
];

fn title(id: u8) -> &'static str {
    TITLES.iter().find(|t| t.0 == id).map(|t| t.1).unwrap_or("unknown")
}

/// Run one criterion. Criterion 10 needs the test-side oracles and is not
/// available here.
pub fn run(id: u8, corpus: &Corpus, cfg: &Config) -> Option<Outcome> {
    let start = Instant::now();
    let mut o = Outcome { id, title: title(id), checked: 0, failures: vec![], notes: vec![], elapsed: Duration::ZERO };
    match id {
        1 => peirce(corpus, &mut o),
        2 => logical_rules(&mut o),
        3 => non_confluence(&mut o),
        4 => x_witness_reduction(cfg, &mut o),
        5 => pi_witness_reduction(corpus, cfg, &mut o),
        6 => encoding_types(corpus, &mut o),
        7 => simulation(corpus, cfg, &mut o),
        8 => capsule_table(corpus, cfg, &mut o),
        9 => lambda_corollary(corpus, cfg, &mut o),
        11 => free_names(corpus, cfg, &mut o),
        _ => return None,
    }
    o.elapsed = start.elapsed();
    Some(o)
}

pub fn run_all(corpus: &Corpus, cfg: &Config) -> Vec<Outcome> {
    TITLES.iter().filter_map(|(id, _)| run(*id, corpus, cfg)).collect()
}

fn check(o: &mut Outcome, ok: bool, what: impl FnOnce() -> String) {
    o.checked += 1;
    if !ok {
        o.failures.push(what());
    }
}

fn peirce(corpus: &Corpus, o: &mut Outcome) {
    let Some(e) = corpus.nets.iter().find(|e| e.name == "peirce") else {
        o.failures.push("no `peirce` entry in the corpus".into());
        return;
    };
    let got = infer_x(&e.term).map(|(c, _)| c.to_string());
    let want = "|- g : ((A -> B) -> A) -> A";
    check(o, got.as_deref() == Ok(want), || format!("principal typing {:?}, expected {}", got, want));
}

fn logical_rules(o: &mut Outcome) {
    let cases: [(&str, XRule, &str); 5] = [
        ("cut(<y.a> | a / x | <x.b>)", XRule::Ax, "<y.b>"),
        ("cut(exp(y; <y.b>; b).a | a / x | <x.g>)", XRule::ExpRen, "exp(y; <y.b>; b).g"),
        ("cut(<y.a> | a / x | imp(<u.b> | b / [x] / z | <z.c>))", XRule::ImpRen, "imp(<u.b> | b / [y] / z | <z.c>)"),
        (
            "cut(exp(y; <y.b>; b).a | a / x | imp(<u.g> | g / [x] / z | <z.d>))",
            XRule::ExpImpLeft,
            "cut(<u.g> | g / y | cut(<y.b> | b / z | <z.d>))",
        ),
        (
            "cut(exp(y; <y.b>; b).a | a / x | imp(<u.g> | g / [x] / z | <z.d>))",
            XRule::ExpImpRight,
            "cut(cut(<u.g> | g / y | <y.b>) | b / z | <z.d>)",
        ),
    ];
    for (src, rule, want) in cases {
        let net = parse_xnet(src).expect("fixed source");
        let want = parse_xnet(want).expect("fixed source");
        let r = find_redexes(&net).into_iter().find(|r| r.rule == rule && r.path.is_empty());
        let got = r.and_then(|r| apply_redex(&net, &r, &mut FreshSupply::new()).ok());
        check(o, got.as_ref().is_some_and(|g| g.alpha_eq(&want)), || {
            format!("{} on {}: got {:?}, expected {}", rule, src, got.map(|g| g.to_string()), want)
        });
    }
}

fn non_confluence(o: &mut Outcome) {
    let net = parse_xnet("cut(<x.a> | g / z | <y.b>)").expect("fixed source");
    let mut reached: Vec<Net> = vec![net.clone()];
    let mut frontier = vec![net];
    for _ in 0..2 {
        frontier = frontier.iter().flat_map(step_all).collect();
        reached.extend(frontier.iter().cloned());
    }
    for want in ["<x.a>", "<y.b>"] {
        let w = parse_xnet(want).expect("fixed source");
        check(o, reached.iter().any(|n| n.alpha_eq(&w)), || format!("{} not reached within 2 steps", want));
    }
}

fn x_witness_reduction(cfg: &Config, o: &mut Outcome) {
    let nets = typed_nets(cfg.seed, cfg.generated_nets, cfg.generated_size);
    o.notes.push(format!("{} generated nets, sizes up to {}, seed {}", nets.len(), cfg.generated_size, cfg.seed));
    if nets.len() < cfg.generated_nets {
        o.failures.push(format!("only {} typed nets generated", nets.len()));
    }
    let results = crate::par::map(&nets, |n| {
        let (ctx, _) = infer_x(n).expect("generated nets are typed");
        step_all(n).into_iter().map(|q| (check_x(&q, &ctx), n.to_string(), q.to_string(), ctx.to_string())).collect::<Vec<_>>()
    });
    for (ok, n, q, ctx) in results.into_iter().flatten() {
        check(o, ok, || format!("{} -> {} loses {}", n, q, ctx));
    }
}

fn typed_entries(corpus: &Corpus) -> Vec<(String, Net, PiContextPair)> {
    corpus
        .nets
        .iter()
        .filter_map(|e| infer_x(&e.term).ok().map(|(c, _)| (e.name.clone(), e.term.clone(), pi_context(&c))))
        .collect()
}

/// Every state within `depth` steps, with its successors.
fn explore(p: &Proc, depth: usize, budget: usize) -> Vec<(Proc, Vec<Proc>)> {
    let mut ex = Explorer::new(budget);
    let (k, c) = Explorer::normal(p);
    let levels = ex.levels(&k, &c, depth);
    levels
        .iter()
        .flatten()
        .map(|(k, q)| (q.clone(), ex.successors(k, q).iter().map(|(_, s)| s.clone()).collect()))
        .collect()
}

fn pi_witness_reduction(corpus: &Corpus, cfg: &Config, o: &mut Outcome) {
    let entries = typed_entries(corpus);
    let untyped = corpus.nets.len() - entries.len();
    if untyped > 0 {
        o.notes.push(format!("{} untypeable corpus nets skipped", untyped));
    }
    let budget = cfg.max_budget;
    let results = crate::par::map(&entries, |(name, net, ctx)| {
        let enc = encode_x(net);
        let mut out = vec![(name.clone(), enc.to_string(), explain(&enc, ctx).err().map(|e| e.to_string()))];
        for (q, succ) in explore(&enc, cfg.pi_depth, budget) {
            for s in std::iter::once(&q).chain(succ.iter()) {
                out.push((name.clone(), s.to_string(), explain(s, ctx).err().map(|e| e.to_string())));
            }
        }
        out
    });
    let mut states = 0;
    for (name, p, err) in results.into_iter().flatten() {
        states += 1;
        check(o, err.is_none(), || format!("{}: {} : {}", name, p, err.unwrap_or_default()));
    }
    o.notes.push(format!("{} process checks, {} steps deep, budget {}", states, cfg.pi_depth, budget));
}

fn encoding_types(corpus: &Corpus, o: &mut Outcome) {
    for (name, net, ctx) in typed_entries(corpus) {
        let err = explain(&encode_x(&net), &ctx).err();
        check(o, err.is_none(), || format!("{}: encoding fails {}: {}", name, ctx, err.map(|e| e.to_string()).unwrap_or_default()));
    }
}

/// Searches with budgets `0..=cfg.max_budget` in turn. A witness found
/// with fewer copies is kept only if it still simulates the target at the
/// full budget.
pub fn simulate_step(start: &Proc, target: &Proc, cfg: &Config) -> SimReport {
    let mut last = None;
    for budget in 0..=cfg.max_budget {
        let r = find_simulating(start, target, cfg.search, cfg.sim_depth, budget);
        let holds = |w: &Proc| budget == cfg.max_budget || bounded_simulates(target, w, cfg.sim_depth, cfg.max_budget);
        if r.found && r.trace.last().is_some_and(holds) {
            return r;
        }
        last = Some(r);
    }
    let mut r = last.expect("at least one budget is tried");
    r.found = false;
    r.trace.clear();
    r
}

fn simulation(corpus: &Corpus, cfg: &Config, o: &mut Outcome) {
    let mut jobs = Vec::new();
    for e in &corpus.nets {
        for r in find_redexes(&e.term) {
            let q = apply_redex(&e.term, &r, &mut FreshSupply::new()).expect("found redexes apply");
            jobs.push((e.name.clone(), e.term.clone(), r, q));
        }
    }
    let results = crate::par::map(&jobs, |(_, p, _, q)| simulate_step(&encode_x(p), &encode_x(q), cfg));
    let mut covered: BTreeMap<XRule, usize> = BTreeMap::new();
    let mut by_bounds: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for ((name, p, r, q), rep) in jobs.iter().zip(results) {
        check(o, rep.found, || format!("{}: {} at {} to {} has no simulating reduct", name, r.rule, crate::xrewrite::format_path(&r.path), q));
        if rep.found {
            *covered.entry(r.rule).or_default() += 1;
            *by_bounds.entry((rep.budget, rep.steps().unwrap_or(0))).or_default() += 1;
            o.notes.push(format!("{} {} {} -> budget {}, {} steps", name, r, p, rep.budget, rep.steps().unwrap_or(0)));
        }
    }
    for rule in XRule::CORE {
        check(o, covered.contains_key(&rule), || format!("rule {} is not exercised by the corpus", rule));
    }
    let summary: Vec<String> = by_bounds.iter().map(|((b, s), n)| format!("{} at budget {} after {} steps", n, b, s)).collect();
    o.notes.insert(0, format!("search {}, simulation depth {}: {}", cfg.search, cfg.sim_depth, summary.join(", ")));
}

/// Puts a fresh datum on every input channel that is free in `p`.
fn probe(p: Proc, inputs: &[Name]) -> Proc {
    let mut s = FreshSupply::above(p.all_symbols().into_iter().chain(inputs.iter().copied()));
    inputs.iter().fold(p, |acc, &x| Proc::par(acc, Proc::Out(x, Datum::Name(s.fresh_str("k")))))
}

fn capsule_table(corpus: &Corpus, cfg: &Config, o: &mut Outcome) {
    let table = [
        ("intro-ren", vec!["<x.b>"]),
        ("intro-left", vec!["<x.a>"]),
        ("intro-right", vec!["<y.b>"]),
        ("intro-both", vec!["<x.a>", "<y.b>"]),
    ];
    for (name, targets) in table {
        let Some(e) = corpus.nets.iter().find(|e| e.name == name) else {
            o.failures.push(format!("no `{}` entry in the corpus", name));
            continue;
        };
        let target = Proc::par_all(targets.iter().map(|t| encode_x(&parse_xnet(t).expect("fixed source"))).collect());
        let start = encode_x(&e.term);
        let rep = simulate_step(&start, &target, cfg);
        check(o, rep.found, || format!("{}: no reduct simulates {}", name, target));
        let inputs: Vec<Name> = e.term.free_sockets().into_iter().map(|s| s.0).collect();
        let (ps, pt) = (probe(start, &inputs), probe(target, &inputs));
        let rep = simulate_step(&ps, &pt, cfg);
        check(o, rep.found, || format!("{}: with inputs supplied, no reduct simulates {}", name, pt));
        let mut ex = Explorer::new(cfg.max_budget);
        let (bs, bt) = (ex.weak_barbs(&ps, cfg.search), ex.weak_barbs(&pt, cfg.search));
        check(o, bs == bt, || format!("{}: barbs {:?} but expected {:?}", name, names(&bs), names(&bt)));
        let plugs: BTreeSet<Name> = e.term.free_plugs().into_iter().map(|a| a.0).filter(|a| bs.contains(a)).collect();
        o.notes.push(format!("{} ~> {}: barbs on plugs {{{}}}", name, targets.join(" | "), names(&plugs).join(", ")));
    }
}

fn names(s: &BTreeSet<Name>) -> Vec<String> {
    s.iter().map(|n| n.to_string()).collect()
}

fn lambda_corollary(corpus: &Corpus, cfg: &Config, o: &mut Outcome) {
    let lams: Vec<(String, LamTerm)> = corpus.lams.iter().map(|e| (e.name.clone(), e.term.clone())).collect();
    let generated = lams.iter().filter(|(n, _)| n.starts_with("lgen-")).count();
    o.notes.push(format!("{} terms, {} generated", lams.len(), generated));
    let results = crate::par::map(&lams, |(name, m)| {
        let mut out: Vec<(bool, String)> = Vec::new();
        let alpha = Plug(FreshSupply::above(m.all_symbols()).fresh_str("al"));
        match infer_lam(m) {
            Ok((gamma, ty)) => {
                let ctx = PiContextPair { gamma, delta: [(alpha.0, ty.clone())].into() };
                let err = explain(&encode_lam_to_pi(m, alpha), &ctx).err();
                out.push((err.is_none(), format!("{}: encoding of {} fails {}: {:?}", name, m, ctx, err)));
            }
            Err(e) => out.push((false, format!("{}: {} is not typeable: {}", name, m, e))),
        }
        let plugs = encode_lam_to_x(m, alpha).free_plugs();
        out.push((plugs == [alpha].into(), format!("{}: free plugs {:?}", name, plugs.len())));
        for n in m.beta_steps() {
            let rep = simulate_step(&encode_lam_to_pi(m, alpha), &encode_lam_to_pi(&n, alpha), cfg);
            out.push((rep.found, format!("{}: {} -> {} is not simulated", name, m, n)));
        }
        out
    });
    for (ok, msg) in results.into_iter().flatten() {
        check(o, ok, || msg);
    }
}

fn free_names(corpus: &Corpus, cfg: &Config, o: &mut Outcome) {
    let mut nets: Vec<Net> = corpus.nets.iter().map(|e| e.term.clone()).collect();
    nets.extend(typed_nets(cfg.seed, cfg.generated_nets, cfg.generated_size));
    for p in &nets {
        let fc = p.free_connectors();
        for q in step_all(p) {
            check(o, q.free_connectors().is_subset(&fc), || format!("{} -> {} gains free connectors", p, q));
        }
    }
    for e in &corpus.nets {
        let fc: HashSet<Symbol> = e.term.free_connectors().into_iter().map(|c| c.symbol()).collect();
        let enc = encode_x(&e.term);
        let fnames: HashSet<Symbol> = enc.free_names().into_iter().collect();
        check(o, fnames == fc, || format!("{}: free names of the encoding differ from the free connectors", e.name));
    }
    let encs: Vec<Proc> = corpus.nets.iter().map(|e| encode_x(&e.term)).collect();
    let budget = cfg.max_budget;
    let results = crate::par::map(&encs, |p| {
        explore(p, cfg.pi_depth, budget)
            .into_iter()
            .flat_map(|(q, succ)| {
                let fq = q.free_names();
                succ.into_iter().map(move |s| (s.free_names().is_subset(&fq), q.to_string(), s.to_string()))
            })
            .collect::<Vec<_>>()
    });
    for (ok, q, s) in results.into_iter().flatten() {
        check(o, ok, || format!("{} -> {} gains free names", q, s));
    }
}
