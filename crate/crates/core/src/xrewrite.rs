//! Cut-elimination: redex discovery, rule application, strategies and the
//! admissible shortcuts.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::symbol::FreshSupply;
use crate::xnet::{CutKind, Net, Plug, Socket};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XRule {
    Ax,
    ExpRen,
    ImpRen,
    ExpImpLeft,
    ExpImpRight,
    ActL,
    ActR,
    DL,
    CapL,
    ExpOutsL,
    ExpInsL,
    ImpL,
    CutL,
    DR,
    CapR,
    ExpR,
    ImpOutsR,
    ImpInsR,
    CutR,
    GcL,
    GcR,
    RenL,
    RenR,
}

impl XRule {
    /// The rules of the core system, in canonical order.
    pub const CORE: [XRule; 19] = [
        XRule::Ax,
        XRule::ExpRen,
        XRule::ImpRen,
        XRule::ExpImpLeft,
        XRule::ExpImpRight,
        XRule::ActL,
        XRule::ActR,
        XRule::DL,
        XRule::CapL,
        XRule::ExpOutsL,
        XRule::ExpInsL,
        XRule::ImpL,
        XRule::CutL,
        XRule::DR,
        XRule::CapR,
        XRule::ExpR,
        XRule::ImpOutsR,
        XRule::ImpInsR,
        XRule::CutR,
    ];

    pub const ALL: [XRule; 23] = [
        XRule::Ax,
        XRule::ExpRen,
        XRule::ImpRen,
        XRule::ExpImpLeft,
        XRule::ExpImpRight,
        XRule::ActL,
        XRule::ActR,
        XRule::DL,
        XRule::CapL,
        XRule::ExpOutsL,
        XRule::ExpInsL,
        XRule::ImpL,
        XRule::CutL,
        XRule::DR,
        XRule::CapR,
        XRule::ExpR,
        XRule::ImpOutsR,
        XRule::ImpInsR,
        XRule::CutR,
        XRule::GcL,
        XRule::GcR,
        XRule::RenL,
        XRule::RenR,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            XRule::Ax => "Ax",
            XRule::ExpRen => "ExpRen",
            XRule::ImpRen => "ImpRen",
            XRule::ExpImpLeft => "ExpImpLeft",
            XRule::ExpImpRight => "ExpImpRight",
            XRule::ActL => "ActL",
            XRule::ActR => "ActR",
            XRule::DL => "DL",
            XRule::CapL => "CapL",
            XRule::ExpOutsL => "ExpOutsL",
            XRule::ExpInsL => "ExpInsL",
            XRule::ImpL => "ImpL",
            XRule::CutL => "CutL",
            XRule::DR => "DR",
            XRule::CapR => "CapR",
            XRule::ExpR => "ExpR",
            XRule::ImpOutsR => "ImpOutsR",
            XRule::ImpInsR => "ImpInsR",
            XRule::CutR => "CutR",
            XRule::GcL => "GcL",
            XRule::GcR => "GcR",
            XRule::RenL => "RenL",
            XRule::RenR => "RenR",
        }
    }

    pub fn is_logical(self) -> bool {
        matches!(self, XRule::Ax | XRule::ExpRen | XRule::ImpRen | XRule::ExpImpLeft | XRule::ExpImpRight)
    }
}

impl fmt::Display for XRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for XRule {
    type Err = String;
    fn from_str(s: &str) -> Result<XRule, String> {
        XRule::ALL.into_iter().find(|r| r.tag() == s).ok_or_else(|| format!("unknown rule tag `{}`", s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Redex {
    pub path: Vec<u8>,
    pub rule: XRule,
}

pub fn format_path(path: &[u8]) -> String {
    if path.is_empty() {
        "/".to_string()
    } else {
        path.iter().map(|i| format!("/{}", i)).collect()
    }
}

pub fn parse_path(s: &str) -> Option<Vec<u8>> {
    if s == "/" {
        return Some(vec![]);
    }
    s.strip_prefix('/')?.split('/').map(|c| c.parse::<u8>().ok().filter(|&i| i < 2)).collect()
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", format_path(&self.path), self.rule)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("rule {rule} does not match at {path}")]
    RedexMismatch { path: String, rule: XRule },
    #[error("step budget of {} exhausted", .0.steps.len())]
    BudgetExceeded(Box<Trace>),
}

/// The rules whose left-hand side matches at the root of `net`, in canonical
/// order.
pub fn rules_at(net: &Net) -> Vec<XRule> {
    let mut out = Vec::new();
    rules_at_into(net, &mut out);
    out
}

fn rules_at_into(net: &Net, out: &mut Vec<XRule>) {
    let Net::Cut { kind, left, plug, socket, right } = net else { return };
    match kind {
        CutKind::Plain => {
            let li = left.introduces_plug(*plug);
            let ri = right.introduces_socket(*socket);
            if li && ri {
                match (&**left, &**right) {
                    (Net::Capsule { .. }, Net::Capsule { .. }) => out.push(XRule::Ax),
                    (Net::Export { .. }, Net::Capsule { .. }) => out.push(XRule::ExpRen),
                    (Net::Capsule { .. }, Net::Import { .. }) => out.push(XRule::ImpRen),
                    (Net::Export { .. }, Net::Import { .. }) => out.extend([XRule::ExpImpLeft, XRule::ExpImpRight]),
                    _ => {}
                }
            }
            if !li {
                out.push(XRule::ActL);
            }
            if !ri {
                out.push(XRule::ActR);
            }
        }
        CutKind::Left => out.push(match &**left {
            Net::Capsule { plug: b, .. } if b == plug => XRule::DL,
            Net::Capsule { .. } => XRule::CapL,
            Net::Export { out: g, .. } if g == plug => XRule::ExpOutsL,
            Net::Export { .. } => XRule::ExpInsL,
            Net::Import { .. } => XRule::ImpL,
            Net::Cut { kind: CutKind::Plain, .. } => XRule::CutL,
            Net::Cut { .. } => return,
        }),
        CutKind::Right => out.push(match &**right {
            Net::Capsule { socket: y, .. } if y == socket => XRule::DR,
            Net::Capsule { .. } => XRule::CapR,
            Net::Export { .. } => XRule::ExpR,
            Net::Import { middle: z, .. } if z == socket => XRule::ImpOutsR,
            Net::Import { .. } => XRule::ImpInsR,
            Net::Cut { kind: CutKind::Plain, .. } => XRule::CutR,
            Net::Cut { .. } => return,
        }),
    }
}

/// Every redex of the core system, pre-order on paths and rule order within
/// a node.
pub fn find_redexes(net: &Net) -> Vec<Redex> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut rules = Vec::with_capacity(4);
    walk(net, &mut path, &mut rules, &mut out);
    out
}

fn walk(net: &Net, path: &mut Vec<u8>, rules: &mut Vec<XRule>, out: &mut Vec<Redex>) {
    rules.clear();
    rules_at_into(net, rules);
    for &rule in rules.iter() {
        out.push(Redex { path: path.clone(), rule });
    }
    match net {
        Net::Capsule { .. } => {}
        Net::Export { body, .. } => {
            path.push(0);
            walk(body, path, rules, out);
            path.pop();
        }
        Net::Import { left, right, .. } | Net::Cut { left, right, .. } => {
            path.push(0);
            walk(left, path, rules, out);
            path.pop();
            path.push(1);
            walk(right, path, rules, out);
            path.pop();
        }
    }
}

fn arc(n: Net) -> Arc<Net> {
    Arc::new(n)
}

/// Right-hand side of `rule` at the root of a refreshed `net`.
fn contract(net: &Net, rule: XRule, supply: &mut FreshSupply) -> Option<Net> {
    if !rules_at(net).contains(&rule) {
        return None;
    }
    let Net::Cut { kind, left, plug: a, socket: x, right } = net else { return None };
    let (a, x) = (*a, *x);
    let mk = |kind, left: Arc<Net>, plug, socket, right: Arc<Net>| Net::Cut { kind, left, plug, socket, right };
    let cut_l = |l: &Arc<Net>| arc(mk(CutKind::Left, l.clone(), a, x, right.clone()));
    let cut_r = |r: &Arc<Net>| arc(mk(CutKind::Right, left.clone(), a, x, r.clone()));
    Some(match (rule, &**left, &**right) {
        (XRule::Ax, Net::Capsule { socket: y, .. }, Net::Capsule { plug: b, .. }) => Net::Capsule { socket: *y, plug: *b },
        (XRule::ExpRen, Net::Export { socket: y, body, plug: b, .. }, Net::Capsule { plug: g, .. }) => {
            Net::Export { socket: *y, body: body.clone(), plug: *b, out: *g }
        }
        (XRule::ImpRen, Net::Capsule { socket: y, .. }, Net::Import { left: q, plug: b, socket: z, right: r, .. }) => {
            Net::Import { left: q.clone(), plug: *b, middle: *y, socket: *z, right: r.clone() }
        }
        (
            XRule::ExpImpLeft,
            Net::Export { socket: y, body: p, plug: b, .. },
            Net::Import { left: q, plug: g, socket: z, right: r, .. },
        ) => mk(CutKind::Plain, q.clone(), *g, *y, arc(mk(CutKind::Plain, p.clone(), *b, *z, r.clone()))),
        (
            XRule::ExpImpRight,
            Net::Export { socket: y, body: p, plug: b, .. },
            Net::Import { left: q, plug: g, socket: z, right: r, .. },
        ) => mk(CutKind::Plain, arc(mk(CutKind::Plain, q.clone(), *g, *y, p.clone())), *b, *z, r.clone()),
        (XRule::ActL, _, _) => mk(CutKind::Left, left.clone(), a, x, right.clone()),
        (XRule::ActR, _, _) => mk(CutKind::Right, left.clone(), a, x, right.clone()),
        (XRule::DL, _, _) => mk(CutKind::Plain, left.clone(), a, x, right.clone()),
        (XRule::CapL, _, _) => (**left).clone(),
        (XRule::ExpOutsL, Net::Export { socket: y, body: q, plug: b, .. }, _) => {
            let g = Plug(supply.fresh(a.0));
            let inner = Net::Export { socket: *y, body: cut_l(q), plug: *b, out: g };
            mk(CutKind::Plain, arc(inner), g, x, right.clone())
        }
        (XRule::ExpInsL, Net::Export { socket: y, body: q, plug: b, out: g }, _) => {
            Net::Export { socket: *y, body: cut_l(q), plug: *b, out: *g }
        }
        (XRule::ImpL, Net::Import { left: q, plug: b, middle: z, socket: y, right: r }, _) => {
            Net::Import { left: cut_l(q), plug: *b, middle: *z, socket: *y, right: cut_l(r) }
        }
        (XRule::CutL, Net::Cut { left: q, plug: b, socket: y, right: r, .. }, _) => {
            mk(CutKind::Plain, cut_l(q), *b, *y, cut_l(r))
        }
        (XRule::DR, _, _) => mk(CutKind::Plain, left.clone(), a, x, right.clone()),
        (XRule::CapR, _, _) => (**right).clone(),
        (XRule::ExpR, _, Net::Export { socket: y, body: q, plug: b, out: g }) => {
            Net::Export { socket: *y, body: cut_r(q), plug: *b, out: *g }
        }
        (XRule::ImpOutsR, _, Net::Import { left: q, plug: b, socket: y, right: r, .. }) => {
            let z = Socket(supply.fresh(x.0));
            let inner = Net::Import { left: cut_r(q), plug: *b, middle: z, socket: *y, right: cut_r(r) };
            mk(CutKind::Plain, left.clone(), a, z, arc(inner))
        }
        (XRule::ImpInsR, _, Net::Import { left: q, plug: b, middle: z, socket: y, right: r }) => {
            Net::Import { left: cut_r(q), plug: *b, middle: *z, socket: *y, right: cut_r(r) }
        }
        (XRule::CutR, _, Net::Cut { left: q, plug: b, socket: y, right: r, .. }) => {
            mk(CutKind::Plain, cut_r(q), *b, *y, cut_r(r))
        }
        _ => {
            let _ = kind;
            return None;
        }
    })
}

/// Apply `redex`. The net is refreshed first, so the side conditions and the
/// duplicated sub-nets respect the Barendregt convention; the result is
/// refreshed again.
pub fn apply_redex(net: &Net, redex: &Redex, supply: &mut FreshSupply) -> Result<Net, RewriteError> {
    let fresh = net.refresh(supply);
    let mismatch = || RewriteError::RedexMismatch { path: format_path(&redex.path), rule: redex.rule };
    let sub = fresh.at(&redex.path).ok_or_else(mismatch)?;
    let new = contract(sub, redex.rule, supply).ok_or_else(mismatch)?;
    let out = fresh.replace_at(&redex.path, new).ok_or_else(mismatch)?;
    Ok(out.refresh(supply))
}

/// All one-step reducts, deduplicated up to alpha.
pub fn step_all(net: &Net) -> Vec<Net> {
    let base = FreshSupply::above(net.all_symbols());
    let redexes = find_redexes(net);
    // Each branch gets its own supply seeded from the parent counter.
    let results = crate::par::map(&redexes, |r| apply_redex(net, r, &mut base.clone()).ok());
    let mut seen = IndexMap::new();
    for n in results.into_iter().flatten() {
        seen.entry(n.canonical()).or_insert(n);
    }
    seen.into_values().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Full,
    Cbn,
    Cbv,
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "full" => Ok(Strategy::Full),
            "cbn" => Ok(Strategy::Cbn),
            "cbv" => Ok(Strategy::Cbv),
            _ => Err(format!("unknown strategy `{}` (expected full, cbn or cbv)", s)),
        }
    }
}

/// Redexes permitted by `strategy`, in canonical order.
///
/// CBV activates a cut to the right only when the left side introduces its
/// plug and the right side does not introduce its socket, and keeps the left
/// grouping of (exp-imp); CBN is the mirror image.
pub fn strategy_redexes(net: &Net, strategy: Strategy) -> Vec<Redex> {
    let all = find_redexes(net);
    if strategy == Strategy::Full {
        return all;
    }
    all.into_iter()
        .filter(|r| {
            let node = || net.at(&r.path).expect("redex path");
            let intro = || match node() {
                Net::Cut { left, plug, socket, right, .. } => {
                    (left.introduces_plug(*plug), right.introduces_socket(*socket))
                }
                _ => (false, false),
            };
            match (strategy, r.rule) {
                (Strategy::Cbv, XRule::ExpImpRight) | (Strategy::Cbn, XRule::ExpImpLeft) => false,
                (Strategy::Cbv, XRule::ActR) => intro() == (true, false),
                (Strategy::Cbn, XRule::ActL) => intro() == (false, true),
                _ => true,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub redex: Redex,
    pub net: Net,
    /// Redexes available before this step; above one marks a branch point.
    pub alternatives: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub initial: Net,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn last(&self) -> &Net {
        self.steps.last().map_or(&self.initial, |s| &s.net)
    }

    pub fn branch_points(&self) -> Vec<usize> {
        self.steps.iter().enumerate().filter(|(_, s)| s.alternatives > 1).map(|(i, _)| i).collect()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{} => {}", s.redex, s.net)?;
        }
        Ok(())
    }
}

/// Reduce with the first permitted redex until normal form or `max_steps`.
pub fn reduce(net: &Net, strategy: Strategy, max_steps: usize) -> Result<Trace, RewriteError> {
    reduce_with(net, strategy, max_steps, &mut FreshSupply::new(), |_| Some(0))
}

/// Reduce, letting `choose` pick among the permitted redexes (returning an
/// index); `None` stops early.
pub fn reduce_with(
    net: &Net,
    strategy: Strategy,
    max_steps: usize,
    supply: &mut FreshSupply,
    mut choose: impl FnMut(&[Redex]) -> Option<usize>,
) -> Result<Trace, RewriteError> {
    let mut trace = Trace { initial: net.clone(), steps: Vec::new() };
    let mut cur = net.clone();
    loop {
        let rs = strategy_redexes(&cur, strategy);
        if rs.is_empty() {
            return Ok(trace);
        }
        if trace.steps.len() >= max_steps {
            return Err(RewriteError::BudgetExceeded(Box::new(trace)));
        }
        let Some(i) = choose(&rs) else { return Ok(trace) };
        let r = rs.get(i).cloned().ok_or_else(|| RewriteError::RedexMismatch { path: "?".into(), rule: XRule::Ax })?;
        cur = apply_redex(&cur, &r, supply)?;
        trace.steps.push(TraceStep { redex: r, net: cur.clone(), alternatives: rs.len() });
    }
}

/// Apply the admissible rules bottom-up wherever their side conditions hold.
pub fn gc_renaming(net: &Net) -> Net {
    let fresh = net.refresh(&mut FreshSupply::new());
    shortcut(&fresh)
}

/// Which admissible rule applies at the root, if any.
pub fn admissible_at(net: &Net) -> Option<XRule> {
    let Net::Cut { kind, left, plug, socket, right } = net else { return None };
    match kind {
        CutKind::Left if !left.has_free_plug(*plug) => Some(XRule::GcL),
        CutKind::Right if !right.has_free_socket(*socket) => Some(XRule::GcR),
        CutKind::Plain => match (&**left, &**right) {
            (_, Net::Capsule { socket: z, .. }) if z == socket => Some(XRule::RenL),
            (Net::Capsule { plug: a, .. }, _) if a == plug => Some(XRule::RenR),
            _ => None,
        },
        _ => None,
    }
}

fn shortcut(net: &Net) -> Net {
    let rebuilt = match net {
        Net::Capsule { .. } => net.clone(),
        Net::Export { socket, body, plug, out } => {
            Net::Export { socket: *socket, body: arc(shortcut(body)), plug: *plug, out: *out }
        }
        Net::Import { left, plug, middle, socket, right } => Net::Import {
            left: arc(shortcut(left)),
            plug: *plug,
            middle: *middle,
            socket: *socket,
            right: arc(shortcut(right)),
        },
        Net::Cut { kind, left, plug, socket, right } => Net::Cut {
            kind: *kind,
            left: arc(shortcut(left)),
            plug: *plug,
            socket: *socket,
            right: arc(shortcut(right)),
        },
    };
    let Some(rule) = admissible_at(&rebuilt) else { return rebuilt };
    let Net::Cut { left, plug, socket, right, .. } = &rebuilt else { unreachable!() };
    match (rule, &**left, &**right) {
        (XRule::GcL, _, _) => (**left).clone(),
        (XRule::GcR, _, _) => (**right).clone(),
        (XRule::RenL, _, Net::Capsule { plug: a, .. }) => left.subst_plug(*plug, *a),
        (XRule::RenR, Net::Capsule { socket: z, .. }, _) => right.subst_socket(*socket, *z),
        _ => rebuilt,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xnet::parse_xnet;

    fn net(s: &str) -> Net {
        crate::xnet::parse_xnet_with(s, crate::xnet::ParseOptions { allow_active: true }).unwrap()
    }

    fn root(rule: XRule) -> Redex {
        Redex { path: vec![], rule }
    }

    #[test]
    fn redex_examples() {
        assert_eq!(find_redexes(&net("cut(<y.a> | a / x | <x.b>)")), vec![root(XRule::Ax)]);
        assert!(find_redexes(&net("<x.a>")).is_empty());
        assert_eq!(
            find_redexes(&net("cut(<x.a> | g / z | <y.b>)")),
            vec![root(XRule::ActL), root(XRule::ActR)]
        );
    }

    #[test]
    fn logical_right_hand_sides() {
        let mut s = FreshSupply::new();
        let ax = net("cut(<y.a> | a / x | <x.b>)");
        assert_eq!(apply_redex(&ax, &root(XRule::Ax), &mut s).unwrap(), Net::capsule("y", "b"));
        let er = net("cut(exp(y; <y.b>; b).a | a / x | <x.g>)");
        let got = apply_redex(&er, &root(XRule::ExpRen), &mut s).unwrap();
        assert!(got.alpha_eq(&net("exp(y; <y.b>; b).g")));
        let ei = net("cut(exp(y; <y.b>; b).a | a / x | imp(<u.g> | g / [x] / z | <z.d>))");
        let l = apply_redex(&ei, &root(XRule::ExpImpLeft), &mut s).unwrap();
        assert!(l.alpha_eq(&net("cut(<u.g> | g / y | cut(<y.b> | b / z | <z.d>))")));
        let r = apply_redex(&ei, &root(XRule::ExpImpRight), &mut s).unwrap();
        assert!(r.alpha_eq(&net("cut(cut(<u.g> | g / y | <y.b>) | b / z | <z.d>)")));
    }

    #[test]
    fn mismatch_is_reported() {
        let c = net("<x.a>");
        let e = apply_redex(&c, &root(XRule::Ax), &mut FreshSupply::new()).unwrap_err();
        assert!(matches!(e, RewriteError::RedexMismatch { .. }));
    }

    #[test]
    fn strategies() {
        let ax = net("cut(<y.a> | a / x | <x.b>)");
        let t = reduce(&ax, Strategy::Cbn, 10).unwrap();
        assert_eq!(t.last(), &Net::capsule("y", "b"));
        assert_eq!(t.to_string(), "/ Ax => <y.b>\n");
        let t = reduce(&Net::capsule("x", "a"), Strategy::Full, 0).unwrap();
        assert!(t.steps.is_empty());
        let v = net("cut(exp(x; <x.a>; a).b | b / z | <z.g>)");
        let t = reduce(&v, Strategy::Cbv, 10).unwrap();
        assert!(t.last().alpha_eq(&net("exp(x; <x.a>; a).g")));
    }

    #[test]
    fn cbv_activates_left_first() {
        let n = net("cut(<x.a> | g / z | <y.b>)");
        let rs = strategy_redexes(&n, Strategy::Cbv);
        assert_eq!(rs, vec![root(XRule::ActL)]);
        let rs = strategy_redexes(&n, Strategy::Cbn);
        assert_eq!(rs, vec![root(XRule::ActR)]);
    }

    #[test]
    fn budget_exceeded_carries_trace() {
        let n = net("cut(<x.a> | g / z | <y.b>)");
        match reduce(&n, Strategy::Full, 1) {
            Err(RewriteError::BudgetExceeded(t)) => assert_eq!(t.steps.len(), 1),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn non_confluence_in_two_steps() {
        let n = net("cut(<x.a> | g / z | <y.b>)");
        let two: Vec<Net> = step_all(&n).iter().flat_map(step_all).collect();
        assert!(two.iter().any(|m| m.alpha_eq(&net("<x.a>"))));
        assert!(two.iter().any(|m| m.alpha_eq(&net("<y.b>"))));
    }

    #[test]
    fn shortcuts() {
        let g = net("cutL(<y.b> | a / x | <x.c>)");
        assert_eq!(gc_renaming(&g), net("<y.b>"));
        let r = net("cut(exp(u; <u.d>; d).e | e / z | <z.a>)");
        assert!(gc_renaming(&r).alpha_eq(&net("exp(u; <u.d>; d).a")));
        let c = parse_xnet("exp(x; <x.a>; a).b").unwrap();
        assert!(gc_renaming(&c).alpha_eq(&c));
    }

    #[test]
    fn paths_print_and_parse() {
        assert_eq!(format_path(&[]), "/");
        assert_eq!(format_path(&[0, 1]), "/0/1");
        assert_eq!(parse_path("/0/1"), Some(vec![0, 1]));
        assert_eq!(parse_path("/"), Some(vec![]));
        assert_eq!(parse_path("/2"), None);
        for r in XRule::ALL {
            assert_eq!(r.tag().parse::<XRule>(), Ok(r));
        }
    }
}
