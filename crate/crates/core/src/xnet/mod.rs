//! Nets of the X calculus and their binding structure.

mod text;

pub use text::{parse_xnet, parse_xnet_with, ParseOptions};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::symbol::{FreshSupply, Symbol};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Socket(pub Symbol);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plug(pub Symbol);

impl From<&str> for Socket {
    fn from(s: &str) -> Socket {
        Socket(Symbol::intern(s))
    }
}

impl From<&str> for Plug {
    fn from(s: &str) -> Plug {
        Plug(Symbol::intern(s))
    }
}

impl From<Symbol> for Socket {
    fn from(s: Symbol) -> Socket {
        Socket(s)
    }
}

impl From<Symbol> for Plug {
    fn from(s: Symbol) -> Plug {
        Plug(s)
    }
}

impl fmt::Debug for Socket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Plug {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Socket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Plug {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A connector is a name together with its kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connector {
    Socket(Socket),
    Plug(Plug),
}

impl Connector {
    pub fn symbol(self) -> Symbol {
        match self {
            Connector::Socket(s) => s.0,
            Connector::Plug(p) => p.0,
        }
    }
}

impl fmt::Display for Connector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connector::Socket(s) => write!(f, "socket {}", s),
            Connector::Plug(p) => write!(f, "plug {}", p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CutKind {
    Plain,
    /// Activated towards the left sub-net (`cutL`).
    Left,
    /// Activated towards the right sub-net (`cutR`).
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Net {
    Capsule {
        socket: Socket,
        plug: Plug,
    },
    /// `exp(socket; body; plug).out` binds `socket` and `plug` in `body`.
    Export {
        socket: Socket,
        body: Arc<Net>,
        plug: Plug,
        out: Plug,
    },
    /// `imp(left | plug / [middle] / socket | right)` binds `plug` in `left`
    /// and `socket` in `right`; `middle` is free.
    Import {
        left: Arc<Net>,
        plug: Plug,
        middle: Socket,
        socket: Socket,
        right: Arc<Net>,
    },
    Cut {
        kind: CutKind,
        left: Arc<Net>,
        plug: Plug,
        socket: Socket,
        right: Arc<Net>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenameError {
    #[error("cannot rename {old} to {new}: connectors of different kinds")]
    KindMismatch { old: Connector, new: Connector },
}

impl Net {
    pub fn capsule(socket: impl Into<Socket>, plug: impl Into<Plug>) -> Net {
        Net::Capsule { socket: socket.into(), plug: plug.into() }
    }

    pub fn export(socket: impl Into<Socket>, body: Net, plug: impl Into<Plug>, out: impl Into<Plug>) -> Net {
        Net::Export { socket: socket.into(), body: Arc::new(body), plug: plug.into(), out: out.into() }
    }

    pub fn import(
        left: Net,
        plug: impl Into<Plug>,
        middle: impl Into<Socket>,
        socket: impl Into<Socket>,
        right: Net,
    ) -> Net {
        Net::Import {
            left: Arc::new(left),
            plug: plug.into(),
            middle: middle.into(),
            socket: socket.into(),
            right: Arc::new(right),
        }
    }

    pub fn cut_kind(kind: CutKind, left: Net, plug: impl Into<Plug>, socket: impl Into<Socket>, right: Net) -> Net {
        Net::Cut { kind, left: Arc::new(left), plug: plug.into(), socket: socket.into(), right: Arc::new(right) }
    }

    pub fn cut(left: Net, plug: impl Into<Plug>, socket: impl Into<Socket>, right: Net) -> Net {
        Net::cut_kind(CutKind::Plain, left, plug, socket, right)
    }

    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self {
            Net::Capsule { .. } => 1,
            Net::Export { body, .. } => 1 + body.size(),
            Net::Import { left, right, .. } | Net::Cut { left, right, .. } => 1 + left.size() + right.size(),
        }
    }

    pub fn children(&self) -> Vec<&Arc<Net>> {
        match self {
            Net::Capsule { .. } => vec![],
            Net::Export { body, .. } => vec![body],
            Net::Import { left, right, .. } | Net::Cut { left, right, .. } => vec![left, right],
        }
    }

    /// The sub-net at `path` (child indices from the root).
    pub fn at(&self, path: &[u8]) -> Option<&Net> {
        let mut cur = self;
        for &i in path {
            cur = match (cur, i) {
                (Net::Export { body, .. }, 0) => body,
                (Net::Import { left, .. } | Net::Cut { left, .. }, 0) => left,
                (Net::Import { right, .. } | Net::Cut { right, .. }, 1) => right,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Replace the sub-net at `path`, sharing everything off the path.
    pub fn replace_at(&self, path: &[u8], new: Net) -> Option<Net> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(new);
        };
        let mut out = self.clone();
        match (&mut out, i) {
            (Net::Export { body, .. }, 0) => *body = Arc::new(body.replace_at(rest, new)?),
            (Net::Import { left, .. } | Net::Cut { left, .. }, 0) => *left = Arc::new(left.replace_at(rest, new)?),
            (Net::Import { right, .. } | Net::Cut { right, .. }, 1) => *right = Arc::new(right.replace_at(rest, new)?),
            _ => return None,
        }
        Some(out)
    }

    pub fn has_free_socket(&self, x: Socket) -> bool {
        match self {
            Net::Capsule { socket, .. } => *socket == x,
            Net::Export { socket, body, .. } => *socket != x && body.has_free_socket(x),
            Net::Import { left, middle, socket, right, .. } => {
                *middle == x || left.has_free_socket(x) || (*socket != x && right.has_free_socket(x))
            }
            Net::Cut { left, socket, right, .. } => left.has_free_socket(x) || (*socket != x && right.has_free_socket(x)),
        }
    }

    pub fn has_free_plug(&self, a: Plug) -> bool {
        match self {
            Net::Capsule { plug, .. } => *plug == a,
            Net::Export { body, plug, out, .. } => *out == a || (*plug != a && body.has_free_plug(a)),
            Net::Import { left, plug, right, .. } | Net::Cut { left, plug, right, .. } => {
                (*plug != a && left.has_free_plug(a)) || right.has_free_plug(a)
            }
        }
    }

    pub fn free_sockets(&self) -> BTreeSet<Socket> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out, &mut BTreeSet::new());
        out
    }

    pub fn free_plugs(&self) -> BTreeSet<Plug> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    pub fn free_connectors(&self) -> BTreeSet<Connector> {
        let (mut s, mut p) = (BTreeSet::new(), BTreeSet::new());
        self.collect_free(&mut s, &mut p);
        s.into_iter().map(Connector::Socket).chain(p.into_iter().map(Connector::Plug)).collect()
    }

    fn collect_free(&self, socks: &mut BTreeSet<Socket>, plugs: &mut BTreeSet<Plug>) {
        match self {
            Net::Capsule { socket, plug } => {
                socks.insert(*socket);
                plugs.insert(*plug);
            }
            Net::Export { socket, body, plug, out } => {
                let (mut s, mut p) = (BTreeSet::new(), BTreeSet::new());
                body.collect_free(&mut s, &mut p);
                s.remove(socket);
                p.remove(plug);
                socks.extend(s);
                plugs.extend(p);
                plugs.insert(*out);
            }
            Net::Import { left, plug, socket, right, .. } | Net::Cut { left, plug, socket, right, .. } => {
                let (mut s, mut p) = (BTreeSet::new(), BTreeSet::new());
                left.collect_free(&mut s, &mut p);
                p.remove(plug);
                socks.extend(s);
                plugs.extend(p);
                let (mut s, mut p) = (BTreeSet::new(), BTreeSet::new());
                right.collect_free(&mut s, &mut p);
                s.remove(socket);
                socks.extend(s);
                plugs.extend(p);
                if let Net::Import { middle, .. } = self {
                    socks.insert(*middle);
                }
            }
        }
    }

    /// `P introduces x`: a capsule on `x`, or an import whose middle socket is
    /// `x` with `x` free nowhere else.
    pub fn introduces_socket(&self, x: Socket) -> bool {
        match self {
            Net::Capsule { socket, .. } => *socket == x,
            Net::Import { left, middle, socket, right, .. } => {
                *middle == x && !left.has_free_socket(x) && (*socket == x || !right.has_free_socket(x))
            }
            _ => false,
        }
    }

    /// `P introduces a`: a capsule on `a`, or an export creating `a` that is
    /// not free in the body.
    pub fn introduces_plug(&self, a: Plug) -> bool {
        match self {
            Net::Capsule { plug, .. } => *plug == a,
            Net::Export { body, plug, out, .. } => *out == a && (*plug == a || !body.has_free_plug(a)),
            _ => false,
        }
    }

    /// Every symbol occurring anywhere, bound or free.
    pub fn symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            Net::Capsule { socket, plug } => {
                out.push(socket.0);
                out.push(plug.0);
            }
            Net::Export { socket, body, plug, out: o } => {
                out.extend([socket.0, plug.0, o.0]);
                body.symbols(out);
            }
            Net::Import { left, plug, middle, socket, right } => {
                out.extend([plug.0, middle.0, socket.0]);
                left.symbols(out);
                right.symbols(out);
            }
            Net::Cut { left, plug, socket, right, .. } => {
                out.extend([plug.0, socket.0]);
                left.symbols(out);
                right.symbols(out);
            }
        }
    }

    pub fn all_symbols(&self) -> Vec<Symbol> {
        let mut v = Vec::new();
        self.symbols(&mut v);
        v
    }

    /// Rename every binder to a fresh name from `supply`.
    ///
    /// The supply is first bumped past every suffix in the net, so the result
    /// never captures a free name.
    pub fn refresh(&self, supply: &mut FreshSupply) -> Net {
        supply.bump_past(self.all_symbols());
        let mut env = Env::default();
        self.refresh_in(supply, &mut env)
    }

    /// Refresh with a supply local to this call.
    pub fn refreshed(&self) -> Net {
        self.refresh(&mut FreshSupply::new())
    }

    fn refresh_in(&self, supply: &mut FreshSupply, env: &mut Env) -> Net {
        match self {
            Net::Capsule { socket, plug } => Net::Capsule { socket: env.sock(*socket), plug: env.plug(*plug) },
            Net::Export { socket, body, plug, out } => {
                let (s2, p2) = (Socket(supply.fresh(socket.0)), Plug(supply.fresh(plug.0)));
                let out = env.plug(*out);
                env.socks.push((*socket, s2));
                env.plugs.push((*plug, p2));
                let body = body.refresh_in(supply, env);
                env.socks.pop();
                env.plugs.pop();
                Net::Export { socket: s2, body: Arc::new(body), plug: p2, out }
            }
            Net::Import { left, plug, middle, socket, right } => {
                let middle = env.sock(*middle);
                let p2 = Plug(supply.fresh(plug.0));
                env.plugs.push((*plug, p2));
                let left = left.refresh_in(supply, env);
                env.plugs.pop();
                let s2 = Socket(supply.fresh(socket.0));
                env.socks.push((*socket, s2));
                let right = right.refresh_in(supply, env);
                env.socks.pop();
                Net::Import { left: Arc::new(left), plug: p2, middle, socket: s2, right: Arc::new(right) }
            }
            Net::Cut { kind, left, plug, socket, right } => {
                let p2 = Plug(supply.fresh(plug.0));
                env.plugs.push((*plug, p2));
                let left = left.refresh_in(supply, env);
                env.plugs.pop();
                let s2 = Socket(supply.fresh(socket.0));
                env.socks.push((*socket, s2));
                let right = right.refresh_in(supply, env);
                env.socks.pop();
                Net::Cut { kind: *kind, left: Arc::new(left), plug: p2, socket: s2, right: Arc::new(right) }
            }
        }
    }

    /// Alpha-canonical representative: binders renamed `%k` in pre-order.
    pub fn canonical(&self) -> Net {
        let mut counter = 0usize;
        let mut env = Env::default();
        self.canon_in(&mut counter, &mut env)
    }

    fn canon_in(&self, counter: &mut usize, env: &mut Env) -> Net {
        let next = |counter: &mut usize| {
            let s = canon_symbol(*counter);
            *counter += 1;
            s
        };
        match self {
            Net::Capsule { socket, plug } => Net::Capsule { socket: env.sock(*socket), plug: env.plug(*plug) },
            Net::Export { socket, body, plug, out } => {
                let out = env.plug(*out);
                let (s2, p2) = (Socket(next(counter)), Plug(next(counter)));
                env.socks.push((*socket, s2));
                env.plugs.push((*plug, p2));
                let body = body.canon_in(counter, env);
                env.socks.pop();
                env.plugs.pop();
                Net::Export { socket: s2, body: Arc::new(body), plug: p2, out }
            }
            Net::Import { left, plug, middle, socket, right } => {
                let middle = env.sock(*middle);
                let p2 = Plug(next(counter));
                env.plugs.push((*plug, p2));
                let left = left.canon_in(counter, env);
                env.plugs.pop();
                let s2 = Socket(next(counter));
                env.socks.push((*socket, s2));
                let right = right.canon_in(counter, env);
                env.socks.pop();
                Net::Import { left: Arc::new(left), plug: p2, middle, socket: s2, right: Arc::new(right) }
            }
            Net::Cut { kind, left, plug, socket, right } => {
                let p2 = Plug(next(counter));
                env.plugs.push((*plug, p2));
                let left = left.canon_in(counter, env);
                env.plugs.pop();
                let s2 = Socket(next(counter));
                env.socks.push((*socket, s2));
                let right = right.canon_in(counter, env);
                env.socks.pop();
                Net::Cut { kind: *kind, left: Arc::new(left), plug: p2, socket: s2, right: Arc::new(right) }
            }
        }
    }

    pub fn alpha_eq(&self, other: &Net) -> bool {
        self.canonical() == other.canonical()
    }

    /// No name is both bound and free, and all binders are distinct.
    pub fn is_barendregt(&self) -> bool {
        let mut bound = Vec::new();
        self.binders(&mut bound);
        let n = bound.len();
        bound.sort();
        bound.dedup();
        if bound.len() != n {
            return false;
        }
        let free = self.free_connectors();
        bound.iter().all(|c| !free.contains(c))
    }

    pub fn binders(&self, out: &mut Vec<Connector>) {
        match self {
            Net::Capsule { .. } => {}
            Net::Export { socket, body, plug, .. } => {
                out.push(Connector::Socket(*socket));
                out.push(Connector::Plug(*plug));
                body.binders(out);
            }
            Net::Import { left, plug, socket, right, .. } | Net::Cut { left, plug, socket, right, .. } => {
                out.push(Connector::Plug(*plug));
                out.push(Connector::Socket(*socket));
                left.binders(out);
                right.binders(out);
            }
        }
    }

    /// Capture-avoiding substitution of `new` for the free occurrences of `old`.
    pub fn rename_connector(&self, old: Connector, new: Connector) -> Result<Net, RenameError> {
        let mut bound = Vec::new();
        self.binders(&mut bound);
        let base = if bound.iter().any(|b| b.symbol() == new.symbol()) {
            let mut supply = FreshSupply::above([new.symbol(), old.symbol()]);
            self.refresh(&mut supply)
        } else {
            self.clone()
        };
        match (old, new) {
            (Connector::Socket(o), Connector::Socket(n)) => Ok(base.subst_socket(o, n)),
            (Connector::Plug(o), Connector::Plug(n)) => Ok(base.subst_plug(o, n)),
            _ => Err(RenameError::KindMismatch { old, new }),
        }
    }

    /// Naive socket substitution; stops at binders of `old`. Callers ensure
    /// `new` is not bound anywhere in the net.
    pub(crate) fn subst_socket(&self, old: Socket, new: Socket) -> Net {
        let r = |s: Socket| if s == old { new } else { s };
        match self {
            Net::Capsule { socket, plug } => Net::Capsule { socket: r(*socket), plug: *plug },
            Net::Export { socket, body, plug, out } => Net::Export {
                socket: *socket,
                body: if *socket == old { body.clone() } else { Arc::new(body.subst_socket(old, new)) },
                plug: *plug,
                out: *out,
            },
            Net::Import { left, plug, middle, socket, right } => Net::Import {
                left: Arc::new(left.subst_socket(old, new)),
                plug: *plug,
                middle: r(*middle),
                socket: *socket,
                right: if *socket == old { right.clone() } else { Arc::new(right.subst_socket(old, new)) },
            },
            Net::Cut { kind, left, plug, socket, right } => Net::Cut {
                kind: *kind,
                left: Arc::new(left.subst_socket(old, new)),
                plug: *plug,
                socket: *socket,
                right: if *socket == old { right.clone() } else { Arc::new(right.subst_socket(old, new)) },
            },
        }
    }

    pub(crate) fn subst_plug(&self, old: Plug, new: Plug) -> Net {
        let r = |p: Plug| if p == old { new } else { p };
        match self {
            Net::Capsule { socket, plug } => Net::Capsule { socket: *socket, plug: r(*plug) },
            Net::Export { socket, body, plug, out } => Net::Export {
                socket: *socket,
                body: if *plug == old { body.clone() } else { Arc::new(body.subst_plug(old, new)) },
                plug: *plug,
                out: r(*out),
            },
            Net::Import { left, plug, middle, socket, right } => Net::Import {
                left: if *plug == old { left.clone() } else { Arc::new(left.subst_plug(old, new)) },
                plug: *plug,
                middle: *middle,
                socket: *socket,
                right: Arc::new(right.subst_plug(old, new)),
            },
            Net::Cut { kind, left, plug, socket, right } => Net::Cut {
                kind: *kind,
                left: if *plug == old { left.clone() } else { Arc::new(left.subst_plug(old, new)) },
                plug: *plug,
                socket: *socket,
                right: Arc::new(right.subst_plug(old, new)),
            },
        }
    }

    pub fn has_active_cut(&self) -> bool {
        match self {
            Net::Capsule { .. } => false,
            Net::Export { body, .. } => body.has_active_cut(),
            Net::Import { left, right, .. } => left.has_active_cut() || right.has_active_cut(),
            Net::Cut { kind, left, right, .. } => {
                *kind != CutKind::Plain || left.has_active_cut() || right.has_active_cut()
            }
        }
    }
}

fn canon_symbol(k: usize) -> Symbol {
    static CACHE: once_cell::sync::Lazy<Vec<Symbol>> =
        once_cell::sync::Lazy::new(|| (0..64).map(|k| Symbol::intern(&format!("%{k}"))).collect());
    CACHE.get(k).copied().unwrap_or_else(|| Symbol::intern(&format!("%{k}")))
}

/// Scoped renaming environment: innermost binding wins.
#[derive(Default)]
struct Env {
    socks: Vec<(Socket, Socket)>,
    plugs: Vec<(Plug, Plug)>,
}

impl Env {
    fn sock(&self, s: Socket) -> Socket {
        self.socks.iter().rev().find(|(o, _)| *o == s).map_or(s, |(_, n)| *n)
    }

    fn plug(&self, p: Plug) -> Plug {
        self.plugs.iter().rev().find(|(o, _)| *o == p).map_or(p, |(_, n)| *n)
    }
}

/// Rename map applied to free names, used when contexts follow a renaming.
pub fn rename_map(net: &Net, map: &HashMap<Connector, Connector>) -> Result<Net, RenameError> {
    let mut out = net.clone();
    // Route through temporaries so that swaps do not interfere.
    let mut supply = FreshSupply::above(net.all_symbols().into_iter().chain(map.values().map(|c| c.symbol())));
    let mut staged = Vec::new();
    for (old, new) in map {
        let tmp = match old {
            Connector::Socket(_) => Connector::Socket(Socket(supply.fresh_str("tmp"))),
            Connector::Plug(_) => Connector::Plug(Plug(supply.fresh_str("tmp"))),
        };
        out = out.rename_connector(*old, tmp)?;
        staged.push((tmp, *new));
    }
    for (tmp, new) in staged {
        out = out.rename_connector(tmp, new)?;
    }
    Ok(out)
}

impl fmt::Display for Net {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Net::Capsule { socket, plug } => write!(f, "<{}.{}>", socket, plug),
            Net::Export { socket, body, plug, out } => write!(f, "exp({}; {}; {}).{}", socket, body, plug, out),
            Net::Import { left, plug, middle, socket, right } => {
                write!(f, "imp({} | {} / [{}] / {} | {})", left, plug, middle, socket, right)
            }
            Net::Cut { kind, left, plug, socket, right } => {
                let kw = match kind {
                    CutKind::Plain => "cut",
                    CutKind::Left => "cutL",
                    CutKind::Right => "cutR",
                };
                write!(f, "{}({} | {} / {} | {})", kw, left, plug, socket, right)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Socket {
        Socket::from(n)
    }
    fn p(n: &str) -> Plug {
        Plug::from(n)
    }

    fn peirce() -> Net {
        parse_xnet("exp(z; imp(exp(y; <y.d> ; h).a | a / [z] / w | <w.d>); d).g").unwrap()
    }

    #[test]
    fn free_names_of_small_nets() {
        let c = Net::capsule("x", "a");
        assert_eq!(c.free_sockets(), [s("x")].into());
        assert_eq!(c.free_plugs(), [p("a")].into());
        let e = Net::export("x", Net::capsule("x", "a"), "a", "b");
        assert!(e.free_sockets().is_empty());
        assert_eq!(e.free_plugs(), [p("b")].into());
        let pe = peirce();
        assert!(pe.free_sockets().is_empty());
        assert_eq!(pe.free_plugs(), [p("g")].into());
    }

    #[test]
    fn introduction() {
        assert!(Net::capsule("x", "a").introduces_socket(s("x")));
        let e = Net::export("y", Net::capsule("y", "a"), "a", "a2");
        assert!(e.introduces_plug(p("a2")));
        let e2 = Net::export("y", Net::capsule("y", "a2"), "a", "a2");
        assert!(!e2.introduces_plug(p("a2")));
        let i = Net::import(Net::capsule("z", "b"), "b", "x", "w", Net::capsule("x", "c"));
        assert!(!i.introduces_socket(s("x")));
        let i2 = Net::import(Net::capsule("z", "b"), "b", "x", "w", Net::capsule("w", "c"));
        assert!(i2.introduces_socket(s("x")));
    }

    #[test]
    fn alpha() {
        let a = Net::export("x", Net::capsule("x", "a"), "a", "b");
        let b = Net::export("y", Net::capsule("y", "c"), "c", "b");
        assert!(a.alpha_eq(&b));
        assert!(!Net::capsule("x", "a").alpha_eq(&Net::capsule("y", "a")));
        let pe = peirce();
        let r = pe.refreshed();
        assert!(pe.alpha_eq(&r));
        assert!(r.is_barendregt());
        assert_ne!(pe, r);
    }

    #[test]
    fn refresh_is_deterministic_in_the_supply() {
        let pe = peirce();
        let mut s1 = FreshSupply::starting_at(5);
        let mut s2 = FreshSupply::starting_at(5);
        assert_eq!(pe.refresh(&mut s1), pe.refresh(&mut s2));
        assert_eq!(s1, s2);
        assert!(pe.refresh(&mut s1).to_string().contains("#1"));
    }

    #[test]
    fn renaming() {
        let c = Net::capsule("x", "a");
        let pa = |n| Connector::Plug(p(n));
        assert_eq!(c.rename_connector(pa("a"), pa("b")).unwrap(), Net::capsule("x", "b"));
        assert_eq!(c.rename_connector(pa("g"), pa("b")).unwrap(), c);
        let e = Net::export("x", Net::capsule("x", "a"), "a", "b");
        assert_eq!(
            e.rename_connector(pa("b"), pa("c")).unwrap(),
            Net::export("x", Net::capsule("x", "a"), "a", "c")
        );
        assert!(matches!(
            c.rename_connector(pa("a"), Connector::Socket(s("y"))),
            Err(RenameError::KindMismatch { .. })
        ));
    }

    #[test]
    fn rename_avoids_capture() {
        // free b renamed to a, where a is bound inside
        let e = Net::export("x", Net::capsule("x", "b"), "a", "g");
        let r = e.rename_connector(Connector::Plug(p("b")), Connector::Plug(p("a"))).unwrap();
        assert!(r.has_free_plug(p("a")));
        assert_eq!(r.free_plugs(), [p("a"), p("g")].into());
    }

    #[test]
    fn swap_through_rename_map() {
        let c = Net::cut(Net::capsule("x", "a"), "a", "y", Net::capsule("y", "b"));
        let map: HashMap<_, _> = [
            (Connector::Socket(s("x")), Connector::Socket(s("q"))),
            (Connector::Plug(p("b")), Connector::Plug(p("a"))),
        ]
        .into();
        let r = rename_map(&c, &map).unwrap();
        assert_eq!(r.free_sockets(), [s("q")].into());
        assert_eq!(r.free_plugs(), [p("a")].into());
    }

    #[test]
    fn paths() {
        let pe = peirce();
        assert!(matches!(pe.at(&[0]), Some(Net::Import { .. })));
        assert!(matches!(pe.at(&[0, 1]), Some(Net::Capsule { .. })));
        assert!(pe.at(&[1]).is_none());
        let r = pe.replace_at(&[0, 1], Net::capsule("w", "q")).unwrap();
        assert_eq!(r.at(&[0, 1]), Some(&Net::capsule("w", "q")));
    }
}
