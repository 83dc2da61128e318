//! Brute-force redex enumeration for nets, written against the syntax only:
//! positions are found by probing child indices, and every side condition is
//! recomputed from scratch by counting free occurrences.

use seqpi::xnet::{CutKind, Net, Plug, Socket};
use seqpi::xrewrite::XRule;

fn socket_free(n: &Net, x: Socket) -> usize {
    match n {
        Net::Capsule { socket, .. } => (*socket == x) as usize,
        Net::Export { socket, body, .. } => if *socket == x { 0 } else { socket_free(body, x) },
        Net::Import { left, middle, socket, right, .. } => {
            (*middle == x) as usize + socket_free(left, x) + if *socket == x { 0 } else { socket_free(right, x) }
        }
        Net::Cut { left, socket, right, .. } => socket_free(left, x) + if *socket == x { 0 } else { socket_free(right, x) },
    }
}

fn plug_free(n: &Net, a: Plug) -> usize {
    match n {
        Net::Capsule { plug, .. } => (*plug == a) as usize,
        Net::Export { body, plug, out, .. } => (*out == a) as usize + if *plug == a { 0 } else { plug_free(body, a) },
        Net::Import { left, plug, right, .. } => (if *plug == a { 0 } else { plug_free(left, a) }) + plug_free(right, a),
        Net::Cut { left, plug, right, .. } => (if *plug == a { 0 } else { plug_free(left, a) }) + plug_free(right, a),
    }
}

/// The connector is free exactly once, at the top constructor.
fn exposes_plug(n: &Net, a: Plug) -> bool {
    let top = matches!(n, Net::Capsule { plug, .. } if *plug == a) || matches!(n, Net::Export { out, .. } if *out == a);
    top && plug_free(n, a) == 1
}

fn exposes_socket(n: &Net, x: Socket) -> bool {
    let top = matches!(n, Net::Capsule { socket, .. } if *socket == x) || matches!(n, Net::Import { middle, .. } if *middle == x);
    top && socket_free(n, x) == 1
}

fn root_rules(n: &Net) -> Vec<XRule> {
    use XRule::*;
    let Net::Cut { kind, left, plug, socket, right } = n else { return vec![] };
    let (l, r) = (&**left, &**right);
    let mut rules = Vec::new();
    match kind {
        CutKind::Plain => {
            let (li, ri) = (exposes_plug(l, *plug), exposes_socket(r, *socket));
            let cap = |n: &Net| matches!(n, Net::Capsule { .. });
            let exp = |n: &Net| matches!(n, Net::Export { .. });
            let imp = |n: &Net| matches!(n, Net::Import { .. });
            if li && ri {
                if cap(l) && cap(r) {
                    rules.push(Ax);
                }
                if exp(l) && cap(r) {
                    rules.push(ExpRen);
                }
                if cap(l) && imp(r) {
                    rules.push(ImpRen);
                }
                if exp(l) && imp(r) {
                    rules.extend([ExpImpLeft, ExpImpRight]);
                }
            }
            if !li {
                rules.push(ActL);
            }
            if !ri {
                rules.push(ActR);
            }
        }
        CutKind::Left => match l {
            Net::Capsule { plug: b, .. } => rules.push(if b == plug { DL } else { CapL }),
            Net::Export { out, .. } => rules.push(if out == plug { ExpOutsL } else { ExpInsL }),
            Net::Import { .. } => rules.push(ImpL),
            Net::Cut { kind: CutKind::Plain, .. } => rules.push(CutL),
            Net::Cut { .. } => {}
        },
        CutKind::Right => match r {
            Net::Capsule { socket: y, .. } => rules.push(if y == socket { DR } else { CapR }),
            Net::Export { .. } => rules.push(ExpR),
            Net::Import { middle, .. } => rules.push(if middle == socket { ImpOutsR } else { ImpInsR }),
            Net::Cut { kind: CutKind::Plain, .. } => rules.push(CutR),
            Net::Cut { .. } => {}
        },
    }
    rules
}

/// Every `(path, rule)` pair, sorted.
pub fn redexes(n: &Net) -> Vec<(Vec<u8>, XRule)> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(path) = stack.pop() {
        let Some(sub) = n.at(&path) else { continue };
        out.extend(root_rules(sub).into_iter().map(|r| (path.clone(), r)));
        for i in 0..2u8 {
            let mut p = path.clone();
            p.push(i);
            stack.push(p);
        }
    }
    out.sort();
    out
}


/// Calls `f` on every net of exactly `size` constructors over two sockets
/// and two plugs, with every cut kind. Nets up to `cache` constructors are
/// kept in memory; bigger ones are streamed.
pub struct Nets {
    by_size: Vec<Vec<Net>>,
    sockets: [Socket; 2],
    plugs: [Plug; 2],
}

impl Nets {
    pub fn new(cache: usize) -> Nets {
        let mut n = Nets {
            by_size: vec![vec![]],
            sockets: [Socket::from("x"), Socket::from("y")],
            plugs: [Plug::from("a"), Plug::from("b")],
        };
        for size in 1..=cache {
            let mut v = Vec::new();
            n.each(size, &mut |net| v.push(net));
            n.by_size.push(v);
        }
        n
    }

    pub fn each(&self, size: usize, f: &mut dyn FnMut(Net)) {
        if let Some(v) = self.by_size.get(size).filter(|_| size > 0) {
            v.iter().cloned().for_each(f);
            return;
        }
        for shape in 0..Nets::shapes(size) {
            self.each_shape(size, shape, false, f);
        }
    }

    /// Root constructors of nets of `size`: a capsule, or an export when
    /// `size > 1`, followed by one binary shape per size of the left child.
    pub fn shapes(size: usize) -> usize {
        size.saturating_sub(1).max(1)
    }

    /// Nets of `size` with the given root shape. With `rooted`, the first
    /// socket and the first plug of the root constructor are fixed to `x` and
    /// `a`, which leaves one net of each orbit under swapping the two sockets
    /// and swapping the two plugs.
    pub fn each_shape(&self, size: usize, shape: usize, rooted: bool, f: &mut dyn FnMut(Net)) {
        let (sockets, plugs) = (self.sockets, self.plugs);
        let (rs, rp) = if rooted { (&sockets[..1], &plugs[..1]) } else { (&sockets[..], &plugs[..]) };
        if size == 1 {
            for &x in rs {
                for &a in rp {
                    f(Net::capsule(x, a));
                }
            }
            return;
        }
        if shape == 0 {
            self.each(size - 1, &mut |body| {
                for &x in rs {
                    for &a in rp {
                        for g in plugs {
                            f(Net::export(x, body.clone(), a, g));
                        }
                    }
                }
            });
            return;
        }
        let l = shape;
        self.each(l, &mut |left| {
            self.each(size - 1 - l, &mut |right| {
                for &a in rp {
                    for &x in rs {
                        for z in sockets {
                            f(Net::import(left.clone(), a, x, z, right.clone()));
                        }
                    }
                    for &x in rs {
                        for kind in [CutKind::Plain, CutKind::Left, CutKind::Right] {
                            f(Net::cut_kind(kind, left.clone(), a, x, right.clone()));
                        }
                    }
                }
            })
        });
    }
}
