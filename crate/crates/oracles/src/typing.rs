//! Derivability of a typing by exhaustive search over the rules, with cut
//! formulas drawn from a finite pool of types.

use seqpi::types::SimpleType;
use seqpi::xnet::{Connector, Net, Plug, Socket};
use seqpi::xtypes::ContextPair;

/// Every type over `atoms` with at most `depth` nested arrows.
pub fn types_up_to(atoms: &[&str], depth: usize) -> Vec<SimpleType> {
    let mut all: Vec<SimpleType> = atoms.iter().map(|a| SimpleType::var(a)).collect();
    for _ in 0..depth {
        let mut next: Vec<SimpleType> = atoms.iter().map(|a| SimpleType::var(a)).collect();
        for a in &all {
            for b in &all {
                next.push(SimpleType::arrow(a.clone(), b.clone()));
            }
        }
        all = next;
    }
    all
}

fn arrow(t: &SimpleType) -> Option<(&SimpleType, &SimpleType)> {
    match t {
        SimpleType::Arrow(a, b) => Some((&**a, &**b)),
        _ => None,
    }
}

/// Is there a derivation of `net : ctx`? The context must give a type to
/// every free connector; extra entries are weakened away at the capsules.
pub fn derivable(net: &Net, ctx: &ContextPair, pool: &[SimpleType]) -> bool {
    let mut env: Vec<(Connector, SimpleType)> = ctx.gamma.iter().map(|(k, t)| (Connector::Socket(*k), t.clone())).collect();
    env.extend(ctx.delta.iter().map(|(k, t)| (Connector::Plug(*k), t.clone())));
    go(net, &mut env, pool)
}

/// Innermost binding wins.
fn lookup(env: &[(Connector, SimpleType)], c: Connector) -> Option<&SimpleType> {
    env.iter().rev().find(|e| e.0 == c).map(|e| &e.1)
}

fn under(env: &mut Vec<(Connector, SimpleType)>, bound: &[(Connector, SimpleType)], f: impl FnOnce(&mut Vec<(Connector, SimpleType)>) -> bool) -> bool {
    let n = env.len();
    env.extend(bound.iter().cloned());
    let r = f(env);
    env.truncate(n);
    r
}

fn go(net: &Net, env: &mut Vec<(Connector, SimpleType)>, pool: &[SimpleType]) -> bool {
    let s = |x: Socket| Connector::Socket(x);
    let p = |a: Plug| Connector::Plug(a);
    match net {
        Net::Capsule { socket, plug } => match (lookup(env, s(*socket)), lookup(env, p(*plug))) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        },
        Net::Export { socket, body, plug, out } => {
            let Some((a, b)) = lookup(env, p(*out)).and_then(arrow) else { return false };
            // shadows the out plug inside the body when the two coincide
            let bound = [(s(*socket), a.clone()), (p(*plug), b.clone())];
            under(env, &bound, |env| go(body, env, pool))
        }
        Net::Import { left, plug, middle, socket, right } => {
            let Some((a, b)) = lookup(env, s(*middle)).and_then(arrow) else { return false };
            let (a, b) = (a.clone(), b.clone());
            under(env, &[(p(*plug), a)], |env| go(left, env, pool))
                && under(env, &[(s(*socket), b)], |env| go(right, env, pool))
        }
        Net::Cut { left, plug, socket, right, .. } => pool.iter().any(|t| {
            under(env, &[(p(*plug), t.clone())], |env| go(left, env, pool))
                && under(env, &[(s(*socket), t.clone())], |env| go(right, env, pool))
        }),
    }
}
