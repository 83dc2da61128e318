//! Nets into processes.
//!
//! Every cut, activated or not, becomes the parallel composition of its two
//! one-sided images, each of which may copy its side through a replicated
//! forwarder.

use std::sync::Arc;

use crate::pi::{forwarder, Datum, Proc};
use crate::pitypes::PiContextPair;
use crate::symbol::FreshSupply;
use crate::xnet::Net;
use crate::xtypes::ContextPair;

pub fn encode_x(net: &Net) -> Proc {
    let mut supply = FreshSupply::above(net.all_symbols());
    encode_with(net, &mut supply)
}

/// As `encode_x`, drawing the names of forwarders and pair components from
/// `supply`, which must lie above every name of `net`.
pub fn encode_with(net: &Net, s: &mut FreshSupply) -> Proc {
    let arc = |p: Proc| Arc::new(p);
    match net {
        Net::Capsule { socket, plug } => forwarder(socket.0, plug.0, s),
        Net::Export { socket, body, plug, out } => {
            let (x, a) = (socket.0, plug.0);
            let send = Proc::Out(out.0, Datum::Pair(x, a));
            Proc::New(x, arc(Proc::New(a, arc(Proc::par(encode_with(body, s), send)))))
        }
        Net::Import { left, plug, middle, socket, right } => {
            let (a, x) = (plug.0, socket.0);
            let (w, v, d) = (s.fresh_str("w"), s.fresh_str("v"), s.fresh_str("d"));
            let l = Proc::New(a, arc(Proc::repl(Proc::par(encode_with(left, s), forwarder(a, v, s)))));
            let r = Proc::New(x, arc(Proc::repl(Proc::par(forwarder(d, x, s), encode_with(right, s)))));
            let body = Proc::Let(v, d, Datum::Name(w), arc(Proc::par(l, r)));
            Proc::In(middle.0, w, arc(body))
        }
        Net::Cut { left, plug, socket, right, .. } => {
            let (a, x) = (plug.0, socket.0);
            let copy_right = Proc::repl(Proc::New(x, arc(Proc::par(forwarder(a, x, s), encode_with(right, s)))));
            let left_side = Proc::New(a, arc(Proc::par(encode_with(left, s), copy_right)));
            let copy_left = Proc::New(a, arc(Proc::repl(Proc::par(encode_with(left, s), forwarder(a, x, s)))));
            let right_side = Proc::New(x, arc(Proc::par(copy_left, encode_with(right, s))));
            Proc::par(left_side, right_side)
        }
    }
}

/// Sockets are inputs, plugs outputs.
pub fn pi_context(ctx: &ContextPair) -> PiContextPair {
    PiContextPair {
        gamma: ctx.gamma.iter().map(|(k, t)| (k.0, t.clone())).collect(),
        delta: ctx.delta.iter().map(|(k, t)| (k.0, t.clone())).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::parse_pi;
    use crate::pitypes::pi_check;
    use crate::types::parse_type;
    use crate::xnet::parse_xnet;
    use crate::xtypes::infer_x;

    #[test]
    fn capsule_is_a_forwarder() {
        let p = encode_x(&Net::capsule("x", "al"));
        assert!(p.alpha_eq(&parse_pi("x(o). al<o>").unwrap()), "{}", p);
    }

    #[test]
    fn export_clause() {
        let p = encode_x(&parse_xnet("exp(x; <x.b>; b).al").unwrap());
        assert!(p.alpha_eq(&parse_pi("new x. new b. (x(o). b<o> | al<<x,b>>)").unwrap()), "{}", p);
    }

    #[test]
    fn peirce_types() {
        let net = parse_xnet("exp(z; imp(exp(y; <y.d> ; h).a | a / [z] / w | <w.d>); d).g").unwrap();
        let (ctx, _) = infer_x(&net).unwrap();
        let p = encode_x(&net);
        assert!(pi_check(&p, &pi_context(&ctx)));
        let wrong = PiContextPair::new().output("g", parse_type("((A -> B) -> B) -> A").unwrap());
        assert!(!pi_check(&p, &wrong));
    }

    #[test]
    fn free_names_are_free_connectors() {
        let net = parse_xnet("cut(<x.a> | a / y | imp(<u.c> | c / [y] / z | <z.b>))").unwrap();
        let fc: Vec<_> = net.free_connectors().into_iter().map(|c| c.symbol()).collect();
        let fnames: Vec<_> = encode_x(&net).free_names().into_iter().collect();
        let mut fc = fc;
        fc.sort();
        assert_eq!(fnames, fc);
    }
}
