use std::collections::HashSet;

use proptest::prelude::*;
use proptest::strategy::Strategy as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqpi::corpus::{random_net, Corpus};
use seqpi::types::{parse_type, unify, SimpleType, UnifyError};
use seqpi::xnet::{parse_xnet, parse_xnet_with, Connector, CutKind, Net, ParseOptions, Plug, Socket};
use seqpi::xrewrite::{apply_redex, find_redexes, gc_renaming, reduce, reduce_with, step_all, Redex, Strategy, XRule};
use seqpi::xtypes::{check_x, infer_x, ContextPair};
use seqpi::FreshSupply;

const PEIRCE: &str = "exp(z; imp(exp(y; <y.d> ; h).a | a / [z] / w | <w.d>); d).g";

fn net(s: &str) -> Net {
    parse_xnet(s).unwrap()
}

fn ty(s: &str) -> SimpleType {
    parse_type(s).unwrap()
}

fn nets() -> impl proptest::strategy::Strategy<Value = Net> {
    (any::<u64>(), 1usize..10).prop_map(|(seed, size)| random_net(&mut ChaCha8Rng::seed_from_u64(seed), size))
}

fn typed_nets() -> impl proptest::strategy::Strategy<Value = Net> {
    nets().prop_filter("untypeable", |n| infer_x(n).is_ok())
}

#[test]
fn parsing() {
    assert_eq!(net("<x.a>"), Net::capsule("x", "a"));
    assert_eq!(
        net("cut(<y.a> | a / x | <x.b>)"),
        Net::cut(Net::capsule("y", "a"), "a", "x", Net::capsule("x", "b"))
    );
    let p = net(PEIRCE);
    assert!(matches!(p, Net::Export { .. }));
    assert_eq!(net(&p.to_string()), p);
    assert!(parse_xnet("cutL(<x.a> | a / y | <y.b>)").is_err());
    let opts = ParseOptions { allow_active: true };
    let l = parse_xnet_with("cutL(<x.a> | a / y | <y.b>)", opts).unwrap();
    assert!(matches!(l, Net::Cut { kind: CutKind::Left, .. }));
}

#[test]
fn free_connectors_and_introduction() {
    let e = net("exp(x; <x.a>; a).b");
    assert!(e.free_sockets().is_empty());
    assert_eq!(e.free_plugs().into_iter().collect::<Vec<_>>(), vec![Plug::from("b")]);
    let p = net(PEIRCE);
    assert!(p.free_sockets().is_empty());
    assert_eq!(p.free_connectors().into_iter().collect::<Vec<_>>(), vec![Connector::Plug(Plug::from("g"))]);

    assert!(net("<x.a>").introduces_socket(Socket::from("x")));
    assert!(net("exp(y; <y.a>; a).c").introduces_plug(Plug::from("c")));
    assert!(!net("exp(y; <y.c>; a).c").introduces_plug(Plug::from("c")));
    assert!(!net("imp(<z.b> | b / [x] / w | <x.c>)").introduces_socket(Socket::from("x")));
}

#[test]
fn alpha_and_renaming() {
    assert!(net("exp(x; <x.a>; a).b").alpha_eq(&net("exp(y; <y.c>; c).b")));
    assert!(!net("<x.a>").alpha_eq(&net("<y.a>")));
    let p = net(PEIRCE);
    assert!(p.alpha_eq(&p.refresh(&mut FreshSupply::new())));

    let pa = |s: &str| Connector::Plug(Plug::from(s));
    assert_eq!(net("<x.a>").rename_connector(pa("a"), pa("b")).unwrap(), net("<x.b>"));
    assert_eq!(net("<x.a>").rename_connector(pa("g"), pa("b")).unwrap(), net("<x.a>"));
    let e = net("exp(x; <x.a>; a).b").rename_connector(pa("b"), pa("c")).unwrap();
    assert_eq!(e, net("exp(x; <x.a>; a).c"));
}

#[test]
fn redexes_and_steps() {
    let root = |rule| Redex { path: vec![], rule };
    assert_eq!(find_redexes(&net("cut(<y.a> | a / x | <x.b>)")), vec![root(XRule::Ax)]);
    assert_eq!(find_redexes(&net("cut(<x.a> | g / z | <y.b>)")), vec![root(XRule::ActL), root(XRule::ActR)]);

    // both capsules are reachable in two steps
    let cut = net("cut(<x.a> | g / z | <y.b>)");
    let two: Vec<Net> = step_all(&cut).iter().flat_map(step_all).collect();
    assert!(two.iter().any(|n| n.alpha_eq(&net("<x.a>"))));
    assert!(two.iter().any(|n| n.alpha_eq(&net("<y.b>"))));
    assert!(step_all(&net("<x.a>")).is_empty());

    let er = net("cut(exp(y; <y.b>; b).a | a / x | <x.g>)");
    let got = apply_redex(&er, &root(XRule::ExpRen), &mut FreshSupply::new()).unwrap();
    assert!(got.alpha_eq(&net("exp(y; <y.b>; b).g")));
}

#[test]
fn strategies_and_shortcuts() {
    let t = reduce(&net("cut(<y.a> | a / x | <x.b>)"), Strategy::Cbn, 10).unwrap();
    assert_eq!(t.last(), &net("<y.b>"));
    assert!(reduce(&net("<x.a>"), Strategy::Full, 0).unwrap().steps.is_empty());
    let t = reduce(&net("cut(exp(x; <x.a>; a).b | b / z | <z.g>)"), Strategy::Cbv, 10).unwrap();
    assert!(t.last().alpha_eq(&net("exp(x; <x.a>; a).g")));

    let opts = ParseOptions { allow_active: true };
    let gc = parse_xnet_with("cutL(<y.b> | a / x | <x.c>)", opts).unwrap();
    assert!(gc_renaming(&gc).alpha_eq(&net("<y.b>")));
    let ren = net("cut(exp(u; <u.d>; d).e | e / z | <z.a>)");
    assert!(gc_renaming(&ren).alpha_eq(&net("exp(u; <u.d>; d).a")));
    assert!(gc_renaming(&net("<x.a>")).alpha_eq(&net("<x.a>")));
}

#[test]
fn unification_and_typing() {
    assert!(unify(&ty("P1"), &ty("P1")).unwrap().is_identity());
    let s = unify(&ty("P1 -> P2"), &ty("P3")).unwrap();
    assert_eq!(s.apply(&ty("P3")), ty("P1 -> P2"));
    assert!(matches!(unify(&ty("P1"), &ty("P1 -> P2")), Err(UnifyError::OccursCheck { .. })));

    let (c, _) = infer_x(&net("<x.a>")).unwrap();
    assert_eq!(c.gamma.values().next(), c.delta.values().next());
    let (c, _) = infer_x(&net(PEIRCE)).unwrap();
    assert!(c.gamma.is_empty());
    assert_eq!(c.delta[&Plug::from("g")], ty("((A -> B) -> A) -> A"));
    let (c, _) = infer_x(&net("cut(<x.a> | a / y | <y.b>)")).unwrap();
    assert_eq!(c.to_file(), "sock x : A\nplug b : A\n");

    let cap = net("<x.a>");
    assert!(check_x(&cap, &ContextPair::new().sock("x", ty("A -> B")).plug("a", ty("A -> B"))));
    assert!(!check_x(&cap, &ContextPair::new().sock("x", ty("A")).plug("a", ty("B"))));
    assert!(check_x(&net(PEIRCE), &ContextPair::new().plug("g", ty("((A -> B) -> A) -> A"))));
}

#[test]
fn witness_reduction_on_corpus() {
    let corpus = Corpus::bundled();
    for e in &corpus.nets {
        let Ok((ctx, _)) = infer_x(&e.term) else { continue };
        for q in step_all(&e.term) {
            assert!(check_x(&q, &ctx), "{}: {} loses {}", e.name, q, ctx);
        }
    }
}

#[test]
fn traces_are_deterministic() {
    let corpus = Corpus::bundled();
    for e in &corpus.nets {
        for strategy in [Strategy::Cbn, Strategy::Cbv] {
            let a = reduce_with(&e.term, strategy, 30, &mut FreshSupply::starting_at(100), |_| Some(0));
            let b = reduce_with(&e.term, strategy, 30, &mut FreshSupply::starting_at(100), |_| Some(0));
            assert_eq!(a.map(|t| t.to_string()), b.map(|t| t.to_string()), "{}", e.name);
        }
    }
}

/// Fewest ordinary steps from `n` to a net alpha-equal to `goal`, searching
/// breadth first up to `max` steps.
fn distance(n: &Net, goal: &Net, max: usize) -> Option<usize> {
    let mut seen: HashSet<String> = HashSet::from([n.canonical().to_string()]);
    let mut frontier = vec![n.clone()];
    for k in 0..=max {
        if frontier.iter().any(|m| m.alpha_eq(goal)) {
            return Some(k);
        }
        let mut next = Vec::new();
        for m in &frontier {
            for q in step_all(m) {
                if seen.insert(q.canonical().to_string()) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    None
}

// A garbage cut sitting over another cut has to be propagated through the
// whole right side, which can take one step more than the size of the net
// (gen-19 needs 7 at size 6), hence twice the size.
#[test]
fn shortcuts_are_reachable() {
    let corpus = Corpus::bundled();
    for e in &corpus.nets {
        let g = gc_renaming(&e.term);
        let d = distance(&e.term, &g, 2 * e.term.size());
        assert!(d.is_some(), "{}: {} not reached", e.name, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(n in nets()) {
        let back = parse_xnet(&n.to_string()).unwrap();
        prop_assert!(back.alpha_eq(&n));
    }

    #[test]
    fn refresh_keeps_free_connectors(n in nets(), start in 0u64..50) {
        let r = n.refresh(&mut FreshSupply::starting_at(start));
        prop_assert_eq!(r.free_connectors(), n.free_connectors());
        prop_assert!(r.alpha_eq(&n));
        prop_assert!(r.is_barendregt());
    }

    #[test]
    fn renaming_moves_one_connector(n in nets()) {
        let mut fc = n.free_connectors();
        if let Some(&old) = fc.iter().next() {
            let new = match old {
                Connector::Socket(_) => Connector::Socket(Socket::from("fresh")),
                Connector::Plug(_) => Connector::Plug(Plug::from("fresh")),
            };
            let m = n.rename_connector(old, new).unwrap();
            fc.remove(&old);
            fc.insert(new);
            prop_assert_eq!(m.free_connectors(), fc);
        }
    }

    #[test]
    fn steps_never_add_free_connectors(n in nets()) {
        let fc = n.free_connectors();
        for q in step_all(&n.refreshed()) {
            prop_assert!(q.free_connectors().is_subset(&fc), "{} -> {}", n, q);
        }
    }

    #[test]
    fn inference_is_sound(n in typed_nets()) {
        let (ctx, _) = infer_x(&n).unwrap();
        prop_assert!(check_x(&n, &ctx));
    }

    #[test]
    fn typing_is_stable_under_alpha_and_renaming(n in typed_nets()) {
        let (ctx, _) = infer_x(&n).unwrap();
        prop_assert!(check_x(&n.refresh(&mut FreshSupply::starting_at(7)), &ctx));
        if let Some((&x, t)) = ctx.gamma.iter().next() {
            let fresh = Socket::from("fresh");
            let m = n.rename_connector(Connector::Socket(x), Connector::Socket(fresh)).unwrap();
            let mut c2 = ctx.clone();
            c2.gamma.remove(&x);
            c2.gamma.insert(fresh, t.clone());
            prop_assert!(check_x(&m, &c2));
        }
    }

    #[test]
    fn witness_reduction(n in typed_nets()) {
        let n = n.refreshed();
        let (ctx, _) = infer_x(&n).unwrap();
        for q in step_all(&n) {
            prop_assert!(check_x(&q, &ctx), "{} -> {}", n, q);
        }
    }
}

