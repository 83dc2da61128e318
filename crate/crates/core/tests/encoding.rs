use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seqpi::corpus::{random_lam, random_net, Corpus};
use seqpi::encode::{encode_x, pi_context};
use seqpi::lambda::{encode_lam_to_pi, encode_lam_to_x, infer_lam, parse_lam, LamTerm};
use seqpi::pi::{forwarder, parse_pi, pi_step, struct_eq, subst_data, Datum, Proc};
use seqpi::pitypes::{pi_check, PiContextPair};
use seqpi::types::{parse_type, SimpleType};
use seqpi::xnet::{parse_xnet, Connector, Net, Plug, Socket};
use seqpi::xtypes::infer_x;
use seqpi::{FreshSupply, Symbol};

fn ty(s: &str) -> SimpleType {
    parse_type(s).unwrap()
}

fn lam(s: &str) -> LamTerm {
    parse_lam(s).unwrap()
}

fn names(net: &Net) -> std::collections::BTreeSet<Symbol> {
    net.free_connectors().into_iter().map(Connector::symbol).collect()
}

fn nets() -> impl Strategy<Value = Net> {
    (any::<u64>(), 1usize..9).prop_map(|(seed, size)| random_net(&mut ChaCha8Rng::seed_from_u64(seed), size).refreshed())
}

fn lams() -> impl Strategy<Value = LamTerm> {
    (any::<u64>(), 1usize..10).prop_map(|(seed, size)| random_lam(&mut ChaCha8Rng::seed_from_u64(seed), size))
}

fn sub_nets(n: &Net, out: &mut Vec<Net>) {
    out.push(n.clone());
    for c in n.children() {
        sub_nets(c, out);
    }
}

#[test]
fn forwarders() {
    let (a, b) = (Symbol::intern("a"), Symbol::intern("b"));
    let f = forwarder(a, b, &mut FreshSupply::new());
    assert!(f.alpha_eq(&parse_pi("a(o). b<o>").unwrap()));
    assert!(pi_check(&f, &PiContextPair::new().input("a", ty("A")).output("b", ty("A"))));
    let loop_ = Proc::par(forwarder(a, a, &mut FreshSupply::new()), parse_pi("a<c>").unwrap());
    let r = pi_step(&loop_, 0);
    assert_eq!(r.len(), 1);
    assert!(struct_eq(&r[0], &parse_pi("a<c>").unwrap()));
}

#[test]
fn net_images() {
    assert!(encode_x(&parse_xnet("<x.al>").unwrap()).alpha_eq(&parse_pi("x(o). al<o>").unwrap()));
    let peirce = parse_xnet("exp(z; imp(exp(y; <y.d> ; h).a | a / [z] / w | <w.d>); d).g").unwrap();
    let ctx = PiContextPair::new().output("g", ty("((A -> B) -> A) -> A"));
    assert!(pi_check(&encode_x(&peirce), &ctx));
}

#[test]
fn lambda_images() {
    let al = Plug::from("al");
    assert_eq!(encode_lam_to_x(&lam("x"), al), Net::capsule("x", "al"));
    assert!(encode_lam_to_x(&lam("\\x. x"), al).alpha_eq(&parse_xnet("exp(x; <x.be>; be).al").unwrap()));
    assert!(encode_lam_to_pi(&lam("x"), al).alpha_eq(&parse_pi("x(o). al<o>").unwrap()));
    let id = encode_lam_to_pi(&lam("\\x. x"), al);
    assert!(pi_check(&id, &PiContextPair::new().output("al", ty("A -> A"))));
}

#[test]
fn lambda_inference() {
    assert_eq!(infer_lam(&lam("\\x. x")).unwrap(), (Default::default(), ty("A -> A")));
    assert_eq!(infer_lam(&lam("\\x. \\y. x")).unwrap().1, ty("A -> B -> A"));
    assert!(infer_lam(&lam("\\x. x x")).is_err());
}

#[test]
fn type_preservation_on_corpus() {
    let corpus = Corpus::bundled();
    for e in &corpus.nets {
        let Ok((ctx, _)) = infer_x(&e.term) else { continue };
        assert!(pi_check(&encode_x(&e.term), &pi_context(&ctx)), "{}", e.name);
        assert_eq!(encode_x(&e.term).free_names(), names(&e.term), "{}", e.name);
    }
    let al = Plug::from("al");
    for e in &corpus.lams {
        let (gamma, t) = infer_lam(&e.term).unwrap();
        let ctx = PiContextPair { gamma, delta: [(al.0, t)].into() };
        assert!(pi_check(&encode_lam_to_pi(&e.term, al), &ctx), "{}", e.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_names_are_free_connectors(n in nets()) {
        prop_assert_eq!(encode_x(&n).free_names(), names(&n));
    }

    #[test]
    fn types_are_preserved(n in nets()) {
        if let Ok((ctx, _)) = infer_x(&n) {
            prop_assert!(pi_check(&encode_x(&n), &pi_context(&ctx)));
        }
    }

    #[test]
    fn refresh_commutes(n in nets(), start in 0u64..40) {
        let r = n.refresh(&mut FreshSupply::starting_at(start));
        prop_assert!(encode_x(&r).alpha_eq(&encode_x(&n)));
    }

    #[test]
    fn renaming_commutes(n in nets()) {
        let fresh = Symbol::intern("fresh");
        if let Some(&old) = n.free_connectors().iter().next() {
            let new = match old {
                Connector::Socket(_) => Connector::Socket(Socket(fresh)),
                Connector::Plug(_) => Connector::Plug(Plug(fresh)),
            };
            let moved = encode_x(&n.rename_connector(old, new).unwrap());
            let substituted = subst_data(&encode_x(&n), old.symbol(), Datum::Name(fresh));
            prop_assert!(moved.alpha_eq(&substituted), "{} vs {}", moved, substituted);
        }
    }

    #[test]
    fn one_free_plug_everywhere(m in lams()) {
        let al = Plug::from("al");
        let net = encode_lam_to_x(&m, al);
        prop_assert_eq!(net.free_plugs(), [al].into());
        let mut subs = Vec::new();
        sub_nets(&net, &mut subs);
        for s in subs {
            prop_assert_eq!(s.free_plugs().len(), 1, "{} in {}", s, net);
        }
        prop_assert!(encode_lam_to_pi(&m, al).alpha_eq(&encode_x(&net)));
    }

    #[test]
    fn lambda_types_are_preserved(m in lams()) {
        if let Ok((gamma, t)) = infer_lam(&m) {
            let al = Plug::from("al");
            let ctx = PiContextPair { gamma, delta: [(al.0, t)].into() };
            prop_assert!(pi_check(&encode_lam_to_pi(&m, al), &ctx));
        }
    }
}
