use seqpi::pi::{cnf, parse_pi};
use seqpi::xnet::parse_xnet;
use seqpi::xrewrite::XRule;
use seqpi_oracles::{criterion, pi, x, Bounds};

#[test]
fn oracle_redexes_by_hand() {
    let n = parse_xnet("cut(<y.a> | a / x | <x.b>)").unwrap();
    assert_eq!(x::redexes(&n), vec![(vec![], XRule::Ax)]);
    let n = parse_xnet("cut(<x.a> | g / z | <y.b>)").unwrap();
    assert_eq!(x::redexes(&n), vec![(vec![], XRule::ActL), (vec![], XRule::ActR)]);
    assert!(x::redexes(&parse_xnet("<x.a>").unwrap()).is_empty());
    let n = parse_xnet("exp(u; cut(<y.a> | a / x | <x.b>); b).c").unwrap();
    assert_eq!(x::redexes(&n), vec![(vec![0], XRule::Ax)]);
}

#[test]
fn oracle_reducts_by_hand() {
    let keys = |s: &str, b| pi::reduct_keys(&parse_pi(s).unwrap(), b);
    let one = |s: &str| cnf(&parse_pi(s).unwrap()).key();
    assert_eq!(keys("a<b> | a(x). x<c>", 0), [one("b<c>")].into());
    assert_eq!(keys("a<<b,c>> | a(<x,y>). x<y>", 0), [one("b<c>")].into());
    assert!(keys("0", 2).is_empty());
    // the copy behind the bang is out of reach without budget
    assert!(keys("a<b> | !a(x). x<c>", 0).is_empty());
    assert_eq!(keys("a<b> | !a(x). x<c>", 1), [one("b<c> | !a(x). x<c>")].into());
}

#[test]
fn small_bounds_agree() {
    let o = criterion(&Bounds { nets: 4, orbit_nets: Some(5), procs: vec![(4, 3, 1), (4, 2, 2)] });
    for n in &o.notes {
        println!("{}", n);
    }
    assert!(o.checked > 10_000);
    assert!(o.passed(), "{:#?}", o.failures);
}
