//! The eleven acceptance criteria, one line each.

use std::process::Command;

use seqpi::corpus::Corpus;
use seqpi::suite::{self, Config, Outcome};

fn peirce_through_cli(corpus: &Corpus, o: &mut Outcome) {
    let net = &corpus.nets.iter().find(|e| e.name == "peirce").expect("peirce entry").term;
    let out = Command::new(env!("CARGO_BIN_EXE_seqpi"))
        .args(["typecheck", "--calc", "x", &net.to_string()])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    o.checked += 1;
    if !out.status.success() || text != "|- g : ((A -> B) -> A) -> A\n" {
        o.failures.push(format!("`seqpi typecheck` printed {:?} with {}", text, out.status));
    }
}

#[test]
fn acceptance() {
    let corpus = Corpus::bundled();
    let cfg = Config::default();
    let mut outcomes = Vec::new();
    for (id, _) in suite::TITLES {
        let mut o = if id == 10 {
            seqpi_oracles::criterion(&seqpi_oracles::Bounds::default())
        } else {
            suite::run(id, &corpus, &cfg).expect("criterion runs in the suite")
        };
        if id == 1 {
            peirce_through_cli(&corpus, &mut o);
        }
        println!("{} {:.1}s", o, o.elapsed.as_secs_f64());
        for f in o.failures.iter().take(5) {
            println!("    FAIL {}", f);
        }
        for n in o.notes.iter().take(if id == 7 { 1 } else { 4 }) {
            println!("    {}", n);
        }
        outcomes.push(o);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    assert!(failed.is_empty(), "criteria failed: {:?}", failed);
}
