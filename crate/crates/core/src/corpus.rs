//! The bundled term corpus and the seeded generators behind it.
//!
//! Corpus files hold one `name = term` entry per line; `//` starts a
//! comment. The generated files record their seed in a `// seed N` line and
//! can be reproduced exactly from it.

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lambda::{infer_lam, parse_lam, LamTerm};
use crate::lex::ParseError;
use crate::symbol::Symbol;
use crate::xnet::{parse_xnet_with, Net, ParseOptions};
use crate::xrewrite::find_redexes;
use crate::xtypes::infer_x;

/// Seed of the bundled generated files.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub const GENERATED_NETS: usize = 50;
pub const GENERATED_LAMS: usize = 50;
pub const GENERATED_NET_SIZE: usize = 7;
pub const GENERATED_LAM_SIZE: usize = 7;

const INTRO: &str = include_str!("../../../corpus/intro.x");
const PEIRCE: &str = include_str!("../../../corpus/peirce.x");
const PROPAGATION: &str = include_str!("../../../corpus/propagation.x");
const GENERATED: &str = include_str!("../../../corpus/generated.x");
const LAMBDA: &str = include_str!("../../../corpus/lambda.lam");
const GENERATED_LAM: &str = include_str!("../../../corpus/generated.lam");

#[derive(Clone, Debug)]
pub struct Entry<T> {
    pub name: String,
    pub term: T,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub nets: Vec<Entry<Net>>,
    pub lams: Vec<Entry<LamTerm>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{file}:{line}: expected `name = term`")]
    Shape { file: String, line: usize },
    #[error("{file}:{line}: {err}")]
    Parse { file: String, line: usize, err: ParseError },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

fn entries<T>(
    file: &str,
    src: &str,
    parse: impl Fn(&str) -> Result<T, ParseError>,
) -> Result<Vec<Entry<T>>, CorpusError> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, body) = line.split_once('=').ok_or_else(|| CorpusError::Shape { file: file.into(), line: i + 1 })?;
        let term = parse(body.trim()).map_err(|err| CorpusError::Parse { file: file.into(), line: i + 1, err })?;
        out.push(Entry { name: name.trim().to_string(), term });
    }
    Ok(out)
}

fn net_source(src: &str) -> Result<Net, ParseError> {
    parse_xnet_with(src, ParseOptions { allow_active: true })
}

pub fn parse_net_file(file: &str, src: &str) -> Result<Vec<Entry<Net>>, CorpusError> {
    entries(file, src, net_source)
}

pub fn parse_lam_file(file: &str, src: &str) -> Result<Vec<Entry<LamTerm>>, CorpusError> {
    entries(file, src, parse_lam)
}

/// The seed recorded in a generated file.
pub fn recorded_seed(src: &str) -> Option<u64> {
    src.lines().find_map(|l| l.trim().strip_prefix("// seed ")?.trim().parse().ok())
}

impl Corpus {
    /// The corpus compiled into the library.
    pub fn bundled() -> Corpus {
        let nets = [("intro.x", INTRO), ("peirce.x", PEIRCE), ("propagation.x", PROPAGATION), ("generated.x", GENERATED)];
        let lams = [("lambda.lam", LAMBDA), ("generated.lam", GENERATED_LAM)];
        Corpus::from_sources(&nets, &lams).expect("bundled corpus parses")
    }

    pub fn from_sources(nets: &[(&str, &str)], lams: &[(&str, &str)]) -> Result<Corpus, CorpusError> {
        let mut c = Corpus::default();
        for (file, src) in nets {
            c.nets.extend(parse_net_file(file, src)?);
        }
        for (file, src) in lams {
            c.lams.extend(parse_lam_file(file, src)?);
        }
        Ok(c)
    }

    /// Every `*.x` and `*.lam` file of a directory, in file-name order.
    pub fn load_dir(dir: &Path) -> Result<Corpus, CorpusError> {
        let mut files: Vec<_> = std::fs::read_dir(dir)?.collect::<Result<Vec<_>, _>>()?.into_iter().map(|e| e.path()).collect();
        files.sort();
        let mut c = Corpus::default();
        for f in files {
            let name = f.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            match f.extension().and_then(|e| e.to_str()) {
                Some("x") => c.nets.extend(parse_net_file(&name, &std::fs::read_to_string(&f)?)?),
                Some("lam") => c.lams.extend(parse_lam_file(&name, &std::fs::read_to_string(&f)?)?),
                _ => {}
            }
        }
        Ok(c)
    }

    /// Entries whose names start with `prefix`.
    pub fn nets_named(&self, prefix: &str) -> impl Iterator<Item = &Entry<Net>> {
        let prefix = prefix.to_string();
        self.nets.iter().filter(move |e| e.name.starts_with(&prefix))
    }
}

/// `SEQPI_SEED` when set and numeric, otherwise `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("SEQPI_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

const SOCKETS: [&str; 3] = ["x", "y", "z"];
const PLUGS: [&str; 3] = ["a", "b", "c"];

fn pick(rng: &mut ChaCha8Rng, pool: &[&str]) -> Symbol {
    Symbol::intern(pool.choose(rng).expect("non-empty pool"))
}

/// A random plain net of exactly `size` constructors over three sockets and
/// three plugs.
pub fn random_net(rng: &mut ChaCha8Rng, size: usize) -> Net {
    let s = |rng: &mut ChaCha8Rng| pick(rng, &SOCKETS);
    let p = |rng: &mut ChaCha8Rng| pick(rng, &PLUGS);
    match size {
        0 | 1 => Net::capsule(s(rng), p(rng)),
        2 => Net::export(s(rng), random_net(rng, 1), p(rng), p(rng)),
        _ => {
            let choice = rng.gen_range(0..5);
            if choice == 0 {
                return Net::export(s(rng), random_net(rng, size - 1), p(rng), p(rng));
            }
            let l = rng.gen_range(1..size - 1);
            let (left, right) = (random_net(rng, l), random_net(rng, size - 1 - l));
            if choice <= 2 {
                Net::import(left, p(rng), s(rng), s(rng), right)
            } else {
                Net::cut(left, p(rng), s(rng), right)
            }
        }
    }
}

/// `count` distinct typeable nets of size 3 to `max_size`, each with at
/// least one redex, refreshed.
pub fn typed_nets(seed: u64, count: usize, max_size: usize) -> Vec<Net> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Net> = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < count * 10_000 {
        tries += 1;
        let size = rng.gen_range(3..=max_size.max(3));
        let n = random_net(&mut rng, size).refreshed();
        if find_redexes(&n).is_empty() || infer_x(&n).is_err() || out.iter().any(|m| m.alpha_eq(&n)) {
            continue;
        }
        out.push(n);
    }
    out
}

fn random_lam_in(rng: &mut ChaCha8Rng, size: usize, scope: &mut Vec<Symbol>, next: &mut usize) -> LamTerm {
    let free = ["u", "v"];
    let var = |rng: &mut ChaCha8Rng, scope: &Vec<Symbol>| {
        if !scope.is_empty() && rng.gen_bool(0.8) {
            LamTerm::Var(*scope.choose(rng).expect("non-empty"))
        } else {
            LamTerm::Var(pick(rng, &free))
        }
    };
    let abs = |rng: &mut ChaCha8Rng, body: usize, scope: &mut Vec<Symbol>, next: &mut usize| {
        let x = Symbol::intern(&format!("x{}", *next));
        *next += 1;
        scope.push(x);
        let b = random_lam_in(rng, body, scope, next);
        scope.pop();
        LamTerm::Abs(x, std::sync::Arc::new(b))
    };
    match size {
        0 | 1 => var(rng, scope),
        2 => abs(rng, 1, scope, next),
        _ => {
            if rng.gen_bool(0.3) {
                return abs(rng, size - 1, scope, next);
            }
            let l = rng.gen_range(1..size - 1);
            // a redex at the head half of the time
            let f = if l >= 2 && rng.gen_bool(0.5) { abs(rng, l - 1, scope, next) } else { random_lam_in(rng, l, scope, next) };
            let a = random_lam_in(rng, size - 1 - l, scope, next);
            LamTerm::app(f, a)
        }
    }
}

pub fn random_lam(rng: &mut ChaCha8Rng, size: usize) -> LamTerm {
    random_lam_in(rng, size, &mut Vec::new(), &mut 0)
}

/// `count` distinct simply typeable terms of size 2 to `max_size`; about
/// half contain a beta redex.
pub fn typed_lams(seed: u64, count: usize, max_size: usize) -> Vec<LamTerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<LamTerm> = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < count * 10_000 {
        tries += 1;
        let size = rng.gen_range(2..=max_size.max(2));
        let m = random_lam(&mut rng, size);
        if infer_lam(&m).is_err() || out.iter().any(|n| n.alpha_eq(&m)) {
            continue;
        }
        let redexes = out.iter().filter(|n| !n.beta_steps().is_empty()).count();
        if m.beta_steps().is_empty() && redexes * 2 < out.len() {
            continue;
        }
        out.push(m);
    }
    out
}

/// Contents of `generated.x` for a seed.
pub fn render_generated_nets(seed: u64) -> String {
    let mut s = format!("// generated typed nets, sizes 3 to {}\n// seed {}\n", GENERATED_NET_SIZE, seed);
    for (i, n) in typed_nets(seed, GENERATED_NETS, GENERATED_NET_SIZE).iter().enumerate() {
        let _ = writeln!(s, "gen-{:02} = {}", i, n);
    }
    s
}

/// Contents of `generated.lam` for a seed.
pub fn render_generated_lams(seed: u64) -> String {
    let mut s = format!("// generated simply typed terms, sizes 2 to {}\n// seed {}\n", GENERATED_LAM_SIZE, seed);
    for (i, m) in typed_lams(seed, GENERATED_LAMS, GENERATED_LAM_SIZE).iter().enumerate() {
        let _ = writeln!(s, "lgen-{:02} = {}", i, m);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(render_generated_nets(7), render_generated_nets(7));
        let a = typed_lams(3, 5, 6);
        let b = typed_lams(3, 5, 6);
        assert_eq!(a, b);
    }

    #[test]
    fn generated_nets_are_typed_and_reducible() {
        for n in typed_nets(11, 20, 7) {
            assert!(infer_x(&n).is_ok());
            assert!(!find_redexes(&n).is_empty());
            assert!(n.size() <= 7);
        }
    }

    #[test]
    fn file_format() {
        let src = "// comment\none = <x.a>  // trailing\n\ntwo = cutL(<x.a> | a / y | <y.b>)\n";
        let es = parse_net_file("t.x", src).unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!(es[1].name, "two");
        let bad = parse_net_file("t.x", "one <x.a>").unwrap_err();
        assert_eq!(bad.to_string(), "t.x:1: expected `name = term`");
        assert_eq!(recorded_seed("// x\n// seed 42\n"), Some(42));
    }
}
