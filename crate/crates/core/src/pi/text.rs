use std::fmt;
use std::sync::Arc;

use super::{Datum, Name, Proc};
use crate::lex::{tokenize, ParseError, Parser, Tok};
use crate::symbol::{FreshSupply, Symbol};

const RESERVED: [&str; 5] = ["new", "let", "in", "out", "stuck"];

pub fn reserved_word(s: &str) -> bool {
    RESERVED.contains(&s)
}

pub fn parse_pi(src: &str) -> Result<Proc, ParseError> {
    // The pair-input sugar needs a fresh name that cannot clash with any
    // name in the source.
    let names = tokenize(src)?.into_iter().filter_map(|(t, _, _)| match t {
        Tok::Ident(s) => Some(Symbol::intern(&s)),
        _ => None,
    });
    let supply = FreshSupply::above(names);
    let mut p = PiParser { p: Parser::new(src)?, supply };
    let q = p.proc()?;
    p.p.expect_end()?;
    Ok(q)
}

struct PiParser {
    p: Parser,
    supply: FreshSupply,
}

impl PiParser {
    fn name(&mut self) -> Result<Name, ParseError> {
        let at = self.p.here();
        let s = self.p.ident("a name")?;
        if reserved_word(&s) {
            return self.p.error_at(at, format!("`{}` is a keyword", s));
        }
        Ok(Symbol::intern(&s))
    }

    fn datum(&mut self) -> Result<Datum, ParseError> {
        if self.p.eat_sym("<") {
            let a = self.name()?;
            self.p.expect_sym(",")?;
            let b = self.name()?;
            self.p.expect_sym(">")?;
            Ok(Datum::Pair(a, b))
        } else {
            Ok(Datum::Name(self.name()?))
        }
    }

    fn proc(&mut self) -> Result<Proc, ParseError> {
        let first = self.prefix()?;
        if self.p.eat_sym("|") {
            Ok(Proc::Par(Arc::new(first), Arc::new(self.proc()?)))
        } else {
            Ok(first)
        }
    }

    fn prefix(&mut self) -> Result<Proc, ParseError> {
        match self.p.peek().cloned() {
            Some(Tok::Num(z)) if z == "0" => {
                self.p.bump();
                Ok(Proc::Nil)
            }
            Some(Tok::Sym("!")) => {
                self.p.bump();
                Ok(Proc::Repl(Arc::new(self.prefix()?)))
            }
            Some(Tok::Sym("(")) => {
                self.p.bump();
                let q = self.proc()?;
                self.p.expect_sym(")")?;
                Ok(q)
            }
            Some(Tok::Ident(w)) if w == "new" => {
                self.p.bump();
                let x = self.name()?;
                self.p.expect_sym(".")?;
                Ok(Proc::New(x, Arc::new(self.prefix()?)))
            }
            Some(Tok::Ident(w)) if w == "let" => {
                self.p.bump();
                self.p.expect_sym("<")?;
                let x = self.name()?;
                self.p.expect_sym(",")?;
                let y = self.name()?;
                self.p.expect_sym(">")?;
                self.p.expect_sym("=")?;
                let d = self.datum()?;
                self.p.expect_word("in")?;
                Ok(Proc::Let(x, y, d, Arc::new(self.prefix()?)))
            }
            Some(Tok::Ident(w)) if w == "stuck" => {
                self.p.bump();
                self.p.expect_sym("(")?;
                let d = self.datum()?;
                self.p.expect_sym("/")?;
                let x = self.name()?;
                self.p.expect_sym(";")?;
                let q = self.proc()?;
                self.p.expect_sym(")")?;
                Ok(Proc::Stuck(x, d, Arc::new(q)))
            }
            Some(Tok::Ident(w)) => {
                if w == "out" && matches!(self.p.peek_at(1), Some(Tok::Ident(_))) {
                    self.p.bump();
                }
                let a = self.name()?;
                if self.p.eat_sym("<") {
                    let d = if self.p.is_sym("<") { self.datum()? } else { Datum::Name(self.name()?) };
                    self.p.expect_sym(">")?;
                    return Ok(Proc::Out(a, d));
                }
                self.p.expect_sym("(")?;
                if self.p.eat_sym("<") {
                    let x = self.name()?;
                    self.p.expect_sym(",")?;
                    let y = self.name()?;
                    self.p.expect_sym(">")?;
                    self.p.expect_sym(")")?;
                    self.p.expect_sym(".")?;
                    let body = self.prefix()?;
                    let w = self.supply.fresh_str("w");
                    return Ok(Proc::In(a, w, Arc::new(Proc::Let(x, y, Datum::Name(w), Arc::new(body)))));
                }
                let x = self.name()?;
                self.p.expect_sym(")")?;
                self.p.expect_sym(".")?;
                Ok(Proc::In(a, x, Arc::new(self.prefix()?)))
            }
            _ => self.p.error("expected a process"),
        }
    }
}

impl fmt::Display for Datum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Datum::Name(a) => write!(f, "{}", a),
            Datum::Pair(a, b) => write!(f, "<{},{}>", a, b),
        }
    }
}

fn write_prefix(p: &Proc, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match p {
        Proc::Par(..) => write!(f, "({})", p),
        _ => write!(f, "{}", p),
    }
}

impl fmt::Display for Proc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proc::Nil => write!(f, "0"),
            Proc::Par(p, q) => {
                write_prefix(p, f)?;
                write!(f, " | {}", q)
            }
            Proc::Repl(p) => {
                write!(f, "!")?;
                write_prefix(p, f)
            }
            Proc::New(x, p) => {
                write!(f, "new {}. ", x)?;
                write_prefix(p, f)
            }
            Proc::In(a, x, p) => match &**p {
                Proc::Let(u, v, Datum::Name(w), q) if w == x && !q.has_free(*x) && u != x && v != x => {
                    write!(f, "{}(<{},{}>). ", a, u, v)?;
                    write_prefix(q, f)
                }
                _ => {
                    write!(f, "{}({}). ", a, x)?;
                    write_prefix(p, f)
                }
            },
            Proc::Out(a, d) => write!(f, "{}<{}>", a, d),
            Proc::Let(x, y, d, p) => {
                write!(f, "let <{},{}> = {} in ", x, y, d)?;
                write_prefix(p, f)
            }
            Proc::Stuck(x, d, p) => write!(f, "stuck({} / {}; {})", d, x, p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Name {
        Symbol::intern(s)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_pi("0").unwrap(), Proc::Nil);
        assert_eq!(
            parse_pi("a<b> | a(x).out x<b2>").unwrap(),
            Proc::par(Proc::out("a", "b"), Proc::input("a", "x", Proc::out("x", "b2")))
        );
        assert_eq!(parse_pi("x(o).a<o>").unwrap(), Proc::input("x", "o", Proc::out("a", "o")));
        assert_eq!(parse_pi("b<<x,a>>").unwrap(), Proc::out_pair("b", "x", "a"));
    }

    #[test]
    fn pair_input_sugar() {
        let q = parse_pi("a(<x,y>). x<y>").unwrap();
        let Proc::In(a, w, body) = &q else { panic!() };
        assert_eq!(*a, n("a"));
        assert_eq!(**body, Proc::Let(n("x"), n("y"), Datum::Name(*w), Arc::new(Proc::out("x", "y"))));
        assert_eq!(q.to_string(), "a(<x,y>). x<y>");
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "new n. (n<a> | m(x). x<n>)",
            "!a(x). 0 | b<c>",
            "(a<b> | c<d>) | e<f>",
            "let <x,y> = <a,b> in x<y>",
            "stuck(<a,b> / x; x<c>)",
            "new a. new b. !a(o). b<o>",
        ] {
            let q = parse_pi(src).unwrap();
            assert_eq!(q.to_string(), src);
            assert_eq!(parse_pi(&q.to_string()).unwrap(), q);
        }
    }

    #[test]
    fn errors() {
        assert!(parse_pi("a<b").is_err());
        assert!(parse_pi("new new. 0").is_err());
        let e = parse_pi("a(x) 0").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
    }
}
