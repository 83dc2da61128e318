use std::sync::Arc;

use super::{CutKind, Net, Plug, Socket};
use crate::lex::{ParseError, Parser, Tok};
use crate::symbol::Symbol;

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Admit `cutL(...)` and `cutR(...)` in source text.
    pub allow_active: bool,
}

pub fn parse_xnet(src: &str) -> Result<Net, ParseError> {
    parse_xnet_with(src, ParseOptions::default())
}

pub fn parse_xnet_with(src: &str, opts: ParseOptions) -> Result<Net, ParseError> {
    let mut p = XParser { p: Parser::new(src)?, opts, scope: Vec::new() };
    let net = p.net()?;
    p.p.expect_end()?;
    Ok(net)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Socket,
    Plug,
}

struct XParser {
    p: Parser,
    opts: ParseOptions,
    scope: Vec<(Symbol, Kind)>,
}

impl XParser {
    /// Read a name in a position of kind `kind`. A name whose only binder in
    /// scope is of the other kind is rejected: position decides the kind, and
    /// a bound name cannot change it.
    fn name(&mut self, kind: Kind) -> Result<Symbol, ParseError> {
        let at = self.p.here();
        let what = match kind {
            Kind::Socket => "a socket name",
            Kind::Plug => "a plug name",
        };
        let s = Symbol::intern(&self.p.ident(what)?);
        let same = self.scope.iter().any(|&(n, k)| n == s && k == kind);
        let other = self.scope.iter().any(|&(n, k)| n == s && k != kind);
        if other && !same {
            let (is, bound) = match kind {
                Kind::Socket => ("socket", "plug"),
                Kind::Plug => ("plug", "socket"),
            };
            return self.p.error_at(at, format!("`{}` is bound as a {} but used here as a {}", s, bound, is));
        }
        Ok(s)
    }

    fn scoped<T>(&mut self, binds: &[(Symbol, Kind)], f: impl FnOnce(&mut Self) -> Result<T, ParseError>) -> Result<T, ParseError> {
        let n = self.scope.len();
        self.scope.extend_from_slice(binds);
        let r = f(self);
        self.scope.truncate(n);
        r
    }

    fn net(&mut self) -> Result<Net, ParseError> {
        let at = self.p.here();
        match self.p.peek().cloned() {
            Some(Tok::Sym("<")) => {
                self.p.bump();
                let x = self.name(Kind::Socket)?;
                self.p.expect_sym(".")?;
                let a = self.name(Kind::Plug)?;
                self.p.expect_sym(">")?;
                Ok(Net::Capsule { socket: Socket(x), plug: Plug(a) })
            }
            Some(Tok::Ident(w)) if w == "exp" => {
                self.p.bump();
                self.p.expect_sym("(")?;
                let x = self.binder()?;
                self.p.expect_sym(";")?;
                // The plug binder comes after the body, so look ahead for it.
                let a = self.export_plug_lookahead()?;
                let body = self.scoped(&[(x, Kind::Socket), (a, Kind::Plug)], |s| s.net())?;
                self.p.expect_sym(";")?;
                let a2 = self.binder()?;
                debug_assert_eq!(a, a2);
                self.p.expect_sym(")")?;
                self.p.expect_sym(".")?;
                let b = self.name(Kind::Plug)?;
                Ok(Net::Export { socket: Socket(x), body: Arc::new(body), plug: Plug(a), out: Plug(b) })
            }
            Some(Tok::Ident(w)) if w == "imp" => {
                self.p.bump();
                self.p.expect_sym("(")?;
                let (left, a) = self.left_with_plug()?;
                self.p.expect_sym("/")?;
                self.p.expect_sym("[")?;
                let y = self.name(Kind::Socket)?;
                self.p.expect_sym("]")?;
                self.p.expect_sym("/")?;
                let x = self.binder()?;
                self.p.expect_sym("|")?;
                let right = self.scoped(&[(x, Kind::Socket)], |s| s.net())?;
                self.p.expect_sym(")")?;
                Ok(Net::Import { left: Arc::new(left), plug: Plug(a), middle: Socket(y), socket: Socket(x), right: Arc::new(right) })
            }
            Some(Tok::Ident(w)) if w == "cut" || w == "cutL" || w == "cutR" => {
                let kind = match w.as_str() {
                    "cut" => CutKind::Plain,
                    "cutL" => CutKind::Left,
                    _ => CutKind::Right,
                };
                if kind != CutKind::Plain && !self.opts.allow_active {
                    return self.p.error_at(at, format!("activated cut `{}` is not allowed in source text", w));
                }
                self.p.bump();
                self.p.expect_sym("(")?;
                let (left, a) = self.left_with_plug()?;
                self.p.expect_sym("/")?;
                let x = self.binder()?;
                self.p.expect_sym("|")?;
                let right = self.scoped(&[(x, Kind::Socket)], |s| s.net())?;
                self.p.expect_sym(")")?;
                Ok(Net::Cut { kind, left: Arc::new(left), plug: Plug(a), socket: Socket(x), right: Arc::new(right) })
            }
            _ => self.p.error("expected a net: `<`, `exp`, `imp`, `cut`"),
        }
    }

    fn binder(&mut self) -> Result<Symbol, ParseError> {
        Ok(Symbol::intern(&self.p.ident("a binder name")?))
    }

    /// Parse `net | plug` where `plug` binds inside `net`. The binder is found
    /// by scanning ahead to the matching `|` at depth zero.
    fn left_with_plug(&mut self) -> Result<(Net, Symbol), ParseError> {
        let a = self.plug_after_depth0(&["|"])?;
        let left = self.scoped(&[(a, Kind::Plug)], |s| s.net())?;
        self.p.expect_sym("|")?;
        let a2 = self.binder()?;
        debug_assert_eq!(a, a2);
        Ok((left, a))
    }

    fn export_plug_lookahead(&mut self) -> Result<Symbol, ParseError> {
        self.plug_after_depth0(&[";"])
    }

    fn plug_after_depth0(&mut self, seps: &[&str]) -> Result<Symbol, ParseError> {
        let mut depth = 0i32;
        let mut k = 0;
        loop {
            match self.p.peek_at(k) {
                None => return self.p.error("unterminated net"),
                Some(Tok::Sym(s)) if (*s == "(" || *s == "<" || *s == "[") => depth += 1,
                Some(Tok::Sym(s)) if (*s == ")" || *s == ">" || *s == "]") => {
                    depth -= 1;
                    if depth < 0 {
                        return self.p.error("unbalanced parentheses");
                    }
                }
                Some(Tok::Sym(s)) if depth == 0 && seps.contains(s) => {
                    return match self.p.peek_at(k + 1) {
                        Some(Tok::Ident(n)) => Ok(Symbol::intern(n)),
                        // Let the ordinary parse report the error in place.
                        _ => Ok(Symbol::intern("_")),
                    };
                }
                _ => {}
            }
            k += 1;
        }
    }
}
