//! Tokenizer shared by every concrete grammar in the crate.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "`{}`", s),
            Tok::Sym(s) => write!(f, "`{}`", s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

// Longest first so that `->` wins over `-`.
const SYMS: &[&str] = &["->", "<", ">", ".", ";", "(", ")", "|", "/", "[", "]", ",", "!", "=", ":", "\\", "λ"];

pub fn tokenize(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            // Optional freshness suffix `#digits`, as printed by the supply.
            if i < chars.len() && chars[i] == '#' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Ident(word), l0, c0));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Num(chars[start..i].iter().collect()), l0, c0));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                let n = s.chars().count();
                i += n;
                col += n;
                out.push((Tok::Sym(s), l0, c0));
            }
            None => return Err(ParseError { line: l0, col: c0, msg: format!("unexpected character `{}`", c) }),
        }
    }
    Ok(out)
}

pub struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    pub fn new(src: &str) -> Result<Parser, ParseError> {
        let toks = tokenize(src)?;
        let lines = src.split('\n').count();
        let last = src.rsplit('\n').next().map_or(0, |l| l.chars().count());
        Ok(Parser { toks, pos: 0, end: (lines, last + 1) })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    pub fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.1, t.2))
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError { line, col, msg: msg.into() })
    }

    pub fn error_at<T>(&self, at: (usize, usize), msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: at.0, col: at.1, msg: msg.into() })
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".to_string(), |t| t.to_string())
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    pub fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == w)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected `{}`, found {}", s, self.found()))
        }
    }

    pub fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        if self.is_word(w) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{}`, found {}", w, self.found()))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected {}, found {}", what, self.found())),
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.error(format!("unexpected trailing input {}", self.found()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = tokenize("cut(<y.a> | a / x#3 // note\n | 0)->").unwrap();
        assert_eq!(t[0], (Tok::Ident("cut".into()), 1, 1));
        assert_eq!(t[1].0, Tok::Sym("("));
        assert!(t.iter().any(|x| x.0 == Tok::Ident("x#3".into())));
        let last = t.last().unwrap();
        assert_eq!((last.0.clone(), last.1), (Tok::Sym("->"), 2));
        assert!(tokenize("a $ b").is_err());
    }
}
