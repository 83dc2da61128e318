//! Interned identifiers and the fresh-name supply.
//!
//! A [`Symbol`] is a pointer into a global, append-only string table, so
//! equality and hashing are a pointer compare. Ordering is by spelling, which
//! keeps printed sets and canonical forms independent of interning order.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use once_cell::sync::Lazy;
use parking_lot::Mutex;

static TABLE: Lazy<Mutex<HashSet<&'static str>>> = Lazy::new(|| Mutex::new(HashSet::new()));

thread_local! {
    static LOCAL: RefCell<HashMap<String, Symbol>> = RefCell::new(HashMap::new());
}

#[derive(Clone, Copy)]
pub struct Symbol(&'static str);

impl Symbol {
    pub fn intern(s: &str) -> Symbol {
        if let Some(sym) = LOCAL.with(|c| c.borrow().get(s).copied()) {
            return sym;
        }
        let sym = {
            let mut table = TABLE.lock();
            match table.get(s) {
                Some(&k) => Symbol(k),
                None => {
                    let leaked: &'static str = Box::leak(s.to_owned().into_boxed_str());
                    table.insert(leaked);
                    Symbol(leaked)
                }
            }
        };
        LOCAL.with(|c| c.borrow_mut().insert(s.to_owned(), sym));
        sym
    }

    pub fn as_str(self) -> &'static str {
        self.0
    }

    /// The spelling without a trailing `#k` freshness suffix.
    pub fn stem(self) -> &'static str {
        match self.0.rfind('#') {
            Some(i) if self.0[i + 1..].bytes().all(|b| b.is_ascii_digit()) && i + 1 < self.0.len() => {
                &self.0[..i]
            }
            _ => self.0,
        }
    }

    /// Numeric freshness suffix, if any.
    pub fn suffix(self) -> Option<u64> {
        let i = self.0.rfind('#')?;
        self.0[i + 1..].parse().ok()
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Symbol) -> bool {
        std::ptr::eq(self.0.as_ptr(), other.0.as_ptr())
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.as_ptr() as usize).hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Symbol) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Symbol) -> std::cmp::Ordering {
        if self == other {
            std::cmp::Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Symbol {
        Symbol::intern(s)
    }
}

/// Monotone counter producing `stem#k` names.
///
/// Names carrying a `#` suffix are never produced by the parser unless the
/// user writes them, so a supply that has been bumped past every suffix in a
/// term cannot collide with it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreshSupply {
    next: u64,
}

impl FreshSupply {
    pub fn new() -> FreshSupply {
        FreshSupply { next: 0 }
    }

    pub fn starting_at(next: u64) -> FreshSupply {
        FreshSupply { next }
    }

    /// A supply whose names cannot clash with any of `names`.
    pub fn above<I: IntoIterator<Item = Symbol>>(names: I) -> FreshSupply {
        let mut s = FreshSupply::new();
        s.bump_past(names);
        s
    }

    pub fn bump_past<I: IntoIterator<Item = Symbol>>(&mut self, names: I) {
        for n in names {
            if let Some(k) = n.suffix() {
                self.next = self.next.max(k + 1);
            }
        }
    }

    pub fn counter(&self) -> u64 {
        self.next
    }

    pub fn fresh(&mut self, base: Symbol) -> Symbol {
        let k = self.next;
        self.next += 1;
        Symbol::intern(&format!("{}#{}", base.stem(), k))
    }

    pub fn fresh_str(&mut self, base: &str) -> Symbol {
        self.fresh(Symbol::intern(base))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_pointer_identity() {
        let a = Symbol::intern("alpha");
        let b = Symbol::intern(&String::from("alpha"));
        assert_eq!(a, b);
        assert!(std::ptr::eq(a.as_str(), b.as_str()));
        assert_ne!(a, Symbol::intern("beta"));
    }

    #[test]
    fn order_is_by_spelling() {
        let z = Symbol::intern("zz_order");
        let a = Symbol::intern("aa_order");
        assert!(a < z);
    }

    #[test]
    fn supply_skips_existing_suffixes() {
        let names = ["x", "a#4", "y#11", "b#"].map(Symbol::intern);
        let mut s = FreshSupply::above(names);
        assert_eq!(s.fresh_str("a#4").as_str(), "a#12");
        assert_eq!(s.fresh_str("q").as_str(), "q#13");
        assert_eq!(Symbol::intern("b#").stem(), "b#");
    }

    #[test]
    fn interning_across_threads_agrees() {
        let here = Symbol::intern("shared_name");
        let there = std::thread::spawn(|| Symbol::intern("shared_name")).join().unwrap();
        assert_eq!(here, there);
    }
}
