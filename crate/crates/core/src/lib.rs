//! A workbench for the X calculus and the pi-calculus with pairing.

pub mod corpus;
pub mod encode;
pub mod lambda;
pub mod lex;
pub mod par;
pub mod pi;
pub mod pitypes;
pub mod suite;
pub mod symbol;
pub mod types;
pub mod xnet;
pub mod xrewrite;
pub mod xtypes;

pub use symbol::{FreshSupply, Symbol};
