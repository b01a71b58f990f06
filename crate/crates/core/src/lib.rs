//! A workbench for the decorated logic of exceptions.

pub mod expand;
pub mod format;
pub mod handler;
pub mod kernel;
pub mod semantics;
pub mod shipped;
pub mod suite;
pub mod syntax;

pub use syntax::{
    Clause, Decoration, Equation, ExplicitSpec, ExplicitTerm, Index, Name, ObjType, Strength,
    Term, TermError, TermKind,
};
