//! Types, decorated terms, equations and specifications.

pub mod apparent;
pub mod equation;
pub mod explicit;
pub mod expr;
pub mod spec;
pub mod term;
pub mod types;
pub mod wellformed;

pub use apparent::{exception_signature, throw_name, undecorate, ApparentOp, ApparentSpec};
pub use equation::{Equation, Strength};
pub use explicit::{ExplKind, ExplicitEquation, ExplicitOp, ExplicitSpec, ExplicitTerm};
pub use expr::{check, elaborate_equation, infer_decoration, ElabError, Expr};
pub use spec::{Axiom, DecoratedSpec, ExceptionDecl, OpDecl};
pub use term::{
    handler_chain, sum_unfolding, throw_unfolding, try_catcher, try_unfolding, Clause, Term,
    TermError, TermKind,
};
pub use types::{Decoration, Index, Name, ObjType, UNIT};
pub use wellformed::{check_wellformed, Violation, ViolationKind, WellformedReport};
