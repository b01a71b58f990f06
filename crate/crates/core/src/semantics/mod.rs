//! Finite set-theoretic models and the evaluation oracle.

pub mod battery;
pub mod eval;
pub mod intended;
pub mod model;
pub mod oracle;
pub mod terms;

pub use eval::{eval_decorated, eval_explicit, eval_explicit_atom};
pub use model::{decode, encode, split_exc, EvalError, FiniteModel, GenTable, Value};
pub use oracle::{counterexample, explicit_counterexample, explicit_holds, oracle_holds, Witness};
pub use intended::{check_intended_semantics, commutation_witness, corrupt_first_untag, IntendedReport};
