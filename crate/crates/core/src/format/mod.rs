//! Text formats: specifications (`.dexc`), derivations (`.dproof`) and
//! finite models (`.dmodel`).

pub mod lex;
pub mod model;
pub mod print;
pub mod proof;
pub mod spec;
pub mod term;

pub use lex::{ParseError, ParseErrorKind};
pub use model::{parse_model, parse_value, print_model};
pub use proof::{parse_proof, print_proof, ProofScript};
pub use spec::{parse_explicit_spec, parse_spec, print_explicit_spec, print_spec};
pub use term::{parse_equation, parse_term, parse_type};
