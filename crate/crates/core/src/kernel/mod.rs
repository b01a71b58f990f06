//! The decorated inference rules, a local derivation checker, and a library
//! of derived properties of exceptions.

mod build;
mod check;
mod library;
mod rules;

pub use build::{rule, Built, Builder};
pub use check::{check_derivation, Derivation, NodeReport, Step, Verdict};
pub use library::{
    catch_catch, catch_raise, cotuple_congruence, cotuple_with_empty, derived_rule_library, downcast_congruence,
    downcast_of_case, empty_absorbs, library_spec, pure_try, try_library, untag_tag, untag_untag, LibraryEntry,
};
pub use rules::{apply_rule, is_axiom, is_definition, Binding, Family, Judgment, RuleError, RuleId, Subst};
