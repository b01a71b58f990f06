//! The expansion into the explicit logic, the explicit-side normalizer and
//! the per-rule soundness obligations.

pub mod normalize;
pub mod rules;
pub mod translate;

pub use normalize::normalize;
pub use rules::{expand_all_rules, expand_rule, Discharge, Obligation, RuleObligation};
pub use translate::{
    expand_equation, expand_spec, expand_term, explicit_signature, primary_view, propagator_view,
    pure_view,
};

/// Normal form of an explicit term; the name used by the command line.
pub fn normalize_explicit(t: &crate::syntax::ExplicitTerm) -> crate::syntax::ExplicitTerm {
    normalize(t)
}
