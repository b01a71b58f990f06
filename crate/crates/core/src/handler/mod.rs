//! Raising and handling exceptions, and their check against an operational
//! reference.

mod build;
mod differential;
mod reference;

pub use build::{
    build_corrupted_try_catch, build_throw, build_try_catch, build_try_catch_explicit, Built, DecoratedHandler,
    HandlerError, Side,
};
pub use differential::{differential_handler_test, DifferentialConfig, DifferentialReport, Divergence};
pub use reference::{java_reference_eval, RefClause};
