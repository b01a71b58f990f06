//! Operational reference for try/catch without `finally`: run the block; on
//! normal completion nothing else happens; on a throw, the leftmost clause
//! whose index matches runs on the thrown parameter; with no match the
//! exception propagates.

use crate::semantics::{FiniteModel, Value};
use crate::syntax::Index;

/// A clause of the reference evaluator: an index and the body as a function
/// from parameter atoms to results.
pub struct RefClause<'a> {
    pub index: Index,
    pub body: &'a dyn Fn(u32) -> Value,
}

pub fn java_reference_eval(
    block: &dyn Fn(u32) -> Value,
    clauses: &[RefClause<'_>],
    m: &FiniteModel,
    x: Value,
) -> Value {
    let Value::Ordinary(a) = x else {
        return x;
    };
    match block(a) {
        Value::Exceptional(e) => {
            let (k, p) = m.exc_parts(e);
            let thrown = &m.exceptions()[k].index;
            match clauses.iter().find(|c| &c.index == thrown) {
                Some(c) => (c.body)(p),
                None => Value::Exceptional(e),
            }
        }
        y => y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::battery::standard_exceptions;
    use crate::syntax::Name;

    fn model() -> FiniteModel {
        FiniteModel::with_sizes(
            &[(Name::new("P1"), 2), (Name::new("P2"), 2), (Name::new("Y"), 3)],
            standard_exceptions(2),
        )
        .unwrap()
    }

    #[test]
    fn normal_completion_is_returned() {
        let m = model();
        let block = |_| Value::Ordinary(2);
        let g = |_| Value::Ordinary(0);
        let cs = [RefClause { index: Index::new("1"), body: &g }];
        assert_eq!(java_reference_eval(&block, &cs, &m, Value::Ordinary(0)), Value::Ordinary(2));
    }

    #[test]
    fn leftmost_matching_clause_wins() {
        let m = model();
        let e = m.exc_of(&Index::new("1"), 1).unwrap();
        let block = move |_| Value::Exceptional(e);
        let g1 = |a: u32| Value::Ordinary(a);
        let g2 = |_| Value::Ordinary(2);
        let cs = [
            RefClause { index: Index::new("1"), body: &g1 },
            RefClause { index: Index::new("1"), body: &g2 },
        ];
        assert_eq!(java_reference_eval(&block, &cs, &m, Value::Ordinary(0)), Value::Ordinary(1));
    }

    #[test]
    fn unmatched_exception_propagates() {
        let m = model();
        let e = m.exc_of(&Index::new("2"), 0).unwrap();
        let block = move |_| Value::Exceptional(e);
        let g = |_| Value::Ordinary(0);
        let cs = [RefClause { index: Index::new("1"), body: &g }];
        assert_eq!(java_reference_eval(&block, &cs, &m, Value::Ordinary(0)), Value::Exceptional(e));
    }
}
