use serde::Serialize;

use super::eval::{eval_decorated, eval_explicit_atom};
use super::model::{EvalError, FiniteModel, Value};
use crate::syntax::{Equation, ExplicitEquation, Strength};

/// An input on which the two sides of an equation differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

/// Inputs an equation is compared on: all of `src + E` for strong
/// equations, ordinary values of `src` for weak ones.
pub fn inputs(e: &Equation, m: &FiniteModel) -> Result<Vec<Value>, EvalError> {
    let n = m.size(e.lhs.src())?;
    let mut out: Vec<Value> = (0..n).map(Value::Ordinary).collect();
    if e.strength == Strength::Strong {
        out.extend((0..m.exc_size()).map(Value::Exceptional));
    }
    Ok(out)
}

/// The first input on which the sides of `e` differ in `m`, if any.
pub fn counterexample(e: &Equation, m: &FiniteModel) -> Result<Option<Witness>, EvalError> {
    for v in inputs(e, m)? {
        let l = eval_decorated(&e.lhs, m, v)?;
        let r = eval_decorated(&e.rhs, m, v)?;
        if l != r {
            let tgt = e.lhs.tgt();
            return Ok(Some(Witness {
                input: m.show(e.lhs.src(), v),
                lhs: m.show(tgt, l),
                rhs: m.show(tgt, r),
            }));
        }
    }
    Ok(None)
}

pub fn oracle_holds(e: &Equation, m: &FiniteModel) -> Result<bool, EvalError> {
    Ok(counterexample(e, m)?.is_none())
}

pub fn explicit_counterexample(e: &ExplicitEquation, m: &FiniteModel) -> Result<Option<Witness>, EvalError> {
    for a in 0..m.size(e.lhs.src())? {
        let l = eval_explicit_atom(&e.lhs, m, a)?;
        let r = eval_explicit_atom(&e.rhs, m, a)?;
        if l != r {
            return Ok(Some(Witness {
                input: m.label(e.lhs.src(), a),
                lhs: m.label(e.lhs.tgt(), l),
                rhs: m.label(e.lhs.tgt(), r),
            }));
        }
    }
    Ok(None)
}

pub fn explicit_holds(e: &ExplicitEquation, m: &FiniteModel) -> Result<bool, EvalError> {
    Ok(explicit_counterexample(e, m)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{ExceptionDecl, Index, Name, ObjType, Term};

    fn setup() -> (FiniteModel, Term, Term) {
        let p1 = ObjType::base("P1");
        let m = FiniteModel::with_sizes(
            &[(Name::new("P1"), 2)],
            vec![ExceptionDecl {
                index: Index::new("1"),
                param: p1.clone(),
            }],
        )
        .unwrap();
        let i = Index::new("1");
        let lhs = Term::comp(Term::untag(i.clone(), p1.clone()), Term::tag(i, p1.clone())).unwrap();
        (m, lhs, Term::id(p1))
    }

    #[test]
    fn untag_after_tag_is_weakly_but_not_strongly_the_identity() {
        let (m, lhs, rhs) = setup();
        assert!(oracle_holds(&Equation::weak(lhs.clone(), rhs.clone()).unwrap(), &m).unwrap());
        let w = counterexample(&Equation::strong(lhs, rhs).unwrap(), &m).unwrap().unwrap();
        assert_eq!(w.input, "1(p1_0)");
        assert_eq!(w.lhs, "p1_0");
        assert_eq!(w.rhs, "1(p1_0)");
    }
}
