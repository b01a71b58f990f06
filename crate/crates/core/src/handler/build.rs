//! Raising and handling built from the core operations, in both logics.

use thiserror::Error;

use crate::syntax::{
    try_catcher, Clause, DecoratedSpec, ExplicitTerm, Index, ObjType, Term, TermError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HandlerError {
    #[error("unknown exception index `{0}`")]
    UnknownIndex(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Decorated,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Decorated(Term),
    Explicit(ExplicitTerm),
}

fn param(spec: &DecoratedSpec, i: &Index) -> Result<ObjType, HandlerError> {
    spec.param(i)
        .cloned()
        .ok_or_else(|| HandlerError::UnknownIndex(i.to_string()))
}

/// `throw_{i,Y}`: `[]_Y ∘ t_i` decorated, `ina_Y ∘ t_i` explicit.
pub fn build_throw(spec: &DecoratedSpec, i: &Index, y: &ObjType, side: Side) -> Result<Built, HandlerError> {
    let p = param(spec, i)?;
    Ok(match side {
        Side::Decorated => Built::Decorated(Term::comp(Term::empty(y.clone()), Term::tag(i.clone(), p))?),
        Side::Explicit => Built::Explicit(ExplicitTerm::comp(
            ExplicitTerm::ina(y.clone()),
            ExplicitTerm::tag(i.clone(), p),
        )?),
    })
}

/// A decorated try-catch: the handler `⇓(TRY)` and the catcher `TRY`
/// underneath it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedHandler {
    pub handler: Term,
    pub catcher: Term,
}

/// `try f catch(i_1 => g_1 | ... | i_n => g_n)` in the decorated logic:
/// `⇓([id_Y | k_1] ∘ f)` with `k_p = [g_p | k_{p+1}] ∘ c_{i_p}` and
/// `k_{n+1} = []_Y`.
pub fn build_try_catch(spec: &DecoratedSpec, f: &Term, clauses: &[Clause]) -> Result<DecoratedHandler, HandlerError> {
    for c in clauses {
        let p = param(spec, &c.index)?;
        if c.body.src() != &p {
            return Err(TermError::TypeMismatch {
                context: "catch clause source",
                expected: p,
                found: c.body.src().clone(),
            }
            .into());
        }
    }
    let catcher = try_catcher(f, clauses)?;
    Ok(DecoratedHandler {
        handler: Term::downcast(catcher.clone()),
        catcher,
    })
}

/// The explicit try-catch `try(f, k_1) = [in_Y | k_1] ∘ f` with
/// `k_p = [g_p | k_{p+1}] ∘ c_{i_p}` and `k_{n+1} = ina_Y`, for
/// `f : X -> Y + E` and bodies `g_p : P_{i_p} -> Y + E`.
pub fn build_try_catch_explicit(
    spec: &DecoratedSpec,
    f: &ExplicitTerm,
    clauses: &[(Index, ExplicitTerm)],
) -> Result<ExplicitTerm, HandlerError> {
    if clauses.is_empty() {
        return Err(TermError::EmptyClauseList.into());
    }
    let (y, _) = crate::semantics::split_exc(f.tgt());
    let mut k = ExplicitTerm::ina(y.clone());
    for (i, g) in clauses.iter().rev() {
        let p = param(spec, i)?;
        k = ExplicitTerm::comp(ExplicitTerm::cotuple(g.clone(), k)?, ExplicitTerm::untag(i.clone(), p))?;
    }
    Ok(ExplicitTerm::comp(ExplicitTerm::cotuple(ExplicitTerm::inj(y), k)?, f.clone())?)
}

/// A deliberately wrong decorated handler whose fall-through `k_{n+1}`
/// applies the last clause body to every remaining exception instead of
/// propagating it. Needs every parameter type equal to the last clause's.
pub fn build_corrupted_try_catch(spec: &DecoratedSpec, f: &Term, clauses: &[Clause]) -> Result<Term, HandlerError> {
    let last = clauses.last().ok_or(TermError::EmptyClauseList)?;
    let y = f.tgt().clone();
    let mut branches = Vec::new();
    for e in &spec.exceptions {
        if &e.param != last.body.src() {
            return Err(TermError::TypeMismatch {
                context: "corrupted fall-through",
                expected: last.body.src().clone(),
                found: e.param.clone(),
            }
            .into());
        }
        branches.push((e.index.clone(), last.body.clone()));
    }
    let mut k = Term::family(branches, y.clone())?;
    for c in clauses.iter().rev() {
        k = Term::comp(Term::cotuple(c.body.clone(), k)?, Term::untag(c.index.clone(), c.body.src().clone()))?;
    }
    Ok(Term::downcast(Term::comp(Term::cotuple(Term::id(y), k)?, f.clone())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::battery::standard_exceptions;
    use crate::syntax::{Decoration, Name, TermKind};

    fn spec() -> DecoratedSpec {
        DecoratedSpec::canonical(
            vec![Name::new("X"), Name::new("Y"), Name::new("P1"), Name::new("P2")],
            vec![],
            standard_exceptions(2),
        )
    }

    #[test]
    fn decorated_throw_is_a_propagator() {
        let Built::Decorated(t) = build_throw(&spec(), &Index::new("1"), &ObjType::base("Y"), Side::Decorated).unwrap()
        else {
            panic!("decorated side requested")
        };
        assert_eq!(t.deco(), Decoration::Ppg);
        assert_eq!(t.to_string(), "[][Y] o t1");
    }

    #[test]
    fn one_clause_unfolding_shape() {
        let s = spec();
        let f = Term::gen("f", ObjType::base("X"), ObjType::base("Y"), Decoration::Ppg).unwrap();
        let g = Term::gen("g", ObjType::base("P1"), ObjType::base("Y"), Decoration::Ppg).unwrap();
        let h = build_try_catch(&s, &f, &[Clause { index: Index::new("1"), body: g }]).unwrap();
        assert_eq!(h.handler.deco(), Decoration::Ppg);
        assert!(matches!(h.handler.kind(), TermKind::Downcast(_)));
        assert_eq!(h.handler.to_string(), "down([id[Y] | [g | [][Y]] o c1] o f)");
    }

    #[test]
    fn empty_clause_list_rejected() {
        let f = Term::gen("f", ObjType::base("X"), ObjType::base("Y"), Decoration::Ppg).unwrap();
        assert_eq!(
            build_try_catch(&spec(), &f, &[]),
            Err(HandlerError::Term(TermError::EmptyClauseList))
        );
    }

    #[test]
    fn catcher_block_rejected() {
        let f = Term::gen("f", ObjType::base("X"), ObjType::base("Y"), Decoration::Ctc).unwrap();
        let g = Term::gen("g", ObjType::base("P1"), ObjType::base("Y"), Decoration::Ppg).unwrap();
        assert!(matches!(
            build_try_catch(&spec(), &f, &[Clause { index: Index::new("1"), body: g }]),
            Err(HandlerError::Term(TermError::DecorationTooHigh { .. }))
        ));
    }
}
