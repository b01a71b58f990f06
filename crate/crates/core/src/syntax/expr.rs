//! Surface expressions and their elaboration into decorated terms.
//!
//! Elaboration is bidirectional: identifiers, generators and most composite
//! forms synthesize their types, while `id`, `[]` and bare coprojections take
//! their type from context. Decorations are never written on composite
//! expressions; they are inferred bottom-up by the term constructors.

use thiserror::Error;

use super::equation::{Equation, Strength};
use super::spec::DecoratedSpec;
use super::term::{Clause, Term, TermError};
use super::types::{Index, ObjType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ident(String),
    Id(Option<ObjType>),
    Empty(Option<ObjType>),
    Comp(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Copi1(Option<(ObjType, ObjType)>),
    Copi2(Option<(ObjType, ObjType)>),
    Down(Box<Expr>),
    /// Branches, with an optional target for the empty family.
    Family(Vec<(Index, Expr)>, Option<ObjType>),
    Sum(Box<Expr>, Box<Expr>),
    Throw(Index, Option<ObjType>),
    Try(Box<Expr>, Vec<(Index, Expr)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("unknown exception index `{0}`")]
    UnknownIndex(String),
    #[error("cannot infer the type of `{0}`; add an annotation")]
    NeedsAnnotation(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

fn expect(ctx: &'static str, want: Option<&ObjType>, got: &ObjType) -> Result<(), ElabError> {
    match want {
        Some(w) if w != got => Err(TermError::TypeMismatch {
            context: ctx,
            expected: w.clone(),
            found: got.clone(),
        }
        .into()),
        _ => Ok(()),
    }
}

fn needs(e: &ElabError) -> bool {
    matches!(e, ElabError::NeedsAnnotation(_))
}

/// Elaborates `expr` against the declarations of `spec`, inferring the
/// decoration of every node.
pub fn infer_decoration(expr: &Expr, spec: &DecoratedSpec) -> Result<Term, ElabError> {
    check(expr, spec, None, None)
}

/// Elaborates with an optional expected source and target.
pub fn check(
    expr: &Expr,
    spec: &DecoratedSpec,
    src: Option<&ObjType>,
    tgt: Option<&ObjType>,
) -> Result<Term, ElabError> {
    let term = check_inner(expr, spec, src, tgt)?;
    expect("expected source", src, term.src())?;
    expect("expected target", tgt, term.tgt())?;
    Ok(term)
}

fn param_of(spec: &DecoratedSpec, i: &Index) -> Result<ObjType, ElabError> {
    spec.param(i)
        .cloned()
        .ok_or_else(|| ElabError::UnknownIndex(i.to_string()))
}

fn check_inner(
    expr: &Expr,
    spec: &DecoratedSpec,
    src: Option<&ObjType>,
    tgt: Option<&ObjType>,
) -> Result<Term, ElabError> {
    match expr {
        Expr::Ident(name) => {
            if let Some((is_tag, i)) = spec.core_index(name) {
                let t = if is_tag {
                    spec.tag_term(&i)
                } else {
                    spec.untag_term(&i)
                };
                return t.ok_or_else(|| ElabError::UnknownIndex(i.to_string()));
            }
            let op = spec
                .op(name)
                .ok_or_else(|| ElabError::UnknownIdentifier(name.clone()))?;
            Ok(op.term()?)
        }
        Expr::Id(ann) => {
            let ty = ann
                .as_ref()
                .or(src)
                .or(tgt)
                .ok_or_else(|| ElabError::NeedsAnnotation("id".into()))?;
            Ok(Term::id(ty.clone()))
        }
        Expr::Empty(ann) => {
            let ty = ann
                .as_ref()
                .or(tgt)
                .ok_or_else(|| ElabError::NeedsAnnotation("[]".into()))?;
            Ok(Term::empty(ty.clone()))
        }
        Expr::Comp(g, f) => match check(f, spec, src, None) {
            Ok(ft) => {
                let gt = check(g, spec, Some(ft.tgt()), tgt)?;
                Ok(Term::comp(gt, ft)?)
            }
            Err(e) if needs(&e) => {
                let gt = check(g, spec, None, tgt)?;
                let ft = check(f, spec, src, Some(gt.src()))?;
                Ok(Term::comp(gt, ft)?)
            }
            Err(e) => Err(e),
        },
        Expr::Bracket(g, k) => match check(k, spec, None, tgt) {
            Ok(kt) => {
                let g_src = if kt.src().is_zero() {
                    src.cloned()
                } else {
                    match src {
                        Some(ObjType::Coprod(a, _)) => Some((**a).clone()),
                        _ => None,
                    }
                };
                let gt = check(g, spec, g_src.as_ref(), Some(kt.tgt()))?;
                Ok(Term::bracket(gt, kt)?)
            }
            Err(e) if needs(&e) => {
                let gt = check(g, spec, None, tgt)?;
                let kt = match check(k, spec, None, Some(gt.tgt())) {
                    Ok(kt) => kt,
                    Err(e) if needs(&e) => {
                        check(k, spec, Some(&ObjType::Zero), Some(gt.tgt()))?
                    }
                    Err(e) => return Err(e),
                };
                Ok(Term::bracket(gt, kt)?)
            }
            Err(e) => Err(e),
        },
        Expr::Copi1(ann) | Expr::Copi2(ann) => {
            let (a, b) = match (ann, tgt) {
                (Some((a, b)), _) => (a.clone(), b.clone()),
                (None, Some(ObjType::Coprod(a, b))) => ((**a).clone(), (**b).clone()),
                _ => return Err(ElabError::NeedsAnnotation("copi".into())),
            };
            Ok(if matches!(expr, Expr::Copi1(_)) {
                Term::copi1(a, b)?
            } else {
                Term::copi2(a, b)?
            })
        }
        Expr::Down(k) => Ok(Term::downcast(check(k, spec, src, tgt)?)),
        Expr::Family(bs, ann) => {
            let mut into = ann.clone().or_else(|| tgt.cloned());
            let mut pending = Vec::new();
            let mut done: Vec<Option<Term>> = vec![None; bs.len()];
            for (n, (i, body)) in bs.iter().enumerate() {
                let p = param_of(spec, i)?;
                match check(body, spec, Some(&p), into.as_ref()) {
                    Ok(t) => {
                        into.get_or_insert_with(|| t.tgt().clone());
                        done[n] = Some(t);
                    }
                    Err(e) if needs(&e) => pending.push(n),
                    Err(e) => return Err(e),
                }
            }
            let into = into.ok_or_else(|| ElabError::NeedsAnnotation("family".into()))?;
            for n in pending {
                let (i, body) = &bs[n];
                let p = param_of(spec, i)?;
                done[n] = Some(check(body, spec, Some(&p), Some(&into))?);
            }
            let branches = bs
                .iter()
                .zip(done)
                .map(|((i, _), t)| (i.clone(), t.expect("every branch elaborated")))
                .collect();
            Ok(Term::family(branches, into)?)
        }
        Expr::Sum(l, r) => {
            let (tl, tr) = match tgt {
                Some(ObjType::Coprod(c, d)) => (Some((**c).clone()), Some((**d).clone())),
                _ => (None, None),
            };
            let lt = check(l, spec, None, tl.as_ref());
            let rt = check(r, spec, None, tr.as_ref());
            let (lt, rt) = match (lt, rt) {
                (Ok(l), Ok(r)) => (l, r),
                (Ok(lt), Err(e)) if needs(&e) => {
                    let r_src = if lt.src().is_zero() { src.cloned() } else { None };
                    let rt = check(r, spec, r_src.as_ref(), tr.as_ref())?;
                    (lt, rt)
                }
                (Err(e), Ok(rt)) if needs(&e) => {
                    let l_src = if rt.src().is_zero() { src.cloned() } else { None };
                    let lt = check(l, spec, l_src.as_ref(), tl.as_ref())?;
                    (lt, rt)
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            Ok(Term::sum(lt, rt)?)
        }
        Expr::Throw(i, ann) => {
            let p = param_of(spec, i)?;
            let into = ann
                .as_ref()
                .or(tgt)
                .ok_or_else(|| ElabError::NeedsAnnotation(format!("throw[{i}]")))?;
            Ok(Term::throw(i.clone(), p, into.clone())?)
        }
        Expr::Try(f, clauses) => {
            if clauses.is_empty() {
                return Err(TermError::EmptyClauseList.into());
            }
            let ft = match check(f, spec, src, tgt) {
                Ok(ft) => ft,
                Err(e) if needs(&e) => {
                    let mut found = None;
                    for (i, body) in clauses {
                        let p = param_of(spec, i)?;
                        if let Ok(b) = check(body, spec, Some(&p), None) {
                            found = Some(b.tgt().clone());
                            break;
                        }
                    }
                    let y = found.ok_or(e)?;
                    check(f, spec, src, Some(&y))?
                }
                Err(e) => return Err(e),
            };
            let mut cs = Vec::with_capacity(clauses.len());
            for (i, body) in clauses {
                let p = param_of(spec, i)?;
                cs.push(Clause {
                    index: i.clone(),
                    body: check(body, spec, Some(&p), Some(ft.tgt()))?,
                });
            }
            Ok(Term::try_catch(ft, cs)?)
        }
    }
}

/// Elaborates both sides of an equation, letting either side supply the
/// types the other needs.
pub fn elaborate_equation(
    lhs: &Expr,
    rhs: &Expr,
    strength: Strength,
    spec: &DecoratedSpec,
) -> Result<Equation, ElabError> {
    let (l, r) = match check(lhs, spec, None, None) {
        Ok(l) => {
            let r = check(rhs, spec, Some(l.src()), Some(l.tgt()))?;
            (l, r)
        }
        Err(e) if needs(&e) => {
            let r = check(rhs, spec, None, None)?;
            let l = check(lhs, spec, Some(r.src()), Some(r.tgt()))?;
            (l, r)
        }
        Err(e) => return Err(e),
    };
    Ok(Equation::new(l, r, strength)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::spec::{ExceptionDecl, OpDecl};
    use crate::syntax::types::{Decoration, Name};

    fn spec() -> DecoratedSpec {
        DecoratedSpec::canonical(
            vec![Name::new("X"), Name::new("Y"), Name::new("P1"), Name::new("P2")],
            vec![
                OpDecl::new("f", ObjType::base("X"), ObjType::base("Y"), Decoration::Ppg),
                OpDecl::new("g", ObjType::base("P1"), ObjType::base("Y"), Decoration::Ppg),
            ],
            vec![
                ExceptionDecl {
                    index: Index::new("1"),
                    param: ObjType::base("P1"),
                },
                ExceptionDecl {
                    index: Index::new("2"),
                    param: ObjType::base("P2"),
                },
            ],
        )
    }

    fn ident(s: &str) -> Box<Expr> {
        Box::new(Expr::Ident(s.into()))
    }

    #[test]
    fn id_is_pure() {
        let t = infer_decoration(&Expr::Id(Some(ObjType::base("P1"))), &spec()).unwrap();
        assert_eq!(t.deco(), Decoration::Pure);
    }

    #[test]
    fn untag_after_tag_is_a_catcher() {
        let t = infer_decoration(&Expr::Comp(ident("c1"), ident("t1")), &spec()).unwrap();
        assert_eq!(t.deco(), Decoration::Ctc);
        assert_eq!(t.src(), &ObjType::base("P1"));
        assert_eq!(t.tgt(), &ObjType::base("P1"));
    }

    #[test]
    fn downcast_of_handler_shape_is_a_propagator() {
        // ⇓([id | g ∘ c1] ∘ f)
        let e = Expr::Down(Box::new(Expr::Comp(
            Box::new(Expr::Bracket(
                Box::new(Expr::Id(None)),
                Box::new(Expr::Comp(ident("g"), ident("c1"))),
            )),
            ident("f"),
        )));
        let t = infer_decoration(&e, &spec()).unwrap();
        assert_eq!(t.deco(), Decoration::Ppg);
    }

    #[test]
    fn id_needs_context() {
        assert!(matches!(
            infer_decoration(&Expr::Id(None), &spec()),
            Err(ElabError::NeedsAnnotation(_))
        ));
        let eq = elaborate_equation(
            &Expr::Comp(ident("c1"), ident("t1")),
            &Expr::Id(None),
            Strength::Weak,
            &spec(),
        )
        .unwrap();
        assert_eq!(eq.rhs, Term::id(ObjType::base("P1")));
    }

    #[test]
    fn composition_type_mismatch() {
        let err = infer_decoration(&Expr::Comp(ident("f"), ident("g")), &spec()).unwrap_err();
        assert!(matches!(err, ElabError::Term(TermError::TypeMismatch { .. })));
    }

    #[test]
    fn unknown_identifier() {
        assert_eq!(
            infer_decoration(&Expr::Ident("nope".into()), &spec()),
            Err(ElabError::UnknownIdentifier("nope".into()))
        );
    }

    #[test]
    fn empty_clause_list_rejected() {
        let e = Expr::Try(ident("f"), vec![]);
        assert_eq!(
            infer_decoration(&e, &spec()),
            Err(ElabError::Term(TermError::EmptyClauseList))
        );
    }
}
