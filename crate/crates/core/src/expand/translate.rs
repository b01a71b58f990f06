//! The expansion of decorated terms, equations and specifications into the
//! explicit logic.
//!
//! Every decorated term `t : X -> Y` is sent to a single canonical catcher
//! form `X + E -> Y + E`; the propagator and pure readings are views of it.

use super::normalize::normalize;
use crate::syntax::{
    Decoration, DecoratedSpec, Equation, ExplicitEquation, ExplicitOp, ExplicitSpec, ExplicitTerm,
    ObjType, Strength, Term, TermKind,
};

fn comp(g: ExplicitTerm, f: ExplicitTerm) -> ExplicitTerm {
    ExplicitTerm::comp(g, f).expect("expansion preserves composability")
}

fn cotuple(f: ExplicitTerm, k: ExplicitTerm) -> ExplicitTerm {
    ExplicitTerm::cotuple(f, k).expect("expansion builds well-typed cotuples")
}

/// Explicit type of the operation `name` declared with a decoration.
pub fn explicit_signature(src: &ObjType, tgt: &ObjType, deco: Decoration) -> (ObjType, ObjType) {
    match deco {
        Decoration::Pure => (src.clone(), tgt.clone()),
        Decoration::Ppg => (src.clone(), tgt.clone().plus_exc()),
        Decoration::Ctc => (src.clone().plus_exc(), tgt.clone().plus_exc()),
    }
}

/// The catcher form `X + E -> Y + E` of a decorated term.
pub fn expand_term(t: &Term) -> ExplicitTerm {
    let (x, y) = (t.src().clone(), t.tgt().clone());
    match t.kind() {
        TermKind::Gen(name) => {
            let (s, g) = explicit_signature(&x, &y, t.deco());
            let e = ExplicitTerm::gen(name.as_str(), s, g);
            match t.deco() {
                Decoration::Pure => cotuple(comp(ExplicitTerm::inj(y.clone()), e), ExplicitTerm::ina(y)),
                Decoration::Ppg => cotuple(e, ExplicitTerm::ina(y)),
                Decoration::Ctc => e,
            }
        }
        TermKind::Tag(i) => cotuple(ExplicitTerm::tag(i.clone(), x), ExplicitTerm::ina(ObjType::Zero)),
        TermKind::Untag(i) => ExplicitTerm::untag(i.clone(), y),
        TermKind::Id => ExplicitTerm::id(x.plus_exc()),
        TermKind::Empty => cotuple(
            comp(ExplicitTerm::inj(y.clone()), ExplicitTerm::empty(y.clone())),
            ExplicitTerm::ina(y),
        ),
        TermKind::Comp(g, f) => comp(expand_term(g), expand_term(f)),
        TermKind::Cotuple(g, k) => cotuple(comp(expand_term(g), ExplicitTerm::inj(x)), expand_term(k)),
        TermKind::Case(f, k) => {
            let (a, b) = (f.src().clone(), k.src().clone());
            let kk = expand_term(k);
            let ordinary = ExplicitTerm::case(
                comp(expand_term(f), ExplicitTerm::inj(a)),
                comp(kk.clone(), ExplicitTerm::inj(b.clone())),
            )
            .expect("coproduct components are non-empty");
            cotuple(ordinary, comp(kk, ExplicitTerm::ina(b)))
        }
        TermKind::Copi1(b) => {
            let c = ExplicitTerm::copi1(x.clone(), b.clone());
            cotuple(comp(ExplicitTerm::inj(y.clone()), c), ExplicitTerm::ina(y))
        }
        TermKind::Copi2(a) => {
            let c = ExplicitTerm::copi2(a.clone(), x.clone());
            cotuple(comp(ExplicitTerm::inj(y.clone()), c), ExplicitTerm::ina(y))
        }
        TermKind::Downcast(k) => cotuple(comp(expand_term(k), ExplicitTerm::inj(x)), ExplicitTerm::ina(y)),
        TermKind::Family(bs) => {
            let branches = bs
                .iter()
                .map(|(i, f)| (i.clone(), comp(expand_term(f), ExplicitTerm::inj(f.src().clone()))))
                .collect();
            ExplicitTerm::exc_case(branches, y.plus_exc()).expect("branches share the target")
        }
        TermKind::Sum(..) | TermKind::Throw(_) | TermKind::Try(..) => {
            expand_term(&t.unfold_definition().expect("defined constructors unfold"))
        }
    }
}

/// `t ∘ in_X : X -> Y + E`, normalized.
pub fn propagator_view(t: &Term) -> ExplicitTerm {
    normalize(&comp(expand_term(t), ExplicitTerm::inj(t.src().clone())))
}

/// The explicit function `X -> Y` of a pure term.
pub fn pure_view(t: &Term) -> Option<ExplicitTerm> {
    if t.deco() != Decoration::Pure {
        return None;
    }
    match t.kind() {
        TermKind::Gen(name) => Some(ExplicitTerm::gen(name.as_str(), t.src().clone(), t.tgt().clone())),
        TermKind::Id => Some(ExplicitTerm::id(t.src().clone())),
        TermKind::Empty => Some(ExplicitTerm::empty(t.tgt().clone())),
        TermKind::Comp(g, f) => Some(comp(pure_view(g)?, pure_view(f)?)),
        TermKind::Copi1(b) => Some(ExplicitTerm::copi1(t.src().clone(), b.clone())),
        TermKind::Copi2(a) => Some(ExplicitTerm::copi2(a.clone(), t.src().clone())),
        _ => None,
    }
}

/// The reading of `t` at its own decoration: `X -> Y` when pure,
/// `X -> Y + E` for a propagator, the catcher form otherwise.
pub fn primary_view(t: &Term) -> ExplicitTerm {
    match t.deco() {
        Decoration::Pure => pure_view(t).unwrap_or_else(|| propagator_view(t)),
        Decoration::Ppg => propagator_view(t),
        Decoration::Ctc => expand_term(t),
    }
}

/// Strong equations compare catcher forms; weak ones compare them on
/// ordinary values, after `in_X`. Both sides are normalized.
pub fn expand_equation(e: &Equation) -> ExplicitEquation {
    let (l, r) = match e.strength {
        Strength::Strong => (expand_term(&e.lhs), expand_term(&e.rhs)),
        Strength::Weak => {
            let i = ExplicitTerm::inj(e.lhs.src().clone());
            (comp(expand_term(&e.lhs), i.clone()), comp(expand_term(&e.rhs), i))
        }
    };
    ExplicitEquation::new(normalize(&l), normalize(&r)).expect("parallel sides stay parallel")
}

/// Expands a whole specification: operations at their explicit types,
/// then `t_i`, `c_i` per index, then the expanded axioms.
pub fn expand_spec(s: &DecoratedSpec) -> ExplicitSpec {
    let mut ops: Vec<ExplicitOp> = s
        .plain_ops()
        .map(|o| {
            let (src, tgt) = explicit_signature(&o.src, &o.tgt, o.deco);
            ExplicitOp {
                name: o.name.clone(),
                src,
                tgt,
            }
        })
        .collect();
    for e in &s.exceptions {
        let t = expand_term(&Term::tag(e.index.clone(), e.param.clone()));
        let c = expand_term(&Term::untag(e.index.clone(), e.param.clone()));
        ops.push(ExplicitOp {
            name: crate::syntax::Name::new(&e.index.tag_name()),
            src: e.param.clone(),
            tgt: normalize(&comp(t, ExplicitTerm::inj(e.param.clone()))).tgt().clone(),
        });
        ops.push(ExplicitOp {
            name: crate::syntax::Name::new(&e.index.untag_name()),
            src: c.src().clone(),
            tgt: c.tgt().clone(),
        });
    }
    ExplicitSpec {
        types: s.types.clone(),
        ops,
        exceptions: s.exceptions.clone(),
        axioms: s.axioms.iter().map(|a| expand_equation(&a.eq)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{ExceptionDecl, Index, Name};

    fn ex(n: usize) -> Vec<ExceptionDecl> {
        crate::semantics::battery::standard_exceptions(n)
    }

    #[test]
    fn canonical_axioms_expand_to_explicit_axioms() {
        let s = DecoratedSpec::canonical(vec![Name::new("P1"), Name::new("P2")], vec![], ex(2));
        let direct = ExplicitSpec::direct(s.types.clone(), vec![], ex(2));
        assert_eq!(expand_spec(&s), direct);
    }

    #[test]
    fn throw_expands_to_ina_after_tag() {
        let y = ObjType::base("Y");
        let p = ObjType::base("P1");
        let t = Term::throw(Index::new("1"), p.clone(), y.clone()).unwrap();
        let expected = ExplicitTerm::comp(ExplicitTerm::ina(y), ExplicitTerm::tag(Index::new("1"), p)).unwrap();
        assert_eq!(propagator_view(&t), expected);
    }

    #[test]
    fn downcast_of_untag_is_its_propagating_part() {
        let p = ObjType::base("P1");
        let d = Term::downcast(Term::untag(Index::new("1"), p.clone()));
        // on 0 + E = E the ordinary component is vacuous
        assert_eq!(normalize(&expand_term(&d)), ExplicitTerm::ina(p));
    }
}
