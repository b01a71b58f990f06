//! Terms, equations and specifications of the explicit logic, where the
//! exception type `E` and the coproducts `X + E` are visible.

use std::fmt;

use super::spec::ExceptionDecl;
use super::term::TermError;
use super::types::{Index, Name, ObjType};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExplKind {
    Gen(Name),
    /// `t_i : P_i -> E`.
    Tag(Index),
    /// `c_i : E -> P_i + E`.
    Untag(Index),
    Id,
    Empty,
    Comp(Box<ExplicitTerm>, Box<ExplicitTerm>),
    /// `in_X : X -> X + E`.
    In,
    /// `ina_X : E -> X + E`.
    Ina,
    /// `[f | k] : X + E -> Y` with `f : X -> Y` and `k : E -> Y`.
    Cotuple(Box<ExplicitTerm>, Box<ExplicitTerm>),
    /// `[f | k] : A + B -> C` over a plain binary coproduct.
    Case(Box<ExplicitTerm>, Box<ExplicitTerm>),
    Copi1(ObjType),
    Copi2(ObjType),
    /// Case analysis on `E` as the sum of the parameter types:
    /// `[f_i]_i : E -> Y`.
    ExcCase(Vec<(Index, ExplicitTerm)>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExplicitTerm {
    kind: ExplKind,
    src: ObjType,
    tgt: ObjType,
}

fn same(ctx: &'static str, expected: &ObjType, found: &ObjType) -> Result<(), TermError> {
    if expected == found {
        Ok(())
    } else {
        Err(TermError::TypeMismatch {
            context: ctx,
            expected: expected.clone(),
            found: found.clone(),
        })
    }
}

impl ExplicitTerm {
    pub fn kind(&self) -> &ExplKind {
        &self.kind
    }

    pub fn src(&self) -> &ObjType {
        &self.src
    }

    pub fn tgt(&self) -> &ObjType {
        &self.tgt
    }

    fn leaf(kind: ExplKind, src: ObjType, tgt: ObjType) -> Self {
        ExplicitTerm { kind, src, tgt }
    }

    pub fn gen(name: &str, src: ObjType, tgt: ObjType) -> Self {
        Self::leaf(ExplKind::Gen(Name::new(name)), src, tgt)
    }

    pub fn tag(i: Index, param: ObjType) -> Self {
        Self::leaf(ExplKind::Tag(i), param, ObjType::Exc)
    }

    pub fn untag(i: Index, param: ObjType) -> Self {
        Self::leaf(ExplKind::Untag(i), ObjType::Exc, param.plus_exc())
    }

    pub fn id(at: ObjType) -> Self {
        Self::leaf(ExplKind::Id, at.clone(), at)
    }

    pub fn empty(into: ObjType) -> Self {
        Self::leaf(ExplKind::Empty, ObjType::Zero, into)
    }

    pub fn inj(x: ObjType) -> Self {
        let tgt = x.clone().plus_exc();
        Self::leaf(ExplKind::In, x, tgt)
    }

    pub fn ina(x: ObjType) -> Self {
        Self::leaf(ExplKind::Ina, ObjType::Exc, x.plus_exc())
    }

    pub fn copi1(a: ObjType, b: ObjType) -> Self {
        let tgt = ObjType::coprod(a.clone(), b.clone());
        Self::leaf(ExplKind::Copi1(b), a, tgt)
    }

    pub fn copi2(a: ObjType, b: ObjType) -> Self {
        let tgt = ObjType::coprod(a.clone(), b.clone());
        Self::leaf(ExplKind::Copi2(a), b, tgt)
    }

    pub fn comp(outer: ExplicitTerm, inner: ExplicitTerm) -> Result<Self, TermError> {
        same("explicit composition", &outer.src, &inner.tgt)?;
        Ok(ExplicitTerm {
            src: inner.src.clone(),
            tgt: outer.tgt.clone(),
            kind: ExplKind::Comp(Box::new(outer), Box::new(inner)),
        })
    }

    /// Composes outermost first.
    pub fn chain(mut parts: Vec<ExplicitTerm>) -> Result<Self, TermError> {
        let mut acc = parts
            .pop()
            .ok_or_else(|| TermError::Malformed("empty composition chain".into()))?;
        while let Some(outer) = parts.pop() {
            acc = ExplicitTerm::comp(outer, acc)?;
        }
        Ok(acc)
    }

    pub fn cotuple(f: ExplicitTerm, k: ExplicitTerm) -> Result<Self, TermError> {
        same("explicit cotuple (exception component)", &ObjType::Exc, &k.src)?;
        same("explicit cotuple targets", &f.tgt, &k.tgt)?;
        if f.src.mentions_exc() {
            return Err(TermError::Malformed(format!(
                "the ordinary component of a cotuple may not read exceptions ({})",
                f.src
            )));
        }
        Ok(ExplicitTerm {
            src: f.src.clone().plus_exc(),
            tgt: f.tgt.clone(),
            kind: ExplKind::Cotuple(Box::new(f), Box::new(k)),
        })
    }

    pub fn case(f: ExplicitTerm, k: ExplicitTerm) -> Result<Self, TermError> {
        if f.src.is_zero() || k.src.is_zero() {
            return Err(TermError::Malformed(
                "coproduct components need non-empty sources".into(),
            ));
        }
        same("explicit coproduct targets", &f.tgt, &k.tgt)?;
        Ok(ExplicitTerm {
            src: ObjType::coprod(f.src.clone(), k.src.clone()),
            tgt: f.tgt.clone(),
            kind: ExplKind::Case(Box::new(f), Box::new(k)),
        })
    }

    /// `[f | k]`, as a cotuple when `k` reads `E` and as a plain coproduct
    /// case otherwise.
    pub fn bracket(f: ExplicitTerm, k: ExplicitTerm) -> Result<Self, TermError> {
        if k.src == ObjType::Exc && !f.src.mentions_exc() {
            ExplicitTerm::cotuple(f, k)
        } else {
            ExplicitTerm::case(f, k)
        }
    }

    pub fn exc_case(branches: Vec<(Index, ExplicitTerm)>, into: ObjType) -> Result<Self, TermError> {
        for (_, b) in &branches {
            same("exception case target", &into, &b.tgt)?;
        }
        Ok(ExplicitTerm {
            kind: ExplKind::ExcCase(branches),
            src: ObjType::Exc,
            tgt: into,
        })
    }

    pub fn children(&self) -> Vec<&ExplicitTerm> {
        match &self.kind {
            ExplKind::Comp(a, b) | ExplKind::Cotuple(a, b) | ExplKind::Case(a, b) => vec![a, b],
            ExplKind::ExcCase(bs) => bs.iter().map(|(_, t)| t).collect(),
            _ => vec![],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn is_id(&self) -> bool {
        matches!(self.kind, ExplKind::Id)
    }
}

impl fmt::Display for ExplicitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::format::print::write_explicit(f, self)
    }
}

impl fmt::Debug for ExplicitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} : {} -> {}", self.src, self.tgt)
    }
}

/// `lhs ≡ rhs` in the explicit logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExplicitEquation {
    pub lhs: ExplicitTerm,
    pub rhs: ExplicitTerm,
}

impl ExplicitEquation {
    pub fn new(lhs: ExplicitTerm, rhs: ExplicitTerm) -> Result<Self, TermError> {
        same("explicit equation sources", lhs.src(), rhs.src())?;
        same("explicit equation targets", lhs.tgt(), rhs.tgt())?;
        Ok(ExplicitEquation { lhs, rhs })
    }
}

impl fmt::Display for ExplicitEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExplicitOp {
    pub name: Name,
    pub src: ObjType,
    pub tgt: ObjType,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplicitSpec {
    pub types: Vec<Name>,
    pub ops: Vec<ExplicitOp>,
    pub exceptions: Vec<ExceptionDecl>,
    pub axioms: Vec<ExplicitEquation>,
}

impl ExplicitSpec {
    /// The explicit specification for exceptions, built directly: the given
    /// operations, `t_i : P_i -> E` and `c_i : E -> P_i + E` for each index,
    /// and the axioms `c_i ∘ t_i ≡ in_{P_i}` and `c_i ∘ t_j ≡ ina_{P_i} ∘ t_j`
    /// for `j ≠ i`.
    pub fn direct(types: Vec<Name>, ops: Vec<ExplicitOp>, exceptions: Vec<ExceptionDecl>) -> Self {
        let mut all_ops = ops;
        for e in &exceptions {
            all_ops.push(ExplicitOp {
                name: Name::new(&e.index.tag_name()),
                src: e.param.clone(),
                tgt: ObjType::Exc,
            });
            all_ops.push(ExplicitOp {
                name: Name::new(&e.index.untag_name()),
                src: ObjType::Exc,
                tgt: e.param.clone().plus_exc(),
            });
        }
        let mut axioms = Vec::new();
        for e in &exceptions {
            let ci = ExplicitTerm::untag(e.index.clone(), e.param.clone());
            let ti = ExplicitTerm::tag(e.index.clone(), e.param.clone());
            let lhs = ExplicitTerm::comp(ci.clone(), ti).expect("c_i after t_i");
            let rhs = ExplicitTerm::inj(e.param.clone());
            axioms.push(ExplicitEquation::new(lhs, rhs).expect("parallel sides"));
            for e2 in exceptions.iter().filter(|e2| e2.index != e.index) {
                let tj = ExplicitTerm::tag(e2.index.clone(), e2.param.clone());
                let lhs = ExplicitTerm::comp(ci.clone(), tj.clone()).expect("c_i after t_j");
                let rhs = ExplicitTerm::comp(ExplicitTerm::ina(e.param.clone()), tj).expect("ina after t_j");
                axioms.push(ExplicitEquation::new(lhs, rhs).expect("parallel sides"));
            }
        }
        ExplicitSpec {
            types,
            ops: all_ops,
            exceptions,
            axioms,
        }
    }

    pub fn op(&self, name: &str) -> Option<&ExplicitOp> {
        self.ops.iter().find(|o| o.name.as_str() == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cotuple_source_is_sum_with_exceptions() {
        let x = ObjType::base("X");
        let t = ExplicitTerm::cotuple(ExplicitTerm::inj(x.clone()), ExplicitTerm::ina(x.clone())).unwrap();
        assert_eq!(t.src(), &x.clone().plus_exc());
        assert_eq!(t.tgt(), &x.plus_exc());
    }

    #[test]
    fn direct_spec_axiom_count() {
        let ex = |i: &str| ExceptionDecl {
            index: Index::new(i),
            param: ObjType::base(&format!("P{i}")),
        };
        let s = ExplicitSpec::direct(vec![], vec![], vec![ex("1"), ex("2")]);
        assert_eq!(s.axioms.len(), 4);
        assert_eq!(s.ops.len(), 4);
    }
}
