use super::equation::Equation;
use super::term::{Term, TermError, TermKind};
use super::types::{Decoration, Index, Name, ObjType, UNIT};

/// `name : src -> tgt [deco]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpDecl {
    pub name: Name,
    pub src: ObjType,
    pub tgt: ObjType,
    pub deco: Decoration,
}

impl OpDecl {
    pub fn new(name: &str, src: ObjType, tgt: ObjType, deco: Decoration) -> Self {
        OpDecl {
            name: Name::new(name),
            src,
            tgt,
            deco,
        }
    }

    pub fn term(&self) -> Result<Term, TermError> {
        Term::gen(
            self.name.as_str(),
            self.src.clone(),
            self.tgt.clone(),
            self.deco,
        )
    }
}

/// An exception index together with its parameter type `P_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExceptionDecl {
    pub index: Index,
    pub param: ObjType,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub name: Option<String>,
    pub eq: Equation,
}

/// A decorated specification: base types, operations, the ordered index set
/// with parameter types, and axioms.
///
/// Operations named `t<i>` / `c<i>` for a declared index `i` are declarations
/// of the tag and untag of that index; they are checked against the forced
/// shapes `P_i -> 0 [ppg]` and `0 -> P_i [ctc]` by `check_wellformed`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecoratedSpec {
    pub types: Vec<Name>,
    pub ops: Vec<OpDecl>,
    pub exceptions: Vec<ExceptionDecl>,
    pub axioms: Vec<Axiom>,
}

impl DecoratedSpec {
    /// The decorated specification for exceptions over a pure signature: the
    /// given operations plus, for every index, the canonical weak axioms
    /// `c_i ∘ t_i ~ id` and `c_i ∘ t_j ~ [] ∘ t_j` (j ≠ i).
    pub fn canonical(types: Vec<Name>, ops: Vec<OpDecl>, exceptions: Vec<ExceptionDecl>) -> Self {
        let mut spec = DecoratedSpec {
            types,
            ops,
            exceptions,
            axioms: Vec::new(),
        };
        spec.axioms = spec
            .canonical_axioms()
            .into_iter()
            .map(|eq| Axiom { name: None, eq })
            .collect();
        spec
    }

    pub fn indices(&self) -> impl Iterator<Item = &Index> {
        self.exceptions.iter().map(|e| &e.index)
    }

    pub fn has_index(&self, i: &Index) -> bool {
        self.exceptions.iter().any(|e| &e.index == i)
    }

    pub fn param(&self, i: &Index) -> Option<&ObjType> {
        self.exceptions
            .iter()
            .find(|e| &e.index == i)
            .map(|e| &e.param)
    }

    pub fn op(&self, name: &str) -> Option<&OpDecl> {
        self.ops.iter().find(|o| o.name.as_str() == name)
    }

    /// Declared operations that are neither tags nor untags.
    pub fn plain_ops(&self) -> impl Iterator<Item = &OpDecl> {
        self.ops.iter().filter(move |o| self.core_index(o.name.as_str()).is_none())
    }

    pub fn pure_ops(&self) -> impl Iterator<Item = &OpDecl> {
        self.plain_ops().filter(|o| o.deco == Decoration::Pure)
    }

    /// If `name` is `t<i>` or `c<i>` for a declared index, returns whether it
    /// is the tag (`true`) or untag (`false`) and the index.
    pub fn core_index(&self, name: &str) -> Option<(bool, Index)> {
        let (is_tag, rest) = if let Some(r) = name.strip_prefix('t') {
            (true, r)
        } else {
            let r = name.strip_prefix('c')?;
            (false, r)
        };
        let idx = Index::new(rest);
        self.has_index(&idx).then_some((is_tag, idx))
    }

    pub fn is_type_declared(&self, ty: &ObjType) -> bool {
        let mut names = Vec::new();
        ty.base_names(&mut names);
        names
            .iter()
            .all(|n| n.as_str() == UNIT || self.types.contains(n))
            && !ty.mentions_exc()
    }

    /// `t_i`, with the declared types if the spec declares it explicitly.
    pub fn tag_term(&self, i: &Index) -> Option<Term> {
        let param = self.param(i)?.clone();
        match self.op(&i.tag_name()) {
            Some(d) => Some(Term::core_with_types(
                TermKind::Tag(i.clone()),
                d.src.clone(),
                d.tgt.clone(),
            )),
            None => Some(Term::tag(i.clone(), param)),
        }
    }

    pub fn untag_term(&self, i: &Index) -> Option<Term> {
        let param = self.param(i)?.clone();
        match self.op(&i.untag_name()) {
            Some(d) => Some(Term::core_with_types(
                TermKind::Untag(i.clone()),
                d.src.clone(),
                d.tgt.clone(),
            )),
            None => Some(Term::untag(i.clone(), param)),
        }
    }

    /// `c_i ∘ t_i ~ id_{P_i}`.
    pub fn diagonal_axiom(&self, i: &Index) -> Option<Equation> {
        let p = self.param(i)?.clone();
        let lhs = Term::comp(Term::untag(i.clone(), p.clone()), Term::tag(i.clone(), p.clone())).ok()?;
        Equation::weak(lhs, Term::id(p)).ok()
    }

    /// `c_i ∘ t_j ~ []_{P_i} ∘ t_j` for `j ≠ i`.
    pub fn cross_axiom(&self, i: &Index, j: &Index) -> Option<Equation> {
        if i == j {
            return None;
        }
        let pi = self.param(i)?.clone();
        let pj = self.param(j)?.clone();
        let tj = Term::tag(j.clone(), pj);
        let lhs = Term::comp(Term::untag(i.clone(), pi.clone()), tj.clone()).ok()?;
        let rhs = Term::comp(Term::empty(pi), tj).ok()?;
        Equation::weak(lhs, rhs).ok()
    }

    /// All canonical axioms, diagonal first per index, then cross axioms in
    /// index order.
    pub fn canonical_axioms(&self) -> Vec<Equation> {
        let mut out = Vec::new();
        for e in &self.exceptions {
            out.extend(self.diagonal_axiom(&e.index));
            for e2 in &self.exceptions {
                out.extend(self.cross_axiom(&e.index, &e2.index));
            }
        }
        out
    }

    pub fn is_canonical_axiom(&self, eq: &Equation) -> bool {
        self.canonical_axioms().iter().any(|a| a == eq)
    }

    pub fn has_axiom(&self, eq: &Equation) -> bool {
        self.axioms.iter().any(|a| &a.eq == eq)
    }

    /// Pure types of the signature: declared base types, then any further
    /// base type mentioned by a pure operation.
    pub fn pure_types(&self) -> Vec<ObjType> {
        let mut names: Vec<Name> = self.types.clone();
        for op in self.pure_ops() {
            let mut ns = Vec::new();
            op.src.base_names(&mut ns);
            op.tgt.base_names(&mut ns);
            for n in ns {
                if !names.contains(&n) {
                    names.push(n);
                }
            }
        }
        names.into_iter().map(ObjType::Base).collect()
    }

    /// Adds declarations (types and operations) from `other` that are not
    /// already present. Used to extend a spec with proof hypotheses.
    pub fn extended(&self, types: &[Name], ops: &[OpDecl]) -> DecoratedSpec {
        let mut s = self.clone();
        for t in types {
            if !s.types.contains(t) {
                s.types.push(t.clone());
            }
        }
        for o in ops {
            if s.op(o.name.as_str()).is_none() {
                s.ops.push(o.clone());
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_index_spec() -> DecoratedSpec {
        DecoratedSpec::canonical(
            vec![Name::new("P1"), Name::new("P2")],
            vec![],
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

    #[test]
    fn canonical_axiom_count() {
        let s = two_index_spec();
        // one diagonal per index, one cross axiom per ordered pair of distinct indices
        assert_eq!(s.axioms.len(), 4);
        assert!(s.axioms.iter().all(|a| s.is_canonical_axiom(&a.eq)));
    }

    #[test]
    fn core_names_resolve_only_for_declared_indices() {
        let s = two_index_spec();
        assert_eq!(s.core_index("t1"), Some((true, Index::new("1"))));
        assert_eq!(s.core_index("c2"), Some((false, Index::new("2"))));
        assert_eq!(s.core_index("t3"), None);
        assert_eq!(s.core_index("f"), None);
    }

    #[test]
    fn cross_axiom_requires_distinct_indices() {
        let s = two_index_spec();
        assert!(s.cross_axiom(&Index::new("1"), &Index::new("1")).is_none());
    }
}
