use std::fmt;

use serde::Serialize;

use super::spec::DecoratedSpec;
use super::term::{Term, TermKind};
use super::types::{Decoration, ObjType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    UndeclaredType,
    DuplicateDeclaration,
    TagArity,
    UntagArity,
    ParameterType,
    MissingCanonicalAxiom,
    MissingCrossAxiom,
    DuplicateCanonicalAxiom,
    UndeclaredGenerator,
    GeneratorSignature,
    IncompleteFamily,
    IllTypedTerm,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::UndeclaredType => "undeclared type",
            ViolationKind::DuplicateDeclaration => "duplicate declaration",
            ViolationKind::TagArity => "tag arity",
            ViolationKind::UntagArity => "untag arity",
            ViolationKind::ParameterType => "parameter type",
            ViolationKind::MissingCanonicalAxiom => "missing canonical axiom",
            ViolationKind::MissingCrossAxiom => "missing cross axiom",
            ViolationKind::DuplicateCanonicalAxiom => "duplicate canonical axiom",
            ViolationKind::UndeclaredGenerator => "undeclared generator",
            ViolationKind::GeneratorSignature => "generator signature",
            ViolationKind::IncompleteFamily => "incomplete family",
            ViolationKind::IllTypedTerm => "ill-typed term",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Where the problem is, e.g. `ops/t1` or `axioms/3`.
    pub location: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.location, self.kind.label(), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WellformedReport {
    pub violations: Vec<Violation>,
}

impl WellformedReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, location: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            location: location.into(),
            detail: detail.into(),
        });
    }
}

/// Checks every invariant of a decorated specification and collects the
/// violations in declaration order.
pub fn check_wellformed(s: &DecoratedSpec) -> WellformedReport {
    let mut r = WellformedReport::default();

    for (n, t) in s.types.iter().enumerate() {
        if s.types[..n].contains(t) {
            r.push(ViolationKind::DuplicateDeclaration, format!("types/{t}"), "type declared twice");
        }
    }

    let declared = |ty: &ObjType| s.is_type_declared(ty);

    for (n, op) in s.ops.iter().enumerate() {
        let loc = format!("ops/{}", op.name);
        if s.ops[..n].iter().any(|o| o.name == op.name) {
            r.push(ViolationKind::DuplicateDeclaration, &loc, "operation declared twice");
        }
        match s.core_index(op.name.as_str()) {
            Some((true, i)) => {
                let p = s.param(&i).expect("core index is declared");
                if &op.src != p || !op.tgt.is_zero() || op.deco != Decoration::Ppg {
                    r.push(
                        ViolationKind::TagArity,
                        &loc,
                        format!(
                            "expected {} : {p} -> 0 [ppg], found {} -> {} [{}]",
                            op.name, op.src, op.tgt, op.deco
                        ),
                    );
                }
            }
            Some((false, i)) => {
                let p = s.param(&i).expect("core index is declared");
                if !op.src.is_zero() || &op.tgt != p || op.deco != Decoration::Ctc {
                    r.push(
                        ViolationKind::UntagArity,
                        &loc,
                        format!(
                            "expected {} : 0 -> {p} [ctc], found {} -> {} [{}]",
                            op.name, op.src, op.tgt, op.deco
                        ),
                    );
                }
            }
            None => {
                for ty in [&op.src, &op.tgt] {
                    if !declared(ty) {
                        r.push(ViolationKind::UndeclaredType, &loc, format!("type {ty}"));
                    }
                }
            }
        }
    }

    for (n, e) in s.exceptions.iter().enumerate() {
        let loc = format!("exceptions/{}", e.index);
        if s.exceptions[..n].iter().any(|o| o.index == e.index) {
            r.push(ViolationKind::DuplicateDeclaration, &loc, "index declared twice");
        }
        if e.param.is_zero() || !declared(&e.param) {
            r.push(
                ViolationKind::ParameterType,
                &loc,
                format!("parameter {} is not a declared pure type", e.param),
            );
        }
    }

    for e in &s.exceptions {
        let i = &e.index;
        if let Some(diag) = s.diagonal_axiom(i) {
            match s.axioms.iter().filter(|a| a.eq == diag).count() {
                0 => r.push(
                    ViolationKind::MissingCanonicalAxiom,
                    format!("axioms/{i}"),
                    format!("{diag}"),
                ),
                1 => {}
                _ => r.push(
                    ViolationKind::DuplicateCanonicalAxiom,
                    format!("axioms/{i}"),
                    format!("{diag}"),
                ),
            }
        }
        for e2 in &s.exceptions {
            let Some(cross) = s.cross_axiom(i, &e2.index) else {
                continue;
            };
            match s.axioms.iter().filter(|a| a.eq == cross).count() {
                0 => r.push(
                    ViolationKind::MissingCrossAxiom,
                    format!("axioms/{i},{}", e2.index),
                    format!("{cross}"),
                ),
                1 => {}
                _ => r.push(
                    ViolationKind::DuplicateCanonicalAxiom,
                    format!("axioms/{i},{}", e2.index),
                    format!("{cross}"),
                ),
            }
        }
    }

    for (n, ax) in s.axioms.iter().enumerate() {
        let loc = match &ax.name {
            Some(name) => format!("axioms/{name}"),
            None => format!("axioms/#{}", n + 1),
        };
        for t in [&ax.eq.lhs, &ax.eq.rhs] {
            check_term(s, t, &loc, &mut r);
        }
    }
    r
}

/// Audits a term against the declarations of `s`.
pub fn check_term(s: &DecoratedSpec, t: &Term, loc: &str, r: &mut WellformedReport) {
    if let Err(e) = t.validate() {
        r.push(ViolationKind::IllTypedTerm, loc, e.to_string());
    }
    visit(s, t, loc, r);
}

fn visit(s: &DecoratedSpec, t: &Term, loc: &str, r: &mut WellformedReport) {
    match t.kind() {
        TermKind::Gen(name) => match s.op(name.as_str()) {
            None => r.push(ViolationKind::UndeclaredGenerator, loc, name.to_string()),
            Some(op) => {
                if &op.src != t.src() || &op.tgt != t.tgt() || op.deco != t.deco() {
                    r.push(
                        ViolationKind::GeneratorSignature,
                        loc,
                        format!("{name} used at {} -> {} [{}]", t.src(), t.tgt(), t.deco()),
                    );
                }
            }
        },
        TermKind::Tag(i) | TermKind::Untag(i) | TermKind::Throw(i) => {
            if !s.has_index(i) {
                r.push(ViolationKind::UndeclaredGenerator, loc, format!("index {i}"));
            }
        }
        TermKind::Family(bs) => {
            for e in &s.exceptions {
                if !bs.iter().any(|(i, _)| i == &e.index) {
                    r.push(
                        ViolationKind::IncompleteFamily,
                        loc,
                        format!("no branch for index {}", e.index),
                    );
                }
            }
        }
        _ => {}
    }
    for c in t.children() {
        visit(s, c, loc, r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::spec::{ExceptionDecl, OpDecl};
    use crate::syntax::types::{Index, Name};

    fn spec(n: usize) -> DecoratedSpec {
        let types = (1..=n).map(|k| Name::new(&format!("P{k}"))).collect();
        let exceptions = (1..=n)
            .map(|k| ExceptionDecl {
                index: Index::new(&k.to_string()),
                param: ObjType::base(&format!("P{k}")),
            })
            .collect();
        DecoratedSpec::canonical(types, vec![], exceptions)
    }

    #[test]
    fn canonical_spec_is_wellformed() {
        assert!(check_wellformed(&spec(1)).is_ok());
        assert!(check_wellformed(&spec(3)).is_ok());
    }

    #[test]
    fn missing_cross_axiom_reported() {
        let mut s = spec(2);
        let cross = s.cross_axiom(&Index::new("1"), &Index::new("2")).unwrap();
        s.axioms.retain(|a| a.eq != cross);
        let r = check_wellformed(&s);
        assert!(r.has(ViolationKind::MissingCrossAxiom));
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn tag_with_wrong_source_reported() {
        let mut s = spec(1);
        s.ops.push(OpDecl::new("t1", ObjType::Zero, ObjType::Zero, Decoration::Ppg));
        let r = check_wellformed(&s);
        assert!(r.has(ViolationKind::TagArity));
    }

    #[test]
    fn duplicate_canonical_axiom_reported() {
        let mut s = spec(1);
        let again = s.axioms[0].clone();
        s.axioms.push(again);
        assert!(check_wellformed(&s).has(ViolationKind::DuplicateCanonicalAxiom));
    }
}
