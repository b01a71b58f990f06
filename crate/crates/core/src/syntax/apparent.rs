//! The apparent view of a decorated specification: decorations dropped,
//! equations forgotten.

use std::fmt;

use super::spec::DecoratedSpec;
use super::types::{Index, ObjType};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ApparentOp {
    pub name: String,
    pub src: ObjType,
    pub tgt: ObjType,
}

impl fmt::Display for ApparentOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.name, self.src, self.tgt)
    }
}

/// An undecorated signature. `try_catch` records that the try-catch
/// formation `f : X -> Y, (g_k : P_{i_k} -> Y)_k |- try f catch(...) : X -> Y`
/// is available, over the listed indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ApparentSpec {
    pub types: Vec<ObjType>,
    pub ops: Vec<ApparentOp>,
    pub try_catch: Vec<Index>,
}

impl ApparentSpec {
    pub fn op(&self, name: &str) -> Option<&ApparentOp> {
        self.ops.iter().find(|o| o.name == name)
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty() && self.try_catch.is_empty()
    }

    /// Every operation and formation of `other` is present here.
    pub fn contains(&self, other: &ApparentSpec) -> bool {
        other.ops.iter().all(|o| self.ops.contains(o))
            && other.try_catch.iter().all(|i| self.try_catch.contains(i))
    }

    fn push(&mut self, name: String, src: ObjType, tgt: ObjType) {
        let op = ApparentOp { name, src, tgt };
        if !self.ops.contains(&op) {
            self.ops.push(op);
        }
    }
}

/// Name of the raising operation `throw_{i,Y}`.
pub fn throw_name(i: &Index, y: &ObjType) -> String {
    format!("throw[{i}, {y}]")
}

/// The signature for exceptions over a pure signature: the pure operations,
/// `throw_{i,Y} : P_i -> Y` for every index and pure type, and the try-catch
/// formation.
pub fn exception_signature(s: &DecoratedSpec) -> ApparentSpec {
    let mut out = ApparentSpec {
        types: s.pure_types(),
        ..Default::default()
    };
    for op in s.pure_ops() {
        out.push(op.name.to_string(), op.src.clone(), op.tgt.clone());
    }
    for e in &s.exceptions {
        for y in s.pure_types() {
            out.push(throw_name(&e.index, &y), e.param.clone(), y);
        }
    }
    out.try_catch = s.indices().cloned().collect();
    out
}

/// Drops decorations and axioms. The result has every declared operation,
/// the tags and untags, and contains [`exception_signature`] as a
/// sub-signature.
pub fn undecorate(s: &DecoratedSpec) -> ApparentSpec {
    let mut out = ApparentSpec {
        types: s.pure_types(),
        ..Default::default()
    };
    for op in &s.ops {
        out.push(op.name.to_string(), op.src.clone(), op.tgt.clone());
    }
    for e in &s.exceptions {
        let i = &e.index;
        if s.op(&i.tag_name()).is_none() {
            out.push(i.tag_name(), e.param.clone(), ObjType::Zero);
        }
        if s.op(&i.untag_name()).is_none() {
            out.push(i.untag_name(), ObjType::Zero, e.param.clone());
        }
    }
    let sig = exception_signature(s);
    for op in sig.ops {
        out.push(op.name, op.src, op.tgt);
    }
    out.try_catch = sig.try_catch;
    out
}

impl fmt::Display for ApparentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.types.iter().map(|t| t.to_string()).collect();
        writeln!(f, "types {}", names.join(" "))?;
        for op in &self.ops {
            writeln!(f, "{op}")?;
        }
        if !self.try_catch.is_empty() {
            let is: Vec<&str> = self.try_catch.iter().map(Index::as_str).collect();
            writeln!(f, "try-catch over {}", is.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::spec::{ExceptionDecl, OpDecl};
    use crate::syntax::types::{Decoration, Name};

    #[test]
    fn throw_present_for_parameter_type() {
        let s = DecoratedSpec::canonical(
            vec![Name::new("Nat")],
            vec![OpDecl::new("n", ObjType::unit(), ObjType::base("Nat"), Decoration::Pure)],
            vec![ExceptionDecl {
                index: Index::new("1"),
                param: ObjType::base("Nat"),
            }],
        );
        let a = undecorate(&s);
        let op = a.op(&throw_name(&Index::new("1"), &ObjType::base("Nat"))).unwrap();
        assert_eq!(op.src, ObjType::base("Nat"));
        assert_eq!(op.tgt, ObjType::base("Nat"));
        assert!(a.contains(&exception_signature(&s)));
    }

    #[test]
    fn empty_spec_gives_empty_signature() {
        assert!(undecorate(&DecoratedSpec::default()).is_empty());
    }
}
