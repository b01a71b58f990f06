//! Concrete syntax printers. Everything printed here parses back to the same
//! structure with the parsers in this module's siblings.

use std::fmt::{self, Write};

use crate::syntax::{ExplKind, ExplicitTerm, Term, TermKind};

fn needs_parens_left(t: &Term) -> bool {
    matches!(t.kind(), TermKind::Comp(..) | TermKind::Sum(..))
}

pub fn write_term(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    match t.kind() {
        TermKind::Gen(n) => write!(f, "{n}"),
        TermKind::Tag(i) => write!(f, "t{i}"),
        TermKind::Untag(i) => write!(f, "c{i}"),
        TermKind::Id => write!(f, "id[{}]", t.src()),
        TermKind::Empty => write!(f, "[][{}]", t.tgt()),
        TermKind::Comp(g, h) => {
            if needs_parens_left(g) {
                write!(f, "({g})")?;
            } else {
                write!(f, "{g}")?;
            }
            f.write_str(" o ")?;
            if matches!(h.kind(), TermKind::Sum(..)) {
                write!(f, "({h})")
            } else {
                write!(f, "{h}")
            }
        }
        TermKind::Cotuple(g, k) | TermKind::Case(g, k) => write!(f, "[{g} | {k}]"),
        TermKind::Copi1(b) => write!(f, "copi1[{}, {b}]", t.src()),
        TermKind::Copi2(a) => write!(f, "copi2[{a}, {}]", t.src()),
        TermKind::Downcast(k) => write!(f, "down({k})"),
        TermKind::Family(bs) => {
            if bs.is_empty() {
                return write!(f, "tags[][{}]", t.tgt());
            }
            f.write_str("tags[")?;
            for (n, (i, b)) in bs.iter().enumerate() {
                if n > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{i} => {b}")?;
            }
            f.write_char(']')
        }
        TermKind::Sum(l, r) => {
            write!(f, "{l} + ")?;
            if matches!(r.kind(), TermKind::Sum(..)) {
                write!(f, "({r})")
            } else {
                write!(f, "{r}")
            }
        }
        TermKind::Throw(i) => write!(f, "throw[{i}, {}]", t.tgt()),
        TermKind::Try(body, clauses) => {
            write!(f, "try {body} catch(")?;
            for (n, c) in clauses.iter().enumerate() {
                if n > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{} => {}", c.index, c.body)?;
            }
            f.write_char(')')
        }
    }
}

pub fn write_explicit(f: &mut fmt::Formatter<'_>, t: &ExplicitTerm) -> fmt::Result {
    match t.kind() {
        ExplKind::Gen(n) => write!(f, "{n}"),
        ExplKind::Tag(i) => write!(f, "t{i}"),
        ExplKind::Untag(i) => write!(f, "c{i}"),
        ExplKind::Id => write!(f, "id[{}]", t.src()),
        ExplKind::Empty => write!(f, "[][{}]", t.tgt()),
        ExplKind::In => write!(f, "in[{}]", t.src()),
        ExplKind::Ina => {
            let x = match t.tgt() {
                crate::syntax::ObjType::Coprod(x, _) => x.to_string(),
                _ => "0".to_string(),
            };
            write!(f, "ina[{x}]")
        }
        ExplKind::Comp(g, h) => {
            if matches!(g.kind(), ExplKind::Comp(..)) {
                write!(f, "({g}) o {h}")
            } else {
                write!(f, "{g} o {h}")
            }
        }
        ExplKind::Cotuple(g, k) | ExplKind::Case(g, k) => write!(f, "[{g} | {k}]"),
        ExplKind::Copi1(b) => write!(f, "copi1[{}, {b}]", t.src()),
        ExplKind::Copi2(a) => write!(f, "copi2[{a}, {}]", t.src()),
        ExplKind::ExcCase(bs) => {
            if bs.is_empty() {
                return write!(f, "tags[][{}]", t.tgt());
            }
            f.write_str("tags[")?;
            for (n, (i, b)) in bs.iter().enumerate() {
                if n > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{i} => {b}")?;
            }
            f.write_char(']')
        }
    }
}
