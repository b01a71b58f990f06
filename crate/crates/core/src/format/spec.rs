//! `.dexc` specifications.
//!
//! ```text
//! types
//!   X Y P1
//! ops
//!   f : X -> Y [ppg]
//! exceptions
//!   1 : P1
//! axioms
//!   diag1: c1 o t1 ~ id[P1]
//! ```
//!
//! The explicit variant uses the same sections, drops decorations on
//! operations and admits `E`, `in[X]`, `ina[X]` in types and terms.

use std::fmt::Write;

use super::lex::{lines, Cursor, Line, PResult, ParseError, ParseErrorKind};
use super::term::{equation, explicit_equation, ty};
use crate::syntax::{
    Axiom, Decoration, DecoratedSpec, ExceptionDecl, ExplicitOp, ExplicitSpec, Index, Name, OpDecl,
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Types,
    Ops,
    Exceptions,
    Axioms,
}

fn section(l: &Line<'_>) -> Option<Section> {
    match l.text.trim() {
        "types" => Some(Section::Types),
        "ops" => Some(Section::Ops),
        "exceptions" => Some(Section::Exceptions),
        "axioms" => Some(Section::Axioms),
        _ => None,
    }
}

/// Splits a spec into section bodies; axioms are returned unparsed since
/// they need every declaration.
fn split<'a>(src: &'a str) -> PResult<Vec<(Section, Line<'a>)>> {
    let mut cur = None;
    let mut out = Vec::new();
    for l in lines(src) {
        if let Some(s) = section(&l) {
            cur = Some(s);
            continue;
        }
        match cur {
            Some(s) => out.push((s, l)),
            None => {
                return Err(ParseError::syntax(
                    l.number,
                    l.indent + 1,
                    "expected a section header (types, ops, exceptions or axioms)",
                ))
            }
        }
    }
    Ok(out)
}

fn type_names(l: &Line<'_>, out: &mut Vec<Name>) -> PResult<()> {
    let mut c = Cursor::new(l)?;
    while !c.at_end() {
        out.push(Name::new(&c.ident()?));
        c.eat_sym(",");
    }
    Ok(())
}

fn exception(l: &Line<'_>, explicit: bool) -> PResult<ExceptionDecl> {
    let mut c = Cursor::new(l)?;
    let index = Index::new(&c.ident()?);
    c.expect_sym(":")?;
    let param = ty(&mut c, explicit)?;
    c.finish()?;
    Ok(ExceptionDecl { index, param })
}

/// Optional `name:` prefix of an axiom.
fn axiom_name(c: &mut Cursor) -> PResult<Option<String>> {
    if matches!(c.peek2(), Some(super::lex::Tok::Sym(":"))) {
        let n = c.ident()?;
        c.expect_sym(":")?;
        return Ok(Some(n));
    }
    Ok(None)
}

pub fn parse_spec(src: &str) -> PResult<DecoratedSpec> {
    let mut s = DecoratedSpec::default();
    let mut op_cols = Vec::new();
    let mut axioms = Vec::new();
    for (sec, l) in split(src)? {
        match sec {
            Section::Types => type_names(&l, &mut s.types)?,
            Section::Ops => {
                let mut c = Cursor::new(&l)?;
                let name = c.ident()?;
                c.expect_sym(":")?;
                let src_ty = ty(&mut c, false)?;
                c.expect_sym("->")?;
                let tgt = ty(&mut c, false)?;
                let deco_col = c.col();
                let deco = c.decoration()?;
                c.finish()?;
                op_cols.push((l.number, deco_col));
                s.ops.push(OpDecl::new(&name, src_ty, tgt, deco));
            }
            Section::Exceptions => s.exceptions.push(exception(&l, false)?),
            Section::Axioms => axioms.push(l),
        }
    }
    for (op, (line, col)) in s.ops.iter().zip(op_cols) {
        if let Some((is_tag, _)) = s.core_index(op.name.as_str()) {
            let forced = if is_tag { Decoration::Ppg } else { Decoration::Ctc };
            if op.deco != forced {
                return Err(ParseError::new(
                    line,
                    col,
                    ParseErrorKind::DecorationAnnotationConflict {
                        name: op.name.to_string(),
                        declared: op.deco,
                        forced,
                    },
                ));
            }
        }
    }
    for l in axioms {
        let mut c = Cursor::new(&l)?;
        let name = axiom_name(&mut c)?;
        let eq = equation(&mut c, &s)?;
        c.finish()?;
        s.axioms.push(Axiom { name, eq });
    }
    Ok(s)
}

fn write_types(out: &mut String, types: &[Name]) {
    out.push_str("types\n");
    if !types.is_empty() {
        let names: Vec<&str> = types.iter().map(Name::as_str).collect();
        let _ = writeln!(out, "  {}", names.join(" "));
    }
}

fn write_exceptions(out: &mut String, ex: &[ExceptionDecl]) {
    out.push_str("exceptions\n");
    for e in ex {
        let _ = writeln!(out, "  {} : {}", e.index, e.param);
    }
}

pub fn print_spec(s: &DecoratedSpec) -> String {
    let mut out = String::new();
    write_types(&mut out, &s.types);
    out.push_str("ops\n");
    for o in &s.ops {
        let _ = writeln!(out, "  {} : {} -> {} [{}]", o.name, o.src, o.tgt, o.deco);
    }
    write_exceptions(&mut out, &s.exceptions);
    out.push_str("axioms\n");
    for a in &s.axioms {
        match &a.name {
            Some(n) => {
                let _ = writeln!(out, "  {n}: {}", a.eq);
            }
            None => {
                let _ = writeln!(out, "  {}", a.eq);
            }
        }
    }
    out
}

pub fn parse_explicit_spec(src: &str) -> PResult<ExplicitSpec> {
    let mut s = ExplicitSpec::default();
    let mut axioms = Vec::new();
    for (sec, l) in split(src)? {
        match sec {
            Section::Types => type_names(&l, &mut s.types)?,
            Section::Ops => {
                let mut c = Cursor::new(&l)?;
                let name = c.ident()?;
                c.expect_sym(":")?;
                let src_ty = ty(&mut c, true)?;
                c.expect_sym("->")?;
                let tgt = ty(&mut c, true)?;
                c.finish()?;
                s.ops.push(ExplicitOp {
                    name: Name::new(&name),
                    src: src_ty,
                    tgt,
                });
            }
            Section::Exceptions => s.exceptions.push(exception(&l, true)?),
            Section::Axioms => axioms.push(l),
        }
    }
    for l in axioms {
        let mut c = Cursor::new(&l)?;
        let eq = explicit_equation(&mut c, &s)?;
        c.finish()?;
        s.axioms.push(eq);
    }
    Ok(s)
}

pub fn print_explicit_spec(s: &ExplicitSpec) -> String {
    let mut out = String::new();
    write_types(&mut out, &s.types);
    out.push_str("ops\n");
    for o in &s.ops {
        let _ = writeln!(out, "  {} : {} -> {}", o.name, o.src, o.tgt);
    }
    write_exceptions(&mut out, &s.exceptions);
    out.push_str("axioms\n");
    for a in &s.axioms {
        let _ = writeln!(out, "  {a}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::expand_spec;
    use crate::syntax::{Strength, TermKind};

    const SRC: &str = "\
# two exceptions over a propagator
types
  X Y P1 P2
ops
  f : X -> Y [ppg]
  t1 : P1 -> 0 [ppg]
exceptions
  1 : P1
  2 : P2
axioms
  c1 o t1 ~ id
  cross: c1 o t2 ~ [] o t2
";

    #[test]
    fn parses_sections() {
        let s = parse_spec(SRC).unwrap();
        assert_eq!(s.types.len(), 4);
        assert_eq!(s.ops.len(), 2);
        assert_eq!(s.exceptions.len(), 2);
        assert_eq!(s.axioms[0].eq.strength, Strength::Weak);
        assert!(matches!(s.axioms[0].eq.lhs.kind(), TermKind::Comp(..)));
        assert_eq!(s.axioms[1].name.as_deref(), Some("cross"));
    }

    #[test]
    fn tag_with_wrong_decoration_conflicts() {
        let src = SRC.replace("t1 : P1 -> 0 [ppg]", "t1 : P1 -> 0 [pure]");
        let e = parse_spec(&src).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::DecorationAnnotationConflict { .. }));
        assert_eq!(e.line, 6);
    }

    #[test]
    fn content_before_a_section_is_an_error() {
        let e = parse_spec("X Y\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn round_trip() {
        let s = parse_spec(SRC).unwrap();
        assert_eq!(parse_spec(&print_spec(&s)).unwrap(), s);
    }

    #[test]
    fn explicit_round_trip() {
        let s = parse_spec(SRC).unwrap();
        let x = expand_spec(&s);
        let text = print_explicit_spec(&x);
        assert_eq!(parse_explicit_spec(&text).unwrap(), x, "{text}");
    }
}
