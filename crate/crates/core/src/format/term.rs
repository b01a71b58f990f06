//! Types, decorated expressions and explicit terms.
//!
//! `o` is right-associative and binds tighter than `+`; `+` on types and on
//! terms is left-associative.

use super::lex::{Cursor, PResult, ParseError, ParseErrorKind, Tok};
use crate::syntax::{
    check, elaborate_equation, ElabError, Equation, ExceptionDecl, Expr, ExplicitEquation, ExplicitSpec,
    ExplicitTerm, Index, ObjType, Strength, Term, TermError, DecoratedSpec,
};

const KEYWORDS: [&str; 11] = ["o", "id", "tags", "down", "copi1", "copi2", "throw", "try", "catch", "in", "ina"];

pub fn ty(c: &mut Cursor, explicit: bool) -> PResult<ObjType> {
    let mut t = ty_atom(c, explicit)?;
    while c.eat_sym("+") {
        let r = ty_atom(c, explicit)?;
        t = ObjType::coprod(t, r);
    }
    Ok(t)
}

fn ty_atom(c: &mut Cursor, explicit: bool) -> PResult<ObjType> {
    if c.eat_sym("(") {
        let t = ty(c, explicit)?;
        c.expect_sym(")")?;
        return Ok(t);
    }
    let col = c.col();
    let name = c.ident().map_err(|_| c.unexpected("a type"))?;
    Ok(match name.as_str() {
        "0" => ObjType::Zero,
        "E" if explicit => ObjType::Exc,
        "E" => {
            return Err(ParseError::syntax(
                c.line(),
                col,
                "the exception type `E` only appears in explicit specifications",
            ))
        }
        _ => ObjType::base(&name),
    })
}

fn annotation(c: &mut Cursor) -> PResult<Option<ObjType>> {
    if c.eat_sym("[") {
        let t = ty(c, false)?;
        c.expect_sym("]")?;
        Ok(Some(t))
    } else {
        Ok(None)
    }
}

fn index(c: &mut Cursor) -> PResult<Index> {
    c.ident().map(|s| Index::new(&s)).map_err(|_| c.unexpected("an exception index"))
}

/// A decorated expression, before elaboration.
pub fn expr(c: &mut Cursor) -> PResult<Expr> {
    let mut l = comp(c)?;
    while c.eat_sym("+") {
        let r = comp(c)?;
        l = Expr::Sum(Box::new(l), Box::new(r));
    }
    Ok(l)
}

fn comp(c: &mut Cursor) -> PResult<Expr> {
    let a = atom(c)?;
    if c.eat_word("o") {
        let rest = comp(c)?;
        return Ok(Expr::Comp(Box::new(a), Box::new(rest)));
    }
    Ok(a)
}

fn branches(c: &mut Cursor, sep: &str, close: &str) -> PResult<Vec<(Index, Expr)>> {
    let mut out = Vec::new();
    loop {
        let i = index(c)?;
        c.expect_sym("=>")?;
        out.push((i, expr(c)?));
        if c.eat_sym(close) {
            return Ok(out);
        }
        c.expect_sym(sep)?;
    }
}

fn atom(c: &mut Cursor) -> PResult<Expr> {
    if c.eat_sym("(") {
        let e = expr(c)?;
        c.expect_sym(")")?;
        return Ok(e);
    }
    if c.eat_sym("[") {
        if c.eat_sym("]") {
            return Ok(Expr::Empty(annotation(c)?));
        }
        let g = expr(c)?;
        c.expect_sym("|")?;
        let k = expr(c)?;
        c.expect_sym("]")?;
        return Ok(Expr::Bracket(Box::new(g), Box::new(k)));
    }
    let Some(Tok::Ident(w)) = c.peek().cloned() else {
        return Err(c.unexpected("a term"));
    };
    let col = c.col();
    c.ident()?;
    Ok(match w.as_str() {
        "id" => Expr::Id(annotation(c)?),
        "copi1" | "copi2" => {
            let ann = if c.eat_sym("[") {
                let a = ty(c, false)?;
                c.expect_sym(",")?;
                let b = ty(c, false)?;
                c.expect_sym("]")?;
                Some((a, b))
            } else {
                None
            };
            if w == "copi1" {
                Expr::Copi1(ann)
            } else {
                Expr::Copi2(ann)
            }
        }
        "down" => {
            c.expect_sym("(")?;
            let k = expr(c)?;
            c.expect_sym(")")?;
            Expr::Down(Box::new(k))
        }
        "tags" => {
            c.expect_sym("[")?;
            if c.eat_sym("]") {
                c.expect_sym("[")?;
                let t = ty(c, false)?;
                c.expect_sym("]")?;
                Expr::Family(Vec::new(), Some(t))
            } else {
                Expr::Family(branches(c, ",", "]")?, None)
            }
        }
        "throw" => {
            c.expect_sym("[")?;
            let i = index(c)?;
            let ann = if c.eat_sym(",") { Some(ty(c, false)?) } else { None };
            c.expect_sym("]")?;
            Expr::Throw(i, ann)
        }
        "try" => {
            let body = expr(c)?;
            c.expect_word("catch")?;
            c.expect_sym("(")?;
            if c.is_sym(")") {
                return Err(c.err(ParseErrorKind::EmptyClauseList));
            }
            Expr::Try(Box::new(body), branches(c, "|", ")")?)
        }
        k if KEYWORDS.contains(&k) => {
            return Err(ParseError::syntax(c.line(), col, format!("unexpected keyword `{k}`")));
        }
        _ => Expr::Ident(w),
    })
}

pub fn elab_error(line: usize, col: usize, e: ElabError) -> ParseError {
    let kind = match e {
        ElabError::UnknownIdentifier(s) => ParseErrorKind::UnknownIdentifier(s),
        ElabError::UnknownIndex(s) => ParseErrorKind::UnknownIdentifier(format!("exception index {s}")),
        ElabError::Term(TermError::EmptyClauseList) => ParseErrorKind::EmptyClauseList,
        other => ParseErrorKind::IllTyped(other.to_string()),
    };
    ParseError::new(line, col, kind)
}

/// Parses and elaborates a term, optionally against an expected signature.
pub fn term(c: &mut Cursor, spec: &DecoratedSpec, src: Option<&ObjType>, tgt: Option<&ObjType>) -> PResult<Term> {
    let col = c.col();
    let e = expr(c)?;
    check(&e, spec, src, tgt).map_err(|e| elab_error(c.line(), col, e))
}

/// `lhs == rhs` or `lhs ~ rhs`, after the left side has been read.
pub fn equation_rest(c: &mut Cursor, spec: &DecoratedSpec, lhs: Expr, col: usize) -> PResult<Equation> {
    let strength = if c.eat_sym("==") {
        Strength::Strong
    } else if c.eat_sym("~") {
        Strength::Weak
    } else {
        return Err(c.unexpected("`==` or `~`"));
    };
    let rhs = expr(c)?;
    elaborate_equation(&lhs, &rhs, strength, spec).map_err(|e| elab_error(c.line(), col, e))
}

pub fn equation(c: &mut Cursor, spec: &DecoratedSpec) -> PResult<Equation> {
    let col = c.col();
    let lhs = expr(c)?;
    equation_rest(c, spec, lhs, col)
}

pub fn parse_type(text: &str) -> PResult<ObjType> {
    let mut c = Cursor::from_text(text, 1)?;
    let t = ty(&mut c, false)?;
    c.finish()?;
    Ok(t)
}

pub fn parse_term(text: &str, spec: &DecoratedSpec) -> PResult<Term> {
    let mut c = Cursor::from_text(text, 1)?;
    let t = term(&mut c, spec, None, None)?;
    c.finish()?;
    Ok(t)
}

pub fn parse_equation(text: &str, spec: &DecoratedSpec) -> PResult<Equation> {
    let mut c = Cursor::from_text(text, 1)?;
    let e = equation(&mut c, spec)?;
    c.finish()?;
    Ok(e)
}

fn core_index(exceptions: &[ExceptionDecl], name: &str) -> Option<(bool, ExceptionDecl)> {
    let (is_tag, rest) = match name.split_at_checked(1)? {
        ("t", r) => (true, r),
        ("c", r) => (false, r),
        _ => return None,
    };
    exceptions
        .iter()
        .find(|e| e.index.as_str() == rest)
        .map(|e| (is_tag, e.clone()))
}

/// Explicit terms carry enough annotations to synthesize their types.
pub fn explicit_term(c: &mut Cursor, spec: &ExplicitSpec) -> PResult<ExplicitTerm> {
    let col = c.col();
    let a = explicit_atom(c, spec)?;
    if c.eat_word("o") {
        let rest = explicit_term(c, spec)?;
        return ExplicitTerm::comp(a, rest).map_err(|e| ill_typed(c, col, e));
    }
    Ok(a)
}

fn ill_typed(c: &Cursor, col: usize, e: TermError) -> ParseError {
    ParseError::new(c.line(), col, ParseErrorKind::IllTyped(e.to_string()))
}

fn explicit_ann(c: &mut Cursor) -> PResult<ObjType> {
    c.expect_sym("[")?;
    let t = ty(c, true)?;
    c.expect_sym("]")?;
    Ok(t)
}

fn explicit_atom(c: &mut Cursor, spec: &ExplicitSpec) -> PResult<ExplicitTerm> {
    let col = c.col();
    if c.eat_sym("(") {
        let t = explicit_term(c, spec)?;
        c.expect_sym(")")?;
        return Ok(t);
    }
    if c.eat_sym("[") {
        if c.eat_sym("]") {
            return Ok(ExplicitTerm::empty(explicit_ann(c)?));
        }
        let f = explicit_term(c, spec)?;
        c.expect_sym("|")?;
        let k = explicit_term(c, spec)?;
        c.expect_sym("]")?;
        return ExplicitTerm::bracket(f, k).map_err(|e| ill_typed(c, col, e));
    }
    let w = c.ident().map_err(|_| c.unexpected("an explicit term"))?;
    Ok(match w.as_str() {
        "id" => ExplicitTerm::id(explicit_ann(c)?),
        "in" => ExplicitTerm::inj(explicit_ann(c)?),
        "ina" => ExplicitTerm::ina(explicit_ann(c)?),
        "copi1" | "copi2" => {
            c.expect_sym("[")?;
            let a = ty(c, true)?;
            c.expect_sym(",")?;
            let b = ty(c, true)?;
            c.expect_sym("]")?;
            if w == "copi1" {
                ExplicitTerm::copi1(a, b)
            } else {
                ExplicitTerm::copi2(a, b)
            }
        }
        "tags" => {
            c.expect_sym("[")?;
            if c.eat_sym("]") {
                return ExplicitTerm::exc_case(Vec::new(), explicit_ann(c)?).map_err(|e| ill_typed(c, col, e));
            }
            let mut bs = Vec::new();
            loop {
                let i = index(c)?;
                c.expect_sym("=>")?;
                bs.push((i, explicit_term(c, spec)?));
                if c.eat_sym("]") {
                    break;
                }
                c.expect_sym(",")?;
            }
            let into = bs[0].1.tgt().clone();
            ExplicitTerm::exc_case(bs, into).map_err(|e| ill_typed(c, col, e))?
        }
        k if KEYWORDS.contains(&k) => {
            return Err(ParseError::syntax(c.line(), col, format!("unexpected keyword `{k}`")));
        }
        name => {
            if let Some((is_tag, e)) = core_index(&spec.exceptions, name) {
                if is_tag {
                    ExplicitTerm::tag(e.index, e.param)
                } else {
                    ExplicitTerm::untag(e.index, e.param)
                }
            } else {
                let op = spec
                    .op(name)
                    .ok_or_else(|| ParseError::new(c.line(), col, ParseErrorKind::UnknownIdentifier(name.into())))?;
                ExplicitTerm::gen(name, op.src.clone(), op.tgt.clone())
            }
        }
    })
}

pub fn explicit_equation(c: &mut Cursor, spec: &ExplicitSpec) -> PResult<ExplicitEquation> {
    let col = c.col();
    let l = explicit_term(c, spec)?;
    c.expect_sym("==")?;
    let r = explicit_term(c, spec)?;
    ExplicitEquation::new(l, r).map_err(|e| ill_typed(c, col, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::battery::standard_exceptions;
    use crate::syntax::{Decoration, Name, OpDecl, TermKind};

    fn spec() -> DecoratedSpec {
        DecoratedSpec::canonical(
            ["X", "Y", "P1", "P2"].map(Name::new).to_vec(),
            vec![
                OpDecl::new("f", ObjType::base("X"), ObjType::base("Y"), Decoration::Ppg),
                OpDecl::new("u", ObjType::base("X"), ObjType::base("Y"), Decoration::Pure),
            ],
            standard_exceptions(2),
        )
    }

    #[test]
    fn types_associate_left() {
        let t = parse_type("A + B + C").unwrap();
        assert_eq!(t.to_string(), "A + B + C");
        let u = parse_type("A + (B + C)").unwrap();
        assert_ne!(t, u);
        assert_eq!(parse_type("0 + A").unwrap(), ObjType::base("A"));
    }

    #[test]
    fn composition_binds_tighter_than_sum() {
        let s = spec();
        let t = parse_term("t1 o c1 + id[P2]", &s).unwrap();
        assert!(matches!(t.kind(), TermKind::Sum(..)));
        assert_eq!(t.deco(), Decoration::Ctc);
    }

    #[test]
    fn weak_axiom_parses() {
        let e = parse_equation("c1 o t1 ~ id", &spec()).unwrap();
        assert_eq!(e.strength, Strength::Weak);
        assert_eq!(e.lhs.src(), &ObjType::base("P1"));
    }

    #[test]
    fn empty_clause_list_is_rejected() {
        let e = parse_term("try f catch()", &spec()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyClauseList);
        assert_eq!(e.col, 13);
    }

    #[test]
    fn unknown_identifier_is_reported() {
        let e = parse_term("f o nope", &spec()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("nope".into()));
    }

    #[test]
    fn printed_terms_parse_back() {
        let s = spec();
        for text in [
            "try f catch(1 => throw[1, Y] | 2 => [][Y] o t2 | 1 => u o [][X] o t1)",
            "down([f | [][Y]])",
            "tags[1 => [][Y] o t1, 2 => throw[2, Y]]",
            "tags[][Y]",
            "(c1 + id[P2]) o c2",
            "[u | f] o copi1[X, X]",
            "u + f + throw[1, Y]",
            "[u | u] o (id[X] + id[X]) o copi2[X, X]",
        ] {
            let t = parse_term(text, &s).unwrap_or_else(|e| panic!("{text}: {e}"));
            let again = parse_term(&t.to_string(), &s).unwrap();
            assert_eq!(again, t, "{text}");
        }
    }

    #[test]
    fn explicit_terms_synthesize() {
        let s = ExplicitSpec::direct(vec![Name::new("P1")], vec![], standard_exceptions(1));
        let mut c = Cursor::from_text("[in[P1] | ina[P1]] o c1 o t1", 1).unwrap();
        let t = explicit_term(&mut c, &s).unwrap();
        assert_eq!(t.src(), &ObjType::base("P1"));
        let mut c = Cursor::from_text(&t.to_string(), 1).unwrap();
        assert_eq!(explicit_term(&mut c, &s).unwrap(), t);
    }
}
