//! `.dproof` derivation scripts.
//!
//! ```text
//! proof catch_raise
//! title catching and rethrowing the same exception
//! assume f : X -> Y [ppg]
//! derivation
//! a8 |- try f catch(1 => throw[1, Y]) == f
//!   def |- try f catch(1 => throw[1, Y]) == down(...)
//!   ...
//! ```
//!
//! After `derivation`, each line is one node: a rule id (or `axiom`, `def`),
//! an optional substitution `{name := value, ...}`, then `|-` and the
//! conclusion. Premises are the following lines indented deeper, all at the
//! same indentation.

use std::fmt::Write;

use super::lex::{lines, Cursor, Line, PResult, ParseError};
use super::term::{elab_error, equation_rest, expr, ty};
use crate::kernel::{Binding, Derivation, Judgment, LibraryEntry, RuleId, Step};
use crate::syntax::{check, infer_decoration, DecoratedSpec, Index, Name, OpDecl};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    pub title: Option<String>,
    /// Extra base types used by the proof.
    pub types: Vec<Name>,
    /// Operations assumed by the proof.
    pub hypotheses: Vec<OpDecl>,
    pub derivation: Derivation,
}

impl ProofScript {
    pub fn context(&self, base: &DecoratedSpec) -> DecoratedSpec {
        base.extended(&self.types, &self.hypotheses)
    }
}

impl From<&LibraryEntry> for ProofScript {
    fn from(e: &LibraryEntry) -> Self {
        ProofScript {
            name: e.name.to_string(),
            title: Some(e.title.to_string()),
            types: Vec::new(),
            hypotheses: e.hypotheses.clone(),
            derivation: e.derivation.clone(),
        }
    }
}

/// `type X`, `t : S -> T [d]`, `l == r` or `l ~ r`.
pub fn judgment(c: &mut Cursor, ctx: &DecoratedSpec) -> PResult<Judgment> {
    if c.is_word("type") && !matches!(c.peek2(), Some(super::lex::Tok::Sym(":" | "==" | "~")) | None) {
        c.expect_word("type")?;
        return Ok(Judgment::Type(ty(c, false)?));
    }
    let col = c.col();
    let e = expr(c)?;
    if c.eat_sym(":") {
        let s = ty(c, false)?;
        c.expect_sym("->")?;
        let t = ty(c, false)?;
        let deco = c.decoration()?;
        let term = check(&e, ctx, Some(&s), Some(&t)).map_err(|e| elab_error(c.line(), col, e))?;
        return Ok(Judgment::decl(term, deco));
    }
    Ok(Judgment::Eq(equation_rest(c, ctx, e, col)?))
}

fn binding(c: &mut Cursor, name: &str, ctx: &DecoratedSpec) -> PResult<Binding> {
    if name.starts_with(|ch: char| ch.is_ascii_uppercase()) {
        return Ok(Binding::Type(ty(c, false)?));
    }
    if name == "i" || name == "j" {
        return Ok(Binding::Index(Index::new(&c.ident()?)));
    }
    let col = c.col();
    let e = expr(c)?;
    infer_decoration(&e, ctx)
        .map(Binding::Term)
        .map_err(|e| elab_error(c.line(), col, e))
}

struct Node {
    indent: usize,
    line: usize,
    col: usize,
    d: Derivation,
}

fn node(l: &Line<'_>, ctx: &DecoratedSpec) -> PResult<Node> {
    let mut c = Cursor::new(l)?;
    let col = c.col();
    let head = c.ident()?;
    let step = match head.as_str() {
        "axiom" => Step::Axiom,
        "def" => Step::Def,
        r => Step::Rule(r.parse::<RuleId>().map_err(|m| ParseError::syntax(l.number, col, m))?),
    };
    let mut subst = Vec::new();
    if c.eat_sym("{")
        && !c.eat_sym("}") {
            loop {
                let name = c.ident()?;
                c.expect_sym(":=")?;
                let b = binding(&mut c, &name, ctx)?;
                subst.push((name, b));
                if c.eat_sym("}") {
                    break;
                }
                c.expect_sym(",")?;
            }
        }
    c.expect_sym("|-")?;
    let conclusion = judgment(&mut c, ctx)?;
    c.finish()?;
    Ok(Node {
        indent: l.indent,
        line: l.number,
        col,
        d: Derivation {
            conclusion,
            step,
            subst,
            premises: Vec::new(),
        },
    })
}

fn tree(nodes: &mut std::iter::Peekable<std::vec::IntoIter<Node>>) -> PResult<Derivation> {
    let mut n = nodes.next().expect("a node to build");
    let mut child_indent = None;
    while let Some(next) = nodes.peek() {
        if next.indent <= n.indent {
            break;
        }
        match child_indent {
            None => child_indent = Some(next.indent),
            Some(k) if k != next.indent => {
                return Err(ParseError::syntax(
                    next.line,
                    next.col,
                    format!("premise indented by {} where its siblings use {k}", next.indent),
                ))
            }
            _ => {}
        }
        n.d.premises.push(tree(nodes)?);
    }
    Ok(n.d)
}

/// Parses a script against the base specification it is checked in.
pub fn parse_proof(src: &str, base: &DecoratedSpec) -> PResult<ProofScript> {
    let mut name = None;
    let mut title = None;
    let mut types = Vec::new();
    let mut hypotheses = Vec::new();
    let mut it = lines(src);
    let mut last_line = 0;
    for l in it.by_ref() {
        last_line = l.number;
        let body = l.text.trim();
        if body == "derivation" {
            break;
        }
        if let Some(rest) = body.strip_prefix("title ") {
            title = Some(rest.trim().to_string());
            continue;
        }
        let mut c = Cursor::new(&l)?;
        let col = c.col();
        match c.ident()?.as_str() {
            "proof" => name = Some(c.ident()?),
            "types" => {
                while !c.at_end() {
                    types.push(Name::new(&c.ident()?));
                    c.eat_sym(",");
                }
            }
            "assume" => {
                let n = c.ident()?;
                c.expect_sym(":")?;
                let s = ty(&mut c, false)?;
                c.expect_sym("->")?;
                let t = ty(&mut c, false)?;
                let d = c.decoration()?;
                hypotheses.push(OpDecl::new(&n, s, t, d));
            }
            other => {
                return Err(ParseError::syntax(
                    l.number,
                    col,
                    format!("expected `proof`, `title`, `types`, `assume` or `derivation`, found `{other}`"),
                ))
            }
        }
        c.finish()?;
    }
    let ctx = base.extended(&types, &hypotheses);
    let nodes: Vec<Node> = it.map(|l| node(&l, &ctx)).collect::<PResult<_>>()?;
    let Some(first) = nodes.first() else {
        return Err(ParseError::syntax(last_line + 1, 1, "expected a derivation"));
    };
    let root_indent = first.indent;
    let mut nodes = nodes.into_iter().peekable();
    let derivation = tree(&mut nodes)?;
    if let Some(extra) = nodes.next() {
        let msg = if extra.indent < root_indent {
            "a node indented less than the root"
        } else {
            "a second root node"
        };
        return Err(ParseError::syntax(extra.line, extra.col, msg));
    }
    Ok(ProofScript {
        name: name.unwrap_or_default(),
        title,
        types,
        hypotheses,
        derivation,
    })
}

fn write_node(out: &mut String, d: &Derivation, depth: usize) {
    let _ = write!(out, "{:width$}{}", "", d.step, width = 2 * depth);
    if !d.subst.is_empty() {
        let parts: Vec<String> = d.subst.iter().map(|(n, b)| format!("{n} := {b}")).collect();
        let _ = write!(out, " {{{}}}", parts.join(", "));
    }
    let _ = writeln!(out, " |- {}", d.conclusion);
    for p in &d.premises {
        write_node(out, p, depth + 1);
    }
}

pub fn print_proof(p: &ProofScript) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "proof {}", p.name);
    if let Some(t) = &p.title {
        let _ = writeln!(out, "title {t}");
    }
    if !p.types.is_empty() {
        let names: Vec<&str> = p.types.iter().map(Name::as_str).collect();
        let _ = writeln!(out, "types {}", names.join(" "));
    }
    for h in &p.hypotheses {
        let _ = writeln!(out, "assume {} : {} -> {} [{}]", h.name, h.src, h.tgt, h.deco);
    }
    out.push_str("derivation\n");
    write_node(&mut out, &p.derivation, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::ParseErrorKind;
    use crate::kernel::{check_derivation, library_spec};
    use crate::syntax::Strength;

    const PART1: &str = "\
proof part1
assume g : X -> Y [ppg]
derivation
b6 |- g o [][X] == [][Y]
  d3 |- g o [][X] ~ [][Y]
    a1 |- g o [][X] : 0 -> Y [ctc]
      d1 |- [][X] : 0 -> X [ctc]
        axiom |- type X
      axiom |- g : X -> Y [ppg]
  b5 |- g o [][X] : 0 -> Y [ppg]
    b1 |- [][X] : 0 -> X [ppg]
      d2 |- [][X] : 0 -> X [pure]
        axiom |- type X
    axiom |- g : X -> Y [ppg]
  b1 |- [][Y] : 0 -> Y [ppg]
    d2 |- [][Y] : 0 -> Y [pure]
      axiom |- type Y
";

    #[test]
    fn parses_tree_shape() {
        let p = parse_proof(PART1, &library_spec()).unwrap();
        assert_eq!(p.name, "part1");
        assert_eq!(p.hypotheses.len(), 1);
        assert_eq!(p.derivation.premises.len(), 3);
        assert_eq!(p.derivation.size(), 14);
        assert_eq!(p.derivation.conclusion.equation().unwrap().strength, Strength::Strong);
    }

    #[test]
    fn round_trip() {
        let p = parse_proof(PART1, &library_spec()).unwrap();
        let again = parse_proof(&print_proof(&p), &library_spec()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn parsed_script_is_checked_by_the_kernel_not_the_parser() {
        let s = library_spec();
        let p = parse_proof(PART1, &s).unwrap();
        let v = check_derivation(&p.derivation, &p.context(&s));
        assert!(v.accepted, "{:?}", v.failures().collect::<Vec<_>>());
        let bad = PART1.replacen("b6 |-", "a6 |-", 1);
        let p = parse_proof(&bad, &s).unwrap();
        let v = check_derivation(&p.derivation, &p.context(&s));
        assert!(!v.accepted);
        assert_eq!(v.failures().next().unwrap().path, "");
    }

    #[test]
    fn substitution_values_by_kind() {
        let s = library_spec();
        let mut c = Cursor::from_text("f2 {i := 1} |- t1 : P1 -> 0 [ppg]", 1).unwrap();
        c.ident().unwrap();
        c.expect_sym("{").unwrap();
        c.ident().unwrap();
        c.expect_sym(":=").unwrap();
        assert_eq!(binding(&mut c, "i", &s).unwrap(), Binding::Index(Index::new("1")));
        let mut c = Cursor::from_text("P1 + X", 1).unwrap();
        assert!(matches!(binding(&mut c, "Y", &s).unwrap(), Binding::Type(_)));
    }

    #[test]
    fn inconsistent_indentation_is_reported() {
        let src = "derivation\nb1 |- [][X] : 0 -> X [ppg]\n    d2 |- [][X] : 0 -> X [pure]\n  axiom |- type X\n";
        let e = parse_proof(src, &library_spec()).unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn unknown_rule_is_a_syntax_error() {
        let e = parse_proof("derivation\nz9 |- type X\n", &library_spec()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!((e.line, e.col), (2, 1));
    }
}
