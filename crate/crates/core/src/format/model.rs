//! `.dmodel` finite models.
//!
//! ```text
//! carriers
//!   X = {x0, x1}
//!   P1 = {a}
//! gens
//!   f: x0 -> y0
//!   f: x1 -> throws 1(a)
//!   k: throws 1(a) -> y0
//! ```
//!
//! Generator tables are read against the operation declarations of a
//! specification, which also fixes the exception indices. Catchers may omit
//! exceptional inputs, which then propagate. A line for an untag `c<i>`
//! overrides the intended untagging on that exception; only negative
//! controls need this.

use std::fmt::Write;

use super::lex::{lines, Cursor, PResult, ParseError, ParseErrorKind};
use crate::semantics::{FiniteModel, GenTable, Value};
use crate::syntax::{Decoration, DecoratedSpec, Name, ObjType, UNIT};

fn label(c: &mut Cursor) -> PResult<String> {
    if c.eat_sym("*") {
        return Ok("*".into());
    }
    let head = c.ident().map_err(|_| c.unexpected("an atom"))?;
    if c.eat_sym("(") {
        let inner = label(c)?;
        c.expect_sym(")")?;
        return Ok(format!("{head}({inner})"));
    }
    Ok(head)
}

fn value(c: &mut Cursor, m: &FiniteModel, ty: &ObjType) -> PResult<Value> {
    let (line, col) = (c.line(), c.col());
    let unknown = |what: String| ParseError::new(line, col, ParseErrorKind::UnknownIdentifier(what));
    if c.eat_word("throws") {
        let l = label(c)?;
        return m
            .exc_atom(&l)
            .map(Value::Exceptional)
            .ok_or_else(|| unknown(format!("exception {l}")));
    }
    let l = label(c)?;
    m.atom(ty, &l)
        .map(Value::Ordinary)
        .ok_or_else(|| unknown(format!("{l} in {ty}")))
}

/// An atom of `ty` or `throws i(a)`, on one line.
pub fn parse_value(text: &str, m: &FiniteModel, ty: &ObjType) -> PResult<Value> {
    let mut c = Cursor::from_text(text, 1)?;
    let v = value(&mut c, m, ty)?;
    c.finish()?;
    Ok(v)
}

struct Pending {
    name: Name,
    line: usize,
    ordinary: Vec<Option<Value>>,
    exceptional: Vec<Option<Value>>,
}

pub fn parse_model(src: &str, spec: &DecoratedSpec) -> PResult<FiniteModel> {
    let mut carriers: Vec<(Name, Vec<String>)> = Vec::new();
    let mut gen_lines = Vec::new();
    let mut section = None;
    for l in lines(src) {
        match l.text.trim() {
            "carriers" | "gens" => {
                section = Some(l.text.trim() == "carriers");
                continue;
            }
            _ => {}
        }
        match section {
            Some(true) => {
                let mut c = Cursor::new(&l)?;
                let col = c.col();
                let name = Name::new(&c.ident()?);
                if carriers.iter().any(|(n, _)| *n == name) {
                    return Err(ParseError::syntax(l.number, col, format!("carrier of {name} given twice")));
                }
                c.expect_sym("=")?;
                c.expect_sym("{")?;
                let mut atoms: Vec<String> = Vec::new();
                if !c.eat_sym("}") {
                    loop {
                        let col = c.col();
                        let a = c.ident()?;
                        if a == "throws" || atoms.contains(&a) {
                            return Err(ParseError::syntax(l.number, col, format!("atom `{a}` is reserved or repeated")));
                        }
                        atoms.push(a);
                        if c.eat_sym("}") {
                            break;
                        }
                        c.expect_sym(",")?;
                    }
                }
                c.finish()?;
                carriers.push((name, atoms));
            }
            Some(false) => gen_lines.push(l),
            None => return Err(ParseError::syntax(l.number, l.indent + 1, "expected `carriers` or `gens`")),
        }
    }
    let mut m = FiniteModel::new(carriers, spec.exceptions.clone())
        .map_err(|e| ParseError::syntax(1, 1, e.to_string()))?;
    let ne = m.exc_size() as usize;

    let mut pending: Vec<Pending> = Vec::new();
    let mut overrides: Vec<(crate::syntax::Index, usize, Vec<Value>)> = Vec::new();
    for l in &gen_lines {
        let mut c = Cursor::new(l)?;
        let col = c.col();
        let name = c.ident()?;
        c.expect_sym(":")?;
        let unknown = || ParseError::new(l.number, col, ParseErrorKind::UnknownIdentifier(name.clone()));
        let err = |col: usize, msg: String| ParseError::syntax(l.number, col, msg);
        if let Some((is_tag, i)) = spec.core_index(&name) {
            if is_tag {
                return Err(err(col, format!("the tag `{name}` is fixed by the exception declarations")));
            }
            let param = spec.param(&i).expect("declared index").clone();
            let in_col = c.col();
            let input = value(&mut c, &m, &param)?;
            let Value::Exceptional(e) = input else {
                return Err(err(in_col, "an untag reads exceptions".into()));
            };
            c.expect_sym("->")?;
            let out = value(&mut c, &m, &param)?;
            c.finish()?;
            let k = match overrides.iter().position(|(j, _, _)| *j == i) {
                Some(k) => k,
                None => {
                    let table = (0..ne as u32)
                        .map(|e| m.intended_untag(&i, e).expect("declared index"))
                        .collect();
                    overrides.push((i.clone(), l.number, table));
                    overrides.len() - 1
                }
            };
            overrides[k].2[e as usize] = out;
            continue;
        }
        let op = spec.op(&name).ok_or_else(unknown)?;
        let size = |t: &ObjType| m.size(t).map_err(|e| err(col, e.to_string()));
        let nx = size(&op.src)? as usize;
        size(&op.tgt)?;
        let k = match pending.iter().position(|p| p.name == op.name) {
            Some(k) => k,
            None => {
                pending.push(Pending {
                    name: op.name.clone(),
                    line: l.number,
                    ordinary: vec![None; nx],
                    exceptional: vec![None; ne],
                });
                pending.len() - 1
            }
        };
        let in_col = c.col();
        let input = value(&mut c, &m, &op.src)?;
        c.expect_sym("->")?;
        let out_col = c.col();
        let out = value(&mut c, &m, &op.tgt)?;
        c.finish()?;
        if op.deco != Decoration::Ctc && matches!(input, Value::Exceptional(_)) {
            return Err(err(in_col, format!("`{name}` is not a catcher and cannot read exceptions")));
        }
        if op.deco == Decoration::Pure && matches!(out, Value::Exceptional(_)) {
            return Err(err(out_col, format!("`{name}` is pure and cannot raise")));
        }
        let slot = match input {
            Value::Ordinary(a) => &mut pending[k].ordinary[a as usize],
            Value::Exceptional(e) => &mut pending[k].exceptional[e as usize],
        };
        if slot.replace(out).is_some() {
            return Err(err(in_col, format!("second entry for this input of `{name}`")));
        }
    }

    for op in spec.plain_ops() {
        let p = match pending.iter().find(|p| p.name == op.name) {
            Some(p) => p,
            None => {
                if m.size(&op.src).ok() != Some(0) {
                    continue;
                }
                &Pending {
                    name: op.name.clone(),
                    line: 0,
                    ordinary: Vec::new(),
                    exceptional: vec![None; ne],
                }
            }
        };
        if let Some(a) = p.ordinary.iter().position(Option::is_none) {
            return Err(ParseError::syntax(
                p.line,
                1,
                format!("`{}` has no entry for {}", op.name, m.label(&op.src, a as u32)),
            ));
        }
        let ord: Vec<Value> = p.ordinary.iter().map(|v| v.expect("complete")).collect();
        let table = match op.deco {
            Decoration::Pure => GenTable::Pure(
                ord.iter()
                    .map(|v| match v {
                        Value::Ordinary(a) => *a,
                        Value::Exceptional(_) => unreachable!("rejected above"),
                    })
                    .collect(),
            ),
            Decoration::Ppg => GenTable::Ppg(ord),
            Decoration::Ctc => GenTable::Ctc {
                ordinary: ord,
                exceptional: p
                    .exceptional
                    .iter()
                    .enumerate()
                    .map(|(e, v)| v.unwrap_or(Value::Exceptional(e as u32)))
                    .collect(),
            },
        };
        m.set_gen(op.name.as_str(), table);
    }
    for (i, _, table) in overrides {
        m.override_untag(&i, table);
    }
    Ok(m)
}

fn show(m: &FiniteModel, ty: &ObjType, v: Value) -> String {
    match v {
        Value::Ordinary(a) => m.label(ty, a),
        Value::Exceptional(e) => format!("throws {}", m.exc_label(e)),
    }
}

/// Prints a model; operations are typed by `spec`.
pub fn print_model(m: &FiniteModel, spec: &DecoratedSpec) -> String {
    let mut out = String::from("carriers\n");
    for (n, atoms) in m.carriers() {
        if n.as_str() != UNIT {
            let _ = writeln!(out, "  {n} = {{{}}}", atoms.join(", "));
        }
    }
    out.push_str("gens\n");
    for (n, table) in m.gens() {
        let Some(op) = spec.op(n.as_str()) else { continue };
        let mut row = |input: String, v: Value| {
            let _ = writeln!(out, "  {n}: {input} -> {}", show(m, &op.tgt, v));
        };
        match table {
            GenTable::Pure(t) => {
                for (a, b) in t.iter().enumerate() {
                    row(m.label(&op.src, a as u32), Value::Ordinary(*b));
                }
            }
            GenTable::Ppg(t) => {
                for (a, v) in t.iter().enumerate() {
                    row(m.label(&op.src, a as u32), *v);
                }
            }
            GenTable::Ctc { ordinary, exceptional } => {
                for (a, v) in ordinary.iter().enumerate() {
                    row(m.label(&op.src, a as u32), *v);
                }
                for (e, v) in exceptional.iter().enumerate() {
                    if *v != Value::Exceptional(e as u32) {
                        row(format!("throws {}", m.exc_label(e as u32)), *v);
                    }
                }
            }
        }
    }
    for (i, table) in m.untag_overrides() {
        let param = spec.param(i).cloned().unwrap_or(ObjType::Zero);
        for (e, v) in table.iter().enumerate() {
            let _ = writeln!(out, "  c{i}: throws {} -> {}", m.exc_label(e as u32), show(m, &param, *v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::battery::{random_models, standard_exceptions};
    use crate::semantics::eval_decorated;
    use crate::syntax::OpDecl;

    fn spec() -> DecoratedSpec {
        DecoratedSpec::canonical(
            ["X", "Y", "P1", "P2"].map(Name::new).to_vec(),
            vec![
                OpDecl::new("f", ObjType::base("X"), ObjType::base("Y"), Decoration::Ppg),
                OpDecl::new("u", ObjType::base("X"), ObjType::coprod(ObjType::base("Y"), ObjType::base("X")), Decoration::Pure),
                OpDecl::new("k", ObjType::base("X"), ObjType::base("Y"), Decoration::Ctc),
            ],
            standard_exceptions(2),
        )
    }

    const SRC: &str = "\
carriers
  X = {x0, x1}
  Y = {y0}
  P1 = {a}
  P2 = {b, b'}
gens
  f: x0 -> y0
  f: x1 -> throws 2(b')
  u: x0 -> inr(x1)
  u: x1 -> inl(y0)
  k: x0 -> throws 1(a)
  k: x1 -> y0
  k: throws 2(b) -> y0
";

    #[test]
    fn reads_tables() {
        let s = spec();
        let m = parse_model(SRC, &s).unwrap();
        let f = s.op("f").unwrap().term().unwrap();
        assert_eq!(eval_decorated(&f, &m, Value::Ordinary(1)).unwrap(), Value::Exceptional(2));
        let k = s.op("k").unwrap().term().unwrap();
        assert_eq!(eval_decorated(&k, &m, Value::Exceptional(1)).unwrap(), Value::Ordinary(0));
        // unlisted exceptional input of a catcher propagates
        assert_eq!(eval_decorated(&k, &m, Value::Exceptional(2)).unwrap(), Value::Exceptional(2));
    }

    #[test]
    fn missing_entry_is_reported() {
        let src = SRC.replace("  f: x1 -> throws 2(b')\n", "");
        let e = parse_model(&src, &spec()).unwrap_err();
        assert_eq!(e.line, 7);
    }

    #[test]
    fn pure_generator_cannot_raise() {
        let src = SRC.replace("u: x0 -> inr(x1)", "u: x0 -> throws 1(a)");
        assert!(parse_model(&src, &spec()).is_err());
    }

    #[test]
    fn unknown_atom_is_reported_with_column() {
        let src = SRC.replace("f: x0 -> y0", "f: x0 -> y9");
        let e = parse_model(&src, &spec()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UnknownIdentifier(_)));
        assert_eq!((e.line, e.col), (7, 12));
    }

    #[test]
    fn round_trip() {
        let s = spec();
        let m = parse_model(SRC, &s).unwrap();
        assert_eq!(parse_model(&print_model(&m, &s), &s).unwrap(), m);
        for m in random_models(&s, 20, 2, 7) {
            let text = print_model(&m, &s);
            assert_eq!(parse_model(&text, &s).unwrap(), m, "{text}");
        }
    }

    #[test]
    fn untag_override_round_trips() {
        let s = spec();
        let src = format!("{SRC}  c1: throws 1(a) -> throws 2(b)\n");
        let m = parse_model(&src, &s).unwrap();
        assert!(!m.is_intended());
        assert_eq!(parse_model(&print_model(&m, &s), &s).unwrap(), m);
    }
}
