//! Evaluation of decorated terms (as functions on `X + E`) and of explicit
//! terms (as functions between carriers).

use super::model::{decode, encode, split_exc, EvalError, FiniteModel, GenTable, Value};
use crate::syntax::{Clause, ExplKind, ExplicitTerm, ObjType, Term, TermKind};

fn outside(v: Value, ty: &ObjType) -> EvalError {
    EvalError::ValueOutsideCarrier {
        value: v,
        ty: ty.clone(),
    }
}

fn lookup<T: Copy>(table: &[T], a: u32, v: Value, ty: &ObjType) -> Result<T, EvalError> {
    table.get(a as usize).copied().ok_or_else(|| outside(v, ty))
}

/// Evaluates a decorated term on a value of `src + E`, returning a value of
/// `tgt + E`. Every term is read as a catcher; pure terms and propagators
/// send each exception to itself.
pub fn eval_decorated(t: &Term, m: &FiniteModel, v: Value) -> Result<Value, EvalError> {
    if let Value::Ordinary(a) = v {
        if a >= m.size(t.src())? {
            return Err(outside(v, t.src()));
        }
    }
    ev(t, m, v)
}

fn ev(t: &Term, m: &FiniteModel, v: Value) -> Result<Value, EvalError> {
    match t.kind() {
        TermKind::Gen(name) => {
            let table = m.gen(name)?;
            match (table, v) {
                (GenTable::Pure(tb), Value::Ordinary(a)) => {
                    Ok(Value::Ordinary(lookup(tb, a, v, t.src())?))
                }
                (GenTable::Ppg(tb), Value::Ordinary(a)) => lookup(tb, a, v, t.src()),
                (GenTable::Ctc { ordinary, .. }, Value::Ordinary(a)) => lookup(ordinary, a, v, t.src()),
                (GenTable::Ctc { exceptional, .. }, Value::Exceptional(e)) => {
                    lookup(exceptional, e, v, &ObjType::Exc)
                }
                (_, Value::Exceptional(_)) => Ok(v),
            }
        }
        TermKind::Tag(i) => match v {
            Value::Ordinary(a) => Ok(Value::Exceptional(m.exc_of(i, a)?)),
            e => Ok(e),
        },
        TermKind::Untag(i) => match v {
            Value::Exceptional(e) => m.untag(i, e),
            o => Err(outside(o, t.src())),
        },
        TermKind::Id => Ok(v),
        TermKind::Empty => match v {
            Value::Exceptional(_) => Ok(v),
            o => Err(outside(o, t.src())),
        },
        TermKind::Comp(g, f) => ev(g, m, ev(f, m, v)?),
        TermKind::Cotuple(g, k) => match v {
            Value::Ordinary(_) => ev(g, m, v),
            Value::Exceptional(_) => ev(k, m, v),
        },
        TermKind::Case(f, k) => match v {
            Value::Ordinary(a) => {
                let na = m.size(f.src())?;
                if a < na {
                    ev(f, m, v)
                } else {
                    ev(k, m, Value::Ordinary(a - na))
                }
            }
            Value::Exceptional(_) => ev(k, m, v),
        },
        TermKind::Copi1(_) => Ok(v),
        TermKind::Copi2(a) => match v {
            Value::Ordinary(b) => Ok(Value::Ordinary(m.size(a)? + b)),
            e => Ok(e),
        },
        TermKind::Downcast(k) => match v {
            Value::Ordinary(_) => ev(k, m, v),
            e => Ok(e),
        },
        TermKind::Family(bs) => match v {
            Value::Exceptional(e) => {
                let (k, a) = m.exc_parts(e);
                let idx = &m.exceptions()[k].index;
                match bs.iter().find(|(i, _)| i == idx) {
                    Some((_, f)) => ev(f, m, Value::Ordinary(a)),
                    None => Ok(v),
                }
            }
            o => Err(outside(o, t.src())),
        },
        TermKind::Sum(l, r) => {
            let nc = m.size(l.tgt())?;
            let inl = |w: Value| w;
            let inr = |w: Value| match w {
                Value::Ordinary(d) => Value::Ordinary(nc + d),
                e => e,
            };
            match (l.src().is_zero(), r.src().is_zero(), v) {
                (false, false, Value::Ordinary(a)) => {
                    let na = m.size(l.src())?;
                    if a < na {
                        Ok(inl(ev(l, m, v)?))
                    } else {
                        Ok(inr(ev(r, m, Value::Ordinary(a - na))?))
                    }
                }
                (false, false, e) => Ok(inr(ev(r, m, e)?)),
                (true, false, Value::Ordinary(_)) => Ok(inr(ev(r, m, v)?)),
                (true, false, e) => Ok(inl(ev(l, m, e)?)),
                (false, true, Value::Ordinary(_)) => Ok(inl(ev(l, m, v)?)),
                (false, true, e) => Ok(inr(ev(r, m, e)?)),
                (true, true, _) => Err(outside(v, t.src())),
            }
        }
        TermKind::Throw(i) => match v {
            Value::Ordinary(a) => Ok(Value::Exceptional(m.exc_of(i, a)?)),
            e => Ok(e),
        },
        TermKind::Try(f, clauses) => match v {
            Value::Ordinary(_) => match ev(f, m, v)? {
                Value::Exceptional(e) => handle(clauses, m, e),
                y => Ok(y),
            },
            e => Ok(e),
        },
    }
}

/// `k_1` of the try-catch unfolding applied to an exception:
/// `k_p = [g_p | k_{p+1}] ∘ c_{i_p}` and `k_{n+1} = []_Y`.
fn handle(clauses: &[Clause], m: &FiniteModel, mut e: u32) -> Result<Value, EvalError> {
    for c in clauses {
        match m.untag(&c.index, e)? {
            Value::Ordinary(a) => return ev(&c.body, m, Value::Ordinary(a)),
            Value::Exceptional(e2) => e = e2,
        }
    }
    Ok(Value::Exceptional(e))
}

/// Evaluates an explicit term on an atom of its source type. Tags and
/// untags always have their intended meaning here.
pub fn eval_explicit_atom(t: &ExplicitTerm, m: &FiniteModel, a: u32) -> Result<u32, EvalError> {
    match t.kind() {
        ExplKind::Gen(name) => {
            let (y, _) = split_exc(t.tgt());
            let tgt = y.plus_exc();
            let table = m.gen(name)?;
            let v = Value::Ordinary(a);
            match table {
                GenTable::Pure(tb) => lookup(tb, a, v, t.src()),
                GenTable::Ppg(tb) => encode(m, &tgt, lookup(tb, a, v, t.src())?),
                GenTable::Ctc {
                    ordinary,
                    exceptional,
                } => {
                    let (x, _) = split_exc(t.src());
                    let nx = m.size(&x)?;
                    let w = if a < nx {
                        lookup(ordinary, a, v, t.src())?
                    } else {
                        lookup(exceptional, a - nx, v, t.src())?
                    };
                    encode(m, &tgt, w)
                }
            }
        }
        ExplKind::Tag(i) => m.exc_of(i, a),
        ExplKind::Untag(i) => {
            let p = t.tgt();
            encode(m, p, m.intended_untag(i, a)?)
        }
        ExplKind::Id | ExplKind::In | ExplKind::Copi1(_) => Ok(a),
        ExplKind::Empty => Err(outside(Value::Ordinary(a), &ObjType::Zero)),
        ExplKind::Ina => {
            let (x, _) = split_exc(t.tgt());
            Ok(m.size(&x)? + a)
        }
        ExplKind::Comp(g, f) => eval_explicit_atom(g, m, eval_explicit_atom(f, m, a)?),
        ExplKind::Cotuple(f, k) => {
            let nx = m.size(f.src())?;
            if a < nx {
                eval_explicit_atom(f, m, a)
            } else {
                eval_explicit_atom(k, m, a - nx)
            }
        }
        ExplKind::Case(f, k) => {
            let na = m.size(f.src())?;
            if a < na {
                eval_explicit_atom(f, m, a)
            } else {
                eval_explicit_atom(k, m, a - na)
            }
        }
        ExplKind::Copi2(l) => Ok(m.size(l)? + a),
        ExplKind::ExcCase(bs) => {
            let (k, p) = m.exc_parts(a);
            let idx = &m.exceptions()[k].index;
            match bs.iter().find(|(i, _)| i == idx) {
                Some((_, f)) => eval_explicit_atom(f, m, p),
                None => Err(EvalError::UnknownIndex(idx.to_string())),
            }
        }
    }
}

/// Evaluates an explicit term on a value, encoding it at the source type and
/// decoding the result at the target type.
pub fn eval_explicit(t: &ExplicitTerm, m: &FiniteModel, v: Value) -> Result<Value, EvalError> {
    let a = encode(m, t.src(), v)?;
    decode(m, t.tgt(), eval_explicit_atom(t, m, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{ExceptionDecl, Index, Name};

    fn model() -> FiniteModel {
        let ex = |i: &str, p: &str| ExceptionDecl {
            index: Index::new(i),
            param: ObjType::base(p),
        };
        FiniteModel::with_sizes(
            &[(Name::new("P1"), 2), (Name::new("P2"), 2), (Name::new("X"), 2)],
            vec![ex("1", "P1"), ex("2", "P2")],
        )
        .unwrap()
    }

    #[test]
    fn explicit_untag_recovers_parameter() {
        let m = model();
        let c1 = ExplicitTerm::untag(Index::new("1"), ObjType::base("P1"));
        let e = m.exc_of(&Index::new("1"), 1).unwrap();
        assert_eq!(eval_explicit(&c1, &m, Value::Exceptional(e)).unwrap(), Value::Ordinary(1));
        let e2 = m.exc_of(&Index::new("2"), 0).unwrap();
        assert_eq!(
            eval_explicit(&c1, &m, Value::Exceptional(e2)).unwrap(),
            Value::Exceptional(e2)
        );
    }

    #[test]
    fn downcast_propagates_and_agrees_on_ordinary_values() {
        let m = model();
        let p1 = ObjType::base("P1");
        let i = Index::new("1");
        let k = Term::comp(Term::untag(i.clone(), p1.clone()), Term::tag(i.clone(), p1.clone())).unwrap();
        let d = Term::downcast(k.clone());
        let e = m.exc_of(&i, 0).unwrap();
        assert_eq!(eval_decorated(&d, &m, Value::Exceptional(e)).unwrap(), Value::Exceptional(e));
        assert_eq!(eval_decorated(&k, &m, Value::Exceptional(e)).unwrap(), Value::Ordinary(0));
        for a in 0..2 {
            let v = Value::Ordinary(a);
            assert_eq!(eval_decorated(&d, &m, v).unwrap(), eval_decorated(&k, &m, v).unwrap());
        }
    }

    #[test]
    fn pure_generator_propagates() {
        let mut m = model();
        m.set_gen("f", GenTable::Pure(vec![1, 0]));
        let x = ObjType::base("X");
        let f = Term::gen("f", x.clone(), x, crate::syntax::Decoration::Pure).unwrap();
        assert_eq!(eval_decorated(&f, &m, Value::Exceptional(3)).unwrap(), Value::Exceptional(3));
        assert_eq!(eval_decorated(&f, &m, Value::Ordinary(0)).unwrap(), Value::Ordinary(1));
    }
}
