use std::fmt;

use thiserror::Error;

use super::types::{Decoration, Index, Name, ObjType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("type mismatch in {context}: expected {expected}, found {found}")]
    TypeMismatch {
        context: &'static str,
        expected: ObjType,
        found: ObjType,
    },
    #[error("{context}: decoration {found} exceeds the allowed {allowed}")]
    DecorationTooHigh {
        context: &'static str,
        allowed: Decoration,
        found: Decoration,
    },
    #[error("a catch clause list must not be empty")]
    EmptyClauseList,
    #[error("{0}")]
    Malformed(String),
}

/// One clause `i => g` of a try-catch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub index: Index,
    pub body: Term,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    /// A declared operation (pure signature or a proof hypothesis).
    Gen(Name),
    /// `t_i : P_i -> 0`, a propagator.
    Tag(Index),
    /// `c_i : 0 -> P_i`, a catcher.
    Untag(Index),
    Id,
    /// `[]_X : 0 -> X`.
    Empty,
    /// `outer ∘ inner`.
    Comp(Box<Term>, Box<Term>),
    /// Case distinction over `X + 0`: `[g | k] : X -> Y` with `g : X -> Y` a
    /// propagator and `k : 0 -> Y`.
    Cotuple(Box<Term>, Box<Term>),
    /// Semi-pure coproduct `[f | k] : A + B -> C`, `f` a propagator. Exceptions
    /// are handled by the right component.
    Case(Box<Term>, Box<Term>),
    /// `copi1 : A -> A + B`; carries `B`.
    Copi1(ObjType),
    /// `copi2 : B -> A + B`; carries `A`.
    Copi2(ObjType),
    /// `⇓k`.
    Downcast(Box<Term>),
    /// Cotuple over the constitutive coproduct of the tags, `[f_i]_i : 0 -> Y`.
    Family(Vec<(Index, Term)>),
    /// `f + k`, unfolded through coprojections.
    Sum(Box<Term>, Box<Term>),
    /// `throw_{i,Y}`, defined as `[]_Y ∘ t_i`.
    Throw(Index),
    /// `try f catch(i_1 => g_1 | ...)`.
    Try(Box<Term>, Vec<Clause>),
}

/// A decorated term. Every node carries its source, target and least
/// decoration; the constructors below are the only way to build one, so a
/// `Term` value is always well typed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    kind: TermKind,
    src: ObjType,
    tgt: ObjType,
    deco: Decoration,
}

fn same_type(ctx: &'static str, expected: &ObjType, found: &ObjType) -> Result<(), TermError> {
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

fn at_most(ctx: &'static str, allowed: Decoration, found: Decoration) -> Result<(), TermError> {
    if found <= allowed {
        Ok(())
    } else {
        Err(TermError::DecorationTooHigh {
            context: ctx,
            allowed,
            found,
        })
    }
}

fn no_exc(ty: &ObjType) -> Result<(), TermError> {
    if ty.mentions_exc() {
        Err(TermError::Malformed(format!(
            "the exception type may not occur in decorated terms ({ty})"
        )))
    } else {
        Ok(())
    }
}

impl Term {
    pub fn kind(&self) -> &TermKind {
        &self.kind
    }

    pub fn src(&self) -> &ObjType {
        &self.src
    }

    pub fn tgt(&self) -> &ObjType {
        &self.tgt
    }

    pub fn deco(&self) -> Decoration {
        self.deco
    }

    pub fn gen(name: &str, src: ObjType, tgt: ObjType, deco: Decoration) -> Result<Term, TermError> {
        no_exc(&src)?;
        no_exc(&tgt)?;
        Ok(Term {
            kind: TermKind::Gen(Name::new(name)),
            src,
            tgt,
            deco,
        })
    }

    pub fn tag(index: Index, param: ObjType) -> Term {
        Term {
            kind: TermKind::Tag(index),
            src: param,
            tgt: ObjType::Zero,
            deco: Decoration::Ppg,
        }
    }

    pub fn untag(index: Index, param: ObjType) -> Term {
        Term {
            kind: TermKind::Untag(index),
            src: ObjType::Zero,
            tgt: param,
            deco: Decoration::Ctc,
        }
    }

    /// A tag or untag node with arbitrary declared types. Only used to carry
    /// malformed declarations through to the well-formedness report.
    pub(crate) fn core_with_types(kind: TermKind, src: ObjType, tgt: ObjType) -> Term {
        let deco = match kind {
            TermKind::Tag(_) => Decoration::Ppg,
            _ => Decoration::Ctc,
        };
        Term {
            kind,
            src,
            tgt,
            deco,
        }
    }

    pub fn id(at: ObjType) -> Term {
        Term {
            kind: TermKind::Id,
            src: at.clone(),
            tgt: at,
            deco: Decoration::Pure,
        }
    }

    pub fn empty(into: ObjType) -> Term {
        Term {
            kind: TermKind::Empty,
            src: ObjType::Zero,
            tgt: into,
            deco: Decoration::Pure,
        }
    }

    pub fn comp(outer: Term, inner: Term) -> Result<Term, TermError> {
        same_type("composition", &outer.src, &inner.tgt)?;
        Ok(Term {
            src: inner.src.clone(),
            tgt: outer.tgt.clone(),
            deco: outer.deco.max(inner.deco),
            kind: TermKind::Comp(Box::new(outer), Box::new(inner)),
        })
    }

    /// Composes a chain given outermost first: `chain([h, g, f]) = h ∘ (g ∘ f)`.
    pub fn chain(mut parts: Vec<Term>) -> Result<Term, TermError> {
        let mut acc = parts
            .pop()
            .ok_or_else(|| TermError::Malformed("empty composition chain".into()))?;
        while let Some(outer) = parts.pop() {
            acc = Term::comp(outer, acc)?;
        }
        Ok(acc)
    }

    /// `[g | k]` for `g : X -> Y` a propagator and `k : 0 -> Y`.
    pub fn cotuple(g: Term, k: Term) -> Result<Term, TermError> {
        same_type("cotuple (right component source)", &ObjType::Zero, &k.src)?;
        same_type("cotuple targets", &g.tgt, &k.tgt)?;
        at_most("cotuple left component", Decoration::Ppg, g.deco)?;
        Ok(Term {
            src: g.src.clone(),
            tgt: g.tgt.clone(),
            deco: Decoration::Ctc,
            kind: TermKind::Cotuple(Box::new(g), Box::new(k)),
        })
    }

    /// Semi-pure coproduct `[f | k] : A + B -> C` with `A`, `B` non-empty types.
    pub fn case(f: Term, k: Term) -> Result<Term, TermError> {
        if f.src.is_zero() || k.src.is_zero() {
            return Err(TermError::Malformed(
                "semi-pure coproduct components need non-empty sources".into(),
            ));
        }
        same_type("coproduct targets", &f.tgt, &k.tgt)?;
        at_most("coproduct left component", Decoration::Ppg, f.deco)?;
        let deco = if k.deco <= Decoration::Ppg {
            Decoration::Ppg
        } else {
            Decoration::Ctc
        };
        Ok(Term {
            src: ObjType::coprod(f.src.clone(), k.src.clone()),
            tgt: f.tgt.clone(),
            deco,
            kind: TermKind::Case(Box::new(f), Box::new(k)),
        })
    }

    /// `[g | k]` choosing between the `X + 0` case distinction and the
    /// semi-pure coproduct by the source of `k`.
    pub fn bracket(g: Term, k: Term) -> Result<Term, TermError> {
        if k.src.is_zero() {
            Term::cotuple(g, k)
        } else {
            Term::case(g, k)
        }
    }

    pub fn copi1(left: ObjType, right: ObjType) -> Result<Term, TermError> {
        no_exc(&left)?;
        no_exc(&right)?;
        Ok(Term {
            tgt: ObjType::coprod(left.clone(), right.clone()),
            src: left,
            deco: Decoration::Pure,
            kind: TermKind::Copi1(right),
        })
    }

    pub fn copi2(left: ObjType, right: ObjType) -> Result<Term, TermError> {
        no_exc(&left)?;
        no_exc(&right)?;
        Ok(Term {
            tgt: ObjType::coprod(left.clone(), right.clone()),
            src: right,
            deco: Decoration::Pure,
            kind: TermKind::Copi2(left),
        })
    }

    pub fn downcast(k: Term) -> Term {
        Term {
            src: k.src.clone(),
            tgt: k.tgt.clone(),
            deco: Decoration::Ppg,
            kind: TermKind::Downcast(Box::new(k)),
        }
    }

    /// `[f_i]_i : 0 -> Y` with `f_i : P_i -> Y` propagators.
    pub fn family(branches: Vec<(Index, Term)>, into: ObjType) -> Result<Term, TermError> {
        for (_, f) in &branches {
            same_type("family target", &into, &f.tgt)?;
            at_most("family branch", Decoration::Ppg, f.deco)?;
        }
        Ok(Term {
            kind: TermKind::Family(branches),
            src: ObjType::Zero,
            tgt: into,
            deco: Decoration::Ctc,
        })
    }

    /// `l + r`. At most one side may be a catcher, and a catcher side must
    /// have source `0` so that the sum is a case distinction over `X + 0`.
    pub fn sum(l: Term, r: Term) -> Result<Term, TermError> {
        let unfolded = sum_unfolding(&l, &r)?;
        Ok(Term {
            src: unfolded.src.clone(),
            tgt: unfolded.tgt.clone(),
            deco: unfolded.deco,
            kind: TermKind::Sum(Box::new(l), Box::new(r)),
        })
    }

    pub fn throw(index: Index, param: ObjType, into: ObjType) -> Result<Term, TermError> {
        no_exc(&into)?;
        Ok(Term {
            kind: TermKind::Throw(index),
            src: param,
            tgt: into,
            deco: Decoration::Ppg,
        })
    }

    /// `try f catch(clauses)`; clause bodies must have source `P_i` for their
    /// index, which the caller resolves (see `handler`).
    pub fn try_catch(f: Term, clauses: Vec<Clause>) -> Result<Term, TermError> {
        if clauses.is_empty() {
            return Err(TermError::EmptyClauseList);
        }
        at_most("try block", Decoration::Ppg, f.deco)?;
        for c in &clauses {
            same_type("catch clause target", &f.tgt, &c.body.tgt)?;
            at_most("catch clause body", Decoration::Ppg, c.body.deco)?;
        }
        Ok(Term {
            src: f.src.clone(),
            tgt: f.tgt.clone(),
            deco: Decoration::Ppg,
            kind: TermKind::Try(Box::new(f), clauses),
        })
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Term> {
        match &self.kind {
            TermKind::Gen(_)
            | TermKind::Tag(_)
            | TermKind::Untag(_)
            | TermKind::Id
            | TermKind::Empty
            | TermKind::Copi1(_)
            | TermKind::Copi2(_)
            | TermKind::Throw(_) => vec![],
            TermKind::Comp(a, b)
            | TermKind::Cotuple(a, b)
            | TermKind::Case(a, b)
            | TermKind::Sum(a, b) => vec![a, b],
            TermKind::Downcast(k) => vec![k],
            TermKind::Family(bs) => bs.iter().map(|(_, t)| t).collect(),
            TermKind::Try(f, cs) => {
                let mut v: Vec<&Term> = vec![f];
                v.extend(cs.iter().map(|c| &c.body));
                v
            }
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Names of generators occurring in the term.
    pub fn generators(&self, out: &mut Vec<Name>) {
        if let TermKind::Gen(n) = &self.kind {
            if !out.contains(n) {
                out.push(n.clone());
            }
        }
        for c in self.children() {
            c.generators(out);
        }
    }

    /// Re-checks source/target coherence and the decoration join at every
    /// node. Constructed terms always pass; this is the full-traversal audit.
    pub fn validate(&self) -> Result<(), TermError> {
        for c in self.children() {
            c.validate()?;
        }
        let rebuilt = match &self.kind {
            TermKind::Gen(_) | TermKind::Tag(_) | TermKind::Untag(_) => return Ok(()),
            TermKind::Id => Term::id(self.src.clone()),
            TermKind::Empty => Term::empty(self.tgt.clone()),
            TermKind::Comp(g, f) => Term::comp((**g).clone(), (**f).clone())?,
            TermKind::Cotuple(g, k) => Term::cotuple((**g).clone(), (**k).clone())?,
            TermKind::Case(f, k) => Term::case((**f).clone(), (**k).clone())?,
            TermKind::Copi1(r) => Term::copi1(self.src.clone(), r.clone())?,
            TermKind::Copi2(l) => Term::copi2(l.clone(), self.src.clone())?,
            TermKind::Downcast(k) => Term::downcast((**k).clone()),
            TermKind::Family(bs) => Term::family(bs.clone(), self.tgt.clone())?,
            TermKind::Sum(l, r) => Term::sum((**l).clone(), (**r).clone())?,
            TermKind::Throw(i) => Term::throw(i.clone(), self.src.clone(), self.tgt.clone())?,
            TermKind::Try(f, cs) => Term::try_catch((**f).clone(), cs.clone())?,
        };
        if rebuilt.src != self.src || rebuilt.tgt != self.tgt || rebuilt.deco != self.deco {
            return Err(TermError::Malformed(format!(
                "node annotations out of date at {self}"
            )));
        }
        Ok(())
    }
}

/// The unfolding of `l + r` through coprojections.
pub fn sum_unfolding(l: &Term, r: &Term) -> Result<Term, TermError> {
    let (c, d) = (l.tgt.clone(), r.tgt.clone());
    let inl = |t: &Term| Term::comp(Term::copi1(c.clone(), d.clone())?, t.clone());
    let inr = |t: &Term| Term::comp(Term::copi2(c.clone(), d.clone())?, t.clone());
    match (l.src.is_zero(), r.src.is_zero()) {
        (false, false) => Term::case(inl(l)?, inr(r)?),
        (true, false) => Term::cotuple(inr(r)?, inl(l)?),
        (false, true) => Term::cotuple(inl(l)?, inr(r)?),
        (true, true) => Err(TermError::Malformed(
            "a sum needs at least one non-empty source".into(),
        )),
    }
}

/// `⇓([id_Y | k_1] ∘ f)` with `k_p = [g_p | k_{p+1}] ∘ c_{i_p}` and
/// `k_{n+1} = []_Y`.
pub fn try_unfolding(f: &Term, clauses: &[Clause]) -> Result<Term, TermError> {
    Ok(Term::downcast(try_catcher(f, clauses)?))
}

/// The catcher `[id_Y | k_1] ∘ f` under the downcast of a try-catch.
pub fn try_catcher(f: &Term, clauses: &[Clause]) -> Result<Term, TermError> {
    if clauses.is_empty() {
        return Err(TermError::EmptyClauseList);
    }
    at_most("try block", Decoration::Ppg, f.deco)?;
    let y = f.tgt.clone();
    Term::comp(Term::cotuple(Term::id(y.clone()), handler_chain(&y, clauses)?)?, f.clone())
}

/// `k_1 : 0 -> Y` of a clause list.
pub fn handler_chain(y: &ObjType, clauses: &[Clause]) -> Result<Term, TermError> {
    let mut k = Term::empty(y.clone());
    for c in clauses.iter().rev() {
        same_type("catch clause target", y, &c.body.tgt)?;
        let untag = Term::untag(c.index.clone(), c.body.src.clone());
        k = Term::comp(Term::cotuple(c.body.clone(), k)?, untag)?;
    }
    Ok(k)
}

/// `throw_{i,Y} = []_Y ∘ t_i`.
pub fn throw_unfolding(i: &Index, param: &ObjType, into: &ObjType) -> Term {
    Term::comp(Term::empty(into.clone()), Term::tag(i.clone(), param.clone()))
        .expect("the tag lands in 0")
}

impl Term {
    /// One-step unfolding of a defined constructor (sum, throw, try-catch).
    pub fn unfold_definition(&self) -> Option<Term> {
        match &self.kind {
            TermKind::Sum(l, r) => sum_unfolding(l, r).ok(),
            TermKind::Throw(i) => Some(throw_unfolding(i, &self.src, &self.tgt)),
            TermKind::Try(f, cs) => try_unfolding(f, cs).ok(),
            _ => None,
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} : {} -> {} [{}]", self.src, self.tgt, self.deco)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::format::print::write_term(f, self)
    }
}
