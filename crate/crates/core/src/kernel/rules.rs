//! The decorated inference rules as checkable instances.
//!
//! Every rule computes its conclusion from its premises. Metavariables are
//! read off the premises by first-order matching; an explicit substitution
//! may name them too and must then agree. Premises written without a
//! decoration in the rule tables (the plain `f : X -> Y` of the monadic
//! rules) accept a term judgment at any decoration, which is the same as
//! converting it up to a catcher first.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{Decoration, DecoratedSpec, Equation, Index, ObjType, Strength, Term, TermError, TermKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Monadic equational rules, first part.
    A,
    /// Conversions, propagators and weak equations.
    B,
    /// Propagation of exceptions.
    C,
    /// The decorated initial type.
    D,
    /// Case distinction over `X + 0`.
    E,
    /// The constitutive coproduct of the tags, `(t_i : P_i -> 0)_i`.
    F,
    /// Semi-pure coproducts.
    Sp,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::Sp];

    pub fn prefix(self) -> &'static str {
        match self {
            Family::A => "a",
            Family::B => "b",
            Family::C => "c",
            Family::D => "d",
            Family::E => "e",
            Family::F => "f",
            Family::Sp => "sp",
        }
    }

    pub fn members(self) -> u8 {
        match self {
            Family::A => 10,
            Family::B => 12,
            Family::C => 2,
            Family::D => 3,
            Family::E => 4,
            Family::F => 3,
            Family::Sp => 7,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId {
    pub family: Family,
    pub member: u8,
}

impl RuleId {
    pub const fn new(family: Family, member: u8) -> RuleId {
        RuleId { family, member }
    }

    pub fn all() -> Vec<RuleId> {
        Family::ALL
            .iter()
            .flat_map(|&f| (1..=f.members()).map(move |m| RuleId::new(f, m)))
            .collect()
    }

    /// A one-line statement of the rule schema.
    pub fn schema(self) -> &'static str {
        use Family::*;
        match (self.family, self.member) {
            (A, 1) => "f : X -> Y, g : Y -> Z |- g o f : X -> Z",
            (A, 2) => "X |- id[X] : X -> X",
            (A, 3) => "f, g, h |- h o (g o f) == (h o g) o f",
            (A, 4) => "f : X -> Y |- f o id[X] == f",
            (A, 5) => "f : X -> Y |- id[Y] o f == f",
            (A, 6) => "f |- f == f",
            (A, 7) => "f == g |- g == f",
            (A, 8) => "f == g, g == h |- f == h",
            (A, 9) => "f : X -> Y, g1 == g2 : Y -> Z |- g1 o f == g2 o f",
            (A, 10) => "f1 == f2 : X -> Y, g : Y -> Z |- g o f1 == g o f2",
            (B, 1) => "f [pure] |- f [ppg]",
            (B, 2) => "f [ppg] |- f [ctc]",
            (B, 3) => "X |- id[X] [pure]",
            (B, 4) => "f [pure], g [pure] |- g o f [pure]",
            (B, 5) => "f [ppg], g [ppg] |- g o f [ppg]",
            (B, 6) => "f ~ g, f [ppg], g [ppg] |- f == g",
            (B, 7) => "f == g |- f ~ g",
            (B, 8) => "f |- f ~ f",
            (B, 9) => "f ~ g |- g ~ f",
            (B, 10) => "f ~ g, g ~ h |- f ~ h",
            (B, 11) => "f [pure] : X -> Y, g1 ~ g2 : Y -> Z |- g1 o f ~ g2 o f",
            (B, 12) => "f1 ~ f2 : X -> Y, g : Y -> Z |- g o f1 ~ g o f2",
            (C, 1) => "k [ctc] |- down(k) [ppg]",
            (C, 2) => "k [ctc] |- down(k) ~ k",
            (D, 1) => "X |- [][X] : 0 -> X",
            (D, 2) => "X |- [][X] [pure]",
            (D, 3) => "f : 0 -> Y |- f ~ [][Y]",
            (E, 1) => "g [ppg] : X -> Y, k [ctc] : 0 -> Y |- [g | k] [ctc]",
            (E, 2) => "g [ppg], k [ctc] |- [g | k] ~ g",
            (E, 3) => "g [ppg], k [ctc] |- [g | k] o [][X] == k",
            (E, 4) => "g [ppg], k [ctc], f [ctc], f ~ g, f o [][X] == k |- f == [g | k]",
            (F, 1) => "(f_i [ppg] : P_i -> Y)_i |- tags[f_i]_i [ctc] : 0 -> Y",
            (F, 2) => "(f_i [ppg])_i |- tags[f_j]_j o t_i ~ f_i",
            (F, 3) => "(f_i [ppg])_i, f [ctc] : 0 -> Y, (f o t_i ~ f_i)_i |- f == tags[f_j]_j",
            (Sp, 1) => "A, B |- copi1[A, B] [pure]",
            (Sp, 2) => "A, B |- copi2[A, B] [pure]",
            (Sp, 3) => "f [ppg] : A -> C, k [ctc] : B -> C |- [f | k] [ctc] : A + B -> C",
            (Sp, 4) => "f [ppg], k [ctc] |- [f | k] o copi1 ~ f",
            (Sp, 5) => "f [ppg], k [ctc] |- [f | k] o copi2 == k",
            (Sp, 6) => "f [ppg], k [ctc], h [ctc], h o copi1 ~ f, h o copi2 == k |- h == [f | k]",
            (Sp, 7) => "f [ppg] : A -> C, g [ppg] : B -> C |- [f | g] [ppg]",
            _ => "unknown rule",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.member)
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| format!("unknown rule `{s}`"))?;
        let (p, n) = s.split_at(split);
        let family = Family::ALL
            .iter()
            .copied()
            .find(|f| f.prefix() == p)
            .ok_or_else(|| format!("unknown rule family `{p}`"))?;
        let member: u8 = n.parse().map_err(|_| format!("unknown rule `{s}`"))?;
        if member == 0 || member > family.members() {
            return Err(format!("rule family `{p}` has members 1..={}", family.members()));
        }
        Ok(RuleId::new(family, member))
    }
}

/// What a derivation node asserts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Judgment {
    /// `X` is a type.
    Type(ObjType),
    /// `t : X -> Y` holds with decoration `deco`.
    Decl { term: Term, deco: Decoration },
    Eq(Equation),
}

impl Judgment {
    pub fn decl(term: Term, deco: Decoration) -> Judgment {
        Judgment::Decl { term, deco }
    }

    pub fn equation(&self) -> Option<&Equation> {
        match self {
            Judgment::Eq(e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgment::Type(x) => write!(f, "type {x}"),
            Judgment::Decl { term, deco } => {
                write!(f, "{term} : {} -> {} [{}]", term.src(), term.tgt(), deco.keyword())
            }
            Judgment::Eq(e) => write!(f, "{e}"),
        }
    }
}

/// A value bound to a rule metavariable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Binding {
    Term(Term),
    Type(ObjType),
    Index(Index),
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Term(t) => write!(f, "{t}"),
            Binding::Type(x) => write!(f, "{x}"),
            Binding::Index(i) => write!(f, "{i}"),
        }
    }
}

pub type Subst = Vec<(String, Binding)>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("expected {expected} premises, found {found}")]
    WrongPremiseCount { expected: usize, found: usize },
    #[error("premise {position} does not match: expected {expected}, found {found}")]
    PremiseMismatch {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("premise {position} must be {required}, found {found}")]
    DecorationSideConditionViolated {
        position: usize,
        required: Decoration,
        found: Decoration,
    },
    #[error(transparent)]
    TypeMismatch(#[from] TermError),
    #[error("metavariable `{0}` is not determined by the premises; bind it in the substitution")]
    UnboundMetavariable(String),
    #[error("rule {rule} has no metavariable `{name}`")]
    UnknownMetavariable { rule: RuleId, name: String },
    #[error("unknown exception index `{0}`")]
    UnknownIndex(Index),
}

/// Reads premises and the substitution for one rule application.
struct Frame<'a> {
    rule: RuleId,
    subst: &'a [(String, Binding)],
    premises: &'a [Judgment],
    used: Vec<&'static str>,
}

fn mismatch(position: usize, expected: impl Into<String>, found: &Judgment) -> RuleError {
    RuleError::PremiseMismatch {
        position,
        expected: expected.into(),
        found: found.to_string(),
    }
}

impl<'a> Frame<'a> {
    fn count(&self, n: usize) -> Result<(), RuleError> {
        if self.premises.len() == n {
            Ok(())
        } else {
            Err(RuleError::WrongPremiseCount {
                expected: n,
                found: self.premises.len(),
            })
        }
    }

    fn lookup(&mut self, name: &'static str) -> Option<&'a Binding> {
        self.used.push(name);
        self.subst.iter().find(|(n, _)| n == name).map(|(_, b)| b)
    }

    /// Binds `name` to the premise-provided term, checking the substitution.
    fn term(&mut self, name: &'static str, pos: usize, t: &Term) -> Result<Term, RuleError> {
        match self.lookup(name) {
            Some(Binding::Term(s)) if s != t => Err(RuleError::PremiseMismatch {
                position: pos,
                expected: format!("{name} := {s}"),
                found: t.to_string(),
            }),
            Some(b @ (Binding::Type(_) | Binding::Index(_))) => Err(RuleError::PremiseMismatch {
                position: pos,
                expected: format!("{name} := {b}"),
                found: t.to_string(),
            }),
            _ => Ok(t.clone()),
        }
    }

    fn ty_from_subst(&mut self, name: &'static str) -> Result<Option<ObjType>, RuleError> {
        match self.lookup(name) {
            Some(Binding::Type(x)) => Ok(Some(x.clone())),
            Some(b) => Err(RuleError::UnknownMetavariable {
                rule: self.rule,
                name: format!("{name} (a type, given {b})"),
            }),
            None => Ok(None),
        }
    }

    fn index(&mut self, name: &'static str) -> Result<Index, RuleError> {
        match self.lookup(name) {
            Some(Binding::Index(i)) => Ok(i.clone()),
            Some(b) => Err(RuleError::UnknownMetavariable {
                rule: self.rule,
                name: format!("{name} (an index, given {b})"),
            }),
            None => Err(RuleError::UnboundMetavariable(name.into())),
        }
    }

    fn ty(&mut self, name: &'static str, pos: usize) -> Result<ObjType, RuleError> {
        let j = &self.premises[pos];
        let Judgment::Type(x) = j else {
            return Err(mismatch(pos, "a type judgment", j));
        };
        if let Some(s) = self.ty_from_subst(name)? {
            if &s != x {
                return Err(mismatch(pos, format!("type {s}"), j));
            }
        }
        Ok(x.clone())
    }

    /// A term premise at exactly decoration `deco`, or at any decoration when
    /// `deco` is `None`.
    fn decl(&mut self, name: &'static str, pos: usize, deco: Option<Decoration>) -> Result<Term, RuleError> {
        let j = &self.premises[pos];
        let Judgment::Decl { term, deco: d } = j else {
            return Err(mismatch(pos, format!("a term judgment for {name}"), j));
        };
        if let Some(req) = deco {
            if *d != req {
                return Err(RuleError::DecorationSideConditionViolated {
                    position: pos,
                    required: req,
                    found: *d,
                });
            }
        }
        self.term(name, pos, term)
    }

    /// An equation premise of the given strength; binds both sides.
    fn eq(
        &mut self,
        names: (&'static str, &'static str),
        pos: usize,
        strength: Strength,
    ) -> Result<(Term, Term), RuleError> {
        let j = &self.premises[pos];
        let Judgment::Eq(e) = j else {
            return Err(mismatch(pos, format!("an equation {} {} {}", names.0, strength.symbol(), names.1), j));
        };
        if e.strength != strength {
            return Err(mismatch(pos, format!("an equation with {}", strength.symbol()), j));
        }
        Ok((self.term(names.0, pos, &e.lhs)?, self.term(names.1, pos, &e.rhs)?))
    }

    fn finish(&self) -> Result<(), RuleError> {
        for (n, _) in self.subst {
            if !self.used.contains(&n.as_str()) {
                return Err(RuleError::UnknownMetavariable {
                    rule: self.rule,
                    name: n.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Requires `got == want` for a metavariable bound twice.
fn agree(pos: usize, what: &str, want: &Term, got: &Term, premise: &Judgment) -> Result<(), RuleError> {
    if want == got {
        Ok(())
    } else {
        Err(mismatch(pos, format!("{what} {want}"), premise))
    }
}

fn strong(l: Term, r: Term) -> Result<Judgment, RuleError> {
    Ok(Judgment::Eq(Equation::strong(l, r)?))
}

fn weak(l: Term, r: Term) -> Result<Judgment, RuleError> {
    Ok(Judgment::Eq(Equation::weak(l, r)?))
}

fn comp(g: Term, f: Term) -> Result<Term, RuleError> {
    Ok(Term::comp(g, f)?)
}

fn is_zero_source(pos: usize, t: &Term, p: &Judgment) -> Result<(), RuleError> {
    if t.src().is_zero() {
        Ok(())
    } else {
        Err(mismatch(pos, "a term with source 0", p))
    }
}

/// Applies `rule` in the context `ctx` (which supplies the index set for the
/// constitutive-tags rules) and returns the conclusion.
pub fn apply_rule(
    ctx: &DecoratedSpec,
    rule: RuleId,
    subst: &[(String, Binding)],
    premises: &[Judgment],
) -> Result<Judgment, RuleError> {
    use Decoration::{Ctc, Ppg, Pure};
    use Family::*;
    let mut fr = Frame {
        rule,
        subst,
        premises,
        used: Vec::new(),
    };
    let p = premises;
    let out = match (rule.family, rule.member) {
        (A, 1) => {
            fr.count(2)?;
            let f = fr.decl("f", 0, None)?;
            let g = fr.decl("g", 1, None)?;
            Judgment::decl(comp(g, f)?, Ctc)
        }
        (A, 2) => {
            fr.count(1)?;
            Judgment::decl(Term::id(fr.ty("X", 0)?), Ctc)
        }
        (A, 3) => {
            fr.count(3)?;
            let f = fr.decl("f", 0, None)?;
            let g = fr.decl("g", 1, None)?;
            let h = fr.decl("h", 2, None)?;
            strong(comp(h.clone(), comp(g.clone(), f.clone())?)?, comp(comp(h, g)?, f)?)?
        }
        (A, 4) => {
            fr.count(1)?;
            let f = fr.decl("f", 0, None)?;
            strong(comp(f.clone(), Term::id(f.src().clone()))?, f)?
        }
        (A, 5) => {
            fr.count(1)?;
            let f = fr.decl("f", 0, None)?;
            strong(comp(Term::id(f.tgt().clone()), f.clone())?, f)?
        }
        (A, 6) | (B, 8) => {
            fr.count(1)?;
            let f = fr.decl("f", 0, None)?;
            if rule.family == A {
                strong(f.clone(), f)?
            } else {
                weak(f.clone(), f)?
            }
        }
        (A, 7) | (B, 9) => {
            fr.count(1)?;
            let s = if rule.family == A { Strength::Strong } else { Strength::Weak };
            let (f, g) = fr.eq(("f", "g"), 0, s)?;
            Judgment::Eq(Equation::new(g, f, s)?)
        }
        (A, 8) | (B, 10) => {
            fr.count(2)?;
            let s = if rule.family == A { Strength::Strong } else { Strength::Weak };
            let (f, g) = fr.eq(("f", "g"), 0, s)?;
            let (g2, h) = fr.eq(("g", "h"), 1, s)?;
            agree(1, "left side", &g, &g2, &p[1])?;
            Judgment::Eq(Equation::new(f, h, s)?)
        }
        (A, 9) | (B, 11) => {
            fr.count(2)?;
            let (s, deco) = if rule.family == A {
                (Strength::Strong, None)
            } else {
                (Strength::Weak, Some(Pure))
            };
            let f = fr.decl("f", 0, deco)?;
            let (g1, g2) = fr.eq(("g1", "g2"), 1, s)?;
            Judgment::Eq(Equation::new(comp(g1, f.clone())?, comp(g2, f)?, s)?)
        }
        (A, 10) | (B, 12) => {
            fr.count(2)?;
            let s = if rule.family == A { Strength::Strong } else { Strength::Weak };
            let (f1, f2) = fr.eq(("f1", "f2"), 0, s)?;
            let g = fr.decl("g", 1, None)?;
            Judgment::Eq(Equation::new(comp(g.clone(), f1)?, comp(g, f2)?, s)?)
        }
        (B, 1) => {
            fr.count(1)?;
            Judgment::decl(fr.decl("f", 0, Some(Pure))?, Ppg)
        }
        (B, 2) => {
            fr.count(1)?;
            Judgment::decl(fr.decl("f", 0, Some(Ppg))?, Ctc)
        }
        (B, 3) => {
            fr.count(1)?;
            Judgment::decl(Term::id(fr.ty("X", 0)?), Pure)
        }
        (B, 4) | (B, 5) => {
            fr.count(2)?;
            let d = if rule.member == 4 { Pure } else { Ppg };
            let f = fr.decl("f", 0, Some(d))?;
            let g = fr.decl("g", 1, Some(d))?;
            Judgment::decl(comp(g, f)?, d)
        }
        (B, 6) => {
            fr.count(3)?;
            let (f, g) = fr.eq(("f", "g"), 0, Strength::Weak)?;
            let f2 = fr.decl("f", 1, Some(Ppg))?;
            let g2 = fr.decl("g", 2, Some(Ppg))?;
            agree(1, "term", &f, &f2, &p[1])?;
            agree(2, "term", &g, &g2, &p[2])?;
            strong(f, g)?
        }
        (B, 7) => {
            fr.count(1)?;
            let (f, g) = fr.eq(("f", "g"), 0, Strength::Strong)?;
            weak(f, g)?
        }
        (C, 1) | (C, 2) => {
            fr.count(1)?;
            let k = fr.decl("k", 0, Some(Ctc))?;
            let d = Term::downcast(k.clone());
            if rule.member == 1 {
                Judgment::decl(d, Ppg)
            } else {
                weak(d, k)?
            }
        }
        (D, 1) | (D, 2) => {
            fr.count(1)?;
            let x = fr.ty("X", 0)?;
            Judgment::decl(Term::empty(x), if rule.member == 1 { Ctc } else { Pure })
        }
        (D, 3) => {
            fr.count(1)?;
            let f = fr.decl("f", 0, None)?;
            is_zero_source(0, &f, &p[0])?;
            let y = f.tgt().clone();
            weak(f, Term::empty(y))?
        }
        (E, 1) | (E, 2) | (E, 3) => {
            fr.count(2)?;
            let g = fr.decl("g", 0, Some(Ppg))?;
            let k = fr.decl("k", 1, Some(Ctc))?;
            let c = Term::cotuple(g.clone(), k.clone())?;
            match rule.member {
                1 => Judgment::decl(c, Ctc),
                2 => weak(c, g)?,
                _ => {
                    let x = g.src().clone();
                    strong(comp(c, Term::empty(x))?, k)?
                }
            }
        }
        (E, 4) => {
            fr.count(5)?;
            let g = fr.decl("g", 0, Some(Ppg))?;
            let k = fr.decl("k", 1, Some(Ctc))?;
            let f = fr.decl("f", 2, Some(Ctc))?;
            let (f1, g1) = fr.eq(("f", "g"), 3, Strength::Weak)?;
            agree(3, "left side", &f, &f1, &p[3])?;
            agree(3, "right side", &g, &g1, &p[3])?;
            let (fe, k1) = fr.eq(("f o [][X]", "k"), 4, Strength::Strong)?;
            agree(4, "left side", &comp(f.clone(), Term::empty(f.src().clone()))?, &fe, &p[4])?;
            agree(4, "right side", &k, &k1, &p[4])?;
            strong(f, Term::cotuple(g, k)?)?
        }
        (F, m) => {
            let idx: Vec<(Index, ObjType)> = ctx.exceptions.iter().map(|e| (e.index.clone(), e.param.clone())).collect();
            let n = idx.len();
            fr.count(if m == 3 { 2 * n + 1 } else { n })?;
            let mut branches = Vec::with_capacity(n);
            for (pos, (i, param)) in idx.iter().enumerate() {
                let fi = fr.decl("f_i", pos, Some(Ppg))?;
                if fi.src() != param {
                    return Err(mismatch(pos, format!("a term with source {param} for index {i}"), &p[pos]));
                }
                branches.push((i.clone(), fi));
            }
            let y = match (fr.ty_from_subst("Y")?, branches.first()) {
                (Some(y), _) => y,
                (None, Some((_, f))) => f.tgt().clone(),
                (None, None) => return Err(RuleError::UnboundMetavariable("Y".into())),
            };
            let fam = Term::family(branches.clone(), y)?;
            match m {
                1 => Judgment::decl(fam, Ctc),
                2 => {
                    let i = fr.index("i")?;
                    let (_, fi) = branches.iter().find(|(j, _)| j == &i).ok_or(RuleError::UnknownIndex(i.clone()))?;
                    let param = ctx.param(&i).expect("indexed above").clone();
                    weak(comp(fam.clone(), Term::tag(i, param))?, fi.clone())?
                }
                _ => {
                    let f = fr.decl("f", n, Some(Ctc))?;
                    if f.tgt() != fam.tgt() || !f.src().is_zero() {
                        return Err(mismatch(n, format!("a catcher 0 -> {}", fam.tgt()), &p[n]));
                    }
                    for (k, ((i, param), (_, fi))) in idx.iter().zip(&branches).enumerate() {
                        let pos = n + 1 + k;
                        let (l, r) = fr.eq(("f o t_i", "f_i"), pos, Strength::Weak)?;
                        agree(pos, "left side", &comp(f.clone(), Term::tag(i.clone(), param.clone()))?, &l, &p[pos])?;
                        agree(pos, "right side", fi, &r, &p[pos])?;
                    }
                    strong(f, fam)?
                }
            }
        }
        (Sp, 1) | (Sp, 2) => {
            fr.count(2)?;
            let a = fr.ty("A", 0)?;
            let b = fr.ty("B", 1)?;
            let t = if rule.member == 1 {
                Term::copi1(a, b)?
            } else {
                Term::copi2(a, b)?
            };
            Judgment::decl(t, Pure)
        }
        (Sp, 3) | (Sp, 4) | (Sp, 5) => {
            fr.count(2)?;
            let f = fr.decl("f", 0, Some(Ppg))?;
            let k = fr.decl("k", 1, Some(Ctc))?;
            let c = Term::case(f.clone(), k.clone())?;
            let (a, b) = (f.src().clone(), k.src().clone());
            match rule.member {
                3 => Judgment::decl(c, Ctc),
                4 => weak(comp(c, Term::copi1(a, b)?)?, f)?,
                _ => strong(comp(c, Term::copi2(a, b)?)?, k)?,
            }
        }
        (Sp, 6) => {
            fr.count(5)?;
            let f = fr.decl("f", 0, Some(Ppg))?;
            let k = fr.decl("k", 1, Some(Ctc))?;
            let h = fr.decl("h", 2, Some(Ctc))?;
            let (a, b) = (f.src().clone(), k.src().clone());
            let (l1, r1) = fr.eq(("h o copi1", "f"), 3, Strength::Weak)?;
            agree(3, "left side", &comp(h.clone(), Term::copi1(a.clone(), b.clone())?)?, &l1, &p[3])?;
            agree(3, "right side", &f, &r1, &p[3])?;
            let (l2, r2) = fr.eq(("h o copi2", "k"), 4, Strength::Strong)?;
            agree(4, "left side", &comp(h.clone(), Term::copi2(a, b)?)?, &l2, &p[4])?;
            agree(4, "right side", &k, &r2, &p[4])?;
            strong(h, Term::case(f, k)?)?
        }
        (Sp, 7) => {
            fr.count(2)?;
            let f = fr.decl("f", 0, Some(Ppg))?;
            let g = fr.decl("g", 1, Some(Ppg))?;
            Judgment::decl(Term::case(f, g)?, Ppg)
        }
        _ => {
            return Err(RuleError::PremiseMismatch {
                position: 0,
                expected: "a known rule".into(),
                found: rule.to_string(),
            })
        }
    };
    fr.finish()?;
    Ok(out)
}

/// Whether `j` is an axiom of `ctx`: a declared type, a declared operation
/// at its declared decoration, a tag or untag, or an axiom (canonical or
/// stated) of the specification.
pub fn is_axiom(ctx: &DecoratedSpec, j: &Judgment) -> bool {
    match j {
        Judgment::Type(x) => ctx.is_type_declared(x),
        Judgment::Decl { term, deco } => match term.kind() {
            TermKind::Gen(n) => ctx
                .op(n.as_str())
                .is_some_and(|o| &o.src == term.src() && &o.tgt == term.tgt() && o.deco == *deco),
            TermKind::Tag(i) => *deco == Decoration::Ppg && ctx.param(i) == Some(term.src()),
            TermKind::Untag(i) => *deco == Decoration::Ctc && ctx.param(i) == Some(term.tgt()),
            _ => false,
        },
        Judgment::Eq(e) => ctx.has_axiom(e) || ctx.is_canonical_axiom(e),
    }
}

/// Whether `j` unfolds a defined constructor: `d == unfold(d)` for a sum, a
/// throw or a try-catch, or the decoration of such a node, which is the
/// decoration of its unfolding.
pub fn is_definition(j: &Judgment) -> bool {
    let defined = |t: &Term| matches!(t.kind(), TermKind::Sum(..) | TermKind::Throw(_) | TermKind::Try(..));
    match j {
        Judgment::Eq(e) => {
            e.strength == Strength::Strong && defined(&e.lhs) && e.lhs.unfold_definition().as_ref() == Some(&e.rhs)
        }
        Judgment::Decl { term, deco } => {
            defined(term) && *deco == term.deco() && term.unfold_definition().is_some_and(|u| u.deco() == *deco)
        }
        Judgment::Type(_) => false,
    }
}
