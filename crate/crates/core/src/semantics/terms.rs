//! Seeded random generation of well-typed decorated terms.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::{Clause, Decoration, DecoratedSpec, ObjType, OpDecl, Term};

/// The signature random terms are drawn from: base types `X`, `Y`, indices
/// `1`, `2` with parameters `P1`, `P2`, and operations of every decoration.
pub fn term_spec() -> DecoratedSpec {
    let b = ObjType::base;
    let ops = vec![
        OpDecl::new("u", b("X"), b("Y"), Decoration::Pure),
        OpDecl::new("v", b("Y"), b("X"), Decoration::Pure),
        OpDecl::new("w", b("P1"), b("Y"), Decoration::Pure),
        OpDecl::new("z", b("X"), b("P2"), Decoration::Pure),
        OpDecl::new("f", b("X"), b("Y"), Decoration::Ppg),
        OpDecl::new("g", b("Y"), b("X"), Decoration::Ppg),
        OpDecl::new("h", b("P2"), b("X"), Decoration::Ppg),
        OpDecl::new("s", b("P1"), b("P2"), Decoration::Ppg),
        OpDecl::new("k", b("X"), b("Y"), Decoration::Ctc),
        OpDecl::new("l", b("Y"), b("Y"), Decoration::Ctc),
    ];
    DecoratedSpec::canonical(
        ["X", "Y", "P1", "P2"].iter().map(|n| (*n).into()).collect(),
        ops,
        super::battery::standard_exceptions(2),
    )
}

pub struct TermGen<'a> {
    spec: &'a DecoratedSpec,
    types: Vec<ObjType>,
}

impl<'a> TermGen<'a> {
    /// Generates over the declared types of `spec`, `0`, and one binary
    /// coproduct of the first two declared types.
    pub fn new(spec: &'a DecoratedSpec) -> Self {
        let mut types: Vec<ObjType> = spec.types.iter().cloned().map(ObjType::Base).collect();
        if types.len() >= 2 {
            types.push(ObjType::coprod(types[0].clone(), types[1].clone()));
        }
        types.push(ObjType::Zero);
        TermGen { spec, types }
    }

    pub fn types(&self) -> &[ObjType] {
        &self.types
    }

    /// A random term of any type with depth at most `depth`.
    pub fn any<R: Rng>(&self, rng: &mut R, depth: usize) -> Term {
        loop {
            let src = self.types.choose(rng).expect("types").clone();
            let tgt = self.types.choose(rng).expect("types").clone();
            if let Some(t) = self.term(rng, &src, &tgt, depth) {
                return t;
            }
        }
    }

    fn leaf<R: Rng>(&self, rng: &mut R, src: &ObjType, tgt: &ObjType) -> Option<Term> {
        let mut cands: Vec<Term> = Vec::new();
        for op in &self.spec.ops {
            if &op.src == src && &op.tgt == tgt {
                cands.extend(op.term().ok());
            }
        }
        for e in &self.spec.exceptions {
            if &e.param == src {
                if tgt.is_zero() {
                    cands.push(Term::tag(e.index.clone(), e.param.clone()));
                } else {
                    cands.extend(Term::throw(e.index.clone(), e.param.clone(), tgt.clone()).ok());
                }
            }
            if src.is_zero() && &e.param == tgt {
                cands.push(Term::untag(e.index.clone(), e.param.clone()));
            }
        }
        if src == tgt {
            cands.push(Term::id(src.clone()));
        }
        if src.is_zero() {
            cands.push(Term::empty(tgt.clone()));
        }
        if let ObjType::Coprod(a, b) = tgt {
            if &**a == src {
                cands.extend(Term::copi1((**a).clone(), (**b).clone()).ok());
            }
            if &**b == src {
                cands.extend(Term::copi2((**a).clone(), (**b).clone()).ok());
            }
        }
        cands.choose(rng).cloned()
    }

    fn bounded<R: Rng>(&self, rng: &mut R, src: &ObjType, tgt: &ObjType, depth: usize) -> Option<Term> {
        for _ in 0..4 {
            if let Some(t) = self.term(rng, src, tgt, depth) {
                if t.deco() <= Decoration::Ppg {
                    return Some(t);
                }
            }
        }
        None
    }

    /// A random term `src -> tgt` of depth at most `depth`, if one was found.
    pub fn term<R: Rng>(&self, rng: &mut R, src: &ObjType, tgt: &ObjType, depth: usize) -> Option<Term> {
        if depth <= 1 || rng.gen_bool(0.25) {
            return self.leaf(rng, src, tgt);
        }
        let d = depth - 1;
        for _ in 0..3 {
            let t = match rng.gen_range(0..8) {
                0 | 1 => {
                    let mid = self.types.choose(rng).expect("types").clone();
                    let f = self.term(rng, src, &mid, d);
                    let g = self.term(rng, &mid, tgt, d);
                    f.zip(g).and_then(|(f, g)| Term::comp(g, f).ok())
                }
                2 => {
                    if src.is_zero() {
                        None
                    } else {
                        let g = self.bounded(rng, src, tgt, d);
                        let k = self.term(rng, &ObjType::Zero, tgt, d);
                        g.zip(k).and_then(|(g, k)| Term::cotuple(g, k).ok())
                    }
                }
                3 => self.term(rng, src, tgt, d).map(Term::downcast),
                4 => {
                    if src.is_zero() {
                        let mut bs = Vec::new();
                        for e in &self.spec.exceptions {
                            bs.push((e.index.clone(), self.bounded(rng, &e.param, tgt, d)?));
                        }
                        Term::family(bs, tgt.clone()).ok()
                    } else {
                        None
                    }
                }
                5 => {
                    let f = self.bounded(rng, src, tgt, d)?;
                    let n = rng.gen_range(1..=3);
                    let mut cs = Vec::new();
                    for _ in 0..n {
                        let e = self.spec.exceptions.choose(rng)?;
                        cs.push(Clause {
                            index: e.index.clone(),
                            body: self.bounded(rng, &e.param, tgt, d)?,
                        });
                    }
                    Term::try_catch(f, cs).ok()
                }
                6 => match src {
                    ObjType::Coprod(a, b) => {
                        let f = self.bounded(rng, a, tgt, d);
                        let k = self.term(rng, b, tgt, d);
                        f.zip(k).and_then(|(f, k)| Term::case(f, k).ok())
                    }
                    _ => None,
                },
                _ => match tgt {
                    ObjType::Coprod(c, dd) => {
                        let (sa, sb) = match src {
                            ObjType::Coprod(a, b) => ((**a).clone(), (**b).clone()),
                            _ if rng.gen_bool(0.5) => (ObjType::Zero, src.clone()),
                            _ => (src.clone(), ObjType::Zero),
                        };
                        let l = self.term(rng, &sa, c, d);
                        let r = self.term(rng, &sb, dd, d);
                        l.zip(r).and_then(|(l, r)| Term::sum(l, r).ok())
                    }
                    _ => None,
                },
            };
            if t.is_some() {
                return t;
            }
        }
        self.leaf(rng, src, tgt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::battery::rng;

    #[test]
    fn generated_terms_are_well_typed() {
        let spec = term_spec();
        let g = TermGen::new(&spec);
        let mut r = rng(1);
        for _ in 0..300 {
            let t = g.any(&mut r, 5);
            assert!(t.depth() <= 5);
            t.validate().unwrap();
        }
    }
}
