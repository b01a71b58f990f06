//! Forward construction of derivations. Every helper applies a rule to
//! already-built premises, so the conclusion of a built node is always the
//! one the checker computes.

use super::check::{Derivation, Step};
use super::rules::{apply_rule, Binding, Family, Judgment, RuleError, RuleId};
use crate::syntax::{Decoration, DecoratedSpec, Equation, Index, ObjType, Strength, Term, TermKind};

pub type Built = Result<Derivation, RuleError>;

pub const fn rule(family: Family, member: u8) -> RuleId {
    RuleId::new(family, member)
}

pub struct Builder<'a> {
    pub ctx: &'a DecoratedSpec,
}

fn eq_of(d: &Derivation) -> &Equation {
    d.conclusion.equation().expect("an equation premise")
}

impl<'a> Builder<'a> {
    pub fn new(ctx: &'a DecoratedSpec) -> Self {
        Builder { ctx }
    }

    pub fn apply_with(&self, r: RuleId, subst: Vec<(String, Binding)>, premises: Vec<Derivation>) -> Built {
        let js: Vec<Judgment> = premises.iter().map(|p| p.conclusion.clone()).collect();
        let conclusion = apply_rule(self.ctx, r, &subst, &js)?;
        Ok(Derivation {
            conclusion,
            step: Step::Rule(r),
            subst,
            premises,
        })
    }

    pub fn apply(&self, r: RuleId, premises: Vec<Derivation>) -> Built {
        self.apply_with(r, Vec::new(), premises)
    }

    pub fn axiom(&self, j: Judgment) -> Derivation {
        Derivation::leaf(Step::Axiom, j)
    }

    pub fn ty(&self, x: &ObjType) -> Derivation {
        self.axiom(Judgment::Type(x.clone()))
    }

    pub fn axiom_eq(&self, e: Equation) -> Derivation {
        self.axiom(Judgment::Eq(e))
    }

    /// `d == unfold(d)` for a defined constructor.
    pub fn def(&self, t: &Term) -> Derivation {
        let u = t.unfold_definition().expect("a defined constructor");
        Derivation::leaf(Step::Def, Judgment::Eq(Equation::strong(t.clone(), u).expect("unfolding keeps types")))
    }

    /// `t` at its least decoration.
    pub fn decl_any(&self, t: &Term) -> Built {
        self.decl(t, t.deco())
    }

    /// `t` at decoration `d`, which must be at least the least decoration of
    /// `t`: structural rules at the least decoration, then conversions.
    pub fn decl(&self, t: &Term, d: Decoration) -> Built {
        use Family::*;
        if d > t.deco() {
            let below = self.decl(t, if d == Decoration::Ctc { Decoration::Ppg } else { Decoration::Pure })?;
            let r = if d == Decoration::Ctc { rule(B, 2) } else { rule(B, 1) };
            return self.apply(r, vec![below]);
        }
        if d < t.deco() {
            return Err(RuleError::DecorationSideConditionViolated {
                position: 0,
                required: d,
                found: t.deco(),
            });
        }
        match t.kind() {
            TermKind::Gen(_) | TermKind::Tag(_) | TermKind::Untag(_) => Ok(self.axiom(Judgment::decl(t.clone(), d))),
            TermKind::Id => self.apply(rule(B, 3), vec![self.ty(t.src())]),
            TermKind::Empty => self.apply(rule(D, 2), vec![self.ty(t.tgt())]),
            TermKind::Copi1(b) => self.apply(rule(Sp, 1), vec![self.ty(t.src()), self.ty(b)]),
            TermKind::Copi2(a) => self.apply(rule(Sp, 2), vec![self.ty(a), self.ty(t.src())]),
            TermKind::Comp(g, f) => match d {
                Decoration::Ctc => self.apply(rule(A, 1), vec![self.decl_any(f)?, self.decl_any(g)?]),
                _ => {
                    let r = if d == Decoration::Pure { rule(B, 4) } else { rule(B, 5) };
                    self.apply(r, vec![self.decl(f, d)?, self.decl(g, d)?])
                }
            },
            TermKind::Cotuple(g, k) => {
                self.apply(rule(E, 1), vec![self.decl(g, Decoration::Ppg)?, self.decl(k, Decoration::Ctc)?])
            }
            TermKind::Case(f, k) if d == Decoration::Ppg => {
                self.apply(rule(Sp, 7), vec![self.decl(f, Decoration::Ppg)?, self.decl(k, Decoration::Ppg)?])
            }
            TermKind::Case(f, k) => {
                self.apply(rule(Sp, 3), vec![self.decl(f, Decoration::Ppg)?, self.decl(k, Decoration::Ctc)?])
            }
            TermKind::Downcast(k) => self.apply(rule(C, 1), vec![self.decl(k, Decoration::Ctc)?]),
            TermKind::Family(bs) => {
                let ps = bs
                    .iter()
                    .map(|(_, f)| self.decl(f, Decoration::Ppg))
                    .collect::<Result<Vec<_>, _>>()?;
                let subst = if bs.is_empty() {
                    vec![("Y".to_string(), Binding::Type(t.tgt().clone()))]
                } else {
                    Vec::new()
                };
                self.apply_with(rule(F, 1), subst, ps)
            }
            TermKind::Sum(..) | TermKind::Throw(_) | TermKind::Try(..) => {
                Ok(Derivation::leaf(Step::Def, Judgment::decl(t.clone(), d)))
            }
        }
    }

    /// `f == g` or `f ~ g` flipped.
    pub fn sym(&self, d: Derivation) -> Built {
        let r = match eq_of(&d).strength {
            Strength::Strong => rule(Family::A, 7),
            Strength::Weak => rule(Family::B, 9),
        };
        self.apply(r, vec![d])
    }

    /// `f == g ⊢ f ~ g`; weak equations pass through.
    pub fn weaken(&self, d: Derivation) -> Built {
        match eq_of(&d).strength {
            Strength::Strong => self.apply(rule(Family::B, 7), vec![d]),
            Strength::Weak => Ok(d),
        }
    }

    /// Transitivity; strong only if both are strong.
    pub fn trans(&self, a: Derivation, b: Derivation) -> Built {
        if eq_of(&a).strength == Strength::Strong && eq_of(&b).strength == Strength::Strong {
            self.apply(rule(Family::A, 8), vec![a, b])
        } else {
            self.apply(rule(Family::B, 10), vec![self.weaken(a)?, self.weaken(b)?])
        }
    }

    pub fn chain(&self, steps: Vec<Derivation>) -> Built {
        let mut it = steps.into_iter();
        let mut acc = it.next().expect("a non-empty chain");
        for d in it {
            acc = self.trans(acc, d)?;
        }
        Ok(acc)
    }

    pub fn refl(&self, t: &Term) -> Built {
        self.apply(rule(Family::A, 6), vec![self.decl_any(t)?])
    }

    pub fn weak_refl(&self, t: &Term) -> Built {
        self.apply(rule(Family::B, 8), vec![self.decl_any(t)?])
    }

    /// `h ∘ (g ∘ f) == (h ∘ g) ∘ f`.
    pub fn assoc(&self, h: &Term, g: &Term, f: &Term) -> Built {
        self.apply(rule(Family::A, 3), vec![self.decl_any(f)?, self.decl_any(g)?, self.decl_any(h)?])
    }

    /// `(h ∘ g) ∘ f == h ∘ (g ∘ f)`.
    pub fn unassoc(&self, h: &Term, g: &Term, f: &Term) -> Built {
        let a = self.assoc(h, g, f)?;
        self.sym(a)
    }

    /// `f ∘ id == f`.
    pub fn id_right(&self, f: &Term) -> Built {
        self.apply(rule(Family::A, 4), vec![self.decl_any(f)?])
    }

    /// `id ∘ f == f`.
    pub fn id_left(&self, f: &Term) -> Built {
        self.apply(rule(Family::A, 5), vec![self.decl_any(f)?])
    }

    /// `g1 ∘ f R g2 ∘ f` from `g1 R g2`. A weak premise needs `f` pure.
    pub fn post(&self, d: Derivation, f: &Term) -> Built {
        match eq_of(&d).strength {
            Strength::Strong => self.apply(rule(Family::A, 9), vec![self.decl_any(f)?, d]),
            Strength::Weak => self.apply(rule(Family::B, 11), vec![self.decl(f, Decoration::Pure)?, d]),
        }
    }

    /// `g ∘ f1 R g ∘ f2` from `f1 R f2`.
    pub fn pre(&self, g: &Term, d: Derivation) -> Built {
        let r = match eq_of(&d).strength {
            Strength::Strong => rule(Family::A, 10),
            Strength::Weak => rule(Family::B, 12),
        };
        self.apply(r, vec![d, self.decl_any(g)?])
    }

    /// Strengthens `f ~ g` between propagators.
    pub fn strengthen(&self, d: Derivation) -> Built {
        let e = eq_of(&d).clone();
        self.apply(
            rule(Family::B, 6),
            vec![d, self.decl(&e.lhs, Decoration::Ppg)?, self.decl(&e.rhs, Decoration::Ppg)?],
        )
    }

    /// `⇓k ~ k`.
    pub fn down_weak(&self, k: &Term) -> Built {
        self.apply(rule(Family::C, 2), vec![self.decl(k, Decoration::Ctc)?])
    }

    /// `[g | k] ~ g`, `[g | k] ∘ [] == k`, from the components.
    pub fn cotuple_rule(&self, member: u8, g: &Term, k: &Term) -> Built {
        self.apply(
            rule(Family::E, member),
            vec![self.decl(g, Decoration::Ppg)?, self.decl(k, Decoration::Ctc)?],
        )
    }

    /// `[f | k] ∘ copi1 ~ f` (member 4) or `[f | k] ∘ copi2 == k` (member 5).
    pub fn case_rule(&self, member: u8, f: &Term, k: &Term) -> Built {
        self.apply(
            rule(Family::Sp, member),
            vec![self.decl(f, Decoration::Ppg)?, self.decl(k, Decoration::Ctc)?],
        )
    }

    /// The canonical axiom `c_i ∘ t_j ~ ...`.
    pub fn untag_tag_axiom(&self, i: &Index, j: &Index) -> Derivation {
        let e = if i == j {
            self.ctx.diagonal_axiom(i)
        } else {
            self.ctx.cross_axiom(i, j)
        };
        self.axiom_eq(e.expect("declared indices"))
    }
}
