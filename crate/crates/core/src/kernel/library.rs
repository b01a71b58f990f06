//! Derived rules and properties of raising and handling, built as checked
//! derivations over a small exception context.

use super::build::{rule, Built, Builder};
use super::check::Derivation;
use super::rules::{Family, RuleError};
use crate::semantics::battery::standard_exceptions;
use crate::syntax::{Clause, Decoration, DecoratedSpec, Equation, Index, Name, ObjType, OpDecl, Term};

/// The context of the library: types `X`, `Y`, `P1..P3` and indices `1..3`
/// with parameters `P1..P3`.
pub fn library_spec() -> DecoratedSpec {
    let mut types = vec![Name::new("X"), Name::new("Y")];
    types.extend((1..=3).map(|k| Name::new(&format!("P{k}"))));
    DecoratedSpec::canonical(types, vec![], standard_exceptions(3))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LibraryEntry {
    /// File stem of the shipped script.
    pub name: &'static str,
    pub title: &'static str,
    /// Operations assumed for the proof, added to the context.
    pub hypotheses: Vec<OpDecl>,
    pub derivation: Derivation,
}

impl LibraryEntry {
    pub fn context(&self, base: &DecoratedSpec) -> DecoratedSpec {
        base.extended(&[], &self.hypotheses)
    }

    pub fn statement(&self) -> &Equation {
        self.derivation.conclusion.equation().expect("library entries conclude equations")
    }
}

fn base(name: &str) -> ObjType {
    ObjType::base(name)
}

fn hyp(name: &str, src: ObjType, tgt: ObjType, deco: Decoration) -> (OpDecl, Term) {
    let o = OpDecl::new(name, src, tgt, deco);
    let t = o.term().expect("base types");
    (o, t)
}

fn comp(g: &Term, f: &Term) -> Term {
    Term::comp(g.clone(), f.clone()).expect("library terms compose")
}

fn tag(b: &Builder, i: &Index) -> Term {
    Term::tag(i.clone(), b.ctx.param(i).expect("declared").clone())
}

fn untag(b: &Builder, i: &Index) -> Term {
    Term::untag(i.clone(), b.ctx.param(i).expect("declared").clone())
}

/// `g ∘ []_X == []_Y` for a propagator `g : X -> Y`.
pub fn empty_absorbs(b: &Builder, g: &Term) -> Built {
    use Family::*;
    let (x, y) = (g.src(), g.tgt());
    let typed = b.apply(rule(A, 1), vec![b.apply(rule(D, 1), vec![b.ty(x)])?, b.decl_any(g)?])?;
    let weak = b.apply(rule(D, 3), vec![typed])?;
    let empty_ppg = |t: &ObjType| b.apply(rule(B, 1), vec![b.apply(rule(D, 2), vec![b.ty(t)])?]);
    let comp_ppg = b.apply(rule(B, 5), vec![empty_ppg(x)?, b.decl(g, Decoration::Ppg)?])?;
    b.apply(rule(B, 6), vec![weak, comp_ppg, empty_ppg(y)?])
}

/// `g == [g | []_Y]` for a propagator `g : X -> Y`.
pub fn cotuple_with_empty(b: &Builder, g: &Term) -> Built {
    let ey = Term::empty(g.tgt().clone());
    b.apply(
        rule(Family::E, 4),
        vec![
            b.decl(g, Decoration::Ppg)?,
            b.decl(&ey, Decoration::Ctc)?,
            b.decl(g, Decoration::Ctc)?,
            b.weak_refl(g)?,
            empty_absorbs(b, g)?,
        ],
    )
}

/// `[g | k1] == [g | k2]` from `k1 == k2`, by uniqueness of the cotuple.
pub fn cotuple_congruence(b: &Builder, g: &Term, k1: &Term, k2: &Term, eq: Derivation) -> Built {
    let c1 = Term::cotuple(g.clone(), k1.clone())?;
    let on_empty = b.trans(b.cotuple_rule(3, g, k1)?, eq)?;
    b.apply(
        rule(Family::E, 4),
        vec![
            b.decl(g, Decoration::Ppg)?,
            b.decl(k2, Decoration::Ctc)?,
            b.decl(&c1, Decoration::Ctc)?,
            b.cotuple_rule(2, g, k1)?,
            on_empty,
        ],
    )
}

/// `⇓k1 == ⇓k2` from `k1 == k2`: both are propagators weakly equal to
/// each other.
pub fn downcast_congruence(b: &Builder, k1: &Term, k2: &Term, eq: Derivation) -> Built {
    let back = b.sym(b.down_weak(k2)?)?;
    let weak = b.chain(vec![b.down_weak(k1)?, b.weaken(eq)?, back])?;
    b.strengthen(weak)
}

/// `(t_i ∘ c_i) ∘ t_j ~ t_j`, the behaviour of `t_i ∘ c_i` on tag `j`.
fn untag_tag_on(b: &Builder, i: &Index, j: &Index) -> Built {
    let (ti, ci, tj) = (tag(b, i), untag(b, i), tag(b, j));
    let reassoc = b.unassoc(&ti, &ci, &tj)?;
    if i == j {
        let inner = b.pre(&ti, b.untag_tag_axiom(i, i))?;
        return b.chain(vec![reassoc, inner, b.id_right(&ti)?]);
    }
    let pi = ti.src().clone();
    let ep = Term::empty(pi);
    let inner = b.pre(&ti, b.untag_tag_axiom(i, j))?;
    let regroup = b.assoc(&ti, &ep, &tj)?;
    let absorb = b.post(empty_absorbs(b, &ti)?, &tj)?;
    let empty_is_id = id_zero_is_empty(b)?;
    let drop_empty = b.post(b.sym(empty_is_id)?, &tj)?;
    b.chain(vec![reassoc, inner, regroup, absorb, drop_empty, b.id_left(&tj)?])
}

/// `id_0 == []_0`.
fn id_zero_is_empty(b: &Builder) -> Built {
    let id0 = Term::id(ObjType::Zero);
    let weak = b.apply(rule(Family::D, 3), vec![b.decl_any(&id0)?])?;
    b.strengthen(weak)
}

/// `f == [h_j]_j` over the constitutive coproduct of the tags, from
/// `f ∘ t_j ~ h_j` for every index in context order.
fn by_tags(b: &Builder, f: &Term, branches: Vec<(Index, Term)>, on_tags: Vec<Derivation>) -> Built {
    let mut ps = branches
        .iter()
        .map(|(_, h)| b.decl(h, Decoration::Ppg))
        .collect::<Result<Vec<_>, _>>()?;
    ps.push(b.decl(f, Decoration::Ctc)?);
    for d in on_tags {
        ps.push(b.weaken(d)?);
    }
    b.apply(rule(Family::F, 3), ps)
}

/// `t_i ∘ c_i == id_0`.
pub fn untag_tag(b: &Builder, i: &Index) -> Built {
    let idx: Vec<Index> = b.ctx.indices().cloned().collect();
    let branches: Vec<(Index, Term)> = idx.iter().map(|j| (j.clone(), tag(b, j))).collect();
    let f = comp(&tag(b, i), &untag(b, i));
    let on_f = idx.iter().map(|j| untag_tag_on(b, i, j)).collect::<Result<Vec<_>, _>>()?;
    let lhs = by_tags(b, &f, branches.clone(), on_f)?;
    let id0 = Term::id(ObjType::Zero);
    let on_id = idx
        .iter()
        .map(|j| b.id_left(&tag(b, j)))
        .collect::<Result<Vec<_>, _>>()?;
    let rhs = by_tags(b, &id0, branches, on_id)?;
    b.trans(lhs, b.sym(rhs)?)
}

fn sum(l: Term, r: Term) -> Term {
    Term::sum(l, r).expect("library sums are well formed")
}

/// For `m = (c_b + id)` or `(id + c_b)` applied after `c_a`, the behaviour of
/// `m ∘ c_a` on tag `k`: `ord` on `k = a`, `exc` on `k = b`, and
/// `[] ∘ t_k` otherwise. `ord` and `exc` are the coprojections receiving
/// `P_a` and `P_b`.
fn sum_after_untag_on(b: &Builder, m: &Term, a: &Index, bi: &Index, ord: &Term, exc: &Term, k: &Index) -> Built {
    let (ca, cb, tk) = (untag(b, a), untag(b, bi), tag(b, k));
    let unfolded = m.unfold_definition().expect("a sum");
    let reassoc = b.unassoc(m, &ca, &tk)?;
    let pa = ca.tgt().clone();
    let (on_ord, on_exc) = match unfolded.kind() {
        crate::syntax::TermKind::Cotuple(g, h) => ((**g).clone(), (**h).clone()),
        _ => unreachable!("a sum with one catcher side unfolds to a cotuple"),
    };
    if k == a {
        let inner = b.pre(m, b.untag_tag_axiom(a, a))?;
        return b.chain(vec![
            reassoc,
            inner,
            b.id_right(m)?,
            b.def(m),
            b.cotuple_rule(2, &on_ord, &on_exc)?,
            b.id_right(ord)?,
        ]);
    }
    let ea = Term::empty(pa);
    let inner = b.pre(m, b.untag_tag_axiom(a, k))?;
    let regroup = b.assoc(m, &ea, &tk)?;
    let unfold = b.post(b.post(b.def(m), &ea)?, &tk)?;
    let on_empty = b.post(b.cotuple_rule(3, &on_ord, &on_exc)?, &tk)?;
    let reassoc2 = b.unassoc(exc, &cb, &tk)?;
    let mut steps = vec![reassoc, inner, regroup, unfold, on_empty, reassoc2];
    if k == bi {
        steps.push(b.pre(exc, b.untag_tag_axiom(bi, bi))?);
        steps.push(b.id_right(exc)?);
    } else {
        let eb = Term::empty(cb.tgt().clone());
        steps.push(b.pre(exc, b.untag_tag_axiom(bi, k))?);
        steps.push(b.assoc(exc, &eb, &tk)?);
        steps.push(b.post(empty_absorbs(b, exc)?, &tk)?);
    }
    b.chain(steps)
}

/// `(c_i + id_{P_j}) ∘ c_j == (id_{P_i} + c_j) ∘ c_i` for `i != j`.
pub fn untag_untag(b: &Builder, i: &Index, j: &Index) -> Built {
    let (ci, cj) = (untag(b, i), untag(b, j));
    let (pi, pj) = (ci.tgt().clone(), cj.tgt().clone());
    let copi1 = Term::copi1(pi.clone(), pj.clone())?;
    let copi2 = Term::copi2(pi.clone(), pj.clone())?;
    let target = ObjType::coprod(pi.clone(), pj.clone());
    let m = sum(ci.clone(), Term::id(pj));
    let n = sum(Term::id(pi), cj.clone());
    let idx: Vec<Index> = b.ctx.indices().cloned().collect();
    let branches: Vec<(Index, Term)> = idx
        .iter()
        .map(|k| {
            let h = if k == i {
                copi1.clone()
            } else if k == j {
                copi2.clone()
            } else {
                comp(&Term::empty(target.clone()), &tag(b, k))
            };
            (k.clone(), h)
        })
        .collect();
    let lhs_term = comp(&m, &cj);
    let rhs_term = comp(&n, &ci);
    let on_l = idx
        .iter()
        .map(|k| sum_after_untag_on(b, &m, j, i, &copi2, &copi1, k))
        .collect::<Result<Vec<_>, _>>()?;
    let on_r = idx
        .iter()
        .map(|k| sum_after_untag_on(b, &n, i, j, &copi1, &copi2, k))
        .collect::<Result<Vec<_>, _>>()?;
    let l = by_tags(b, &lhs_term, branches.clone(), on_l)?;
    let r = by_tags(b, &rhs_term, branches, on_r)?;
    b.trans(l, b.sym(r)?)
}

fn try_term(f: &Term, clauses: Vec<(Index, Term)>) -> Term {
    let cs = clauses.into_iter().map(|(index, body)| Clause { index, body }).collect();
    Term::try_catch(f.clone(), cs).expect("library handlers are well formed")
}

/// Splits the unfolding `⇓([id_Y | k] ∘ f)` of a try-catch into `k`.
fn handler_of(t: &Term) -> (Term, Term) {
    use crate::syntax::TermKind;
    let u = t.unfold_definition().expect("a try-catch");
    let TermKind::Downcast(catcher) = u.kind() else {
        unreachable!("try-catch unfolds to a downcast")
    };
    let TermKind::Comp(cot, _) = catcher.kind() else {
        unreachable!("the catcher is a composite")
    };
    let TermKind::Cotuple(_, k) = cot.kind() else {
        unreachable!("the catcher starts with a cotuple")
    };
    ((**catcher).clone(), (**k).clone())
}

/// `try f catch(i => throw_{i,Y}) == f` for a propagator `f : X -> Y`.
pub fn catch_raise(b: &Builder, f: &Term, i: &Index) -> Built {
    let y = f.tgt().clone();
    let p = b.ctx.param(i).expect("declared").clone();
    let throw = Term::throw(i.clone(), p, y.clone())?;
    let t = try_term(f, vec![(i.clone(), throw.clone())]);
    let (catcher, k1) = handler_of(&t);
    let ci = untag(b, i);
    let ti = tag(b, i);
    let ey = Term::empty(y.clone());
    let idy = Term::id(y.clone());

    let k_is_throw = b.post(b.sym(cotuple_with_empty(b, &throw)?)?, &ci)?;
    let k_is_empty = b.chain(vec![
        k_is_throw,
        b.post(b.def(&throw), &ci)?,
        b.unassoc(&ey, &ti, &ci)?,
        b.pre(&ey, untag_tag(b, i)?)?,
        b.id_right(&ey)?,
    ])?;
    let cot = b.trans(
        cotuple_congruence(b, &idy, &k1, &ey, k_is_empty)?,
        b.sym(cotuple_with_empty(b, &idy)?)?,
    )?;
    let catcher_is_f = b.trans(b.post(cot, f)?, b.id_left(f)?)?;
    let weak = b.trans(b.down_weak(&catcher)?, catcher_is_f)?;
    b.trans(b.def(&t), b.strengthen(weak)?)
}

/// `[g | K] ≅ [g | h] ∘ s` where `s` is the sum placing `P_i` by `ord` and
/// the untag of the other index by `exc`, and `K = [h | []_Y] ∘ c_j`.
#[allow(clippy::too_many_arguments)]
fn clause_as_case(
    b: &Builder,
    q: &Term,
    g: &Term,
    h: &Term,
    s: &Term,
    ord: &Term,
    exc: &Term,
    k: &Term,
    first: bool,
) -> Built {
    use crate::syntax::TermKind;
    let unfolded = s.unfold_definition().expect("a sum");
    let (on_ord, on_exc) = match unfolded.kind() {
        TermKind::Cotuple(a, c) => ((**a).clone(), (**c).clone()),
        _ => unreachable!("a sum with one catcher side unfolds to a cotuple"),
    };
    let cj = match on_exc.kind() {
        TermKind::Comp(_, c) => (**c).clone(),
        _ => unreachable!("the exceptional side is a coprojection after an untag"),
    };
    let qs = comp(q, s);
    let px = s.src().clone();
    let ep = Term::empty(px);
    let q_unfold = b.pre(q, b.def(s))?;
    // q ∘ ord ~ g: weak from the characterization, or strong when the
    // component is the right one
    let q_ord = if first {
        b.case_rule(4, g, h)?
    } else {
        b.weaken(b.case_rule(5, h, g)?)?
    };
    let weak = b.chain(vec![
        q_unfold.clone(),
        b.pre(q, b.cotuple_rule(2, &on_ord, &on_exc)?)?,
        b.assoc(q, ord, &Term::id(ord.src().clone()))?,
        b.id_right(&comp(q, ord))?,
        q_ord,
    ])?;
    let q_exc = if first {
        b.case_rule(5, g, h)?
    } else {
        b.strengthen(b.case_rule(4, h, g)?)?
    };
    let on_empty = b.chain(vec![
        b.post(q_unfold, &ep)?,
        b.unassoc(q, &unfolded, &ep)?,
        b.pre(q, b.cotuple_rule(3, &on_ord, &on_exc)?)?,
        b.assoc(q, exc, &cj)?,
        b.post(q_exc, &cj)?,
        b.post(cotuple_with_empty(b, h)?, &cj)?,
    ])?;
    b.apply(
        rule(Family::E, 4),
        vec![
            b.decl(g, Decoration::Ppg)?,
            b.decl(k, Decoration::Ctc)?,
            b.decl(&qs, Decoration::Ctc)?,
            weak,
            on_empty,
        ],
    )
}

/// `try f catch(i => g | j => h) == try f catch(j => h | i => g)` for
/// `i != j`.
pub fn catch_catch(b: &Builder, f: &Term, g: &Term, h: &Term, i: &Index, j: &Index) -> Built {
    let y = f.tgt().clone();
    let (ci, cj) = (untag(b, i), untag(b, j));
    let (pi, pj) = (ci.tgt().clone(), cj.tgt().clone());
    let t1 = try_term(f, vec![(i.clone(), g.clone()), (j.clone(), h.clone())]);
    let t2 = try_term(f, vec![(j.clone(), h.clone()), (i.clone(), g.clone())]);
    let (catcher1, a) = handler_of(&t1);
    let (catcher2, bb) = handler_of(&t2);
    let ey = Term::empty(y.clone());
    let k2 = comp(&Term::cotuple(h.clone(), ey.clone())?, &cj);
    let k1 = comp(&Term::cotuple(g.clone(), ey.clone())?, &ci);
    let q = Term::case(g.clone(), h.clone())?;
    let copi1 = Term::copi1(pi.clone(), pj.clone())?;
    let copi2 = Term::copi2(pi.clone(), pj.clone())?;
    let n = sum(Term::id(pi), cj.clone());
    let m = sum(ci.clone(), Term::id(pj));

    // [g | K2] == q ∘ n and [h | K1] == q ∘ m
    let first = clause_as_case(b, &q, g, h, &n, &copi1, &copi2, &k2, true)?;
    let second = clause_as_case(b, &q, h, g, &m, &copi2, &copi1, &k1, false)?;

    let a_side = b.chain(vec![b.post(b.sym(first)?, &ci)?, b.unassoc(&q, &n, &ci)?])?;
    let b_side = b.chain(vec![b.post(b.sym(second)?, &cj)?, b.unassoc(&q, &m, &cj)?])?;
    let swap = b.pre(&q, b.sym(untag_untag(b, i, j)?)?)?;
    let a_is_b = b.chain(vec![a_side, swap, b.sym(b_side)?])?;

    let idy = Term::id(y);
    let cot = cotuple_congruence(b, &idy, &a, &bb, a_is_b)?;
    let catchers = b.post(cot, f)?;
    let down = downcast_congruence(b, &catcher1, &catcher2, catchers)?;
    b.chain(vec![b.def(&t1), down, b.sym(b.def(&t2))?])
}

/// `⇓[f | g] == [f | g]` for propagators `f`, `g`.
pub fn downcast_of_case(b: &Builder, f: &Term, g: &Term) -> Built {
    let c = Term::case(f.clone(), g.clone())?;
    b.strengthen(b.down_weak(&c)?)
}

/// `try f catch(i => g) == f` for a pure `f`.
pub fn pure_try(b: &Builder, f: &Term, g: &Term, i: &Index) -> Built {
    let t = try_term(f, vec![(i.clone(), g.clone())]);
    let (catcher, k) = handler_of(&t);
    let idy = Term::id(f.tgt().clone());
    let on_f = b.post(b.cotuple_rule(2, &idy, &k)?, f)?;
    let weak = b.chain(vec![b.down_weak(&catcher)?, on_f, b.id_left(f)?])?;
    b.trans(b.def(&t), b.strengthen(weak)?)
}

fn entry(
    name: &'static str,
    title: &'static str,
    hypotheses: Vec<OpDecl>,
    base: &DecoratedSpec,
    build: impl FnOnce(&Builder) -> Built,
) -> Result<LibraryEntry, RuleError> {
    let ctx = base.extended(&[], &hypotheses);
    let derivation = build(&Builder::new(&ctx))?;
    Ok(LibraryEntry {
        name,
        title,
        hypotheses,
        derivation,
    })
}

/// Every derived rule and property, as derivations over [`library_spec`].
pub fn derived_rule_library() -> Vec<LibraryEntry> {
    try_library().expect("library derivations are built from valid rule applications")
}

pub fn try_library() -> Result<Vec<LibraryEntry>, RuleError> {
    let s = library_spec();
    let (i, j) = (Index::new("1"), Index::new("2"));
    let (x, y) = (base("X"), base("Y"));
    let (fo, f) = hyp("f", x.clone(), y.clone(), Decoration::Ppg);
    let (go, g) = hyp("g", x.clone(), y.clone(), Decoration::Ppg);
    let (gpo, gp) = hyp("g", base("P1"), y.clone(), Decoration::Ppg);
    let (hpo, hp) = hyp("h", base("P2"), y.clone(), Decoration::Ppg);
    let (upo, up) = hyp("u", x.clone(), y.clone(), Decoration::Pure);
    Ok(vec![
        entry("lemma_coprod_cotu_part1", "empty absorbs a propagator", vec![go.clone()], &s, |b| {
            empty_absorbs(b, &g)
        })?,
        entry("lemma_coprod_cotu_part2", "a propagator is its cotuple with empty", vec![go], &s, |b| {
            cotuple_with_empty(b, &g)
        })?,
        entry("lemma_untag_tag", "annihilation untag-tag", vec![], &s, |b| untag_tag(b, &i))?,
        entry("lemma_catch_raise", "annihilation catch-raise", vec![fo.clone()], &s, |b| {
            catch_raise(b, &f, &i)
        })?,
        entry("lemma_untag_untag", "commutation untag-untag", vec![], &s, |b| untag_untag(b, &i, &j))?,
        entry(
            "lemma_catch_catch",
            "commutation catch-catch",
            vec![fo.clone(), gpo.clone(), hpo.clone()],
            &s,
            |b| catch_catch(b, &f, &gp, &hp, &i, &j),
        )?,
        entry(
            "lemma_downcast_case",
            "a case of propagators is a propagator",
            vec![fo, gpo.clone()],
            &s,
            |b| {
                // [f | g] : X + P1 -> Y
                downcast_of_case(b, &f, &gp)
            },
        )?,
        entry("lemma_pure_try", "handling around a pure term", vec![upo, gpo], &s, |b| {
            pure_try(b, &up, &gp, &i)
        })?,
    ])
}
