use std::path::PathBuf;

use deco_core::format::{parse_proof, parse_spec, print_proof, ProofScript};
use deco_core::kernel::{
    apply_rule, check_derivation, derived_rule_library, library_spec, Binding, Builder, Derivation, Family, Judgment,
    RuleError, RuleId, Step,
};
use deco_core::semantics::battery::{random_models, standard_exceptions};
use deco_core::semantics::{counterexample, oracle_holds, FiniteModel};
use deco_core::syntax::{Decoration, DecoratedSpec, Equation, ExceptionDecl, Index, Name, ObjType, Strength, Term};

fn r(f: Family, m: u8) -> RuleId {
    RuleId::new(f, m)
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn shipped_spec() -> DecoratedSpec {
    let text = std::fs::read_to_string(root().join("specs/exceptions.dexc")).unwrap();
    parse_spec(&text).unwrap()
}

fn shipped(name: &str) -> String {
    std::fs::read_to_string(root().join("proofs").join(format!("{name}.dproof"))).unwrap()
}

fn eqs(s: &DecoratedSpec) -> Vec<Equation> {
    s.axioms.iter().map(|a| a.eq.clone()).collect()
}

#[test]
fn shipped_spec_is_the_library_context() {
    let s = shipped_spec();
    let l = library_spec();
    assert_eq!((&s.types, &s.ops, &s.exceptions), (&l.types, &l.ops, &l.exceptions));
    assert_eq!(eqs(&s), eqs(&l));
}

#[test]
fn library_entries_check() {
    let base = library_spec();
    for e in derived_rule_library() {
        let v = check_derivation(&e.derivation, &e.context(&base));
        assert!(v.accepted, "{}: {:?}", e.name, v.failures().collect::<Vec<_>>());
    }
}

#[test]
fn shipped_scripts_match_the_library() {
    let base = shipped_spec();
    for e in derived_rule_library() {
        let text = shipped(e.name);
        assert_eq!(text, print_proof(&ProofScript::from(&e)), "{} is stale", e.name);
        let p = parse_proof(&text, &base).unwrap();
        assert_eq!(p.derivation, e.derivation, "{}", e.name);
        let v = check_derivation(&p.derivation, &p.context(&base));
        assert!(v.accepted, "{}", e.name);
    }
}

#[test]
fn library_statements() {
    let lib = derived_rule_library();
    let got: Vec<(&str, String)> = lib.iter().map(|e| (e.name, e.statement().to_string())).collect();
    let want = [
        ("lemma_coprod_cotu_part1", "g o [][X] == [][Y]"),
        ("lemma_coprod_cotu_part2", "g == [g | [][Y]]"),
        ("lemma_untag_tag", "t1 o c1 == id[0]"),
        ("lemma_catch_raise", "try f catch(1 => throw[1, Y]) == f"),
        ("lemma_untag_untag", "(c1 + id[P2]) o c2 == (id[P1] + c2) o c1"),
    ];
    for (n, s) in want {
        let e = got.iter().find(|(m, _)| *m == n).unwrap_or_else(|| panic!("missing {n}"));
        assert_eq!(e.1, s);
    }
}

#[test]
fn library_statements_hold_in_random_models() {
    let base = library_spec();
    for e in derived_rule_library() {
        let ctx = e.context(&base);
        for m in random_models(&ctx, 30, 2, 7) {
            let eq = e.statement();
            assert!(oracle_holds(eq, &m).unwrap(), "{} fails: {:?}", e.name, counterexample(eq, &m).unwrap());
        }
    }
}

#[test]
fn relabelled_node_rejects_at_that_node() {
    let base = shipped_spec();
    let text = shipped("lemma_coprod_cotu_part1").replacen("b6 |-", "a6 |-", 1);
    let p = parse_proof(&text, &base).unwrap();
    let v = check_derivation(&p.derivation, &p.context(&base));
    assert!(!v.accepted);
    let bad: Vec<_> = v.failures().collect();
    assert_eq!(bad.len(), 1);
    assert_eq!((bad[0].path.as_str(), bad[0].rule.as_str()), ("", "a6"));
}

/// Two indices sharing one parameter type: `t1` and `t2` are parallel but
/// must not be identified.
fn shared_param_spec() -> DecoratedSpec {
    let ex = |i: &str| ExceptionDecl {
        index: Index::new(i),
        param: ObjType::base("P"),
    };
    DecoratedSpec::canonical(vec![Name::new("P")], vec![], vec![ex("1"), ex("2")])
}

#[test]
fn distinct_tags_are_not_identified() {
    let s = shared_param_spec();
    let p = ObjType::base("P");
    let t1 = Term::tag(Index::new("1"), p.clone());
    let t2 = Term::tag(Index::new("2"), p);
    for strength in [Strength::Strong, Strength::Weak] {
        let eq = Equation::new(t1.clone(), t2.clone(), strength).unwrap();
        let d = Derivation::leaf(Step::Axiom, Judgment::Eq(eq.clone()));
        assert!(!check_derivation(&d, &s).accepted);
        let models = random_models(&s, 10, 2, 1);
        let w = models.iter().find_map(|m| counterexample(&eq, m).unwrap());
        assert!(w.is_some(), "a model separating t1 and t2");
    }
}

fn throw1(s: &DecoratedSpec) -> Term {
    let i = Index::new("1");
    Term::comp(Term::empty(ObjType::base("P1")), s.tag_term(&i).unwrap()).unwrap()
}

#[test]
fn weak_substitution_needs_a_pure_term() {
    let s = library_spec();
    let i = Index::new("1");
    let diag = Judgment::Eq(s.diagonal_axiom(&i).unwrap());
    let f = throw1(&s);
    assert_eq!(f.deco(), Decoration::Ppg);
    let c1 = s.untag_term(&i).unwrap();
    for (f, d) in [(f.clone(), Decoration::Ppg), (c1.clone(), Decoration::Ctc)] {
        let res = apply_rule(&s, r(Family::B, 11), &[], &[Judgment::decl(f.clone(), d), diag.clone()]);
        assert!(
            matches!(res, Err(RuleError::DecorationSideConditionViolated { position: 0, .. })),
            "{f}: {res:?}"
        );
    }
    // and claiming `f` pure is not an axiom
    let claim = Derivation::leaf(Step::Axiom, Judgment::decl(f.clone(), Decoration::Pure));
    assert!(!check_derivation(&claim, &s).accepted);
    // the conclusion the rule would give is false
    let d = s.diagonal_axiom(&i).unwrap();
    let bogus = Equation::weak(Term::comp(d.lhs, f.clone()).unwrap(), Term::comp(d.rhs, f).unwrap()).unwrap();
    let m = FiniteModel::with_sizes(
        &[(Name::new("P1"), 1), (Name::new("P2"), 0), (Name::new("P3"), 0)],
        standard_exceptions(3),
    )
    .unwrap();
    assert!(!oracle_holds(&bogus, &m).unwrap());
}

#[test]
fn strong_substitution_accepts_any_term() {
    let s = library_spec();
    let b = Builder::new(&s);
    let f = throw1(&s);
    let eq = b.refl(&s.diagonal_axiom(&Index::new("1")).unwrap().lhs).unwrap();
    let d = b.post(eq, &f).unwrap();
    assert!(check_derivation(&d, &s).accepted);
}

#[test]
fn wrong_premise_count() {
    let s = library_spec();
    let res = apply_rule(&s, r(Family::B, 6), &[], &[Judgment::Type(ObjType::base("X"))]);
    assert_eq!(res, Err(RuleError::WrongPremiseCount { expected: 3, found: 1 }));
}

#[test]
fn unused_substitution_key_is_rejected() {
    let s = library_spec();
    let x = ObjType::base("X");
    let res = apply_rule(
        &s,
        r(Family::B, 3),
        &[("Q".into(), Binding::Type(x.clone()))],
        &[Judgment::Type(x)],
    );
    assert!(matches!(res, Err(RuleError::UnknownMetavariable { .. })), "{res:?}");
}

#[test]
fn conflicting_substitution_is_rejected() {
    let s = library_spec();
    let x = ObjType::base("X");
    let res = apply_rule(&s, r(Family::B, 3), &[("X".into(), Binding::Type(ObjType::base("Y")))], &[Judgment::Type(x)]);
    assert!(matches!(res, Err(RuleError::PremiseMismatch { .. })), "{res:?}");
}

#[test]
fn every_strong_conclusion_weakens() {
    let base = library_spec();
    for e in derived_rule_library() {
        let ctx = e.context(&base);
        let b = Builder::new(&ctx);
        let mut strong = Vec::new();
        collect_strong(&e.derivation, &mut strong);
        assert!(!strong.is_empty());
        for d in strong {
            let eq = d.conclusion.equation().unwrap().clone();
            let w = b.weaken(d).unwrap();
            assert!(check_derivation(&w, &ctx).accepted);
            assert_eq!(w.conclusion, Judgment::Eq(eq.weakened()));
        }
    }
}

fn collect_strong(d: &Derivation, out: &mut Vec<Derivation>) {
    if out.len() >= 20 {
        return;
    }
    if matches!(d.conclusion.equation(), Some(e) if e.strength == Strength::Strong) {
        out.push(d.clone());
    }
    for p in &d.premises {
        collect_strong(p, out);
    }
}

#[test]
fn weak_is_strictly_weaker_for_untag_after_tag() {
    let s = library_spec();
    let i = Index::new("1");
    let weak = s.diagonal_axiom(&i).unwrap();
    let strong = Equation::strong(weak.lhs.clone(), weak.rhs.clone()).unwrap();
    let m = FiniteModel::with_sizes(
        &[(Name::new("P1"), 1), (Name::new("P2"), 1), (Name::new("P3"), 1)],
        standard_exceptions(3),
    )
    .unwrap();
    assert!(oracle_holds(&weak, &m).unwrap());
    let w = counterexample(&strong, &m).unwrap().expect("strong form fails");
    assert_eq!(w.input, "1(p1_0)");
    // and no derivation of the strong form is an axiom
    let d = Derivation::leaf(Step::Axiom, Judgment::Eq(strong));
    assert!(!check_derivation(&d, &s).accepted);
}
