use proptest::prelude::*;

use deco_core::expand::{expand_equation, expand_spec, expand_term, normalize};
use deco_core::format::{parse_model, parse_spec, parse_term, print_model, print_spec};
use deco_core::semantics::battery::{random_model, rng};
use deco_core::semantics::terms::{term_spec, TermGen};
use deco_core::semantics::{commutation_witness, explicit_holds, oracle_holds};
use deco_core::suite::{direct_explicit, random_signature};
use deco_core::syntax::{exception_signature, undecorate, DecoratedSpec, Equation, ExplicitTerm, Strength, Term};

fn term(seed: u64, depth: usize) -> Term {
    let s = term_spec();
    TermGen::new(&s).any(&mut rng(seed), depth)
}

/// A pair of composable random terms.
fn composable(seed: u64) -> Option<(Term, Term)> {
    let s = term_spec();
    let g = TermGen::new(&s);
    let mut r = rng(seed);
    let f = g.any(&mut r, 3);
    let tgt = g.types()[seed as usize % g.types().len()].clone();
    let h = g.term(&mut r, f.tgt(), &tgt, 3)?;
    Some((h, f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let e = expand_term(&term(seed, 5));
        let n = normalize(&e);
        prop_assert_eq!(normalize(&n), n.clone());
        prop_assert_eq!(n.src(), e.src());
        prop_assert_eq!(n.tgt(), e.tgt());
    }

    #[test]
    fn expansion_is_functorial(seed in any::<u64>()) {
        if let Some((g, f)) = composable(seed) {
            let gf = Term::comp(g.clone(), f.clone()).unwrap();
            let split = ExplicitTerm::comp(expand_term(&g), expand_term(&f)).unwrap();
            prop_assert_eq!(normalize(&expand_term(&gf)), normalize(&split));
        }
        let t = term(seed, 4);
        prop_assert_eq!(normalize(&expand_term(&Term::id(t.src().clone()))), ExplicitTerm::id(t.src().clone().plus_exc()));
    }

    #[test]
    fn normalization_preserves_meaning(seed in any::<u64>()) {
        let s = term_spec();
        let t = term(seed, 5);
        let m = random_model(&mut rng(seed ^ 1), &s, 2);
        let e = expand_term(&t);
        let eq = deco_core::syntax::ExplicitEquation::new(e.clone(), normalize(&e)).unwrap();
        prop_assert!(explicit_holds(&eq, &m.intended()).unwrap());
    }

    #[test]
    fn evaluation_commutes_with_expansion(seed in any::<u64>()) {
        let s = term_spec();
        let t = term(seed, 5);
        let m = random_model(&mut rng(seed ^ 2), &s, 2);
        prop_assert_eq!(commutation_witness(&t, &m).unwrap(), None);
    }

    #[test]
    fn equal_expansions_agree_in_models(seed in any::<u64>()) {
        // strong equality implies weak equality, on both sides of the expansion
        let s = term_spec();
        let t = term(seed, 4);
        let u = term(seed.wrapping_add(1), 4);
        if let Ok(e) = Equation::new(t, u, Strength::Strong) {
            let m = random_model(&mut rng(seed), &s, 2);
            let strong = oracle_holds(&e, &m).unwrap();
            let weak = oracle_holds(&e.weakened(), &m).unwrap();
            prop_assert!(!strong || weak);
            prop_assert_eq!(explicit_holds(&expand_equation(&e), &m.intended()).unwrap(), strong);
        }
    }

    #[test]
    fn spec_expansion_matches_direct_construction(seed in any::<u64>()) {
        let (types, ops, ex) = random_signature(&mut rng(seed), 4);
        let s = DecoratedSpec::canonical(types.clone(), ops.clone(), ex.clone());
        prop_assert_eq!(expand_spec(&s), direct_explicit(&types, &ops, &ex));
    }

    #[test]
    fn spec_round_trip(seed in any::<u64>()) {
        let (types, ops, ex) = random_signature(&mut rng(seed), 4);
        let s = DecoratedSpec::canonical(types, ops, ex);
        prop_assert_eq!(parse_spec(&print_spec(&s)).unwrap(), s);
    }

    #[test]
    fn term_round_trip(seed in any::<u64>()) {
        let s = term_spec();
        let t = term(seed, 5);
        let text = t.to_string();
        let back = parse_term(&text, &s).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back.deco(), t.deco());
    }

    #[test]
    fn model_round_trip(seed in any::<u64>()) {
        let s = term_spec();
        let m = random_model(&mut rng(seed), &s, 2);
        let back = parse_model(&print_model(&m, &s), &s).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn undecorated_spec_has_the_exception_signature(seed in any::<u64>()) {
        let (types, ops, ex) = random_signature(&mut rng(seed), 4);
        let s = DecoratedSpec::canonical(types, ops, ex);
        prop_assert!(undecorate(&s).contains(&exception_signature(&s)));
    }
}
