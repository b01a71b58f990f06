//! Acceptance criteria. Runs without the test harness and prints one
//! PASS/FAIL line per criterion; exits nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use deco_core::expand::{expand_all_rules, expand_spec, Discharge};
use deco_core::format::{parse_model, parse_proof, parse_spec, parse_term, ParseErrorKind};
use deco_core::handler::{build_try_catch, differential_handler_test, DifferentialConfig};
use deco_core::kernel::{apply_rule, check_derivation, untag_tag, untag_untag, Builder, Family, Judgment, RuleError, RuleId};
use deco_core::semantics::battery::{parameter_battery, random_models, rng, standard_exceptions};
use deco_core::semantics::terms::{term_spec, TermGen};
use deco_core::semantics::{
    check_intended_semantics, commutation_witness, counterexample, eval_decorated, oracle_holds, FiniteModel, GenTable,
    Value,
};
use deco_core::shipped;
use deco_core::suite::random_signature;
use deco_core::syntax::{
    Clause, Decoration, DecoratedSpec, Equation, ExceptionDecl, ExplicitEquation, ExplicitOp, ExplicitSpec,
    ExplicitTerm, Index, Name, ObjType, OpDecl, TermError,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec() -> DecoratedSpec {
    parse_spec(shipped::EXCEPTIONS_SPEC).unwrap()
}

fn script(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("proofs").join(format!("{name}.dproof"));
    std::fs::read_to_string(path).unwrap()
}

fn c1_shipped_proofs() -> Outcome {
    let s = spec();
    let start = Instant::now();
    let mut families = Vec::new();
    for name in ["lemma_coprod_cotu_part1", "lemma_coprod_cotu_part2", "lemma_catch_raise"] {
        let p = parse_proof(&script(name), &s).map_err(|e| format!("{name}: {e}"))?;
        let v = check_derivation(&p.derivation, &p.context(&s));
        ensure(v.accepted, || format!("{name} rejected: {:?}", v.failures().next()))?;
        if name.contains("cotu") {
            let mut rules = Vec::new();
            p.derivation.rules(&mut rules);
            families.extend(rules.iter().map(|r| r.family));
        }
    }
    let elapsed = start.elapsed();
    for f in [Family::A, Family::B, Family::D, Family::E] {
        ensure(families.contains(&f), || format!("the coproduct lemmas never use family {f:?}"))?;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("3 scripts accepted in {elapsed:?}"))
}

/// Expected value of `t_i o c_i` and of both sides of the untag-untag law
/// on the exception `(k, p)`: ordinary `Left(p)` / `Right(p)` or the
/// exception itself.
#[derive(Debug, PartialEq)]
enum Expect {
    Left(u32),
    Right(u32),
    Raised(usize, u32),
}

fn decode_pair(m: &FiniteModel, left: &ObjType, v: Value) -> Expect {
    match v {
        Value::Ordinary(a) => {
            let nl = m.size(left).unwrap();
            if a < nl {
                Expect::Left(a)
            } else {
                Expect::Right(a - nl)
            }
        }
        Value::Exceptional(e) => {
            let (k, p) = m.exc_parts(e);
            Expect::Raised(k, p)
        }
    }
}

fn c2_untag_laws() -> Outcome {
    let mut derived = 0;
    let mut checked = 0;
    for n in 1..=3usize {
        let names: Vec<Name> = (1..=n).map(|k| Name::new(&format!("P{k}"))).collect();
        let s = DecoratedSpec::canonical(names, vec![], standard_exceptions(n));
        let b = Builder::new(&s);
        let idx: Vec<Index> = s.indices().cloned().collect();
        let models = parameter_battery(n, 3, &[]);
        for (pi, i) in idx.iter().enumerate() {
            let mut pairs = vec![(None, untag_tag(&b, i).map_err(|e| e.to_string())?)];
            for (pj, j) in idx.iter().enumerate().filter(|(_, j)| *j != i) {
                pairs.push((Some(pj), untag_untag(&b, i, j).map_err(|e| e.to_string())?));
            }
            for (other, d) in pairs {
                let v = check_derivation(&d, &s);
                ensure(v.accepted, || format!("{} rejected", v.conclusion))?;
                let mut rules = Vec::new();
                d.rules(&mut rules);
                ensure(rules.iter().any(|r| r.family == Family::F), || {
                    format!("{} does not use the constitutive-tags rules", v.conclusion)
                })?;
                derived += 1;
                let eq = d.conclusion.equation().unwrap();
                for m in &models {
                    ensure(oracle_holds(eq, m).unwrap(), || format!("{eq} fails: {:?}", counterexample(eq, m)))?;
                    for e in 0..m.exc_size() {
                        let (k, p) = m.exc_parts(e);
                        let want = match other {
                            None => Expect::Raised(k, p),
                            Some(_) if k == pi => Expect::Left(p),
                            Some(pj) if k == pj => Expect::Right(p),
                            Some(_) => Expect::Raised(k, p),
                        };
                        let left = eq.lhs.tgt().clone();
                        let left = match left {
                            ObjType::Coprod(l, _) => *l,
                            other => other,
                        };
                        for side in [&eq.lhs, &eq.rhs] {
                            let got = decode_pair(m, &left, eval_decorated(side, m, Value::Exceptional(e)).unwrap());
                            ensure(got == want, || format!("{side} on exception {e}: {got:?}, expected {want:?}"))?;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    let s = spec();
    for name in ["lemma_untag_tag", "lemma_untag_untag"] {
        let p = parse_proof(&script(name), &s).map_err(|e| e.to_string())?;
        ensure(check_derivation(&p.derivation, &p.context(&s)).accepted, || format!("{name} rejected"))?;
    }
    Ok(format!("{derived} derivations accepted, {checked} exception inputs agree"))
}

fn c3_rule_obligations() -> Outcome {
    let start = Instant::now();
    let all = expand_all_rules();
    let elapsed = start.elapsed();
    ensure(all.len() == RuleId::all().len(), || "missing rules".into())?;
    for o in &all {
        ensure(o.discharge.passed(), || format!("{}: {}", o.rule, o.discharge))?;
        if o.rule.starts_with('a') || o.rule.starts_with('d') {
            ensure(o.discharge.is_syntactic(), || format!("{} needs the battery", o.rule))?;
        }
    }
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    let semantic = all.iter().filter(|o| matches!(o.discharge, Discharge::Battery { .. })).count();
    Ok(format!(
        "{} rules, {} syntactic, {semantic} semantic, {elapsed:?}",
        all.len(),
        all.len() - semantic
    ))
}

/// The explicit specification of exceptions over a pure signature, written
/// out by hand.
fn hand_built(types: &[Name], ops: &[OpDecl], ex: &[ExceptionDecl]) -> ExplicitSpec {
    let mut xops: Vec<ExplicitOp> = ops
        .iter()
        .map(|o| ExplicitOp {
            name: o.name.clone(),
            src: o.src.clone(),
            tgt: o.tgt.clone(),
        })
        .collect();
    let mut axioms = Vec::new();
    for e in ex {
        let p = e.param.clone();
        xops.push(ExplicitOp {
            name: Name::new(&format!("t{}", e.index)),
            src: p.clone(),
            tgt: ObjType::Exc,
        });
        xops.push(ExplicitOp {
            name: Name::new(&format!("c{}", e.index)),
            src: ObjType::Exc,
            tgt: ObjType::coprod(p.clone(), ObjType::Exc),
        });
    }
    for e in ex {
        let c = ExplicitTerm::untag(e.index.clone(), e.param.clone());
        let own = ExplicitTerm::tag(e.index.clone(), e.param.clone());
        axioms.push(ExplicitEquation::new(ExplicitTerm::comp(c.clone(), own).unwrap(), ExplicitTerm::inj(e.param.clone())).unwrap());
        for f in ex.iter().filter(|f| f.index != e.index) {
            let t = ExplicitTerm::tag(f.index.clone(), f.param.clone());
            let lhs = ExplicitTerm::comp(c.clone(), t.clone()).unwrap();
            let rhs = ExplicitTerm::comp(ExplicitTerm::ina(e.param.clone()), t).unwrap();
            axioms.push(ExplicitEquation::new(lhs, rhs).unwrap());
        }
    }
    ExplicitSpec {
        types: types.to_vec(),
        ops: xops,
        exceptions: ex.to_vec(),
        axioms,
    }
}

fn c4_spec_expansion() -> Outcome {
    let mut r = rng(4);
    let mut sizes = [0usize; 5];
    let count = 60;
    for _ in 0..count {
        let (types, ops, ex) = random_signature(&mut r, 4);
        sizes[ex.len()] += 1;
        let s = DecoratedSpec::canonical(types.clone(), ops.clone(), ex.clone());
        let got = expand_spec(&s);
        let want = hand_built(&types, &ops, &ex);
        ensure(got == want, || format!("mismatch for\n{s:?}\n got {got:?}\nwant {want:?}"))?;
    }
    Ok(format!("{count} signatures equal, index set sizes 1..4: {:?}", &sizes[1..]))
}

fn c5_commutation() -> Outcome {
    let s = term_spec();
    let gen = TermGen::new(&s);
    let models = random_models(&s, 24, 2, 5);
    let mut r = rng(5);
    let mut max_depth = 0;
    let terms = 3000;
    for k in 0..terms {
        let t = gen.any(&mut r, 5);
        max_depth = max_depth.max(t.depth());
        for m in models.iter().skip(k % 4).step_by(4) {
            if let Some(w) = commutation_witness(&t, m).map_err(|e| e.to_string())? {
                return Err(format!("{t} on {}: {} vs {}", w.input, w.lhs, w.rhs));
            }
        }
    }
    Ok(format!("{terms} terms up to depth {max_depth}, 6 models each, no difference"))
}

fn c6_differential() -> Outcome {
    let start = Instant::now();
    let cfg = DifferentialConfig::default();
    let r = differential_handler_test(&cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.passed(), || format!("{:?}", r.divergence))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;

    // duplicate index: the leftmost clause wins
    let s = spec();
    let mut m = parse_model(shipped::SMALL_MODEL, &s).map_err(|e| e.to_string())?;
    let (x, y, p1) = (ObjType::base("X"), ObjType::base("Y"), ObjType::base("P1"));
    let f = deco_core::Term::gen("f", x, y.clone(), Decoration::Ppg).unwrap();
    let g1 = deco_core::Term::gen("g1", p1.clone(), y.clone(), Decoration::Ppg).unwrap();
    let g2 = deco_core::Term::gen("g2", p1, y.clone(), Decoration::Ppg).unwrap();
    let raised = m.exc_of(&Index::new("1"), 0).unwrap();
    m.set_gen("f", GenTable::Ppg(vec![Value::Exceptional(raised)]));
    m.set_gen("g1", GenTable::Ppg(vec![Value::Ordinary(0)]));
    m.set_gen("g2", GenTable::Ppg(vec![Value::Ordinary(1)]));
    let clauses = vec![
        Clause {
            index: Index::new("1"),
            body: g1,
        },
        Clause {
            index: Index::new("1"),
            body: g2,
        },
    ];
    let h = build_try_catch(&s, &f, &clauses).map_err(|e| e.to_string())?;
    let out = eval_decorated(&h.handler, &m, Value::Ordinary(0)).map_err(|e| e.to_string())?;
    ensure(out == Value::Ordinary(0), || format!("duplicate clause picked {out:?}"))?;
    Ok(format!(
        "{} handlers, {} evaluations, no divergence, {elapsed:?}",
        r.handlers, r.evaluations
    ))
}

fn c7_soundness_fuzz() -> Outcome {
    let s = spec();
    let mut equations = 0;
    for (name, text) in shipped::PROOFS {
        let p = parse_proof(text, &s).map_err(|e| e.to_string())?;
        let ctx = p.context(&s);
        ensure(check_derivation(&p.derivation, &ctx).accepted, || format!("{name} rejected"))?;
        let eqs: Vec<&Equation> = p.derivation.judgments().into_iter().filter_map(Judgment::equation).collect();
        let mut uniq: Vec<&Equation> = Vec::new();
        for e in eqs {
            if !uniq.contains(&e) {
                uniq.push(e);
            }
        }
        for m in random_models(&ctx, 100, 2, 77) {
            for e in &uniq {
                if let Some(w) = counterexample(e, &m).map_err(|e| e.to_string())? {
                    return Err(format!("{name}: {e} fails on {}: {} vs {}", w.input, w.lhs, w.rhs));
                }
            }
        }
        equations += uniq.len();
    }
    let m = parse_model(shipped::SMALL_MODEL, &s).map_err(|e| e.to_string())?;
    let weak = s.diagonal_axiom(&Index::new("1")).unwrap();
    let strong = Equation::strong(weak.lhs.clone(), weak.rhs.clone()).unwrap();
    ensure(oracle_holds(&weak, &m).unwrap(), || format!("{weak} fails"))?;
    let w = counterexample(&strong, &m).unwrap().ok_or("the strong diagonal holds")?;
    Ok(format!(
        "{equations} equations hold in 100 models each; {strong} fails on {}: {} vs {}",
        w.input, w.lhs, w.rhs
    ))
}

fn c8_negative_controls() -> Outcome {
    let s = spec();
    let (x, y) = (ObjType::base("X"), ObjType::base("Y"));
    let ctx = s.extended(
        &[],
        &[
            OpDecl::new("f", x.clone(), y.clone(), Decoration::Ppg),
            OpDecl::new("g1", y.clone(), x.clone(), Decoration::Ctc),
        ],
    );
    let f = parse_term("f", &ctx).unwrap();
    let g1 = parse_term("g1", &ctx).unwrap();
    let premises = [
        Judgment::decl(f, Decoration::Ppg),
        Judgment::Eq(Equation::weak(g1.clone(), g1).unwrap()),
    ];
    let b11 = RuleId::new(Family::B, 11);
    match apply_rule(&ctx, b11, &[], &premises) {
        Err(RuleError::DecorationSideConditionViolated { position: 0, .. }) => {}
        other => return Err(format!("weak substitution with a propagator: {other:?}")),
    }

    let e = parse_term("try f catch()", &ctx).unwrap_err();
    ensure(e.kind == ParseErrorKind::EmptyClauseList, || format!("{e}"))?;
    let f = parse_term("f", &ctx).unwrap();
    ensure(
        deco_core::Term::try_catch(f.clone(), vec![]) == Err(TermError::EmptyClauseList),
        || "an empty clause list was built".into(),
    )?;

    let bad = parse_model(shipped::CORRUPTED_MODEL, &s).map_err(|e| e.to_string())?;
    let r = check_intended_semantics(&s, &bad).map_err(|e| e.to_string())?;
    let fail = r.first_failure().ok_or("the corrupted model passed")?;
    let w = fail.witness.as_ref().ok_or("no witness")?;
    Ok(format!(
        "b11 rejects a propagator; empty catch rejected at column {}; corrupted model: {} on {} gives {} vs {}",
        e.col, fail.term, w.input, w.lhs, w.rhs
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 shipped proofs", c1_shipped_proofs),
        ("2 untag laws", c2_untag_laws),
        ("3 rule obligations", c3_rule_obligations),
        ("4 spec expansion", c4_spec_expansion),
        ("5 commutation", c5_commutation),
        ("6 handler differential", c6_differential),
        ("7 soundness fuzz", c7_soundness_fuzz),
        ("8 negative controls", c8_negative_controls),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match out {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
