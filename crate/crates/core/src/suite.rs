//! The reproduction suite: every shipped proof, the rule obligations, the
//! expansion checks, the intended-model check and the handler differential
//! test, each reduced to a one-line verdict.

use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::expand::{expand_all_rules, expand_spec};
use crate::format::{parse_model, parse_proof, parse_spec};
use crate::handler::{build_try_catch, differential_handler_test, DifferentialConfig};
use crate::kernel::{check_derivation, untag_tag, untag_untag, Builder};
use crate::semantics::battery::{parameter_battery, random_models, rng, standard_exceptions, BATTERY_SEED};
use crate::semantics::terms::{term_spec, TermGen};
use crate::semantics::{check_intended_semantics, commutation_witness, counterexample, oracle_holds};
use crate::shipped;
use crate::syntax::{
    Clause, Decoration, DecoratedSpec, Equation, ExceptionDecl, ExplicitOp, ExplicitSpec, Index, Name, ObjType,
    OpDecl, Term,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemVerdict {
    Pass,
    Fail,
}

impl ItemVerdict {
    fn of(ok: bool) -> Self {
        if ok {
            ItemVerdict::Pass
        } else {
            ItemVerdict::Fail
        }
    }
}

/// One line of the report. Field names are stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteItem {
    pub id: String,
    /// The statement or property checked.
    pub anchor: String,
    pub verdict: ItemVerdict,
    pub witness: Option<String>,
    pub detail: String,
}

impl SuiteItem {
    pub fn passed(&self) -> bool {
        self.verdict == ItemVerdict::Pass
    }

    /// `PASS  id  anchor  (detail)`, plus the witness when there is one.
    pub fn line(&self) -> String {
        let v = match self.verdict {
            ItemVerdict::Pass => "PASS",
            ItemVerdict::Fail => "FAIL",
        };
        let mut s = format!("{v}  {:<28} {}  ({})", self.id, self.anchor, self.detail);
        if let Some(w) = &self.witness {
            let _ = write!(s, "  witness: {w}");
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scale {
    Small,
    #[default]
    Full,
}

struct Sizes {
    oracle_max: u32,
    lemma_instances: usize,
    terms: usize,
    differential: DifferentialConfig,
}

impl Scale {
    fn sizes(self) -> Sizes {
        match self {
            Scale::Small => Sizes {
                oracle_max: 2,
                lemma_instances: 50,
                terms: 300,
                differential: DifferentialConfig {
                    max_clauses: 2,
                    ..DifferentialConfig::default()
                },
            },
            Scale::Full => Sizes {
                oracle_max: 3,
                lemma_instances: 200,
                terms: 2000,
                differential: DifferentialConfig::default(),
            },
        }
    }
}

fn item(id: &str, anchor: impl Into<String>, ok: bool, witness: Option<String>, detail: impl Into<String>) -> SuiteItem {
    SuiteItem {
        id: id.to_string(),
        anchor: anchor.into(),
        verdict: ItemVerdict::of(ok),
        witness,
        detail: detail.into(),
    }
}

fn failed(id: &str, anchor: &str, why: impl ToString) -> SuiteItem {
    item(id, anchor, false, Some(why.to_string()), "error")
}

pub fn shipped_spec() -> DecoratedSpec {
    parse_spec(shipped::EXCEPTIONS_SPEC).expect("the shipped specification parses")
}

/// Checks every shipped script in the kernel.
pub fn proof_items(spec: &DecoratedSpec) -> Vec<SuiteItem> {
    shipped::PROOFS
        .iter()
        .map(|(name, text)| {
            let id = format!("proof/{name}");
            let p = match parse_proof(text, spec) {
                Ok(p) => p,
                Err(e) => return failed(&id, name, e),
            };
            let v = check_derivation(&p.derivation, &p.context(spec));
            let witness = v
                .failures()
                .next()
                .map(|n| format!("node `{}` ({}): {}", n.path, n.rule, n.message.clone().unwrap_or_default()));
            item(&id, v.conclusion.clone(), v.accepted, witness, format!("{} nodes", v.nodes.len()))
        })
        .collect()
}

/// Both annihilation/commutation laws of untagging, derived in the kernel
/// and checked by the oracle, for `|I|` in `1..=3` over every parameter
/// battery model.
pub fn untag_items(max: u32) -> Vec<SuiteItem> {
    let mut tag_eqs: Vec<(Equation, usize)> = Vec::new();
    let mut untag_eqs: Vec<(Equation, usize)> = Vec::new();
    let mut kernel_failure = None;
    for n in 1..=3 {
        let params = (1..=n).map(|k| Name::new(&format!("P{k}"))).collect();
        let spec = DecoratedSpec::canonical(params, Vec::new(), standard_exceptions(n));
        let b = Builder::new(&spec);
        let idx: Vec<Index> = spec.indices().cloned().collect();
        let mut record = |d: Result<crate::kernel::Derivation, crate::kernel::RuleError>, out: &mut Vec<(Equation, usize)>| {
            match d {
                Ok(d) => {
                    let v = check_derivation(&d, &spec);
                    if let Some(f) = v.failures().next().filter(|_| kernel_failure.is_none()) {
                        kernel_failure = Some(format!("{}: {}", v.conclusion, f.message.clone().unwrap_or_default()));
                    }
                    if let Some(e) = d.conclusion.equation() {
                        out.push((e.clone(), n));
                    }
                }
                Err(e) => kernel_failure = Some(e.to_string()),
            }
        };
        for i in &idx {
            record(untag_tag(&b, i), &mut tag_eqs);
            for j in idx.iter().filter(|j| *j != i) {
                record(untag_untag(&b, i, j), &mut untag_eqs);
            }
        }
    }
    let check = |id: &str, anchor: &str, eqs: &[(Equation, usize)]| -> SuiteItem {
        let mut models = 0;
        for n in 1..=3 {
            for m in parameter_battery(n, max, &[]) {
                models += 1;
                for (e, _) in eqs.iter().filter(|(_, k)| *k == n) {
                    match counterexample(e, &m) {
                        Ok(None) => {}
                        Ok(Some(w)) => {
                            return item(id, anchor, false, Some(format!("{e}: {} gives {} and {}", w.input, w.lhs, w.rhs)), "oracle")
                        }
                        Err(err) => return failed(id, anchor, err),
                    }
                }
            }
        }
        let kernel = match &kernel_failure {
            None => "derived in the kernel",
            Some(_) => "KERNEL GAP, semantic check only",
        };
        item(
            id,
            anchor,
            true,
            None,
            format!("{kernel}; {} equations, {models} models, carriers 0..={max}", eqs.len()),
        )
    };
    vec![
        check("oracle/untag_tag", "t_i o c_i == id[0]", &tag_eqs),
        check("oracle/untag_untag", "(c_i + id) o c_j == (id + c_j) o c_i", &untag_eqs),
    ]
}

pub fn rule_items() -> Vec<SuiteItem> {
    expand_all_rules()
        .into_iter()
        .map(|o| {
            let ok = o.discharge.passed();
            let witness = match &o.discharge {
                crate::expand::Discharge::Failed { reason } => Some(reason.clone()),
                _ => None,
            };
            item(&format!("rule/{}", o.rule), o.schema, ok, witness, o.discharge.to_string())
        })
        .collect()
}

/// A random pure signature with `1..=max_indices` exception indices.
pub fn random_signature<R: Rng>(r: &mut R, max_indices: usize) -> (Vec<Name>, Vec<OpDecl>, Vec<ExceptionDecl>) {
    let ntypes = r.gen_range(1..=3);
    let types: Vec<Name> = (1..=ntypes).map(|k| Name::new(&format!("T{k}"))).collect();
    let mut pool: Vec<ObjType> = types.iter().cloned().map(ObjType::Base).collect();
    pool.push(ObjType::Zero);
    if ntypes >= 2 {
        pool.push(ObjType::coprod(pool[0].clone(), pool[1].clone()));
    }
    let ops = (0..r.gen_range(0..=4))
        .map(|k| {
            let s = pool.choose(r).expect("types").clone();
            let t = pool.choose(r).expect("types").clone();
            OpDecl::new(&format!("op{k}"), s, t, Decoration::Pure)
        })
        .collect();
    let ex = (1..=r.gen_range(1..=max_indices))
        .map(|k| ExceptionDecl {
            index: Index::new(&k.to_string()),
            param: ObjType::Base(types.choose(r).expect("types").clone()),
        })
        .collect();
    (types, ops, ex)
}

/// The explicit specification built directly from a pure signature.
pub fn direct_explicit(types: &[Name], ops: &[OpDecl], ex: &[ExceptionDecl]) -> ExplicitSpec {
    let ops = ops
        .iter()
        .map(|o| ExplicitOp {
            name: o.name.clone(),
            src: o.src.clone(),
            tgt: o.tgt.clone(),
        })
        .collect();
    ExplicitSpec::direct(types.to_vec(), ops, ex.to_vec())
}

pub fn expansion_items(instances: usize, terms: usize) -> Vec<SuiteItem> {
    let mut out = Vec::new();
    let mut r = rng(BATTERY_SEED);
    let mut mismatch = None;
    for _ in 0..instances {
        let (types, ops, ex) = random_signature(&mut r, 4);
        let s = DecoratedSpec::canonical(types.clone(), ops.clone(), ex.clone());
        if expand_spec(&s) != direct_explicit(&types, &ops, &ex) {
            mismatch = Some(crate::format::print_spec(&s));
            break;
        }
    }
    out.push(item(
        "expansion/spec",
        "expand_spec(S) == explicit spec built directly",
        mismatch.is_none(),
        mismatch,
        format!("{instances} generated signatures, |I| <= 4"),
    ));

    let spec = term_spec();
    let gen = TermGen::new(&spec);
    let models = random_models(&spec, 20, 2, BATTERY_SEED);
    let mut witness = None;
    for k in 0..terms {
        let t = gen.any(&mut r, 5);
        let m = &models[k % models.len()];
        match commutation_witness(&t, m) {
            Ok(None) => {}
            Ok(Some(w)) => {
                witness = Some(format!("{t} on {}: {} vs {}", w.input, w.lhs, w.rhs));
                break;
            }
            Err(e) => {
                witness = Some(e.to_string());
                break;
            }
        }
    }
    out.push(item(
        "expansion/commutation",
        "decorated evaluation == explicit evaluation of the expansion",
        witness.is_none(),
        witness,
        format!("{terms} terms of depth <= 5 over {} models", models.len()),
    ));
    out
}

pub fn intended_items(spec: &DecoratedSpec) -> Vec<SuiteItem> {
    let mut out = Vec::new();
    let anchor = "intended model agrees with the expansion";
    match parse_model(shipped::SMALL_MODEL, spec).map_err(|e| e.to_string()).and_then(|m| {
        check_intended_semantics(spec, &m).map_err(|e| e.to_string())
    }) {
        Ok(r) => {
            let w = r.first_failure().map(|f| format!("{}: {:?}", f.term, f.witness));
            out.push(item("intended/small", anchor, r.passed(), w, format!("{} items", r.items.len())));
        }
        Err(e) => out.push(failed("intended/small", anchor, e)),
    }
    let anchor = "a corrupted untag is detected";
    match parse_model(shipped::CORRUPTED_MODEL, spec).map_err(|e| e.to_string()).and_then(|m| {
        check_intended_semantics(spec, &m).map_err(|e| e.to_string())
    }) {
        Ok(r) => {
            let f = r.first_failure();
            let w = f.and_then(|f| {
                f.witness
                    .as_ref()
                    .map(|w| format!("{} on {}: {} vs {}", f.term, w.input, w.lhs, w.rhs))
            });
            out.push(item("intended/corrupted", anchor, w.is_some(), w, "negative control"));
        }
        Err(e) => out.push(failed("intended/corrupted", anchor, e)),
    }
    match parse_model(shipped::SMALL_MODEL, spec) {
        Ok(m) => {
            let i = Index::new("1");
            let diag = spec.diagonal_axiom(&i).expect("index 1 is declared");
            let strong = Equation::strong(diag.lhs.clone(), diag.rhs.clone()).expect("parallel sides");
            let weak_ok = oracle_holds(&diag, &m).unwrap_or(false);
            let w = counterexample(&strong, &m).ok().flatten();
            let witness = w.map(|w| format!("{strong} on {}: {} vs {}", w.input, w.lhs, w.rhs));
            out.push(item(
                "strength/untag_after_tag",
                format!("{diag} holds, {strong} fails"),
                weak_ok && witness.is_some(),
                witness,
                "weak and strong equations differ",
            ));
        }
        Err(e) => out.push(failed("strength/untag_after_tag", "weak and strong differ", e)),
    }
    out
}

pub fn handler_items(cfg: &DifferentialConfig) -> Vec<SuiteItem> {
    let mut out = Vec::new();
    let anchor = "try/catch agrees with the operational reference";
    match differential_handler_test(cfg) {
        Ok(r) => {
            let w = r.divergence.as_ref().map(|d| format!("{d:?}"));
            out.push(item(
                "handler/differential",
                anchor,
                r.passed(),
                w,
                format!("{} models, {} handlers, {} evaluations", r.models, r.handlers, r.evaluations),
            ));
        }
        Err(e) => out.push(failed("handler/differential", anchor, e)),
    }
    let anchor = "a handler that swallows uncaught exceptions is detected";
    let bad = DifferentialConfig {
        corrupted: true,
        ..cfg.clone()
    };
    match differential_handler_test(&bad) {
        Ok(r) => {
            let w = r
                .divergence
                .as_ref()
                .map(|d| format!("clauses {:?} on {}: reference {} vs built {}", d.clauses, d.input, d.reference, d.decorated));
            out.push(item("handler/corrupted", anchor, w.is_some(), w, "negative control"));
        }
        Err(e) => out.push(failed("handler/corrupted", anchor, e)),
    }
    out
}

/// Runs every item in a fixed order.
pub fn run_suite(scale: Scale) -> Vec<SuiteItem> {
    let sizes = scale.sizes();
    let spec = shipped_spec();
    let mut out = proof_items(&spec);
    out.extend(untag_items(sizes.oracle_max));
    out.extend(rule_items());
    out.extend(expansion_items(sizes.lemma_instances, sizes.terms));
    out.extend(intended_items(&spec));
    out.extend(handler_items(&sizes.differential));
    out
}

/// Unfoldings of `try f catch(...)` with one and two clauses, and the
/// differential summary.
pub fn demo_exceptions(scale: Scale) -> Result<String, String> {
    let spec = shipped_spec();
    let (x, y) = (ObjType::base("X"), ObjType::base("Y"));
    let f = Term::gen("f", x, y.clone(), Decoration::Ppg).map_err(|e| e.to_string())?;
    let body = |name: &str, p: &str| Term::gen(name, ObjType::base(p), y.clone(), Decoration::Ppg);
    let one = vec![Clause {
        index: Index::new("1"),
        body: body("g1", "P1").map_err(|e| e.to_string())?,
    }];
    let two = vec![
        one[0].clone(),
        Clause {
            index: Index::new("2"),
            body: body("g2", "P2").map_err(|e| e.to_string())?,
        },
    ];
    let mut out = String::new();
    for clauses in [one, two] {
        let t = Term::try_catch(f.clone(), clauses.clone()).map_err(|e| e.to_string())?;
        let h = build_try_catch(&spec, &f, &clauses).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "{t}");
        let _ = writeln!(out, "  = {}", h.handler);
    }
    let cfg = scale.sizes().differential;
    let r = differential_handler_test(&cfg).map_err(|e| e.to_string())?;
    let _ = writeln!(
        out,
        "differential test: {} models, {} handlers, {} evaluations, {}",
        r.models,
        r.handlers,
        r.evaluations,
        if r.passed() { "no divergence" } else { "DIVERGENCE" }
    );
    if let Some(d) = &r.divergence {
        let _ = writeln!(out, "  {d:?}");
    }
    Ok(out)
}
