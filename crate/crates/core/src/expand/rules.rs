//! Soundness of the decorated rules, one rule at a time.
//!
//! Each rule is instantiated schematically: metavariables become fresh
//! generators at the decoration the rule requires, and at `ctc` where the
//! rule accepts any decoration. Premises and conclusion are expanded into
//! explicit obligations, which are then discharged by normalization, by
//! rewriting with the premise equations, or on a finite model battery.

use std::fmt;

use serde::Serialize;

use super::normalize::{factors, normalize, rebuild};
use super::translate::{expand_equation, expand_term, pure_view};
use crate::kernel::{apply_rule, Binding, Family, Judgment, RuleId, Subst};
use crate::semantics::battery::{rng, size_assignments, standard_exceptions, table_at, table_count, random_table, BATTERY_SEED};
use crate::semantics::{eval_explicit, explicit_counterexample, EvalError, FiniteModel, Value};
use crate::syntax::{
    Decoration, DecoratedSpec, Equation, ExceptionDecl, ExplKind, ExplicitEquation, ExplicitTerm, Name,
    ObjType, OpDecl, Term, TermError,
};

/// Largest carrier in the semantic battery.
pub const BATTERY_MAX_SIZE: u32 = 3;
/// Index set sizes in the semantic battery.
pub const BATTERY_INDEX_SIZES: [usize; 2] = [1, 2];
/// Size assignments with at most this many table combinations are
/// enumerated exhaustively; larger ones are sampled.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 12;
pub const SAMPLES_PER_ASSIGNMENT: u64 = 1 << 10;
/// Bumped whenever the battery above changes.
pub const BATTERY_VERSION: u32 = 1;

/// One explicit proof obligation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obligation {
    Eq(ExplicitEquation),
    /// `term : X -> Y + E` maps every ordinary value to an ordinary value.
    /// `view` is the candidate factorization through `in_Y`.
    Ordinary {
        term: ExplicitTerm,
        view: Option<ExplicitTerm>,
    },
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obligation::Eq(e) => write!(f, "{e}"),
            Obligation::Ordinary { term, .. } => write!(f, "{term} factors through in[{}]", ordinary_tgt(term)),
        }
    }
}

fn ordinary_tgt(t: &ExplicitTerm) -> ObjType {
    crate::semantics::split_exc(t.tgt()).0
}

fn ecomp(g: ExplicitTerm, f: ExplicitTerm) -> ExplicitTerm {
    ExplicitTerm::comp(g, f).expect("obligations compose")
}

/// The explicit obligations of a judgment. Types and catcher declarations
/// carry none.
pub fn obligations(j: &Judgment) -> Vec<Obligation> {
    match j {
        Judgment::Type(_) | Judgment::Decl { deco: Decoration::Ctc, .. } => Vec::new(),
        Judgment::Decl { term, deco } => {
            let (x, y) = (term.src().clone(), term.tgt().clone());
            let e = expand_term(term);
            let ppg = ExplicitEquation::new(
                normalize(&ecomp(e.clone(), ExplicitTerm::ina(x.clone()))),
                ExplicitTerm::ina(y),
            )
            .expect("both sides E -> Y + E");
            let mut out = vec![Obligation::Eq(ppg)];
            if *deco == Decoration::Pure {
                out.push(Obligation::Ordinary {
                    term: normalize(&ecomp(e, ExplicitTerm::inj(x))),
                    view: pure_view(term).map(|v| normalize(&v)),
                });
            }
            out
        }
        Judgment::Eq(e) => vec![Obligation::Eq(expand_equation(e))],
    }
}

fn closed(o: &Obligation) -> bool {
    match o {
        Obligation::Eq(e) => e.lhs == e.rhs,
        Obligation::Ordinary { term, view } => view
            .as_ref()
            .is_some_and(|v| *term == normalize(&ecomp(ExplicitTerm::inj(ordinary_tgt(term)), v.clone()))),
    }
}

type Rewrite = (Vec<ExplicitTerm>, ExplicitTerm);

fn rewrite(t: &ExplicitTerm, rules: &[Rewrite]) -> Option<ExplicitTerm> {
    let fs = factors(t);
    for (lhs, rhs) in rules {
        let n = lhs.len();
        for k in 0..(fs.len() + 1).saturating_sub(n) {
            if fs[k..k + n] == lhs[..] {
                let mut out = fs[..k].to_vec();
                out.extend(factors(rhs));
                out.extend_from_slice(&fs[k + n..]);
                return Some(rebuild(out));
            }
        }
    }
    for (pos, f) in fs.iter().enumerate() {
        if let Some(r) = rewrite_inside(f, rules) {
            let mut out = fs.clone();
            out[pos] = r;
            return Some(rebuild(out));
        }
    }
    None
}

fn rewrite_inside(t: &ExplicitTerm, rules: &[Rewrite]) -> Option<ExplicitTerm> {
    match t.kind() {
        ExplKind::Cotuple(a, b) => match rewrite(a, rules) {
            Some(r) => ExplicitTerm::cotuple(r, (**b).clone()).ok(),
            None => ExplicitTerm::cotuple((**a).clone(), rewrite(b, rules)?).ok(),
        },
        ExplKind::Case(a, b) => match rewrite(a, rules) {
            Some(r) => ExplicitTerm::case(r, (**b).clone()).ok(),
            None => ExplicitTerm::case((**a).clone(), rewrite(b, rules)?).ok(),
        },
        ExplKind::ExcCase(bs) => {
            for (k, (_, b)) in bs.iter().enumerate() {
                if let Some(r) = rewrite(b, rules) {
                    let mut bs = bs.clone();
                    bs[k].1 = r;
                    return ExplicitTerm::exc_case(bs, t.tgt().clone()).ok();
                }
            }
            None
        }
        _ => None,
    }
}

const REWRITE_STEPS: usize = 32;

/// Whether `e` closes after rewriting both sides with `rules`.
fn closes_by_rewriting(e: &ExplicitEquation, rules: &[Rewrite]) -> bool {
    let (mut l, mut r) = (e.lhs.clone(), e.rhs.clone());
    for _ in 0..REWRITE_STEPS {
        if l == r {
            return true;
        }
        if let Some(n) = rewrite(&l, rules) {
            l = normalize(&n);
        } else if let Some(n) = rewrite(&r, rules) {
            r = normalize(&n);
        } else {
            return false;
        }
    }
    l == r
}

fn premise_rewrites(premises: &[Obligation], backwards: bool) -> Vec<Rewrite> {
    premises
        .iter()
        .filter_map(|o| match o {
            Obligation::Eq(e) if e.lhs != e.rhs => Some(if backwards {
                (factors(&e.rhs), e.lhs.clone())
            } else {
                (factors(&e.lhs), e.rhs.clone())
            }),
            _ => None,
        })
        .collect()
}

fn closed_by_premises(o: &Obligation, premises: &[Obligation]) -> bool {
    let Obligation::Eq(e) = o else {
        return false;
    };
    [false, true]
        .iter()
        .any(|&back| closes_by_rewriting(e, &premise_rewrites(premises, back)))
}

/// A schematic instance of one rule.
#[derive(Clone, Debug)]
pub struct RuleInstance {
    pub spec: DecoratedSpec,
    pub subst: Subst,
    pub premises: Vec<Judgment>,
    pub conclusion: Judgment,
}

impl RuleInstance {
    pub fn premise_obligations(&self) -> Vec<Obligation> {
        self.premises.iter().flat_map(obligations).collect()
    }

    pub fn conclusion_obligations(&self) -> Vec<Obligation> {
        obligations(&self.conclusion)
    }
}

#[derive(Default)]
struct Gens {
    ops: Vec<OpDecl>,
}

impl Gens {
    fn gen(&mut self, name: &str, src: &ObjType, tgt: &ObjType, deco: Decoration) -> Result<Term, TermError> {
        self.ops.push(OpDecl::new(name, src.clone(), tgt.clone(), deco));
        Term::gen(name, src.clone(), tgt.clone(), deco)
    }
}

fn decl(t: &Term) -> Judgment {
    Judgment::decl(t.clone(), t.deco())
}

fn eq(l: Term, r: Term, weak: bool) -> Result<Judgment, TermError> {
    Ok(Judgment::Eq(if weak {
        Equation::weak(l, r)?
    } else {
        Equation::strong(l, r)?
    }))
}

fn comp(g: &Term, f: &Term) -> Result<Term, TermError> {
    Term::comp(g.clone(), f.clone())
}

/// Schematic premises of `rule` over the exception indices `ex`, with the
/// rule applied to obtain the conclusion.
pub fn rule_instance(rule: RuleId, ex: &[ExceptionDecl]) -> Result<RuleInstance, String> {
    use Decoration::{Ctc, Ppg, Pure};
    use Family::*;
    let (x, y, z, w) = (ObjType::base("X"), ObjType::base("Y"), ObjType::base("Z"), ObjType::base("W"));
    let mut g = Gens::default();
    let mut subst: Subst = Vec::new();
    let weak = rule.family == B;
    let premises = (|| -> Result<Vec<Judgment>, TermError> {
        Ok(match (rule.family, rule.member) {
            (A, 1) => {
                let f = g.gen("f", &x, &y, Ctc)?;
                let h = g.gen("g", &y, &z, Ctc)?;
                vec![decl(&f), decl(&h)]
            }
            (A, 2) | (B, 3) | (D, 1) | (D, 2) => vec![Judgment::Type(x.clone())],
            (A, 3) => {
                let f = g.gen("f", &x, &y, Ctc)?;
                let gg = g.gen("g", &y, &z, Ctc)?;
                let h = g.gen("h", &z, &w, Ctc)?;
                vec![decl(&f), decl(&gg), decl(&h)]
            }
            (A, 4) | (A, 5) | (A, 6) | (B, 8) => vec![decl(&g.gen("f", &x, &y, Ctc)?)],
            (A, 7) | (B, 9) | (B, 7) => {
                let f = g.gen("f", &x, &y, Ctc)?;
                let h = g.gen("g", &x, &y, Ctc)?;
                vec![eq(f, h, rule == RuleId::new(B, 9))?]
            }
            (A, 8) | (B, 10) => {
                let f = g.gen("f", &x, &y, Ctc)?;
                let gg = g.gen("g", &x, &y, Ctc)?;
                let h = g.gen("h", &x, &y, Ctc)?;
                vec![eq(f, gg.clone(), weak)?, eq(gg, h, weak)?]
            }
            (A, 9) | (B, 11) => {
                let f = g.gen("f", &x, &y, if weak { Pure } else { Ctc })?;
                let g1 = g.gen("g1", &y, &z, Ctc)?;
                let g2 = g.gen("g2", &y, &z, Ctc)?;
                vec![decl(&f), eq(g1, g2, weak)?]
            }
            (A, 10) | (B, 12) => {
                let f1 = g.gen("f1", &x, &y, Ctc)?;
                let f2 = g.gen("f2", &x, &y, Ctc)?;
                let h = g.gen("g", &y, &z, Ctc)?;
                vec![eq(f1, f2, weak)?, decl(&h)]
            }
            (B, 1) => vec![decl(&g.gen("f", &x, &y, Pure)?)],
            (B, 2) => vec![decl(&g.gen("f", &x, &y, Ppg)?)],
            (B, 4) | (B, 5) => {
                let d = if rule.member == 4 { Pure } else { Ppg };
                let f = g.gen("f", &x, &y, d)?;
                let h = g.gen("g", &y, &z, d)?;
                vec![decl(&f), decl(&h)]
            }
            (B, 6) => {
                let f = g.gen("f", &x, &y, Ppg)?;
                let h = g.gen("g", &x, &y, Ppg)?;
                vec![eq(f.clone(), h.clone(), true)?, decl(&f), decl(&h)]
            }
            (C, _) => vec![decl(&g.gen("k", &x, &y, Ctc)?)],
            (D, 3) => vec![decl(&g.gen("f", &ObjType::Zero, &y, Ctc)?)],
            (E, m) => {
                let gg = g.gen("g", &x, &y, Ppg)?;
                let k = g.gen("k", &ObjType::Zero, &y, Ctc)?;
                let mut out = vec![decl(&gg), decl(&k)];
                if m == 4 {
                    let f = g.gen("f", &x, &y, Ctc)?;
                    out.push(decl(&f));
                    out.push(eq(f.clone(), gg, true)?);
                    out.push(eq(comp(&f, &Term::empty(x.clone()))?, k, false)?);
                }
                out
            }
            (F, m) => {
                let mut fs = Vec::new();
                for e in ex {
                    fs.push(g.gen(&format!("f_{}", e.index), &e.param, &y, Ppg)?);
                }
                let mut out: Vec<Judgment> = fs.iter().map(decl).collect();
                if m == 2 {
                    let last = ex.last().expect("a non-empty index set");
                    subst.push(("i".to_string(), Binding::Index(last.index.clone())));
                }
                if m == 3 {
                    let f = g.gen("f", &ObjType::Zero, &y, Ctc)?;
                    out.push(decl(&f));
                    for (e, fi) in ex.iter().zip(fs) {
                        out.push(eq(comp(&f, &Term::tag(e.index.clone(), e.param.clone()))?, fi, true)?);
                    }
                }
                out
            }
            (Sp, 1) | (Sp, 2) => vec![Judgment::Type(x.clone()), Judgment::Type(y.clone())],
            (Sp, 7) => {
                let f = g.gen("f", &x, &z, Ppg)?;
                let h = g.gen("g", &y, &z, Ppg)?;
                vec![decl(&f), decl(&h)]
            }
            (Sp, m) => {
                let f = g.gen("f", &x, &z, Ppg)?;
                let k = g.gen("k", &y, &z, Ctc)?;
                let mut out = vec![decl(&f), decl(&k)];
                if m == 6 {
                    let h = g.gen("h", &ObjType::coprod(x.clone(), y.clone()), &z, Ctc)?;
                    out.push(decl(&h));
                    out.push(eq(comp(&h, &Term::copi1(x.clone(), y.clone())?)?, f, true)?);
                    out.push(eq(comp(&h, &Term::copi2(x.clone(), y.clone())?)?, k, false)?);
                }
                out
            }
            _ => Vec::new(),
        })
    })()
    .map_err(|e| format!("{rule}: {e}"))?;
    let mut types: Vec<Name> = ["X", "Y", "Z", "W"].iter().map(|n| Name::new(n)).collect();
    types.extend(ex.iter().flat_map(|e| {
        let mut v = Vec::new();
        e.param.base_names(&mut v);
        v
    }));
    let spec = DecoratedSpec::canonical(types, g.ops, ex.to_vec());
    let conclusion = apply_rule(&spec, rule, &subst, &premises).map_err(|e| format!("{rule}: {e}"))?;
    Ok(RuleInstance {
        spec,
        subst,
        premises,
        conclusion,
    })
}

/// How a rule's obligations were discharged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Discharge {
    /// The conclusion holds after normalization alone.
    Normalization,
    /// The conclusion closes after rewriting with the premise equations.
    PremiseRewriting,
    /// The conclusion holds in every battery model satisfying the premises.
    /// `instances` counts those models.
    Battery { models: u64, instances: u64 },
    Failed { reason: String },
}

impl Discharge {
    pub fn is_syntactic(&self) -> bool {
        matches!(self, Discharge::Normalization | Discharge::PremiseRewriting)
    }

    pub fn passed(&self) -> bool {
        !matches!(self, Discharge::Failed { .. })
    }
}

impl fmt::Display for Discharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discharge::Normalization => write!(f, "syntactic (normalization)"),
            Discharge::PremiseRewriting => write!(f, "syntactic (rewriting with premises)"),
            Discharge::Battery { models, instances } => {
                write!(f, "semantic ({instances} of {models} battery models satisfy the premises)")
            }
            Discharge::Failed { reason } => write!(f, "failed: {reason}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleObligation {
    pub rule: String,
    pub schema: &'static str,
    /// Premise obligations of the instance over two indices.
    pub premises: Vec<String>,
    pub conclusion: Vec<String>,
    pub discharge: Discharge,
}

fn holds(o: &Obligation, m: &FiniteModel) -> Result<Option<String>, EvalError> {
    match o {
        Obligation::Eq(e) => Ok(explicit_counterexample(e, m)?
            .map(|w| format!("on {} the sides give {} and {}", w.input, w.lhs, w.rhs))),
        Obligation::Ordinary { term, .. } => {
            for a in 0..m.size(term.src())? {
                let v = eval_explicit(term, m, Value::Ordinary(a))?;
                if let Value::Exceptional(_) = v {
                    return Ok(Some(format!(
                        "{} is sent to {}",
                        m.label(term.src(), a),
                        m.show(term.tgt(), v)
                    )));
                }
            }
            Ok(None)
        }
    }
}

fn describe(m: &FiniteModel) -> String {
    let sizes: Vec<String> = m.carriers().iter().map(|(n, c)| format!("|{n}|={}", c.len())).collect();
    sizes.join(" ")
}

/// Runs the battery on one instance; returns `(models, instances)` or the
/// first failure.
fn battery(inst: &RuleInstance, ex: &[ExceptionDecl]) -> Result<(u64, u64), String> {
    let ops: Vec<&OpDecl> = inst.spec.plain_ops().collect();
    let mut names: Vec<Name> = Vec::new();
    for o in &ops {
        o.src.base_names(&mut names);
        o.tgt.base_names(&mut names);
    }
    for e in ex {
        e.param.base_names(&mut names);
    }
    let mut seen = Vec::new();
    names.retain(|n| {
        let fresh = !seen.contains(n);
        seen.push(n.clone());
        fresh
    });
    let prem = inst.premise_obligations();
    let concl = inst.conclusion_obligations();
    let mut r = rng(BATTERY_SEED);
    let (mut models, mut instances) = (0u64, 0u64);
    for sizes in size_assignments(&names, BATTERY_MAX_SIZE) {
        let mut m = FiniteModel::with_sizes(&sizes, ex.to_vec()).map_err(|e| e.to_string())?;
        let ne = m.exc_size();
        let mut dims = Vec::with_capacity(ops.len());
        for o in &ops {
            let nx = m.size(&o.src).map_err(|e| e.to_string())?;
            let ny = m.size(&o.tgt).map_err(|e| e.to_string())?;
            dims.push((o.deco, nx, ny, table_count(o.deco, nx, ny, ne)));
        }
        let total = dims
            .iter()
            .try_fold(1u64, |acc, d| d.3.and_then(|c| acc.checked_mul(c)));
        let exhaustive = total.is_some_and(|t| t <= EXHAUSTIVE_LIMIT);
        let rounds = if exhaustive { total.unwrap_or(0) } else { SAMPLES_PER_ASSIGNMENT };
        for k in 0..rounds {
            let mut code = k;
            for (o, &(deco, nx, ny, count)) in ops.iter().zip(&dims) {
                let table = if exhaustive {
                    let c = count.unwrap_or(1);
                    let t = table_at(deco, nx, ny, ne, code % c);
                    code /= c;
                    t
                } else {
                    random_table(&mut r, deco, nx, ny, ne)
                };
                m.set_gen(o.name.as_str(), table);
            }
            models += 1;
            let mut sat = true;
            for o in &prem {
                if holds(o, &m).map_err(|e| e.to_string())?.is_some() {
                    sat = false;
                    break;
                }
            }
            if !sat {
                continue;
            }
            instances += 1;
            for o in &concl {
                if let Some(w) = holds(o, &m).map_err(|e| e.to_string())? {
                    return Err(format!("{o} fails in the model {}: {w}", describe(&m)));
                }
            }
        }
    }
    Ok((models, instances))
}

/// Expands `rule` into explicit obligations and discharges them.
pub fn expand_rule(rule: RuleId) -> RuleObligation {
    let mut instances = Vec::new();
    for n in BATTERY_INDEX_SIZES {
        let ex = standard_exceptions(n);
        match rule_instance(rule, &ex) {
            Ok(i) => instances.push((ex, i)),
            Err(reason) => {
                return RuleObligation {
                    rule: rule.to_string(),
                    schema: rule.schema(),
                    premises: Vec::new(),
                    conclusion: Vec::new(),
                    discharge: Discharge::Failed { reason },
                }
            }
        }
    }
    let shown = &instances.last().expect("two index sizes").1;
    let premises = shown.premise_obligations().iter().map(ToString::to_string).collect();
    let conclusion = shown.conclusion_obligations().iter().map(ToString::to_string).collect();
    let by_normalization = instances
        .iter()
        .all(|(_, i)| i.conclusion_obligations().iter().all(closed));
    let by_rewriting = instances.iter().all(|(_, i)| {
        let prem = i.premise_obligations();
        i.conclusion_obligations()
            .iter()
            .all(|o| closed(o) || closed_by_premises(o, &prem))
    });
    let discharge = if by_normalization {
        Discharge::Normalization
    } else if by_rewriting {
        Discharge::PremiseRewriting
    } else {
        let mut total = (0, 0);
        let mut failure = None;
        for (ex, i) in &instances {
            match battery(i, ex) {
                Ok((m, k)) => {
                    total.0 += m;
                    total.1 += k;
                }
                Err(reason) => {
                    failure = Some(reason);
                    break;
                }
            }
        }
        match failure {
            Some(reason) => Discharge::Failed { reason },
            None if total.1 == 0 => Discharge::Failed {
                reason: "no battery model satisfies the premises".into(),
            },
            None => Discharge::Battery {
                models: total.0,
                instances: total.1,
            },
        }
    };
    RuleObligation {
        rule: rule.to_string(),
        schema: rule.schema(),
        premises,
        conclusion,
        discharge,
    }
}

/// [`expand_rule`] for every rule, in rule order.
pub fn expand_all_rules() -> Vec<RuleObligation> {
    RuleId::all().into_iter().map(expand_rule).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(s: &str) -> RuleId {
        s.parse().unwrap()
    }

    #[test]
    fn every_rule_has_an_instance() {
        for r in RuleId::all() {
            for n in BATTERY_INDEX_SIZES {
                rule_instance(r, &standard_exceptions(n)).unwrap();
            }
        }
    }

    #[test]
    fn associativity_normalizes() {
        assert_eq!(expand_rule(rule("a3")).discharge, Discharge::Normalization);
    }

    #[test]
    fn transitivity_needs_the_premises() {
        assert_eq!(expand_rule(rule("a8")).discharge, Discharge::PremiseRewriting);
        assert_eq!(expand_rule(rule("b10")).discharge, Discharge::PremiseRewriting);
    }

    #[test]
    fn pure_composition_factors_through_in() {
        let o = expand_rule(rule("b4"));
        assert_eq!(o.discharge, Discharge::Normalization);
        assert_eq!(o.conclusion.len(), 2);
    }

    #[test]
    fn unsound_rule_fails_on_the_battery() {
        // f ~ g |- f == g for catchers is not sound.
        let ex = standard_exceptions(1);
        let mut g = Gens::default();
        let x = ObjType::base("X");
        let f = g.gen("f", &x, &x, Decoration::Ctc).unwrap();
        let h = g.gen("g", &x, &x, Decoration::Ctc).unwrap();
        let spec = DecoratedSpec::canonical(vec![Name::new("X"), Name::new("P1")], g.ops, ex.clone());
        let inst = RuleInstance {
            spec,
            subst: Vec::new(),
            premises: vec![eq(f.clone(), h.clone(), true).unwrap()],
            conclusion: eq(f, h, false).unwrap(),
        };
        let e = battery(&inst, &ex).unwrap_err();
        assert!(e.contains("fails in the model"), "{e}");
    }
}
