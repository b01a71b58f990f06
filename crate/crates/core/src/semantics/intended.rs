//! Agreement of the decorated semantics with the explicit semantics of the
//! expansion, in the intended model of exceptions.

use rand::Rng;
use serde::Serialize;

use super::battery::{random_table, rng, table_at, table_count, BATTERY_SEED};
use super::eval::{eval_decorated, eval_explicit};
use super::model::{EvalError, FiniteModel, Value};
use super::oracle::Witness;
use crate::expand::expand_term;
use crate::syntax::{Clause, Decoration, DecoratedSpec, Term};

/// Compares `t` read in `m` with its expansion read in the intended model
/// with the same carriers and tables. Returns the first differing input.
pub fn commutation_witness(t: &Term, m: &FiniteModel) -> Result<Option<Witness>, EvalError> {
    let reference = m.intended();
    let e = expand_term(t);
    for v in m.values(t.src())? {
        let d = eval_decorated(t, m, v)?;
        let x = eval_explicit(&e, &reference, v)?;
        if d != x {
            return Ok(Some(Witness {
                input: m.show(t.src(), v),
                lhs: m.show(t.tgt(), d),
                rhs: m.show(t.tgt(), x),
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntendedItem {
    pub term: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntendedReport {
    pub items: Vec<IntendedItem>,
    /// Number of try-catch instances checked.
    pub handlers_checked: usize,
}

impl IntendedReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn first_failure(&self) -> Option<&IntendedItem> {
        self.items.iter().find(|i| !i.passed)
    }
}

const TRY_F: &str = "try_f";
const TRY_G: [&str; 2] = ["try_g1", "try_g2"];
/// Propagator tables per type pair beyond which the block of a try is
/// sampled rather than enumerated.
const ENUM_CAP: u64 = 64;
const BODY_SAMPLES: usize = 4;

/// Checks that decorated evaluation in `m` agrees with explicit evaluation
/// of the expansion, for every operation of `s`, every tag and untag, every
/// `throw_{i,Y}` and a battery of try-catch handlers over the pure types.
pub fn check_intended_semantics(s: &DecoratedSpec, m: &FiniteModel) -> Result<IntendedReport, EvalError> {
    let mut report = IntendedReport::default();
    let record = |report: &mut IntendedReport, t: &Term, m: &FiniteModel| -> Result<bool, EvalError> {
        let w = commutation_witness(t, m)?;
        let passed = w.is_none();
        report.items.push(IntendedItem {
            term: t.to_string(),
            passed,
            witness: w,
        });
        Ok(passed)
    };

    for op in s.plain_ops() {
        record(&mut report, &op.term().map_err(|e| EvalError::UnknownType(e.to_string()))?, m)?;
    }
    for e in &s.exceptions {
        record(&mut report, &Term::tag(e.index.clone(), e.param.clone()), m)?;
        record(&mut report, &Term::untag(e.index.clone(), e.param.clone()), m)?;
    }
    let types = s.pure_types();
    for e in &s.exceptions {
        for y in &types {
            let t = Term::throw(e.index.clone(), e.param.clone(), y.clone())
                .expect("pure types carry no exceptions");
            record(&mut report, &t, m)?;
        }
    }

    let mut r = rng(BATTERY_SEED);
    let mut work = m.clone();
    let ne = m.exc_size();
    let lists = index_lists(s, 2);
    let mut handler_fail: Option<IntendedItem> = None;
    for x in &types {
        for y in &types {
            let (nx, ny) = (work.size(x)?, work.size(y)?);
            let f = Term::gen(TRY_F, x.clone(), y.clone(), Decoration::Ppg).expect("pure types");
            let Some(count) = table_count(Decoration::Ppg, nx, ny, ne) else {
                continue;
            };
            if nx > 0 && ny + ne == 0 {
                continue;
            }
            let tables: Vec<u64> = if count <= ENUM_CAP {
                (0..count).collect()
            } else {
                (0..ENUM_CAP).map(|_| r.gen_range(0..count)).collect()
            };
            for k in tables {
                work.set_gen(TRY_F, table_at(Decoration::Ppg, nx, ny, ne, k));
                for list in &lists {
                    let mut clauses = Vec::new();
                    let mut feasible = true;
                    for (p, i) in list.iter().enumerate() {
                        let param = s.param(i).expect("listed indices are declared").clone();
                        let np = work.size(&param)?;
                        if np > 0 && ny + ne == 0 {
                            feasible = false;
                        }
                        clauses.push(Clause {
                            index: i.clone(),
                            body: Term::gen(TRY_G[p], param, y.clone(), Decoration::Ppg)
                                .expect("pure types"),
                        });
                    }
                    if !feasible {
                        continue;
                    }
                    let t = Term::try_catch(f.clone(), clauses.clone()).expect("propagators");
                    for _ in 0..BODY_SAMPLES {
                        for c in &clauses {
                            let np = work.size(c.body.src())?;
                            let table = random_table(&mut r, Decoration::Ppg, np, ny, ne);
                            if let crate::syntax::TermKind::Gen(n) = c.body.kind() {
                                work.set_gen(n.as_str(), table);
                            }
                        }
                        report.handlers_checked += 1;
                        if handler_fail.is_none() {
                            if let Some(w) = commutation_witness(&t, &work)? {
                                handler_fail = Some(IntendedItem {
                                    term: t.to_string(),
                                    passed: false,
                                    witness: Some(w),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    report.items.push(handler_fail.unwrap_or(IntendedItem {
        term: "try-catch battery".into(),
        passed: true,
        witness: None,
    }));
    Ok(report)
}

/// All index lists of length `1..=max_len` over the indices of `s`.
pub fn index_lists(s: &DecoratedSpec, max_len: usize) -> Vec<Vec<crate::syntax::Index>> {
    let idx: Vec<_> = s.indices().cloned().collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<crate::syntax::Index>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for l in &layer {
            for i in &idx {
                let mut l2 = l.clone();
                l2.push(i.clone());
                next.push(l2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A copy of `m` whose untag of the first index sends every exception to
/// the first ordinary parameter value. `None` when that parameter carrier is
/// empty. Used as a negative control.
pub fn corrupt_first_untag(m: &FiniteModel) -> Option<FiniteModel> {
    let e = m.exceptions().first()?;
    let np = m.size(&e.param).ok()?;
    if np == 0 {
        return None;
    }
    let table = (0..m.exc_size()).map(|_| Value::Ordinary(0)).collect();
    let mut c = m.clone();
    c.override_untag(&e.index.clone(), table);
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::battery::{parameter_battery, standard_exceptions};
    use crate::syntax::Name;

    fn spec() -> DecoratedSpec {
        DecoratedSpec::canonical(
            vec![Name::new("P1"), Name::new("P2")],
            vec![],
            standard_exceptions(2),
        )
    }

    #[test]
    fn random_terms_commute_with_expansion() {
        let spec = crate::semantics::terms::term_spec();
        let gen = crate::semantics::terms::TermGen::new(&spec);
        let models = crate::semantics::battery::random_models(&spec, 20, 2, 3);
        let mut r = crate::semantics::battery::rng(11);
        for n in 0..400 {
            let t = gen.any(&mut r, 5);
            let m = &models[n % models.len()];
            assert_eq!(commutation_witness(&t, m).unwrap(), None, "{t:?}");
        }
    }

    #[test]
    fn intended_models_pass() {
        for m in parameter_battery(2, 2, &[]) {
            let r = check_intended_semantics(&spec(), &m).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn corrupted_untag_fails_with_witness() {
        let m = &parameter_battery(2, 2, &[])[8];
        let bad = corrupt_first_untag(m).unwrap();
        let r = check_intended_semantics(&spec(), &bad).unwrap();
        let fail = r.first_failure().unwrap();
        assert!(fail.witness.is_some());
    }
}
