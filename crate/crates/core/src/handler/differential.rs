//! Differential test of the try/catch construction against the operational
//! reference, over every small model, every index list and every table.

use serde::Serialize;

use super::build::{build_corrupted_try_catch, build_try_catch, build_try_catch_explicit};
use super::reference::{java_reference_eval, RefClause};
use crate::semantics::battery::{size_assignments, table_at, table_count};
use crate::semantics::{eval_decorated, eval_explicit, EvalError, FiniteModel, GenTable, Value};
use crate::syntax::{Clause, Decoration, DecoratedSpec, ExceptionDecl, ExplicitTerm, Index, Name, ObjType, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialConfig {
    /// Largest carrier size for `Y` and the parameter types.
    pub max_carrier: u32,
    /// Number of exception indices.
    pub indices: usize,
    /// Longest clause list.
    pub max_clauses: usize,
    /// Check the deliberately broken handler instead. All indices then share
    /// one parameter type.
    pub corrupted: bool,
}

impl Default for DifferentialConfig {
    fn default() -> Self {
        DifferentialConfig {
            max_carrier: 2,
            indices: 2,
            max_clauses: 3,
            corrupted: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub carriers: String,
    pub clauses: Vec<String>,
    pub input: String,
    pub reference: String,
    pub decorated: String,
    pub explicit: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DifferentialReport {
    pub models: usize,
    pub handlers: usize,
    pub evaluations: usize,
    pub divergence: Option<Divergence>,
}

impl DifferentialReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

fn exceptions(cfg: &DifferentialConfig) -> Vec<ExceptionDecl> {
    (1..=cfg.indices)
        .map(|k| ExceptionDecl {
            index: Index::new(&k.to_string()),
            param: if cfg.corrupted {
                ObjType::base("P")
            } else {
                ObjType::base(&format!("P{k}"))
            },
        })
        .collect()
}

fn index_lists(idx: &[Index], max_len: usize) -> Vec<Vec<Index>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<Index>> = layer
            .iter()
            .flat_map(|l: &Vec<Index>| {
                idx.iter().map(move |i| {
                    let mut l2 = l.clone();
                    l2.push(i.clone());
                    l2
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn ppg(table: &GenTable) -> &[Value] {
    match table {
        GenTable::Ppg(v) => v,
        _ => unreachable!("the battery installs propagator tables"),
    }
}

const BLOCK: &str = "f";
const BODY: [&str; 4] = ["g1", "g2", "g3", "g4"];

/// Runs `try f catch(...)` three ways on every input: the operational
/// reference, the decorated construction, and the explicit construction.
/// Stops at the first divergence.
pub fn differential_handler_test(cfg: &DifferentialConfig) -> Result<DifferentialReport, EvalError> {
    assert!(cfg.max_clauses <= BODY.len(), "at most {} clauses", BODY.len());
    let ex = exceptions(cfg);
    let idx: Vec<Index> = ex.iter().map(|e| e.index.clone()).collect();
    let mut params: Vec<Name> = Vec::new();
    for e in &ex {
        let n = Name::new(&e.param.to_string());
        if !params.contains(&n) {
            params.push(n);
        }
    }
    let mut sized = params.clone();
    sized.push(Name::new("Y"));
    let x = ObjType::base("X");
    let y = ObjType::base("Y");
    let spec = DecoratedSpec::canonical(
        [vec![Name::new("X")], sized.clone()].concat(),
        vec![],
        ex.clone(),
    );
    let lists = index_lists(&idx, cfg.max_clauses);
    let mut report = DifferentialReport::default();

    for mut sizes in size_assignments(&sized, cfg.max_carrier) {
        sizes.push((Name::new("X"), 1));
        let mut m = FiniteModel::with_sizes(&sizes, ex.clone())?;
        report.models += 1;
        let ne = m.exc_size();
        let ny = m.size(&y)?;
        let carriers = sizes.iter().map(|(n, k)| format!("|{n}|={k}")).collect::<Vec<_>>().join(" ");
        let inputs = m.values(&x)?;
        let f_count = table_count(Decoration::Ppg, 1, ny, ne).unwrap_or(0);

        for list in &lists {
            if cfg.corrupted && list.len() < 2 {
                continue;
            }
            let block = Term::gen(BLOCK, x.clone(), y.clone(), Decoration::Ppg).expect("base types");
            let mut clauses = Vec::new();
            let mut explicit_clauses = Vec::new();
            let mut body_sizes = Vec::new();
            for (p, i) in list.iter().enumerate() {
                let param = spec.param(i).expect("declared").clone();
                body_sizes.push(m.size(&param)?);
                clauses.push(Clause {
                    index: i.clone(),
                    body: Term::gen(BODY[p], param.clone(), y.clone(), Decoration::Ppg).expect("base types"),
                });
                explicit_clauses.push((i.clone(), ExplicitTerm::gen(BODY[p], param, y.clone().plus_exc())));
            }
            let decorated = if cfg.corrupted {
                build_corrupted_try_catch(&spec, &block, &clauses).expect("shared parameter type")
            } else {
                build_try_catch(&spec, &block, &clauses).expect("well-typed clauses").handler
            };
            let explicit = build_try_catch_explicit(
                &spec,
                &ExplicitTerm::gen(BLOCK, x.clone(), y.clone().plus_exc()),
                &explicit_clauses,
            )
            .expect("well-typed clauses");

            let counts: Vec<u64> = body_sizes
                .iter()
                .map(|&np| table_count(Decoration::Ppg, np, ny, ne).unwrap_or(0))
                .collect();
            let body_total: u64 = counts.iter().product();

            for fk in 0..f_count {
                m.set_gen(BLOCK, table_at(Decoration::Ppg, 1, ny, ne, fk));
                for mut code in 0..body_total {
                    for (p, (&c, &np)) in counts.iter().zip(&body_sizes).enumerate() {
                        m.set_gen(BODY[p], table_at(Decoration::Ppg, np, ny, ne, code % c));
                        code /= c;
                    }
                    report.handlers += 1;
                    let f_tab = ppg(m.gen(&Name::new(BLOCK))?).to_vec();
                    let bodies: Vec<Vec<Value>> = (0..list.len())
                        .map(|p| m.gen(&Name::new(BODY[p])).map(|t| ppg(t).to_vec()))
                        .collect::<Result<_, _>>()?;
                    let f_fn = |a: u32| f_tab[a as usize];
                    let body_fns: Vec<_> = bodies.iter().map(|b| move |a: u32| b[a as usize]).collect();
                    let refs: Vec<RefClause<'_>> = list
                        .iter()
                        .zip(&body_fns)
                        .map(|(i, b)| RefClause {
                            index: i.clone(),
                            body: b,
                        })
                        .collect();
                    for &v in &inputs {
                        report.evaluations += 1;
                        let r = java_reference_eval(&f_fn, &refs, &m, v);
                        let d = eval_decorated(&decorated, &m, v)?;
                        let e = match v {
                            Value::Ordinary(_) => Some(eval_explicit(&explicit, &m, v)?),
                            Value::Exceptional(_) => None,
                        };
                        if d != r || e.is_some_and(|e| e != r) {
                            let out = y.clone().plus_exc();
                            report.divergence = Some(Divergence {
                                carriers,
                                clauses: clauses.iter().map(|c| format!("{} => {}", c.index, table_text(&m, c, &y))).collect(),
                                input: format!("{} with f = {}", m.show(&x, v), show_table(&m, &f_tab, &y)),
                                reference: m.show(&out, r),
                                decorated: m.show(&out, d),
                                explicit: e.map(|e| m.show(&out, e)),
                            });
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn show_table(m: &FiniteModel, t: &[Value], y: &ObjType) -> String {
    let out = y.clone().plus_exc();
    let cells: Vec<String> = t.iter().map(|v| m.show(&out, *v)).collect();
    format!("[{}]", cells.join(", "))
}

fn table_text(m: &FiniteModel, c: &Clause, y: &ObjType) -> String {
    match c.body.kind() {
        crate::syntax::TermKind::Gen(n) => match m.gen(n) {
            Ok(GenTable::Ppg(t)) => format!("{n} {}", show_table(m, t, y)),
            _ => n.to_string(),
        },
        _ => c.body.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_agrees() {
        let cfg = DifferentialConfig {
            max_carrier: 1,
            max_clauses: 2,
            ..DifferentialConfig::default()
        };
        let r = differential_handler_test(&cfg).unwrap();
        assert!(r.passed(), "{:?}", r.divergence);
        assert_eq!(r.models, 8);
        assert!(r.handlers > 0);
    }

    #[test]
    fn corrupted_handler_diverges() {
        let cfg = DifferentialConfig {
            max_carrier: 1,
            max_clauses: 2,
            corrupted: true,
            ..DifferentialConfig::default()
        };
        let r = differential_handler_test(&cfg).unwrap();
        let d = r.divergence.expect("the broken fall-through is caught");
        assert_ne!(d.reference, d.decorated);
    }
}
