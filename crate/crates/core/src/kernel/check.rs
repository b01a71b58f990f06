//! Derivation trees and the local checker.

use std::fmt;

use serde::Serialize;

use super::rules::{apply_rule, is_axiom, is_definition, Binding, Judgment, RuleId};
use crate::syntax::DecoratedSpec;

/// How a node is justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Rule(RuleId),
    /// A leaf that must be an axiom of the context.
    Axiom,
    /// A leaf unfolding a defined constructor.
    Def,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Rule(r) => write!(f, "{r}"),
            Step::Axiom => f.write_str("axiom"),
            Step::Def => f.write_str("def"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Judgment,
    pub step: Step,
    pub subst: Vec<(String, Binding)>,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(step: Step, conclusion: Judgment) -> Derivation {
        Derivation {
            conclusion,
            step,
            subst: Vec::new(),
            premises: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Every conclusion in the tree, root first.
    pub fn judgments(&self) -> Vec<&Judgment> {
        let mut out = vec![&self.conclusion];
        for p in &self.premises {
            out.extend(p.judgments());
        }
        out
    }

    /// Rules used anywhere in the tree.
    pub fn rules(&self, out: &mut Vec<RuleId>) {
        if let Step::Rule(r) = self.step {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        for p in &self.premises {
            p.rules(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    /// Dotted path from the root, `""` for the root, `"0.2"` for the third
    /// premise of the first premise.
    pub path: String,
    pub rule: String,
    pub ok: bool,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub accepted: bool,
    pub conclusion: String,
    pub nodes: Vec<NodeReport>,
}

impl Verdict {
    pub fn failures(&self) -> impl Iterator<Item = &NodeReport> {
        self.nodes.iter().filter(|n| !n.ok)
    }
}

fn check_node(d: &Derivation, ctx: &DecoratedSpec) -> Result<(), String> {
    match d.step {
        Step::Axiom | Step::Def if !d.premises.is_empty() => Err(format!("a `{}` leaf takes no premises", d.step)),
        Step::Axiom => {
            if is_axiom(ctx, &d.conclusion) {
                Ok(())
            } else {
                Err(format!("not an axiom of the specification: {}", d.conclusion))
            }
        }
        Step::Def => {
            if is_definition(&d.conclusion) {
                Ok(())
            } else {
                Err(format!("not the unfolding of a defined constructor: {}", d.conclusion))
            }
        }
        Step::Rule(r) => {
            let premises: Vec<Judgment> = d.premises.iter().map(|p| p.conclusion.clone()).collect();
            let got = apply_rule(ctx, r, &d.subst, &premises).map_err(|e| e.to_string())?;
            if got == d.conclusion {
                Ok(())
            } else {
                Err(format!("rule {r} concludes `{got}`, not `{}`", d.conclusion))
            }
        }
    }
}

fn walk(d: &Derivation, ctx: &DecoratedSpec, path: String, out: &mut Vec<NodeReport>) {
    let res = check_node(d, ctx);
    out.push(NodeReport {
        path: path.clone(),
        rule: d.step.to_string(),
        ok: res.is_ok(),
        message: res.err(),
    });
    for (k, p) in d.premises.iter().enumerate() {
        let sub = if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
        walk(p, ctx, sub, out);
    }
}

/// Checks every node of `d` against its own premises' conclusions. The tree
/// is accepted iff every node is.
pub fn check_derivation(d: &Derivation, ctx: &DecoratedSpec) -> Verdict {
    let mut nodes = Vec::with_capacity(d.size());
    walk(d, ctx, String::new(), &mut nodes);
    Verdict {
        accepted: nodes.iter().all(|n| n.ok),
        conclusion: d.conclusion.to_string(),
        nodes,
    }
}
