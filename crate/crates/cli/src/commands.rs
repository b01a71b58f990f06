use std::fmt::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value as Json};

use deco_core::expand::{expand_all_rules, expand_spec, expand_term};
use deco_core::format::{
    parse_equation, parse_model, parse_proof, parse_spec, parse_term, parse_value, print_explicit_spec, ParseError,
};
use deco_core::kernel::check_derivation;
use deco_core::semantics::battery::{random_models, BATTERY_SEED};
use deco_core::semantics::{counterexample, eval_decorated, eval_explicit, FiniteModel};
use deco_core::shipped;
use deco_core::suite::{demo_exceptions as demo_text, run_suite, Scale};
use deco_core::syntax::DecoratedSpec;

use crate::Battery;

pub struct Ctx {
    pub spec: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub proof: Option<PathBuf>,
    pub battery: Battery,
}

impl Ctx {
    fn scale(&self) -> Scale {
        match self.battery {
            Battery::Small => Scale::Small,
            Battery::Full => Scale::Full,
        }
    }
}

pub struct Outcome {
    pub passed: bool,
    pub human: String,
    pub structured: Json,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn located(what: &str, e: ParseError) -> String {
    format!("{what}: {e}")
}

fn load_spec(ctx: &Ctx, explicit: Option<&PathBuf>) -> Result<DecoratedSpec, String> {
    match explicit.or(ctx.spec.as_ref()) {
        Some(p) => parse_spec(&read(p)?).map_err(|e| located(&p.display().to_string(), e)),
        None => parse_spec(shipped::EXCEPTIONS_SPEC).map_err(|e| located("shipped spec", e)),
    }
}

/// The model given with --model; without one, the shipped small model when
/// the shipped spec is in use.
fn load_model(ctx: &Ctx, spec: &DecoratedSpec) -> Result<Option<FiniteModel>, String> {
    match (&ctx.model, &ctx.spec) {
        (Some(p), _) => parse_model(&read(p)?, spec)
            .map(Some)
            .map_err(|e| located(&p.display().to_string(), e)),
        (None, None) => parse_model(shipped::SMALL_MODEL, spec)
            .map(Some)
            .map_err(|e| located("shipped model", e)),
        (None, Some(_)) => Ok(None),
    }
}

pub fn check(ctx: &Ctx, files: &[PathBuf]) -> Result<Outcome, String> {
    let mut spec_path = None;
    let mut proof_path = ctx.proof.clone();
    for f in files {
        match f.extension().and_then(|e| e.to_str()) {
            Some("dexc") => spec_path = Some(f.clone()),
            Some("dproof") => proof_path = Some(f.clone()),
            _ => return Err(format!("{}: expected a .dexc or .dproof file", f.display())),
        }
    }
    let proof_path = proof_path.ok_or("check needs a proof script")?;
    let spec = load_spec(ctx, spec_path.as_ref())?;
    let script = parse_proof(&read(&proof_path)?, &spec).map_err(|e| located(&proof_path.display().to_string(), e))?;
    let v = check_derivation(&script.derivation, &script.context(&spec));
    let mut human = String::new();
    if v.accepted {
        let _ = writeln!(human, "accepted: {} ({} nodes)", v.conclusion, v.nodes.len());
    } else {
        let _ = writeln!(human, "rejected: {}", v.conclusion);
        for n in v.failures() {
            let path = if n.path.is_empty() { "root" } else { n.path.as_str() };
            let _ = writeln!(human, "  node {path} ({}): {}", n.rule, n.message.as_deref().unwrap_or(""));
        }
    }
    let nodes: Vec<Json> = v
        .nodes
        .iter()
        .map(|n| {
            json!({
                "path": n.path,
                "rule": n.rule,
                "verdict": if n.ok { "pass" } else { "fail" },
                "message": n.message,
            })
        })
        .collect();
    Ok(Outcome {
        passed: v.accepted,
        human,
        structured: json!({
            "command": "check",
            "proof": script.name,
            "conclusion": v.conclusion,
            "verdict": if v.accepted { "pass" } else { "fail" },
            "nodes": nodes,
        }),
    })
}

pub fn expand(ctx: &Ctx, rules: bool) -> Result<Outcome, String> {
    if rules {
        let all = expand_all_rules();
        let passed = all.iter().all(|o| o.discharge.passed());
        let mut human = String::new();
        for o in &all {
            let _ = writeln!(human, "{:4} {}", o.rule, o.schema);
            for p in &o.premises {
                let _ = writeln!(human, "       premise    {p}");
            }
            for c in &o.conclusion {
                let _ = writeln!(human, "       conclusion {c}");
            }
            let _ = writeln!(human, "       {}", o.discharge);
        }
        return Ok(Outcome {
            passed,
            human,
            structured: json!({ "command": "expand --rules", "rules": all }),
        });
    }
    let spec = load_spec(ctx, None)?;
    let text = print_explicit_spec(&expand_spec(&spec));
    Ok(Outcome {
        passed: true,
        structured: json!({ "command": "expand", "explicit_spec": text }),
        human: text,
    })
}

pub fn eval(ctx: &Ctx, term: &str, value: &str) -> Result<Outcome, String> {
    let spec = load_spec(ctx, None)?;
    let m = load_model(ctx, &spec)?.ok_or("eval needs --model")?;
    let t = parse_term(term, &spec).map_err(|e| located("term", e))?;
    let v = parse_value(value, &m, t.src()).map_err(|e| located("value", e))?;
    let d = eval_decorated(&t, &m, v).map_err(|e| e.to_string())?;
    let x = eval_explicit(&expand_term(&t), &m.intended(), v).map_err(|e| e.to_string())?;
    let (input, out, out_x) = (m.show(t.src(), v), m.show(t.tgt(), d), m.show(t.tgt(), x));
    let human = format!("{t} : {} -> {} [{}]\n{t} ({input}) = {out}\nexpansion, intended model: {out_x}\n", t.src(), t.tgt(), t.deco());
    Ok(Outcome {
        passed: true,
        human,
        structured: json!({
            "command": "eval",
            "term": t.to_string(),
            "decoration": t.deco().to_string(),
            "input": input,
            "output": out,
            "expansion_output": out_x,
        }),
    })
}

pub fn equiv(ctx: &Ctx, equation: &str) -> Result<Outcome, String> {
    let spec = load_spec(ctx, None)?;
    let e = parse_equation(equation, &spec).map_err(|e| located("equation", e))?;
    let models = match load_model(ctx, &spec)? {
        Some(m) => vec![m],
        None => {
            let n = match ctx.battery {
                Battery::Small => 20,
                Battery::Full => 200,
            };
            random_models(&spec, n, 2, BATTERY_SEED)
        }
    };
    for (k, m) in models.iter().enumerate() {
        if let Some(w) = counterexample(&e, m).map_err(|e| e.to_string())? {
            let human = format!(
                "fails: {e}\n  witness: on {} the left side gives {} and the right side {}\n",
                w.input, w.lhs, w.rhs
            );
            return Ok(Outcome {
                passed: false,
                human,
                structured: json!({
                    "command": "equiv",
                    "equation": e.to_string(),
                    "verdict": "fail",
                    "model": k,
                    "witness": w,
                }),
            });
        }
    }
    Ok(Outcome {
        passed: true,
        human: format!("holds: {e} ({} model{})\n", models.len(), if models.len() == 1 { "" } else { "s" }),
        structured: json!({
            "command": "equiv",
            "equation": e.to_string(),
            "verdict": "pass",
            "models": models.len(),
        }),
    })
}

pub fn demo_exceptions(ctx: &Ctx) -> Result<Outcome, String> {
    let text = demo_text(ctx.scale())?;
    let passed = !text.contains("DIVERGENCE");
    Ok(Outcome {
        passed,
        structured: json!({ "command": "demo exceptions", "output": text }),
        human: text,
    })
}

pub fn suite(ctx: &Ctx, command: &str) -> Result<Outcome, String> {
    let items = run_suite(ctx.scale());
    let passed = items.iter().all(|i| i.passed());
    let mut human = String::new();
    for i in &items {
        let _ = writeln!(human, "{}", i.line());
    }
    let failed = items.iter().filter(|i| !i.passed()).count();
    let _ = writeln!(human, "{} items, {failed} failed", items.len());
    Ok(Outcome {
        passed,
        human,
        structured: json!({
            "command": command,
            "verdict": if passed { "pass" } else { "fail" },
            "items": items,
        }),
    })
}
