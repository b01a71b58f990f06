//! Fixtures shared by the benchmarks under `benches/`.

use deco_core::format::{parse_proof, parse_spec, ProofScript};
use deco_core::semantics::battery::{random_model, rng};
use deco_core::semantics::terms::{term_spec, TermGen};
use deco_core::semantics::FiniteModel;
use deco_core::shipped;
use deco_core::syntax::{DecoratedSpec, Term};

/// The shipped spec and every shipped proof script, parsed.
pub fn shipped_scripts() -> (DecoratedSpec, Vec<ProofScript>) {
    let spec = parse_spec(shipped::EXCEPTIONS_SPEC).expect("shipped spec parses");
    let scripts = shipped::PROOFS
        .iter()
        .map(|(name, text)| parse_proof(text, &spec).unwrap_or_else(|e| panic!("{name}: {e}")))
        .collect();
    (spec, scripts)
}

/// `n` random terms of the given depth with one random model per term.
pub fn term_workload(n: usize, depth: usize, seed: u64) -> Vec<(Term, FiniteModel)> {
    let spec = term_spec();
    let g = TermGen::new(&spec);
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let t = g.any(&mut r, depth);
            let m = random_model(&mut r, &spec, 2);
            (t, m)
        })
        .collect()
}
