//! Regenerates the shipped proof scripts from the built-in library.
//! Usage: `cargo run --example dump_library -- <dir>`; prints to stdout
//! without a directory.

use deco_core::format::{print_proof, ProofScript};
use deco_core::kernel::derived_rule_library;

fn main() {
    let dir = std::env::args().nth(1);
    for e in derived_rule_library() {
        let text = print_proof(&ProofScript::from(&e));
        match &dir {
            Some(d) => std::fs::write(format!("{d}/{}.dproof", e.name), text).expect("writable directory"),
            None => print!("{text}"),
        }
    }
}
