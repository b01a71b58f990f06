use std::time::Instant;

use deco_core::expand::{expand_all_rules, Discharge};

#[test]
fn every_rule_discharges() {
    let start = Instant::now();
    let all = expand_all_rules();
    let elapsed = start.elapsed();
    for o in &all {
        println!("{:4} {}", o.rule, o.discharge);
    }
    println!("{:?}", elapsed);
    assert_eq!(all.len(), 41);
    let failed: Vec<_> = all.iter().filter(|o| !o.discharge.passed()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    for o in all.iter().filter(|o| o.rule.starts_with('a') || o.rule.starts_with('d')) {
        assert!(o.discharge.is_syntactic(), "{} {}", o.rule, o.discharge);
    }
    assert!(all.iter().any(|o| matches!(o.discharge, Discharge::Battery { .. })));
}
