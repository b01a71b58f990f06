//! Specification, models and proof scripts shipped with the crate.

pub const EXCEPTIONS_SPEC: &str = include_str!("../specs/exceptions.dexc");
pub const SMALL_MODEL: &str = include_str!("../specs/small.dmodel");
pub const CORRUPTED_MODEL: &str = include_str!("../specs/corrupted.dmodel");

/// `(file stem, text)` of every shipped proof script.
pub const PROOFS: [(&str, &str); 8] = [
    ("lemma_coprod_cotu_part1", include_str!("../proofs/lemma_coprod_cotu_part1.dproof")),
    ("lemma_coprod_cotu_part2", include_str!("../proofs/lemma_coprod_cotu_part2.dproof")),
    ("lemma_untag_tag", include_str!("../proofs/lemma_untag_tag.dproof")),
    ("lemma_catch_raise", include_str!("../proofs/lemma_catch_raise.dproof")),
    ("lemma_untag_untag", include_str!("../proofs/lemma_untag_untag.dproof")),
    ("lemma_catch_catch", include_str!("../proofs/lemma_catch_catch.dproof")),
    ("lemma_downcast_case", include_str!("../proofs/lemma_downcast_case.dproof")),
    ("lemma_pure_try", include_str!("../proofs/lemma_pure_try.dproof")),
];

pub fn proof(name: &str) -> Option<&'static str> {
    PROOFS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
