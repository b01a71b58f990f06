//! Model batteries: exhaustive enumerations of small carriers and tables,
//! and seeded random models.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{FiniteModel, GenTable, Value};
use crate::syntax::{Decoration, DecoratedSpec, ExceptionDecl, Index, Name, ObjType};

/// Fixed seed for every randomized battery, so reports are reproducible.
pub const BATTERY_SEED: u64 = 0x5eed_dec0;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Index set `{1, ..., n}` with parameter types `P1, ..., Pn`.
pub fn standard_exceptions(n: usize) -> Vec<ExceptionDecl> {
    (1..=n)
        .map(|k| ExceptionDecl {
            index: Index::new(&k.to_string()),
            param: ObjType::base(&format!("P{k}")),
        })
        .collect()
}

/// Every assignment of sizes `0..=max` to the given names, in lexicographic
/// order with the first name varying slowest.
pub fn size_assignments(names: &[Name], max: u32) -> Vec<Vec<(Name, u32)>> {
    let mut out = vec![Vec::new()];
    for n in names {
        let mut next = Vec::with_capacity(out.len() * (max as usize + 1));
        for prefix in &out {
            for k in 0..=max {
                let mut p: Vec<(Name, u32)> = prefix.clone();
                p.push((n.clone(), k));
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// All models of the exception indices `1..=n` with parameter carriers of
/// size `0..=max` and extra base carriers of the given sizes.
pub fn parameter_battery(n: usize, max: u32, extra: &[(Name, u32)]) -> Vec<FiniteModel> {
    let ex = standard_exceptions(n);
    let names: Vec<Name> = (1..=n).map(|k| Name::new(&format!("P{k}"))).collect();
    size_assignments(&names, max)
        .into_iter()
        .map(|mut sizes| {
            sizes.extend(extra.iter().cloned());
            FiniteModel::with_sizes(&sizes, ex.clone()).expect("parameter types have carriers")
        })
        .collect()
}

/// Number of tables of a given decoration between carriers of sizes `nx`
/// and `ny`, with `ne` exceptions. `None` when it overflows `u64`.
pub fn table_count(deco: Decoration, nx: u32, ny: u32, ne: u32) -> Option<u64> {
    let pow = |b: u32, e: u32| (b as u64).checked_pow(e);
    match deco {
        Decoration::Pure => pow(ny, nx),
        Decoration::Ppg => pow(ny + ne, nx),
        Decoration::Ctc => pow(ny + ne, nx)?.checked_mul(pow(ny + ne, ne)?),
    }
}

fn value_of(code: u32, ny: u32) -> Value {
    if code < ny {
        Value::Ordinary(code)
    } else {
        Value::Exceptional(code - ny)
    }
}

/// The `k`-th table of the enumeration counted by [`table_count`].
pub fn table_at(deco: Decoration, nx: u32, ny: u32, ne: u32, mut k: u64) -> GenTable {
    let mut digits = |len: u32, base: u32| -> Vec<u32> {
        (0..len)
            .map(|_| {
                let d = (k % base as u64) as u32;
                k /= base as u64;
                d
            })
            .collect()
    };
    match deco {
        Decoration::Pure => GenTable::Pure(digits(nx, ny.max(1))),
        Decoration::Ppg => GenTable::Ppg(
            digits(nx, (ny + ne).max(1))
                .into_iter()
                .map(|c| value_of(c, ny))
                .collect(),
        ),
        Decoration::Ctc => {
            let ordinary = digits(nx, (ny + ne).max(1))
                .into_iter()
                .map(|c| value_of(c, ny))
                .collect();
            let exceptional = digits(ne, (ny + ne).max(1))
                .into_iter()
                .map(|c| value_of(c, ny))
                .collect();
            GenTable::Ctc {
                ordinary,
                exceptional,
            }
        }
    }
}

/// A uniformly random table.
pub fn random_table<R: Rng>(rng: &mut R, deco: Decoration, nx: u32, ny: u32, ne: u32) -> GenTable {
    let mut pick = |n: u32| -> u32 { rng.gen_range(0..n) };
    match deco {
        Decoration::Pure => GenTable::Pure((0..nx).map(|_| pick(ny)).collect()),
        Decoration::Ppg => GenTable::Ppg((0..nx).map(|_| value_of(pick(ny + ne), ny)).collect()),
        Decoration::Ctc => {
            let ordinary = (0..nx).map(|_| value_of(pick(ny + ne), ny)).collect();
            let exceptional = (0..ne).map(|_| value_of(pick(ny + ne), ny)).collect();
            GenTable::Ctc {
                ordinary,
                exceptional,
            }
        }
    }
}

/// Whether a table of this decoration exists between the given carriers.
pub fn table_exists(deco: Decoration, nx: u32, ny: u32, ne: u32) -> bool {
    match deco {
        Decoration::Pure => nx == 0 || ny > 0,
        _ => (nx == 0 && ne == 0) || ny + ne > 0,
    }
}

/// Fills every plain operation of `spec` with a random table. Returns
/// `false` if some operation has no possible interpretation in `m`.
pub fn fill_random<R: Rng>(rng: &mut R, spec: &DecoratedSpec, m: &mut FiniteModel) -> bool {
    let ne = m.exc_size();
    let mut tables = Vec::new();
    for op in spec.plain_ops() {
        let (Ok(nx), Ok(ny)) = (m.size(&op.src), m.size(&op.tgt)) else {
            return false;
        };
        if !table_exists(op.deco, nx, ny, ne) {
            return false;
        }
        tables.push((op.name.clone(), random_table(rng, op.deco, nx, ny, ne)));
    }
    for (n, t) in tables {
        m.set_gen(n.as_str(), t);
    }
    true
}

/// Base types a model of `spec` needs carriers for.
pub fn spec_base_types(spec: &DecoratedSpec) -> Vec<Name> {
    let mut names = spec.types.clone();
    let mut more = Vec::new();
    for op in &spec.ops {
        op.src.base_names(&mut more);
        op.tgt.base_names(&mut more);
    }
    for e in &spec.exceptions {
        e.param.base_names(&mut more);
    }
    for n in more {
        if !names.contains(&n) {
            names.push(n);
        }
    }
    names.retain(|n| n.as_str() != crate::syntax::UNIT);
    names
}

/// A random model of `spec` with carriers of size `0..=max`.
pub fn random_model<R: Rng>(rng: &mut R, spec: &DecoratedSpec, max: u32) -> FiniteModel {
    let names = spec_base_types(spec);
    for attempt in 0..64 {
        let lo = if attempt < 48 { 0 } else { 1 };
        let sizes: Vec<(Name, u32)> = names
            .iter()
            .map(|n| (n.clone(), rng.gen_range(lo..=max.max(lo))))
            .collect();
        let mut m = FiniteModel::with_sizes(&sizes, spec.exceptions.clone())
            .expect("every base type has a carrier");
        if fill_random(rng, spec, &mut m) {
            return m;
        }
    }
    let sizes: Vec<(Name, u32)> = names.iter().map(|n| (n.clone(), 1)).collect();
    let mut m = FiniteModel::with_sizes(&sizes, spec.exceptions.clone()).expect("carriers");
    assert!(fill_random(rng, spec, &mut m), "all-singleton carriers admit every table");
    m
}

/// `count` random models of `spec` from a fixed seed.
pub fn random_models(spec: &DecoratedSpec, count: usize, max: u32, seed: u64) -> Vec<FiniteModel> {
    let mut r = rng(seed);
    (0..count).map(|_| random_model(&mut r, spec, max)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_enumeration_is_exhaustive_and_distinct() {
        let n = table_count(Decoration::Ctc, 2, 1, 1).unwrap();
        assert_eq!(n, 4 * 2);
        let mut seen = Vec::new();
        for k in 0..n {
            let t = table_at(Decoration::Ctc, 2, 1, 1, k);
            assert!(!seen.contains(&t));
            seen.push(t);
        }
    }

    #[test]
    fn parameter_battery_size() {
        assert_eq!(parameter_battery(2, 3, &[]).len(), 16);
        assert_eq!(parameter_battery(3, 3, &[]).len(), 64);
    }

    #[test]
    fn random_models_are_reproducible() {
        let spec = DecoratedSpec::canonical(
            vec![Name::new("X"), Name::new("P1")],
            vec![crate::syntax::OpDecl::new(
                "f",
                ObjType::base("X"),
                ObjType::base("X"),
                Decoration::Ppg,
            )],
            vec![ExceptionDecl {
                index: Index::new("1"),
                param: ObjType::base("P1"),
            }],
        );
        let a = random_models(&spec, 5, 3, 7);
        let b = random_models(&spec, 5, 3, 7);
        assert_eq!(a, b);
    }
}
