//! Normalization of explicit terms by the coproduct laws oriented left to
//! right, identity removal and reassociation. Every rewrite strictly
//! shrinks the term, so normalization terminates.

use crate::syntax::{ExplKind, ExplicitTerm, ObjType};

/// Factors of a composition chain, outermost first.
pub fn factors(t: &ExplicitTerm) -> Vec<ExplicitTerm> {
    let mut out = Vec::new();
    collect(t, &mut out);
    out
}

fn collect(t: &ExplicitTerm, out: &mut Vec<ExplicitTerm>) {
    match t.kind() {
        ExplKind::Comp(g, f) => {
            collect(g, out);
            collect(f, out);
        }
        _ => out.push(t.clone()),
    }
}

/// Right-nested composition of non-empty factors.
pub fn rebuild(parts: Vec<ExplicitTerm>) -> ExplicitTerm {
    ExplicitTerm::chain(parts).expect("factors of a chain compose")
}

fn beta(outer: &ExplicitTerm, inner: &ExplicitTerm) -> Option<ExplicitTerm> {
    match (outer.kind(), inner.kind()) {
        (ExplKind::Cotuple(f, _), ExplKind::In) => Some((**f).clone()),
        (ExplKind::Cotuple(_, k), ExplKind::Ina) => Some((**k).clone()),
        (ExplKind::Case(f, _), ExplKind::Copi1(_)) => Some((**f).clone()),
        (ExplKind::Case(_, k), ExplKind::Copi2(_)) => Some((**k).clone()),
        (ExplKind::ExcCase(bs), ExplKind::Tag(i)) => {
            bs.iter().find(|(j, _)| j == i).map(|(_, b)| b.clone())
        }
        _ => None,
    }
}

/// Splits `h ∘ last` into `(h, last)`; `h` is `None` when the chain is a
/// single factor.
fn split_last(t: &ExplicitTerm) -> (Option<ExplicitTerm>, ExplicitTerm) {
    let mut fs = factors(t);
    let last = fs.pop().expect("a chain has factors");
    if fs.is_empty() {
        (None, last)
    } else {
        (Some(rebuild(fs)), last)
    }
}

fn prefix_for(t: &ExplicitTerm, last_ok: impl Fn(&ExplicitTerm) -> bool) -> Option<Option<ExplicitTerm>> {
    let (h, last) = split_last(t);
    last_ok(&last).then_some(h)
}

fn step(t: &ExplicitTerm) -> ExplicitTerm {
    if t.src().is_zero() && !matches!(t.kind(), ExplKind::Empty) {
        return ExplicitTerm::empty(t.tgt().clone());
    }
    match t.kind() {
        ExplKind::Ina if t.tgt() == &ObjType::Exc => ExplicitTerm::id(ObjType::Exc),
        ExplKind::Copi1(_) | ExplKind::Copi2(_) if t.src() == t.tgt() => ExplicitTerm::id(t.src().clone()),
        ExplKind::Comp(..) => {
            let mut fs: Vec<ExplicitTerm> = Vec::new();
            for f in factors(t) {
                fs.extend(factors(&step(&f)));
            }
            fs.retain(|f| !f.is_id());
            let mut changed = true;
            while changed {
                changed = false;
                for k in 0..fs.len().saturating_sub(1) {
                    if let Some(r) = beta(&fs[k], &fs[k + 1]) {
                        let mut repl = factors(&r);
                        repl.retain(|f| !f.is_id());
                        fs.splice(k..k + 2, repl);
                        changed = true;
                        break;
                    }
                }
            }
            if fs.is_empty() {
                ExplicitTerm::id(t.src().clone())
            } else {
                rebuild(fs)
            }
        }
        ExplKind::Cotuple(f, k) => {
            let (f, k) = (step(f), step(k));
            if f.src().is_zero() {
                return k;
            }
            let x = f.src().clone();
            let hf = prefix_for(&f, |l| matches!(l.kind(), ExplKind::In) && l.src() == &x);
            let hk = prefix_for(&k, |l| matches!(l.kind(), ExplKind::Ina) && l.tgt() == &x.clone().plus_exc());
            if let (Some(a), Some(b)) = (hf, hk) {
                if a == b {
                    return a.unwrap_or_else(|| ExplicitTerm::id(t.src().clone()));
                }
            }
            ExplicitTerm::cotuple(f, k).expect("normalization keeps types")
        }
        ExplKind::Case(f, k) => {
            let (f, k) = (step(f), step(k));
            let hf = prefix_for(&f, |l| matches!(l.kind(), ExplKind::Copi1(_)) && l.tgt() == t.src());
            let hk = prefix_for(&k, |l| matches!(l.kind(), ExplKind::Copi2(_)) && l.tgt() == t.src());
            if let (Some(a), Some(b)) = (hf, hk) {
                if a == b {
                    return a.unwrap_or_else(|| ExplicitTerm::id(t.src().clone()));
                }
            }
            ExplicitTerm::case(f, k).expect("normalization keeps types")
        }
        ExplKind::ExcCase(bs) => {
            let bs: Vec<_> = bs.iter().map(|(i, b)| (i.clone(), step(b))).collect();
            let mut common: Option<Option<ExplicitTerm>> = None;
            let mut eta = !bs.is_empty();
            for (i, b) in &bs {
                match prefix_for(b, |l| matches!(l.kind(), ExplKind::Tag(j) if j == i)) {
                    Some(h) if common.as_ref().is_none_or(|c| c == &h) => common = Some(h),
                    _ => {
                        eta = false;
                        break;
                    }
                }
            }
            if eta {
                if let Some(h) = common {
                    return h.unwrap_or_else(|| ExplicitTerm::id(ObjType::Exc));
                }
            }
            ExplicitTerm::exc_case(bs, t.tgt().clone()).expect("normalization keeps types")
        }
        _ => t.clone(),
    }
}

/// The normal form of `t`.
pub fn normalize(t: &ExplicitTerm) -> ExplicitTerm {
    let mut cur = t.clone();
    loop {
        let next = step(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Index;

    fn x() -> ObjType {
        ObjType::base("X")
    }

    #[test]
    fn cotuple_after_in_reduces() {
        let y = ObjType::base("Y");
        let f = ExplicitTerm::gen("f", x(), y.clone().plus_exc());
        let k = ExplicitTerm::ina(y);
        let t = ExplicitTerm::comp(ExplicitTerm::cotuple(f.clone(), k).unwrap(), ExplicitTerm::inj(x())).unwrap();
        assert_eq!(normalize(&t), f);
    }

    #[test]
    fn identity_factors_vanish() {
        let f = ExplicitTerm::gen("f", x(), x());
        let t = ExplicitTerm::comp(ExplicitTerm::id(x()), f.clone()).unwrap();
        assert_eq!(normalize(&t), f);
    }

    #[test]
    fn eta_at_x_plus_e() {
        let t = ExplicitTerm::cotuple(ExplicitTerm::inj(x()), ExplicitTerm::ina(x())).unwrap();
        assert_eq!(normalize(&t), ExplicitTerm::id(x().plus_exc()));
    }

    #[test]
    fn exception_case_on_tag() {
        let p = ObjType::base("P1");
        let y = ObjType::base("Y");
        let g = ExplicitTerm::gen("g", p.clone(), y.clone());
        let case = ExplicitTerm::exc_case(vec![(Index::new("1"), g.clone())], y).unwrap();
        let t = ExplicitTerm::comp(case, ExplicitTerm::tag(Index::new("1"), p)).unwrap();
        assert_eq!(normalize(&t), g);
    }
}
