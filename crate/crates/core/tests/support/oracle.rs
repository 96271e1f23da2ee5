//! Brute-force stable models, written without the solver's code paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use normlog_core::grounder::GroundProgram;

/// Above this many free atoms the oracle refuses to run.
pub const MAX_FREE_ATOMS: usize = 22;

/// Stable by definition: consistent, equal to the least model of its reduct,
/// and no denial (written or implicit `:- p, -p`) fires.
pub fn oracle_is_stable(g: &GroundProgram, cand: &BTreeSet<usize>) -> bool {
    for &a in cand {
        if let Some(c) = g.complement_of(a) {
            if cand.contains(&c) {
                return false;
            }
        }
    }
    let kept: Vec<_> = g
        .rules
        .iter()
        .filter(|r| r.neg.iter().all(|n| !cand.contains(n)))
        .collect();
    let mut m = BTreeSet::new();
    loop {
        let before = m.len();
        for r in &kept {
            if let Some(h) = r.head {
                if r.pos.iter().all(|p| m.contains(p)) {
                    m.insert(h);
                }
            }
        }
        if m.len() == before {
            break;
        }
    }
    let denial_fires = kept
        .iter()
        .any(|r| r.head.is_none() && r.pos.iter().all(|p| m.contains(p)));
    !denial_fires && m == *cand
}

fn naive_fixpoint(
    g: &GroundProgram,
    use_rule: impl Fn(&normlog_core::grounder::GroundRule) -> bool,
) -> BTreeSet<usize> {
    let mut m = BTreeSet::new();
    loop {
        let before = m.len();
        for r in g.rules.iter().filter(|r| use_rule(r)) {
            if let Some(h) = r.head {
                if r.pos.iter().all(|p| m.contains(p)) {
                    m.insert(h);
                }
            }
        }
        if m.len() == before {
            return m;
        }
    }
}

/// Every stable model lies between the consequences of the rules without
/// default negation and the consequences of all rules with it ignored.
pub fn interval(g: &GroundProgram) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let certain = naive_fixpoint(g, |r| r.neg.is_empty());
    let possible = naive_fixpoint(g, |_| true);
    (certain, possible)
}

/// All stable models. Small programs are checked over every subset of the
/// atom table; larger ones over every subset of the interval above.
pub fn oracle_models(g: &GroundProgram) -> Vec<BTreeSet<usize>> {
    let n = g.atom_count();
    let (fixed, free): (BTreeSet<usize>, Vec<usize>) = if n <= 16 {
        (BTreeSet::new(), (0..n).collect())
    } else {
        let (certain, possible) = interval(g);
        let free = possible.difference(&certain).copied().collect();
        (certain, free)
    };
    assert!(
        free.len() <= MAX_FREE_ATOMS,
        "oracle would need 2^{} candidates",
        free.len()
    );
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut cand = fixed.clone();
        for (i, &a) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cand.insert(a);
            }
        }
        if oracle_is_stable(g, &cand) {
            out.push(cand);
        }
    }
    out.sort();
    out
}
