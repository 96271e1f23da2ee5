mod support {
    pub mod gen;
    pub mod oracle;
}

use std::collections::BTreeSet;

use normlog_core::grounder::GroundProgram;
use normlog_core::justify::justify;
use normlog_core::solver::{candidate_ids, is_stable, query};
use normlog_core::{
    complement, enumerate_models, ground, parse_query, signature, AnswerSet, Atom, BodyElem,
    EnumerateOptions, Literal, Program, Rule,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use support::gen::{fuzz_programs, literal_pool, random_body, random_program, rng_for};

fn models(p: &Program) -> (GroundProgram, Vec<AnswerSet>) {
    let g = ground(p).unwrap();
    let ms = enumerate_models(
        &g,
        EnumerateOptions {
            max_models: None,
            project: false,
        },
    );
    (g, ms)
}

fn literal_sets(p: &Program) -> BTreeSet<BTreeSet<Literal>> {
    models(p).1.into_iter().map(|m| m.literals).collect()
}

fn with_rules(p: &Program, extra: Vec<Rule>) -> Program {
    let mut q = p.clone();
    q.rules.extend(extra);
    q
}

fn arb_program() -> impl Strategy<Value = Program> {
    any::<u64>().prop_map(|s| random_program(&mut rng_for(s), 10, 20))
}

fn arb_literal() -> impl Strategy<Value = Literal> {
    ("[a-z][a-z0-9_]{0,6}", any::<bool>()).prop_map(|(name, neg)| {
        let a = Atom::prop(&name);
        if neg {
            a.negative()
        } else {
            a.positive()
        }
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(l in arb_literal()) {
        prop_assert_eq!(complement(&complement(&l)), l.clone());
        prop_assert_ne!(complement(&l), l);
    }

    #[test]
    fn signature_ignores_rule_order(p in arb_program(), seed in any::<u64>()) {
        let mut q = p.clone();
        q.rules.shuffle(&mut rng_for(seed));
        prop_assert_eq!(signature(&p).unwrap(), signature(&q).unwrap());
        let doubled = with_rules(&p, p.rules.clone());
        prop_assert_eq!(signature(&doubled).unwrap(), signature(&p).unwrap());
    }

    #[test]
    fn models_are_consistent(p in arb_program()) {
        for m in models(&p).1 {
            for l in &m.literals {
                prop_assert!(!m.literals.contains(&l.complement()));
            }
        }
    }

    #[test]
    fn axiom_k(p in arb_program(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let lits: Vec<Literal> = ground(&p).unwrap().literals().to_vec();
        let (a, b) = (i.get(&lits).clone(), j.get(&lits).clone());
        let q = with_rules(&p, vec![
            Rule::denial(vec![BodyElem::Pos(a.clone()), BodyElem::Naf(b.clone())]),
            Rule::denial(vec![BodyElem::Naf(a)]),
        ]);
        for m in models(&q).1 {
            prop_assert!(m.contains(&b));
        }
    }

    #[test]
    fn axiom_nec(p in arb_program()) {
        let (_, ms) = models(&p);
        for m in ms {
            for l in &m.literals {
                let q = with_rules(&p, vec![Rule::denial(vec![BodyElem::Naf(l.clone())])]);
                let gq = ground(&q).unwrap();
                let lits: Vec<Literal> = m.literals.iter().cloned().collect();
                prop_assert!(is_stable(&gq, &candidate_ids(&gq, &lits).unwrap()));
            }
        }
    }

    #[test]
    fn denials_only_filter(p in arb_program()) {
        let relaxed = Program::new(p.rules.iter().filter(|r| !r.is_denial()).cloned().collect());
        let all = literal_sets(&relaxed);
        for m in literal_sets(&p) {
            prop_assert!(all.contains(&m));
        }
    }

    #[test]
    fn models_form_an_antichain(p in arb_program()) {
        let ms: Vec<_> = literal_sets(&p).into_iter().collect();
        for a in &ms {
            for b in &ms {
                prop_assert!(a == b || !a.is_subset(b));
            }
        }
    }

    #[test]
    fn olon_falsifies_its_body(p in arb_program(), seed in any::<u64>()) {
        let mut rng = rng_for(seed);
        let pool = literal_pool(&mut rng, 10);
        let mut body = random_body(&mut rng, &pool, 3);
        if body.is_empty() {
            body.push(BodyElem::Pos(pool[0].clone()));
        }
        let c = Literal::prop("olon_c");
        let mut olon = body.clone();
        olon.push(BodyElem::Naf(c.clone()));
        let holds = |m: &AnswerSet| body.iter().all(|e| match e {
            BodyElem::Pos(l) => m.contains(l),
            BodyElem::Naf(l) => !m.contains(l),
            BodyElem::Builtin { .. } => unreachable!(),
        });
        let guarded = with_rules(&p, vec![Rule { head: Some(c.clone()), body: olon.clone() }]);
        for m in models(&guarded).1 {
            prop_assert!(!holds(&m));
        }
        // with independent support for c the guard is switched off
        let supported = with_rules(&p, vec![Rule { head: Some(c.clone()), body: olon }, Rule::fact(c.clone())]);
        let base: BTreeSet<bool> = models(&p).1.iter().map(holds).collect();
        let after: BTreeSet<bool> = models(&supported).1.iter().map(holds).collect();
        prop_assert_eq!(base, after);
    }

    #[test]
    fn true_query_iff_satisfiable(p in arb_program()) {
        let (g, ms) = models(&p);
        let out = query(&g, &parse_query("?- true.").unwrap(), EnumerateOptions::default()).unwrap();
        prop_assert_eq!(out.models.is_empty(), ms.is_empty());
    }

    #[test]
    fn rule_order_does_not_matter(p in arb_program(), seed in any::<u64>()) {
        let mut q = p.clone();
        q.rules.shuffle(&mut rng_for(seed));
        prop_assert_eq!(literal_sets(&p), literal_sets(&q));
    }

    #[test]
    fn justifications_replay(p in arb_program()) {
        let (g, ms) = models(&p);
        for m in &ms {
            for l in &m.literals {
                let j = justify(&g, m, l).unwrap();
                let mut derived: BTreeSet<Literal> = BTreeSet::new();
                for r in j.rules_bottom_up() {
                    for e in &r.body {
                        if let BodyElem::Pos(b) = e {
                            prop_assert!(derived.contains(b), "{} used before derived", b);
                        }
                    }
                    derived.insert(r.head.clone().unwrap());
                }
                prop_assert!(derived.contains(l));
                for n in j.all_naf() {
                    prop_assert!(!m.contains(n));
                }
            }
        }
    }
}

#[test]
fn axiom_d_on_fuzz_programs() {
    for p in fuzz_programs() {
        for m in models(&p).1 {
            assert!(m
                .literals
                .iter()
                .all(|l| !m.literals.contains(&l.complement())));
        }
    }
}

#[test]
fn olon_preemption_compiled() {
    let base = "#abducible p.\nc :- not p, not c.";
    let (_, ms) = models(&normlog_core::parse_program(base).unwrap());
    assert!(!ms.is_empty());
    assert!(ms.iter().all(|m| m.contains(&Literal::prop("p"))));
    let (_, ms) = models(&normlog_core::parse_program(&format!("{base}\nc :- d.\nd.")).unwrap());
    assert!(ms.iter().any(|m| !m.contains(&Literal::prop("p"))));
}
