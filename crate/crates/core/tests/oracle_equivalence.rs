mod support {
    pub mod gen;
    pub mod oracle;
}

use std::collections::BTreeSet;

use normlog_core::grounder::GroundProgram;
use normlog_core::solver::is_stable;
use normlog_core::{enumerate_models, ground, parse_program, EnumerateOptions, Program};
use support::gen::{fuzz_programs, random_program, rng_for};
use support::oracle::{interval, oracle_models};

fn production(g: &GroundProgram) -> Vec<BTreeSet<usize>> {
    let opts = EnumerateOptions {
        max_models: None,
        project: false,
    };
    let mut out: Vec<_> = enumerate_models(g, opts)
        .into_iter()
        .map(|m| m.atoms)
        .collect();
    out.sort();
    out
}

fn assert_same(p: &Program) {
    let g = ground(p).unwrap();
    assert_eq!(
        production(&g),
        oracle_models(&g),
        "program:\n{}",
        normlog_core::render_program(p)
    );
}

#[test]
fn fuzz_programs_match_oracle() {
    for p in fuzz_programs() {
        assert_same(&p);
    }
}

#[test]
fn larger_programs_match_oracle() {
    for i in 0..100 {
        assert_same(&random_program(&mut rng_for(10_000 + i), 14, 30));
    }
}

#[test]
fn is_stable_agrees_with_definition() {
    for i in 0..200 {
        let p = random_program(&mut rng_for(20_000 + i), 8, 12);
        let g = ground(&p).unwrap();
        let n = g.atom_count();
        for mask in 0u32..(1 << n) {
            let cand: BTreeSet<usize> = (0..n).filter(|a| mask >> a & 1 == 1).collect();
            assert_eq!(
                is_stable(&g, &cand),
                support::oracle::oracle_is_stable(&g, &cand),
                "candidate {cand:?} of\n{}",
                normlog_core::render_program(&p)
            );
        }
    }
}

#[test]
fn interval_contains_every_model() {
    for p in fuzz_programs().iter().take(200) {
        let g = ground(p).unwrap();
        let (certain, possible) = interval(&g);
        for m in production(&g) {
            assert!(certain.is_subset(&m) && m.is_subset(&possible));
        }
    }
}

#[test]
fn hand_written_programs_match_oracle() {
    let programs = [
        "p :- not p.",
        "p :- p.",
        "a :- not b.\nb :- not a.\nc :- a.\nc :- b.",
        "a :- not b.\nb :- not c.\nc :- not a.",
        "p :- not -p.\n-p :- not p.\nq :- p.\n:- q.",
        "#abducible go. #abducible -go. #abducible tell. #abducible -tell.\n\
         -go :- not go, not -go.\n:- go, not tell.\n:- -go, not -tell.",
        "x(1). x(2). y(X) :- x(X), not z(X). z(X) :- x(X), not y(X).",
    ];
    for text in programs {
        assert_same(&parse_program(text).unwrap());
    }
}
