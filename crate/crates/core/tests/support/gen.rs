//! Seeded random ground programs.

#![allow(dead_code)]

use normlog_core::{Atom, BodyElem, Literal, Program, Rule};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `NORMLOG_SEED` if set, else a fixed default.
pub fn seed() -> u64 {
    std::env::var("NORMLOG_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng_for(case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(
        seed()
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(case),
    )
}

/// Up to `max_atoms` literals over a handful of names, some strongly negated.
pub fn literal_pool<R: Rng>(rng: &mut R, max_atoms: usize) -> Vec<Literal> {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
    let mut pool = Vec::new();
    for name in names.iter().take(rng.gen_range(1..=names.len())) {
        pool.push(Atom::prop(name).positive());
        if rng.gen_bool(0.3) {
            pool.push(Atom::prop(name).negative());
        }
    }
    pool.shuffle(rng);
    pool.truncate(max_atoms);
    pool
}

pub fn random_body<R: Rng>(rng: &mut R, pool: &[Literal], max_len: usize) -> Vec<BodyElem> {
    (0..rng.gen_range(0..=max_len))
        .map(|_| {
            let l = pool.choose(rng).unwrap().clone();
            if rng.gen_bool(0.5) {
                BodyElem::Pos(l)
            } else {
                BodyElem::Naf(l)
            }
        })
        .collect()
}

/// A ground program with at most `max_atoms` literals and `max_rules` rules.
pub fn random_program<R: Rng>(rng: &mut R, max_atoms: usize, max_rules: usize) -> Program {
    let pool = literal_pool(rng, max_atoms);
    let rules = (0..rng.gen_range(1..=max_rules))
        .map(|_| {
            let mut body = random_body(rng, &pool, 3);
            if rng.gen_bool(0.15) {
                if body.is_empty() {
                    body.push(BodyElem::Pos(pool.choose(rng).unwrap().clone()));
                }
                Rule::denial(body)
            } else {
                Rule {
                    head: Some(pool.choose(rng).unwrap().clone()),
                    body,
                }
            }
        })
        .collect();
    Program::new(rules)
}

/// The 500 fuzz programs shared by the property suites.
pub fn fuzz_programs() -> Vec<Program> {
    (0..500)
        .map(|i| random_program(&mut rng_for(i), 10, 20))
        .collect()
}
