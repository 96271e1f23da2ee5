use std::path::Path;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use normlog_core::{
    compile_theory, enumerate_models, ground, parse_deontic, parse_program, EnumerateOptions,
    Program,
};

const PROGRAMS: [&str; 5] = [
    "chisholm.deon",
    "fence_calm.asp",
    "speed.asp",
    "ross.asp",
    "car.asp",
];

fn load(name: &str) -> Program {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../cli/corpus/programs")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    if name.ends_with(".deon") {
        compile_theory(&parse_deontic(&text).unwrap()).unwrap().0
    } else {
        parse_program(&text).unwrap()
    }
}

fn car_with_narrative(n: u32) -> Program {
    let mut p = load("car.asp");
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../cli/corpus/narratives/narrative{n}.lp"));
    p.extend(parse_program(&std::fs::read_to_string(path).unwrap()).unwrap());
    p
}

fn grounding(c: &mut Criterion) {
    let mut group = c.benchmark_group("ground");
    for name in PROGRAMS {
        let p = load(name);
        group.bench_with_input(BenchmarkId::from_parameter(name), &p, |b, p| {
            b.iter(|| ground(p).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    let mut cases: Vec<(String, Program)> =
        PROGRAMS.iter().map(|n| (n.to_string(), load(n))).collect();
    cases.push(("car+narrative5".into(), car_with_narrative(5)));
    for (name, p) in cases {
        let g = ground(&p).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| enumerate_models(g, EnumerateOptions::default()))
        });
    }
    group.finish();
}

fn end_to_end(c: &mut Criterion) {
    let text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/corpus/programs/car.asp"),
    )
    .unwrap();
    c.bench_function("parse+ground+solve car", |b| {
        b.iter(|| {
            let g = ground(&parse_program(&text).unwrap()).unwrap();
            enumerate_models(&g, EnumerateOptions::default()).len()
        })
    });
}

criterion_group!(benches, grounding, enumeration, end_to_end);
criterion_main!(benches);
