//! Command implementations behind the `normlog` binary.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use normlog_core::compiler::CompilationTrace;
use normlog_core::grounder::GroundProgram;
use normlog_core::justify::{denial_checks, justify};
use normlog_core::modal::{evaluate_notion, modal_classify};
use normlog_core::output::{format_model, models_json, to_canonical_json, to_pretty_json};
use normlog_core::solver::{query, QueryOutcome};
use normlog_core::{
    compile_theory, ground, parse_deontic, parse_program, parse_query, render_program,
    AlethicNotion, AnswerSet, Atom, ComplianceReport, EnumerateOptions, Literal, Program, Query,
};

pub mod corpus;

/// Exit status for a run that found what it was asked for.
pub const EXIT_OK: i32 = 0;
/// No model, or a corpus mismatch.
pub const EXIT_NONE: i32 = 1;
/// Bad input or internal failure.
pub const EXIT_ERROR: i32 = 2;

pub struct Loaded {
    pub program: Program,
    pub trace: Option<CompilationTrace>,
}

fn is_deontic(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "deon")
}

/// Read one source file; `.deon` files are compiled, anything else is parsed
/// as a rule program.
pub fn load_file(path: &Path) -> Result<Loaded> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let where_ = path.display();
    if is_deontic(path) {
        let theory = parse_deontic(&text).with_context(|| format!("{where_}"))?;
        let (program, trace) = compile_theory(&theory).with_context(|| format!("{where_}"))?;
        Ok(Loaded {
            program,
            trace: Some(trace),
        })
    } else {
        let program = parse_program(&text).with_context(|| format!("{where_}"))?;
        Ok(Loaded {
            program,
            trace: None,
        })
    }
}

pub fn load_programs<P: AsRef<Path>>(paths: &[P]) -> Result<Program> {
    let mut program = Program::default();
    for p in paths {
        program.extend(load_file(p.as_ref())?.program);
    }
    Ok(program)
}

pub fn compile(input: &Path, output: &Path, json: bool) -> Result<i32> {
    let text =
        fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
    let theory = parse_deontic(&text).with_context(|| format!("{}", input.display()))?;
    let (program, trace) =
        compile_theory(&theory).with_context(|| format!("{}", input.display()))?;
    fs::write(output, render_program(&program))
        .with_context(|| format!("cannot write {}", output.display()))?;
    if json {
        println!("{}", trace.to_json());
    } else {
        for e in &trace.entries {
            println!(
                "{:>3}  {:<13} {}",
                e.index,
                e.pattern.to_string(),
                e.statement
            );
            for r in &e.rules {
                println!("       => {r}");
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Clone, Debug, Default)]
pub struct SolveRequest {
    pub inputs: Vec<PathBuf>,
    pub query: Option<String>,
    pub max_models: Option<usize>,
    pub json: bool,
    pub dump_ground: bool,
    pub show_naf: bool,
    pub justify: Option<String>,
    pub modal: Option<String>,
}

pub struct Solved {
    pub ground: GroundProgram,
    pub outcome: QueryOutcome,
}

pub fn solve_program(program: &Program, q: &Query, max_models: Option<usize>) -> Result<Solved> {
    let g = ground(program)?;
    let outcome = query(
        &g,
        q,
        EnumerateOptions {
            max_models,
            project: true,
        },
    )?;
    Ok(Solved { ground: g, outcome })
}

pub fn parse_query_arg(q: Option<&str>) -> Result<Query> {
    Ok(match q {
        Some(text) => parse_query(text).context("in --query")?,
        None => Query::default(),
    })
}

/// Canonical JSON of the models satisfying the query.
pub fn solve_to_json(
    program: &Program,
    q: Option<&str>,
    max_models: Option<usize>,
) -> Result<String> {
    let solved = solve_program(program, &parse_query_arg(q)?, max_models)?;
    Ok(to_canonical_json(&models_json(
        &solved.ground,
        &solved.outcome.models,
    )))
}

fn parse_literal_arg(text: &str, flag: &str) -> Result<Literal> {
    let q = parse_query(text).with_context(|| format!("in {flag}"))?;
    match q.goals.as_slice() {
        [normlog_core::BodyElem::Pos(l)] => Ok(l.clone()),
        _ => bail!("{flag} expects a single literal, got `{text}`"),
    }
}

fn print_justifications(g: &GroundProgram, models: &[AnswerSet], lit: &Literal) {
    for (i, m) in models.iter().enumerate() {
        println!("Justification in model {}:", i + 1);
        match justify(g, m, lit) {
            Ok(j) => print!("{j}"),
            Err(e) => println!("  {e}"),
        }
        for line in denial_checks(g, m) {
            println!("  {line}");
        }
    }
}

pub fn solve(req: &SolveRequest) -> Result<i32> {
    let program = load_programs(&req.inputs)?;
    if req.dump_ground {
        let g = ground(&program)?;
        print!("{}", render_program(&g.to_program()));
        return Ok(EXIT_OK);
    }
    let justify_lit = req
        .justify
        .as_deref()
        .map(|t| parse_literal_arg(t, "--justify"))
        .transpose()?;
    let modal_atom = req
        .modal
        .as_deref()
        .map(|t| parse_literal_arg(t, "--modal"))
        .transpose()?;
    let solved = solve_program(
        &program,
        &parse_query_arg(req.query.as_deref())?,
        req.max_models,
    )?;
    for w in &solved.outcome.warnings {
        eprintln!("warning: {w}");
    }
    let models = &solved.outcome.models;
    if req.json {
        println!(
            "{}",
            to_canonical_json(&models_json(&solved.ground, models))
        );
    } else {
        for (i, m) in models.iter().enumerate() {
            println!("Model {}: {}", i + 1, format_model(m, req.show_naf));
        }
        println!(
            "{} model{}",
            models.len(),
            if models.len() == 1 { "" } else { "s" }
        );
    }
    if let Some(l) = &justify_lit {
        print_justifications(&solved.ground, models, l);
    }
    if let Some(l) = modal_atom {
        print_modal(models, &l.atom);
    }
    Ok(if models.is_empty() {
        EXIT_NONE
    } else {
        EXIT_OK
    })
}

fn print_modal(models: &[AnswerSet], atom: &Atom) {
    for (i, m) in models.iter().enumerate() {
        let holding: Vec<String> = AlethicNotion::ALL
            .iter()
            .filter(|&&n| evaluate_notion(m, n, atom))
            .map(|n| {
                serde_json::to_value(n)
                    .map(|v| v.as_str().unwrap_or_default().to_owned())
                    .unwrap_or_default()
            })
            .collect();
        println!(
            "Model {}: {atom} is {} ({})",
            i + 1,
            modal_classify(m, atom),
            holding.join(", ")
        );
    }
}

pub fn check_files(base: &Path, narrative: &Path) -> Result<ComplianceReport> {
    let base_program = load_programs(&[base])?;
    let facts = load_programs(&[narrative])?;
    let id = narrative
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(normlog_core::check_narrative(&base_program, &facts, &id)?)
}

pub fn check(base: &Path, narrative: &Path, json: bool, justify_arg: Option<&str>) -> Result<i32> {
    let report = check_files(base, narrative)?;
    let justify_lit = justify_arg
        .map(|t| parse_literal_arg(t, "--justify"))
        .transpose()?;
    if json {
        println!("{}", to_pretty_json(&report));
    } else {
        println!("narrative: {}", report.narrative);
        println!("satisfiable: {}", report.satisfiable);
        println!(
            "triggered exceptions: {{{}}}",
            report.triggered_exceptions.join(", ")
        );
        for (i, m) in report.answer_sets.iter().enumerate() {
            println!("Model {}: {}", i + 1, format_model(m, false));
        }
    }
    if let Some(l) = &justify_lit {
        print_justifications(&report.ground, &report.answer_sets, l);
    }
    Ok(if report.satisfiable {
        EXIT_OK
    } else {
        EXIT_NONE
    })
}
