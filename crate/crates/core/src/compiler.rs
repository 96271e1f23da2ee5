//! Lowers normative statements to answer-set rules.
//!
//! | statement                        | emitted rule                     |
//! |----------------------------------|----------------------------------|
//! | `obligatory p`                   | `:- not p.`                      |
//! | `forbidden p`                    | `:- not -p.`                     |
//! | `obligatory p when q1..qn`       | `:- q1, .., qn, not p.`          |
//! | `forbidden p when q1..qn`        | `:- q1, .., qn, not -p.`         |
//! | `obligatory p [when B] unless c` | `c :- B, not p, not c.`          |
//! | `forbidden q [when B] unless c`  | `c :- B, q, not c.`              |
//! | `permitted p when B except e`    | `p :- B, not e.`                 |
//! | `abducible g`                    | `g :- not o_not_g.` and `o_not_g :- not g.` |

use std::collections::BTreeSet;

use serde::Serialize;

use crate::ast::{Atom, BodyElem, Literal, PredSig, Program, Rule};
use crate::error::CompileError;
use crate::theory::{DeonticStatement, DeonticTheory, NormKind};

/// Predicates starting with this prefix belong to the compiler.
pub const RESERVED_PREFIX: &str = "o_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pattern {
    #[serde(rename = "OB-denial")]
    ObDenial,
    #[serde(rename = "IM-denial")]
    ImDenial,
    #[serde(rename = "COND-OB")]
    CondOb,
    #[serde(rename = "COND-IM")]
    CondIm,
    #[serde(rename = "OLON-OB")]
    OlonOb,
    #[serde(rename = "OLON-IM")]
    OlonIm,
    #[serde(rename = "PERM-DEFAULT")]
    PermDefault,
    #[serde(rename = "EVEN-LOOP")]
    EvenLoop,
    #[serde(rename = "FACT")]
    Fact,
    #[serde(rename = "RAW")]
    Raw,
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::ObDenial => "OB-denial",
            Pattern::ImDenial => "IM-denial",
            Pattern::CondOb => "COND-OB",
            Pattern::CondIm => "COND-IM",
            Pattern::OlonOb => "OLON-OB",
            Pattern::OlonIm => "OLON-IM",
            Pattern::PermDefault => "PERM-DEFAULT",
            Pattern::EvenLoop => "EVEN-LOOP",
            Pattern::Fact => "FACT",
            Pattern::Raw => "RAW",
        }
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How the `unless` literal of a preemptable norm relates to the rest of the theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preemption {
    /// The literal also occurs elsewhere in the theory (as with `-go`).
    ExistingLiteral,
    /// The literal is a condition atom introduced just for this norm.
    FreshCondition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub index: usize,
    pub statement: String,
    pub pattern: Pattern,
    pub rules: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preemption: Option<Preemption>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompilationTrace {
    pub entries: Vec<TraceEntry>,
}

impl CompilationTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("trace serializes")
    }

    /// Heads of emitted odd-loop rules.
    pub fn exception_heads(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| matches!(e.pattern, Pattern::OlonOb | Pattern::OlonIm))
            .flat_map(|e| e.rules.iter())
            .filter_map(|r| r.split(" :- ").next().map(str::to_owned))
            .collect()
    }
}

/// `:- not p.`
pub fn compile_obligation(target: &Literal) -> Rule {
    Rule::denial(vec![BodyElem::Naf(target.clone())])
}

/// `:- not -p.`
pub fn compile_impermissibility(target: &Literal) -> Rule {
    Rule::denial(vec![BodyElem::Naf(target.complement())])
}

/// The literal a norm demands: `p` for obligations, `-p` for impermissibilities.
fn demanded(target: &Literal, kind: NormKind) -> Literal {
    match kind {
        NormKind::Obligatory => target.clone(),
        NormKind::Impermissible => target.complement(),
    }
}

/// Conditional norm as a denial: the conditions come first, then `not p` (or `not -p`).
pub fn compile_conditional(
    target: &Literal,
    kind: NormKind,
    conditions: &[BodyElem],
) -> Result<Rule, CompileError> {
    if conditions.is_empty() {
        return Err(CompileError::EmptyConditions {
            target: target.clone(),
        });
    }
    let mut body = conditions.to_vec();
    body.push(BodyElem::Naf(demanded(target, kind)));
    Ok(Rule::denial(body))
}

/// Norm that is dropped once `unless` is derivable: an odd loop on `unless`.
pub fn compile_preemptable(
    target: &Literal,
    kind: NormKind,
    conditions: &[BodyElem],
    unless: &Literal,
) -> Result<Rule, CompileError> {
    if unless == target {
        return Err(CompileError::UnlessEqualsTarget {
            target: target.clone(),
        });
    }
    let mut body = conditions.to_vec();
    match kind {
        NormKind::Obligatory => body.push(BodyElem::Naf(target.clone())),
        NormKind::Impermissible => body.push(BodyElem::Pos(target.clone())),
    }
    body.push(BodyElem::Naf(unless.clone()));
    Ok(Rule {
        head: Some(unless.clone()),
        body,
    })
}

/// Default rule: `p :- B, not e1, .., not en.`
pub fn compile_permission(
    target: &Literal,
    conditions: &[BodyElem],
    exceptions: &[Literal],
) -> Rule {
    let mut body = conditions.to_vec();
    body.extend(exceptions.iter().cloned().map(BodyElem::Naf));
    Rule {
        head: Some(target.clone()),
        body,
    }
}

/// Name of the complementary atom in an abducible's even loop.
pub fn fresh_abducible_atom(abducible: &Literal) -> Atom {
    // `-g` gets a doubled underscore; user predicates start lowercase, so the
    // two polarities of one atom can never share a fresh name.
    let sep = if abducible.strong_neg { "_" } else { "" };
    Atom::new(
        &format!("{RESERVED_PREFIX}not_{sep}{}", abducible.atom.predicate),
        abducible.atom.args.clone(),
    )
}

/// Even loop over negation: `g :- not o_not_g.` and `o_not_g :- not g.`
pub fn expand_abducible(abducible: &Literal) -> Result<(Rule, Rule, Atom), CompileError> {
    check_reserved(&abducible.atom.predicate)?;
    let fresh = fresh_abducible_atom(abducible);
    let choose = Rule {
        head: Some(abducible.clone()),
        body: vec![BodyElem::Naf(fresh.clone().positive())],
    };
    let reject = Rule {
        head: Some(fresh.clone().positive()),
        body: vec![BodyElem::Naf(abducible.clone())],
    };
    Ok((choose, reject, fresh))
}

fn check_reserved(predicate: &str) -> Result<(), CompileError> {
    if predicate.starts_with(RESERVED_PREFIX) {
        Err(CompileError::FreshNameCollision {
            predicate: predicate.to_owned(),
            prefix: RESERVED_PREFIX,
        })
    } else {
        Ok(())
    }
}

pub fn is_reserved(predicate: &str) -> bool {
    predicate.starts_with(RESERVED_PREFIX)
}

/// Replace a program's `#abducible` declarations by their even loops.
pub fn expand_program_abducibles(program: &Program) -> Result<Program, CompileError> {
    if program.abducibles.is_empty() {
        return Ok(program.clone());
    }
    for lit in program.literals() {
        check_reserved(&lit.atom.predicate)?;
    }
    let mut out = Program {
        abducibles: Vec::new(),
        ..program.clone()
    };
    for a in &program.abducibles {
        let (choose, reject, _) = expand_abducible(a)?;
        out.rules.push(choose);
        out.rules.push(reject);
    }
    Ok(out)
}

fn statement_literals(statement: &DeonticStatement) -> Vec<&Literal> {
    fn body_lits(body: &[BodyElem]) -> impl Iterator<Item = &Literal> {
        body.iter().filter_map(BodyElem::literal)
    }
    match statement {
        DeonticStatement::Obligation {
            target,
            conditions,
            unless,
        }
        | DeonticStatement::Impermissibility {
            target,
            conditions,
            unless,
        } => {
            let mut v = vec![target];
            v.extend(body_lits(conditions));
            v.extend(unless.iter());
            v
        }
        DeonticStatement::Permission {
            target,
            conditions,
            exceptions,
        } => {
            let mut v = vec![target];
            v.extend(body_lits(conditions));
            v.extend(exceptions.iter());
            v
        }
        DeonticStatement::Fact(l) | DeonticStatement::Abducible(l) => vec![l],
        DeonticStatement::AsRule(r) => r.literals().collect(),
    }
}

fn compile_statement(
    theory: &DeonticTheory,
    index: usize,
) -> Result<(Vec<Rule>, Pattern, Option<Preemption>), CompileError> {
    let statement = &theory.statements[index];
    let norm = match statement {
        DeonticStatement::Obligation {
            target,
            conditions,
            unless,
        } => Some((NormKind::Obligatory, target, conditions, unless)),
        DeonticStatement::Impermissibility {
            target,
            conditions,
            unless,
        } => Some((NormKind::Impermissible, target, conditions, unless)),
        _ => None,
    };
    if let Some((kind, target, conditions, unless)) = norm {
        return match (unless, conditions.is_empty(), kind) {
            (Some(c), _, _) => {
                let rule = compile_preemptable(target, kind, conditions, c)?;
                let elsewhere = theory.statements.iter().enumerate().any(|(i, s)| {
                    i != index && statement_literals(s).into_iter().any(|l| l.atom == c.atom)
                });
                let preemption = if elsewhere {
                    Preemption::ExistingLiteral
                } else {
                    Preemption::FreshCondition
                };
                let pattern = if kind == NormKind::Obligatory {
                    Pattern::OlonOb
                } else {
                    Pattern::OlonIm
                };
                Ok((vec![rule], pattern, Some(preemption)))
            }
            (None, true, NormKind::Obligatory) => {
                Ok((vec![compile_obligation(target)], Pattern::ObDenial, None))
            }
            (None, true, NormKind::Impermissible) => Ok((
                vec![compile_impermissibility(target)],
                Pattern::ImDenial,
                None,
            )),
            (None, false, NormKind::Obligatory) => Ok((
                vec![compile_conditional(target, kind, conditions)?],
                Pattern::CondOb,
                None,
            )),
            (None, false, NormKind::Impermissible) => Ok((
                vec![compile_conditional(target, kind, conditions)?],
                Pattern::CondIm,
                None,
            )),
        };
    }
    match statement {
        DeonticStatement::Permission {
            target,
            conditions,
            exceptions,
        } => Ok((
            vec![compile_permission(target, conditions, exceptions)],
            Pattern::PermDefault,
            None,
        )),
        DeonticStatement::Fact(l) => Ok((vec![Rule::fact(l.clone())], Pattern::Fact, None)),
        DeonticStatement::AsRule(r) => Ok((vec![r.clone()], Pattern::Raw, None)),
        DeonticStatement::Abducible(a) => {
            let (choose, reject, _) = expand_abducible(a)?;
            Ok((vec![choose, reject], Pattern::EvenLoop, None))
        }
        DeonticStatement::Obligation { .. } | DeonticStatement::Impermissibility { .. } => {
            unreachable!("norms handled above")
        }
    }
}

/// Lower a whole theory. Rules appear in statement order; every failing
/// statement is reported, not just the first.
pub fn compile_theory(theory: &DeonticTheory) -> Result<(Program, CompilationTrace), CompileError> {
    let mut errors = Vec::new();
    let mut program = Program {
        show: theory.show.clone(),
        ..Program::default()
    };
    let mut trace = CompilationTrace::default();
    let mut exceptions: BTreeSet<PredSig> = BTreeSet::new();

    let has_abducibles = theory
        .statements
        .iter()
        .any(|s| matches!(s, DeonticStatement::Abducible(_)));
    if has_abducibles {
        let clash = theory
            .statements
            .iter()
            .flat_map(statement_literals)
            .find_map(|l| check_reserved(&l.atom.predicate).err());
        errors.extend(clash);
    }

    for index in 0..theory.statements.len() {
        match compile_statement(theory, index) {
            Ok((rules, pattern, preemption)) => {
                if matches!(pattern, Pattern::OlonOb | Pattern::OlonIm) {
                    if let Some(h) = &rules[0].head {
                        exceptions.insert(h.atom.signature());
                    }
                }
                trace.entries.push(TraceEntry {
                    index,
                    statement: theory.statements[index].to_string(),
                    pattern,
                    rules: rules.iter().map(ToString::to_string).collect(),
                    preemption,
                });
                program.rules.extend(rules);
            }
            Err(e) => errors.push(CompileError::Statement {
                index,
                span: theory.span_of(index),
                source: Box::new(e),
            }),
        }
    }
    match errors.len() {
        0 => {
            program.exceptions = exceptions.into_iter().collect();
            Ok((program, trace))
        }
        1 => Err(errors.pop().unwrap()),
        _ => Err(CompileError::Many(errors)),
    }
}

/// The six alethic notions, in their customary order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AlethicNotion {
    Necessary,
    Possible,
    Impossible,
    NonNecessary,
    Contingent,
    NonContingent,
}

impl AlethicNotion {
    pub const ALL: [AlethicNotion; 6] = [
        AlethicNotion::Necessary,
        AlethicNotion::Possible,
        AlethicNotion::Impossible,
        AlethicNotion::NonNecessary,
        AlethicNotion::Contingent,
        AlethicNotion::NonContingent,
    ];
}

/// Negation pattern a notion stands for over a single model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotionPattern {
    /// Every element must hold.
    All(Vec<BodyElem>),
    /// At least one element must hold.
    Any(Vec<BodyElem>),
}

impl std::fmt::Display for NotionPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (elems, sep) = match self {
            NotionPattern::All(e) => (e, " ∧ "),
            NotionPattern::Any(e) => (e, " ∨ "),
        };
        let parts: Vec<String> = elems.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

pub fn alethic_pattern(notion: AlethicNotion, atom: &Atom) -> NotionPattern {
    let p = atom.clone().positive();
    let neg_p = atom.clone().negative();
    match notion {
        AlethicNotion::Necessary => NotionPattern::All(vec![BodyElem::Pos(p)]),
        AlethicNotion::Possible => NotionPattern::All(vec![BodyElem::Naf(neg_p)]),
        AlethicNotion::Impossible => NotionPattern::All(vec![BodyElem::Pos(neg_p)]),
        AlethicNotion::NonNecessary => NotionPattern::All(vec![BodyElem::Naf(p)]),
        AlethicNotion::Contingent => {
            NotionPattern::All(vec![BodyElem::Naf(p), BodyElem::Naf(neg_p)])
        }
        AlethicNotion::NonContingent => {
            NotionPattern::Any(vec![BodyElem::Pos(p), BodyElem::Pos(neg_p)])
        }
    }
}
