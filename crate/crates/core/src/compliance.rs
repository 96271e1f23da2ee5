//! Checking a narrative of facts against a normative program.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::ast::{PredSig, Program};
use crate::error::ComplianceError;
use crate::grounder::{ground, GroundProgram};
use crate::solver::{enumerate_models, AnswerSet, EnumerateOptions};

#[derive(Clone, Debug, Serialize)]
pub struct ComplianceReport {
    #[serde(skip)]
    pub answer_sets: Vec<AnswerSet>,
    #[serde(skip)]
    pub ground: GroundProgram,
    pub models: Vec<Vec<String>>,
    pub narrative: String,
    pub satisfiable: bool,
    /// Exception atoms true in some model, sorted.
    pub triggered_exceptions: Vec<String>,
}

/// Exception predicates: the declared `#exceptions`, otherwise OLON heads.
pub fn exception_predicates(base: &Program) -> BTreeSet<PredSig> {
    if !base.exceptions.is_empty() {
        return base.exceptions.iter().cloned().collect();
    }
    base.rules
        .iter()
        .filter(|r| r.is_olon())
        .filter_map(|r| r.head.as_ref())
        .map(|h| h.atom.signature())
        .collect()
}

pub fn check_narrative(
    base: &Program,
    facts: &Program,
    narrative: &str,
) -> Result<ComplianceReport, ComplianceError> {
    if let Some(r) = facts.rules.iter().find(|r| !r.is_fact()) {
        return Err(ComplianceError::NonFactNarrative(r.to_string()));
    }
    let exceptions = exception_predicates(base);
    let mut program = base.clone();
    program.extend(facts.clone());
    let g = ground(&program)?;
    let answer_sets = enumerate_models(&g, EnumerateOptions::default());
    let triggered: BTreeSet<String> = answer_sets
        .iter()
        .flat_map(|m| m.literals.iter())
        .filter(|l| exceptions.contains(&l.atom.signature()))
        .map(ToString::to_string)
        .collect();
    Ok(ComplianceReport {
        models: answer_sets.iter().map(AnswerSet::shown_text).collect(),
        satisfiable: !answer_sets.is_empty(),
        narrative: narrative.to_owned(),
        triggered_exceptions: triggered.into_iter().collect(),
        answer_sets,
        ground: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    const BASE: &str =
        "late :- arrive(T), T .>. 12.\nexc :- late, not exc2, not exc.\nexc2 :- not exc.";

    #[test]
    fn olon_heads_detected() {
        let base = parse_program("c :- b, not c.\nd :- e.").unwrap();
        assert_eq!(exception_predicates(&base), [PredSig::new("c", 0)].into());
        let base = parse_program("#exceptions d/0.\nc :- b, not c.").unwrap();
        assert_eq!(exception_predicates(&base), [PredSig::new("d", 0)].into());
    }

    #[test]
    fn narrative_must_be_facts() {
        let base = parse_program(BASE).unwrap();
        let facts = parse_program("arrive(14) :- x.").unwrap();
        assert!(matches!(
            check_narrative(&base, &facts, "n"),
            Err(ComplianceError::NonFactNarrative(_))
        ));
    }

    #[test]
    fn report_fields() {
        let base = parse_program(
            "#exceptions late/0.\nlate :- arrive(T), T .>. 12.\n:- arrive(T), T .>. 20.",
        )
        .unwrap();
        let r = check_narrative(&base, &parse_program("arrive(14).").unwrap(), "n1").unwrap();
        assert!(r.satisfiable);
        assert_eq!(r.triggered_exceptions, vec!["late"]);
        let r = check_narrative(&base, &parse_program("arrive(9).").unwrap(), "n2").unwrap();
        assert!(r.triggered_exceptions.is_empty());
        let r = check_narrative(&base, &parse_program("arrive(22).").unwrap(), "n3").unwrap();
        assert!(!r.satisfiable);
        assert!(r.models.is_empty());
        assert_eq!(
            crate::output::to_canonical_json(&r),
            r#"{"models":[],"narrative":"n3","satisfiable":false,"triggered_exceptions":[]}"#
        );
    }
}
