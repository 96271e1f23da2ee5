//! Text and canonical JSON renderings of answer sets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ast::Literal;
use crate::grounder::GroundProgram;
use crate::solver::AnswerSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelJson {
    pub literals: Vec<String>,
    /// Shown atoms: "true", "false" (strongly negated) or "unknown".
    pub shown: BTreeMap<String, &'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelsJson {
    pub count: usize,
    pub models: Vec<ModelJson>,
}

/// Positive atoms of the program that `#show` lets through.
fn shown_atoms(g: &GroundProgram) -> Vec<Literal> {
    let mut out: Vec<Literal> = (0..g.atom_count())
        .filter(|&a| !g.is_hidden(a))
        .map(|a| g.literal(a))
        .filter(|l| g.show.is_empty() || g.show.contains(&l.atom.signature()))
        .map(|l| l.atom.clone().positive())
        .collect();
    out.sort_by_cached_key(ToString::to_string);
    out.dedup();
    out
}

pub fn model_json(g: &GroundProgram, m: &AnswerSet) -> ModelJson {
    let shown = shown_atoms(g)
        .into_iter()
        .map(|p| {
            let status = if m.contains(&p) {
                "true"
            } else if m.contains(&p.complement()) {
                "false"
            } else {
                "unknown"
            };
            (p.to_string(), status)
        })
        .collect();
    ModelJson {
        literals: m.shown_text(),
        shown,
    }
}

pub fn models_json(g: &GroundProgram, models: &[AnswerSet]) -> ModelsJson {
    ModelsJson {
        count: models.len(),
        models: models.iter().map(|m| model_json(g, m)).collect(),
    }
}

/// Compact JSON with sorted keys, one document per call.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // serde_json maps are BTreeMaps unless preserve_order is on, so a round
    // trip through Value sorts every object
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string(&v).expect("serializable")
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

/// `{go, tell}`; with `show_naf` each shown literal's complement is added as
/// `not l`.
pub fn format_model(m: &AnswerSet, show_naf: bool) -> String {
    let mut parts = m.shown_text();
    if show_naf {
        parts.extend(
            m.shown
                .iter()
                .map(|l| l.complement())
                .filter(|c| !m.contains(c))
                .map(|c| format!("not {c}")),
        );
    }
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounder::ground;
    use crate::parser::parse_program;
    use crate::solver::{enumerate_models, EnumerateOptions};

    #[test]
    fn dog_display() {
        let g = ground(&parse_program("-dog.\n-warning_sign :- -dog.").unwrap()).unwrap();
        let ms = enumerate_models(&g, EnumerateOptions::default());
        assert_eq!(format_model(&ms[0], false), "{-dog, -warning_sign}");
        assert_eq!(
            format_model(&ms[0], true),
            "{-dog, -warning_sign, not dog, not warning_sign}"
        );
        let json = to_canonical_json(&models_json(&g, &ms));
        assert_eq!(
            json,
            r#"{"count":1,"models":[{"literals":["-dog","-warning_sign"],"shown":{"dog":"false","warning_sign":"false"}}]}"#
        );
    }

    #[test]
    fn unknown_atoms_and_empty() {
        let g = ground(&parse_program("p :- not q.").unwrap()).unwrap();
        let ms = enumerate_models(&g, EnumerateOptions::default());
        assert_eq!(
            to_canonical_json(&models_json(&g, &ms)),
            r#"{"count":1,"models":[{"literals":["p"],"shown":{"p":"true","q":"unknown"}}]}"#
        );
        assert_eq!(
            to_canonical_json(&models_json(&g, &[])),
            r#"{"count":0,"models":[]}"#
        );
    }
}
