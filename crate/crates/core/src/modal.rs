//! Alethic reading of a single model.

use std::fmt;

use serde::Serialize;

use crate::ast::{Atom, BodyElem};
use crate::compiler::{alethic_pattern, AlethicNotion, NotionPattern};
use crate::solver::AnswerSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModalStatus {
    Necessary,
    Impossible,
    Contingent,
}

impl fmt::Display for ModalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModalStatus::Necessary => "NECESSARY",
            ModalStatus::Impossible => "IMPOSSIBLE",
            ModalStatus::Contingent => "CONTINGENT",
        })
    }
}

pub fn modal_classify(m: &AnswerSet, p: &Atom) -> ModalStatus {
    if m.contains(&p.clone().positive()) {
        ModalStatus::Necessary
    } else if m.contains(&p.clone().negative()) {
        ModalStatus::Impossible
    } else {
        ModalStatus::Contingent
    }
}

fn holds(m: &AnswerSet, e: &BodyElem) -> bool {
    match e {
        BodyElem::Pos(l) => m.contains(l),
        BodyElem::Naf(l) => !m.contains(l),
        BodyElem::Builtin { .. } => false,
    }
}

pub fn evaluate_notion(m: &AnswerSet, n: AlethicNotion, p: &Atom) -> bool {
    match alethic_pattern(n, p) {
        NotionPattern::All(es) => es.iter().all(|e| holds(m, e)),
        NotionPattern::Any(es) => es.iter().any(|e| holds(m, e)),
    }
}
