//! Normative statements as written in `.deon` files, before lowering to rules.

use std::fmt;

use serde::Serialize;

use crate::ast::{BodyElem, Literal, PredSig, Rule};
use crate::error::SourceSpan;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeonticStatement {
    /// `obligatory L [when B] [unless c].`
    Obligation {
        target: Literal,
        conditions: Vec<BodyElem>,
        unless: Option<Literal>,
    },
    /// `forbidden L [when B] [unless c].`
    Impermissibility {
        target: Literal,
        conditions: Vec<BodyElem>,
        unless: Option<Literal>,
    },
    /// `permitted L [when B] [except E].`
    Permission {
        target: Literal,
        conditions: Vec<BodyElem>,
        exceptions: Vec<Literal>,
    },
    Fact(Literal),
    AsRule(Rule),
    Abducible(Literal),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeonticTheory {
    pub statements: Vec<DeonticStatement>,
    /// One span per statement, same order.
    pub spans: Vec<SourceSpan>,
    pub show: Vec<PredSig>,
}

impl DeonticTheory {
    pub fn new(statements: Vec<DeonticStatement>) -> Self {
        let spans = vec![SourceSpan::default(); statements.len()];
        DeonticTheory {
            statements,
            spans,
            show: Vec::new(),
        }
    }

    pub fn span_of(&self, index: usize) -> SourceSpan {
        self.spans.get(index).copied().unwrap_or_default()
    }
}

/// Which deontic operator a norm uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormKind {
    #[serde(rename = "OB")]
    Obligatory,
    #[serde(rename = "IM")]
    Impermissible,
}

fn write_body(f: &mut fmt::Formatter<'_>, body: &[BodyElem]) -> fmt::Result {
    for (i, b) in body.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{b}")?;
    }
    Ok(())
}

impl fmt::Display for DeonticStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
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
                let kw = if matches!(self, DeonticStatement::Obligation { .. }) {
                    "obligatory"
                } else {
                    "forbidden"
                };
                write!(f, "{kw} {target}")?;
                if !conditions.is_empty() {
                    f.write_str(" when ")?;
                    write_body(f, conditions)?;
                }
                if let Some(c) = unless {
                    write!(f, " unless {c}")?;
                }
                f.write_str(".")
            }
            DeonticStatement::Permission {
                target,
                conditions,
                exceptions,
            } => {
                write!(f, "permitted {target}")?;
                if !conditions.is_empty() {
                    f.write_str(" when ")?;
                    write_body(f, conditions)?;
                }
                if !exceptions.is_empty() {
                    f.write_str(" except ")?;
                    for (i, e) in exceptions.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{e}")?;
                    }
                }
                f.write_str(".")
            }
            DeonticStatement::Fact(l) => write!(f, "fact {l}."),
            DeonticStatement::AsRule(r) => write!(f, "rule {r}"),
            DeonticStatement::Abducible(l) => write!(f, "abducible {l}."),
        }
    }
}
