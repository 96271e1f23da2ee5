//! Why a literal holds in a model.
//!
//! Trees follow the derivation stages of the least model of the reduct, so a
//! child is always derived strictly before its parent.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::ast::{Literal, Rule};
use crate::error::SolveError;
use crate::grounder::{AtomId, GroundProgram};
use crate::solver::AnswerSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Support {
    Fact,
    Rule,
    Abduced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Justification {
    pub children: Vec<Justification>,
    pub literal: Literal,
    /// Default-negated body literals, all absent from the model.
    pub naf: Vec<Literal>,
    /// The ground rule used, as text.
    pub rule: String,
    pub support: Support,
    #[serde(skip)]
    pub ground_rule: Rule,
}

impl Justification {
    /// Literals at the leaves (facts and abduced choices).
    pub fn leaves(&self) -> Vec<&Literal> {
        if self.children.is_empty() {
            return vec![&self.literal];
        }
        self.children
            .iter()
            .flat_map(Justification::leaves)
            .collect()
    }

    /// Rules of the tree, children before parents.
    pub fn rules_bottom_up(&self) -> Vec<&Rule> {
        let mut out: Vec<&Rule> = self
            .children
            .iter()
            .flat_map(Justification::rules_bottom_up)
            .collect();
        out.push(&self.ground_rule);
        out
    }

    pub fn all_naf(&self) -> Vec<&Literal> {
        let mut out: Vec<&Literal> = self.naf.iter().collect();
        out.extend(self.children.iter().flat_map(Justification::all_naf));
        out
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self.support {
            Support::Fact => writeln!(f, "{pad}{} [fact]", self.literal)?,
            Support::Abduced => writeln!(f, "{pad}{} [abduced]", self.literal)?,
            Support::Rule => writeln!(f, "{pad}{} <- {}", self.literal, self.rule)?,
        }
        for c in &self.children {
            c.write_indented(f, depth + 1)?;
        }
        for n in &self.naf {
            writeln!(f, "{pad}  not {n} [absent]")?;
        }
        Ok(())
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// Stage at which each atom enters the least model of the reduct.
fn stages(g: &GroundProgram, m: &BTreeSet<AtomId>) -> Vec<Option<usize>> {
    let mut stage = vec![None; g.atom_count()];
    let live: Vec<_> = g
        .rules
        .iter()
        .filter(|r| r.head.is_some() && !r.neg.iter().any(|n| m.contains(n)))
        .collect();
    let mut k = 0;
    loop {
        let fresh: Vec<AtomId> = live
            .iter()
            .filter(|r| r.pos.iter().all(|&p| stage[p].is_some_and(|s| s < k + 1)))
            .filter_map(|r| r.head)
            .filter(|&h| stage[h].is_none())
            .collect();
        if fresh.is_empty() {
            return stage;
        }
        k += 1;
        for h in fresh {
            stage[h] = Some(k);
        }
    }
}

pub fn justify(
    g: &GroundProgram,
    m: &AnswerSet,
    lit: &Literal,
) -> Result<Justification, SolveError> {
    let id = g
        .id_of(lit)
        .filter(|a| m.atoms.contains(a))
        .ok_or_else(|| SolveError::LiteralNotInModel(lit.clone()))?;
    let stage = stages(g, &m.atoms);
    build(g, &m.atoms, &stage, id).ok_or_else(|| SolveError::LiteralNotInModel(lit.clone()))
}

fn build(
    g: &GroundProgram,
    m: &BTreeSet<AtomId>,
    stage: &[Option<usize>],
    a: AtomId,
) -> Option<Justification> {
    let s = stage[a]?;
    let rule = g.rules.iter().find(|r| {
        r.head == Some(a)
            && !r.neg.iter().any(|n| m.contains(n))
            && r.pos.iter().all(|&p| stage[p].is_some_and(|ps| ps < s))
    })?;
    let children = rule
        .pos
        .iter()
        .map(|&p| build(g, m, stage, p))
        .collect::<Option<Vec<_>>>()?;
    let abduced =
        rule.pos.is_empty() && !rule.neg.is_empty() && rule.neg.iter().all(|&n| g.is_hidden(n));
    let support = if abduced {
        Support::Abduced
    } else if rule.pos.is_empty() && rule.neg.is_empty() {
        Support::Fact
    } else {
        Support::Rule
    };
    let naf = if abduced {
        Vec::new()
    } else {
        rule.neg.iter().map(|&n| g.literal(n).clone()).collect()
    };
    let ground_rule = g.rule_to_ast(rule);
    Some(Justification {
        children,
        literal: g.literal(a).clone(),
        naf,
        rule: ground_rule.to_string(),
        support,
        ground_rule,
    })
}

/// One line per denial of the program: `:- B.` has no violating instance.
pub fn denial_checks(g: &GroundProgram, m: &AnswerSet) -> Vec<String> {
    g.rules
        .iter()
        .filter(|r| r.head.is_none())
        .map(|r| {
            let violated = r.pos.iter().all(|p| m.atoms.contains(p))
                && !r.neg.iter().any(|n| m.atoms.contains(n));
            let verdict = if violated {
                "violated"
            } else {
                "no violating instance"
            };
            format!("{}  {verdict}", g.rule_to_ast(r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounder::ground;
    use crate::parser::parse_program;
    use crate::solver::{enumerate_models, EnumerateOptions};

    fn setup(text: &str) -> (GroundProgram, Vec<AnswerSet>) {
        let g = ground(&parse_program(text).unwrap()).unwrap();
        let ms = enumerate_models(&g, EnumerateOptions::default());
        (g, ms)
    }

    #[test]
    fn fact_is_single_node() {
        let (g, ms) = setup("p.\nq :- p, not r.");
        let j = justify(&g, &ms[0], &Literal::prop("p")).unwrap();
        assert_eq!(j.support, Support::Fact);
        assert!(j.children.is_empty());
        let j = justify(&g, &ms[0], &Literal::prop("q")).unwrap();
        assert_eq!(j.children.len(), 1);
        assert_eq!(j.naf, vec![Literal::prop("r")]);
    }

    #[test]
    fn abduced_leaf() {
        let (g, ms) = setup("#abducible s.\nt :- s.");
        let with_s = ms.iter().find(|m| m.contains(&Literal::prop("s"))).unwrap();
        let j = justify(&g, with_s, &Literal::prop("t")).unwrap();
        assert_eq!(j.children[0].support, Support::Abduced);
        assert!(j.to_string().contains("s [abduced]"));
    }

    #[test]
    fn missing_literal() {
        let (g, ms) = setup("p.\nq :- not p.");
        assert!(matches!(
            justify(&g, &ms[0], &Literal::prop("q")),
            Err(SolveError::LiteralNotInModel(_))
        ));
        assert!(matches!(
            justify(&g, &ms[0], &Literal::prop("zz")),
            Err(SolveError::LiteralNotInModel(_))
        ));
    }

    #[test]
    fn positive_loop_is_not_used() {
        let (g, ms) = setup("a.\nb :- c.\nc :- b.\nc :- a.");
        let j = justify(&g, &ms[0], &Literal::prop("b")).unwrap();
        assert_eq!(j.leaves(), vec![&Literal::prop("a")]);
    }

    #[test]
    fn denial_report() {
        let (g, ms) = setup("p.\n:- p, q.");
        assert_eq!(
            denial_checks(&g, &ms[0]),
            vec![":- p, q.  no violating instance"]
        );
    }
}
