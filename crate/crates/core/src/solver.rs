//! Stable models of ground programs.
//!
//! `-p` is an ordinary atom here; `p` and `-p` together are ruled out by an
//! implicit denial. Search branches on atoms, propagates completion-style
//! bounds, and confirms every leaf with a reduct check.

use std::collections::BTreeSet;

use crate::ast::{BodyElem, Literal};
use crate::error::SolveError;
use crate::grounder::{eval_arith, eval_builtin, AtomId, GroundProgram};
use crate::parser::Query;

/// A definite rule; `head == None` derives falsum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DefiniteRule {
    pub head: Option<AtomId>,
    pub body: Vec<AtomId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeastModel {
    pub atoms: BTreeSet<AtomId>,
    pub falsum: bool,
}

fn check_consistent(g: &GroundProgram, candidate: &BTreeSet<AtomId>) -> Result<(), SolveError> {
    for &a in candidate {
        if g.complement_of(a).is_some_and(|c| candidate.contains(&c)) {
            return Err(SolveError::InconsistentCandidate(g.literal(a).clone()));
        }
    }
    Ok(())
}

/// Gelfond-Lifschitz reduct. Consistency denials `:- p, -p` are included.
pub fn reduct(
    g: &GroundProgram,
    candidate: &BTreeSet<AtomId>,
) -> Result<Vec<DefiniteRule>, SolveError> {
    check_consistent(g, candidate)?;
    let mut out: Vec<DefiniteRule> = g
        .rules
        .iter()
        .filter(|r| !r.neg.iter().any(|n| candidate.contains(n)))
        .map(|r| DefiniteRule {
            head: r.head,
            body: r.pos.clone(),
        })
        .collect();
    out.extend(g.complement_pairs().map(|(a, b)| DefiniteRule {
        head: None,
        body: vec![a, b],
    }));
    Ok(out)
}

pub fn least_model(rules: &[DefiniteRule], atom_count: usize) -> LeastModel {
    // counter-based forward chaining
    let mut missing: Vec<usize> = rules.iter().map(|r| r.body.len()).collect();
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); atom_count];
    for (i, r) in rules.iter().enumerate() {
        for &b in &r.body {
            watch[b].push(i);
        }
    }
    let mut model = LeastModel::default();
    let mut queue: Vec<usize> = (0..rules.len()).filter(|&i| missing[i] == 0).collect();
    while let Some(i) = queue.pop() {
        match rules[i].head {
            None => model.falsum = true,
            Some(h) => {
                if model.atoms.insert(h) {
                    for &j in &watch[h] {
                        missing[j] -= 1;
                        if missing[j] == 0 {
                            queue.push(j);
                        }
                    }
                }
            }
        }
    }
    model
}

pub fn is_stable(g: &GroundProgram, candidate: &BTreeSet<AtomId>) -> bool {
    match reduct(g, candidate) {
        Ok(d) => {
            let lm = least_model(&d, g.atom_count());
            !lm.falsum && lm.atoms == *candidate
        }
        Err(_) => false,
    }
}

/// Resolve literals against the atom table.
pub fn candidate_ids(g: &GroundProgram, lits: &[Literal]) -> Result<BTreeSet<AtomId>, SolveError> {
    lits.iter()
        .map(|l| {
            g.id_of(l)
                .ok_or_else(|| SolveError::UnknownLiteral(l.clone()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerSet {
    /// Every true atom, compiler-generated ones included.
    pub atoms: BTreeSet<AtomId>,
    /// True literals without compiler-generated atoms.
    pub literals: BTreeSet<Literal>,
    /// Displayed literals after `#show`, sorted by text.
    pub shown: Vec<Literal>,
}

impl AnswerSet {
    fn new(g: &GroundProgram, atoms: BTreeSet<AtomId>, project: bool) -> Self {
        let literals: BTreeSet<Literal> = atoms
            .iter()
            .filter(|&&a| !g.is_hidden(a))
            .map(|&a| g.literal(a).clone())
            .collect();
        let mut shown: Vec<Literal> = literals
            .iter()
            .filter(|l| !project || g.show.is_empty() || g.show.contains(&l.atom.signature()))
            .cloned()
            .collect();
        shown.sort_by_cached_key(ToString::to_string);
        AnswerSet {
            atoms,
            literals,
            shown,
        }
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.literals.contains(lit)
    }

    pub fn shown_text(&self) -> Vec<String> {
        self.shown.iter().map(ToString::to_string).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Stop after this many models (after sorting).
    pub max_models: Option<usize>,
    /// Apply `#show` to the displayed literals.
    pub project: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_models: None,
            project: true,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Val {
    Unknown,
    True,
    False,
}

struct Search<'g> {
    g: &'g GroundProgram,
    supports: Vec<Vec<usize>>,
    found: Vec<BTreeSet<AtomId>>,
}

impl<'g> Search<'g> {
    fn new(g: &'g GroundProgram) -> Self {
        let mut supports = vec![Vec::new(); g.atom_count()];
        for (i, r) in g.rules.iter().enumerate() {
            if let Some(h) = r.head {
                supports[h].push(i);
            }
        }
        Search {
            g,
            supports,
            found: Vec::new(),
        }
    }

    /// Assign `a := v`; `false` on a conflict.
    fn set(vals: &mut [Val], a: AtomId, v: Val, changed: &mut bool) -> bool {
        match vals[a] {
            Val::Unknown => {
                vals[a] = v;
                *changed = true;
                true
            }
            cur => cur == v,
        }
    }

    fn body_status(&self, vals: &[Val], rule: usize) -> (bool, bool, Option<(AtomId, Val)>, usize) {
        // (certainly false, certainly true, last unknown literal with the value falsifying it, unknown count)
        let r = &self.g.rules[rule];
        let mut falsified = false;
        let mut unknown = 0;
        let mut last = None;
        for &p in &r.pos {
            match vals[p] {
                Val::False => falsified = true,
                Val::Unknown => {
                    unknown += 1;
                    last = Some((p, Val::False));
                }
                Val::True => {}
            }
        }
        for &n in &r.neg {
            match vals[n] {
                Val::True => falsified = true,
                Val::Unknown => {
                    unknown += 1;
                    last = Some((n, Val::True));
                }
                Val::False => {}
            }
        }
        (falsified, !falsified && unknown == 0, last, unknown)
    }

    fn propagate(&self, vals: &mut [Val]) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.g.rules.len() {
                let (falsified, holds, last, unknown) = self.body_status(vals, i);
                let head = self.g.rules[i].head;
                if holds {
                    match head {
                        None => return false,
                        Some(h) => {
                            if !Self::set(vals, h, Val::True, &mut changed) {
                                return false;
                            }
                        }
                    }
                } else if !falsified && unknown == 1 && head.is_none_or(|h| vals[h] == Val::False) {
                    let (a, v) = last.unwrap();
                    if !Self::set(vals, a, v, &mut changed) {
                        return false;
                    }
                }
            }
            for a in 0..self.g.atom_count() {
                let live: Vec<usize> = self.supports[a]
                    .iter()
                    .copied()
                    .filter(|&r| !self.body_status(vals, r).0)
                    .collect();
                if live.is_empty() {
                    if !Self::set(vals, a, Val::False, &mut changed) {
                        return false;
                    }
                } else if live.len() == 1 && vals[a] == Val::True {
                    let r = &self.g.rules[live[0]];
                    for &p in &r.pos {
                        if !Self::set(vals, p, Val::True, &mut changed) {
                            return false;
                        }
                    }
                    for &n in &r.neg {
                        if !Self::set(vals, n, Val::False, &mut changed) {
                            return false;
                        }
                    }
                }
            }
            for (a, b) in self.g.complement_pairs() {
                if vals[a] == Val::True && !Self::set(vals, b, Val::False, &mut changed) {
                    return false;
                }
                if vals[b] == Val::True && !Self::set(vals, a, Val::False, &mut changed) {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, vals: &mut Vec<Val>) {
        let saved = vals.clone();
        if self.propagate(vals) {
            match vals.iter().position(|&v| v == Val::Unknown) {
                None => {
                    let candidate: BTreeSet<AtomId> =
                        (0..vals.len()).filter(|&a| vals[a] == Val::True).collect();
                    if is_stable(self.g, &candidate) {
                        self.found.push(candidate);
                    }
                }
                Some(a) => {
                    for v in [Val::True, Val::False] {
                        let before = vals.clone();
                        vals[a] = v;
                        self.run(vals);
                        *vals = before;
                    }
                }
            }
        }
        *vals = saved;
    }
}

/// Collect candidates into answer sets: deduplicated, sorted by displayed text.
pub fn finish_models(
    g: &GroundProgram,
    found: Vec<BTreeSet<AtomId>>,
    opts: EnumerateOptions,
) -> Vec<AnswerSet> {
    let mut models: Vec<AnswerSet> = found
        .into_iter()
        .map(|m| AnswerSet::new(g, m, opts.project))
        .collect();
    models.sort_by_cached_key(|m| (m.shown_text(), m.atoms.iter().copied().collect::<Vec<_>>()));
    models.dedup_by(|a, b| a.shown == b.shown);
    if let Some(n) = opts.max_models {
        models.truncate(n);
    }
    models
}

pub fn enumerate_models(g: &GroundProgram, opts: EnumerateOptions) -> Vec<AnswerSet> {
    let mut search = Search::new(g);
    let mut vals = vec![Val::Unknown; g.atom_count()];
    search.run(&mut vals);
    let found = std::mem::take(&mut search.found);
    finish_models(g, found, opts)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryOutcome {
    pub models: Vec<AnswerSet>,
    /// Goals naming predicates the program never mentions.
    pub warnings: Vec<String>,
}

fn goal_holds(m: &AnswerSet, goal: &BodyElem) -> Result<bool, SolveError> {
    Ok(match goal {
        BodyElem::Pos(l) => m.contains(l),
        BodyElem::Naf(l) => !m.contains(l),
        BodyElem::Builtin { op, lhs, rhs } => {
            let empty = Default::default();
            let text = goal.to_string();
            let l = eval_arith(lhs, &empty).map_err(|_| SolveError::NonGroundGoal(text.clone()))?;
            let r = eval_arith(rhs, &empty).map_err(|_| SolveError::NonGroundGoal(text.clone()))?;
            match (l, r) {
                (Some(l), Some(r)) => {
                    eval_builtin(*op, &l, &r).map_err(|_| SolveError::NonGroundGoal(text))?
                }
                _ => return Err(SolveError::NonGroundGoal(text)),
            }
        }
    })
}

/// Models satisfying every goal. An empty query is `true`.
pub fn query(
    g: &GroundProgram,
    q: &Query,
    opts: EnumerateOptions,
) -> Result<QueryOutcome, SolveError> {
    for goal in &q.goals {
        if let Some(l) = goal.literal() {
            if !l.is_ground() {
                return Err(SolveError::NonGroundGoal(goal.to_string()));
            }
        }
    }
    let known = g.predicate_signatures();
    let warnings = q
        .goals
        .iter()
        .filter_map(BodyElem::literal)
        .filter(|l| !known.contains(&l.atom.signature()))
        .map(|l| format!("unknown predicate {}", l.atom.signature()))
        .collect();
    let all = enumerate_models(
        g,
        EnumerateOptions {
            max_models: None,
            ..opts
        },
    );
    let mut models = Vec::new();
    for m in all {
        let mut ok = true;
        for goal in &q.goals {
            if !goal_holds(&m, goal)? {
                ok = false;
                break;
            }
        }
        if ok {
            models.push(m);
        }
    }
    if let Some(n) = opts.max_models {
        models.truncate(n);
    }
    Ok(QueryOutcome { models, warnings })
}
