//! Herbrand instantiation with exact rational arithmetic.
//!
//! Instances are produced bottom-up: positive body literals are matched
//! against the atoms derivable so far (ignoring default negation), then the
//! comparisons are evaluated. `X .=. expr` binds `X` when `X` is still free.
//! The fixpoint is fuel-bounded, since arithmetic in heads can in principle
//! produce an unbounded number of new atoms.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::ast::{signature, ArithExpr, BodyElem, CmpOp, Literal, PredSig, Program, Rule, Term};
use crate::compiler::{expand_program_abducibles, is_reserved};
use crate::error::GroundError;

pub type AtomId = usize;

/// Maximum number of fixpoint rounds before grounding gives up.
pub const GROUNDING_FUEL: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundRule {
    /// `None` for a denial.
    pub head: Option<AtomId>,
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
}

impl GroundRule {
    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.pos.is_empty() && self.neg.is_empty()
    }
}

/// A variable-free program over a dense atom table.
///
/// Atom ids follow the text order of the literals, so `-p` sorts before `p`.
#[derive(Clone, Debug, Default)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
    atoms: Vec<Literal>,
    index: HashMap<Literal, AtomId>,
    complements: Vec<Option<AtomId>>,
    /// Compiler-generated atoms, never displayed.
    pub hidden: BTreeSet<AtomId>,
    pub show: Vec<PredSig>,
    pub exceptions: Vec<PredSig>,
    /// Ground abducible literals of the source program.
    pub abducibles: BTreeSet<AtomId>,
}

impl GroundProgram {
    /// Build from ground rules; every literal must be variable-free.
    pub fn from_literal_rules(rules: &[(Option<Literal>, Vec<Literal>, Vec<Literal>)]) -> Self {
        let mut texts: Vec<(String, Literal)> = Vec::new();
        let mut seen = HashSet::new();
        for (h, pos, neg) in rules {
            for l in h.iter().chain(pos).chain(neg) {
                debug_assert!(l.is_ground(), "non-ground literal {l}");
                if seen.insert(l.clone()) {
                    texts.push((l.to_string(), l.clone()));
                }
            }
        }
        texts.sort();
        let atoms: Vec<Literal> = texts.into_iter().map(|(_, l)| l).collect();
        let index: HashMap<Literal, AtomId> = atoms
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let complements = atoms
            .iter()
            .map(|l| index.get(&l.complement()).copied())
            .collect();
        let hidden = atoms
            .iter()
            .enumerate()
            .filter(|(_, l)| is_reserved(&l.atom.predicate))
            .map(|(i, _)| i)
            .collect();
        let ids = |ls: &[Literal]| ls.iter().map(|l| index[l]).collect::<Vec<_>>();
        let rules = rules
            .iter()
            .map(|(h, pos, neg)| GroundRule {
                head: h.as_ref().map(|l| index[l]),
                pos: ids(pos),
                neg: ids(neg),
            })
            .collect();
        GroundProgram {
            rules,
            atoms,
            index,
            complements,
            hidden,
            ..GroundProgram::default()
        }
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn literal(&self, id: AtomId) -> &Literal {
        &self.atoms[id]
    }

    pub fn literals(&self) -> &[Literal] {
        &self.atoms
    }

    pub fn id_of(&self, lit: &Literal) -> Option<AtomId> {
        self.index.get(lit).copied()
    }

    pub fn complement_of(&self, id: AtomId) -> Option<AtomId> {
        self.complements[id]
    }

    pub fn is_hidden(&self, id: AtomId) -> bool {
        self.hidden.contains(&id)
    }

    /// Pairs `(p, -p)` that both occur; each is an implicit denial `:- p, -p.`
    pub fn complement_pairs(&self) -> impl Iterator<Item = (AtomId, AtomId)> + '_ {
        self.complements
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|&c| i < c).map(|c| (i, c)))
    }

    pub fn rule_to_ast(&self, rule: &GroundRule) -> Rule {
        let mut body: Vec<BodyElem> = rule
            .pos
            .iter()
            .map(|&a| BodyElem::Pos(self.atoms[a].clone()))
            .collect();
        body.extend(
            rule.neg
                .iter()
                .map(|&a| BodyElem::Naf(self.atoms[a].clone())),
        );
        Rule {
            head: rule.head.map(|h| self.atoms[h].clone()),
            body,
        }
    }

    /// The ground rules as a surface program.
    pub fn to_program(&self) -> Program {
        Program {
            rules: self.rules.iter().map(|r| self.rule_to_ast(r)).collect(),
            abducibles: Vec::new(),
            show: self.show.clone(),
            exceptions: self.exceptions.clone(),
        }
    }

    pub fn predicate_signatures(&self) -> BTreeSet<PredSig> {
        self.atoms.iter().map(|l| l.atom.signature()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleSafety {
    pub rule: String,
    pub safe: bool,
    pub unsafe_variables: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SafetyReport {
    pub rules: Vec<RuleSafety>,
}

impl SafetyReport {
    pub fn is_safe(&self) -> bool {
        self.rules.iter().all(|r| r.safe)
    }

    pub fn unsafe_rules(&self) -> impl Iterator<Item = &RuleSafety> {
        self.rules.iter().filter(|r| !r.safe)
    }
}

fn arith_vars(e: &ArithExpr) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    e.visit_terms(&mut |t| {
        if let Term::Var(v) = t {
            out.insert(v.clone());
        }
    });
    out
}

/// Variables a rule can bind: positive literals first, then `.=.` assignments
/// whose right side is already bound.
fn bindable_variables(rule: &Rule) -> BTreeSet<String> {
    let mut bound = BTreeSet::new();
    for b in &rule.body {
        if let BodyElem::Pos(l) = b {
            for t in &l.atom.args {
                if let Term::Var(v) = t {
                    bound.insert(v.clone());
                }
            }
        }
    }
    loop {
        let mut grew = false;
        for b in &rule.body {
            if let BodyElem::Builtin {
                op: CmpOp::Eq,
                lhs: ArithExpr::Term(Term::Var(v)),
                rhs,
            } = b
            {
                if !bound.contains(v) && arith_vars(rhs).is_subset(&bound) {
                    bound.insert(v.clone());
                    grew = true;
                }
            }
        }
        if !grew {
            return bound;
        }
    }
}

pub fn rule_safety(rule: &Rule) -> RuleSafety {
    let bound = bindable_variables(rule);
    let unbound: Vec<String> = rule.variables().difference(&bound).cloned().collect();
    RuleSafety {
        rule: rule.to_string(),
        safe: unbound.is_empty(),
        unsafe_variables: unbound,
    }
}

pub fn check_safety(program: &Program) -> SafetyReport {
    SafetyReport {
        rules: program.rules.iter().map(rule_safety).collect(),
    }
}

/// Every constant and numeral written in the program.
pub fn herbrand_universe(program: &Program) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    let mut add = |t: &Term| {
        if t.is_ground() {
            out.insert(t.clone());
        }
    };
    for r in &program.rules {
        if let Some(h) = &r.head {
            h.atom.args.iter().for_each(&mut add);
        }
        for b in &r.body {
            b.visit_terms(&mut add);
        }
    }
    for a in &program.abducibles {
        a.atom.args.iter().for_each(&mut add);
    }
    out
}

/// Value of a ground arithmetic expression or comparison operand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Num(BigRational),
    Sym(String),
}

impl Value {
    fn into_term(self) -> Term {
        match self {
            Value::Num(n) => Term::Num(n),
            Value::Sym(s) => Term::Const(s),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(n) => f.write_str(&crate::ast::format_number(n)),
            Value::Sym(s) => f.write_str(s),
        }
    }
}

type Subst = HashMap<String, Term>;

fn builtin_text(op: CmpOp, lhs: &ArithExpr, rhs: &ArithExpr) -> String {
    BodyElem::Builtin {
        op,
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    }
    .to_string()
}

/// Evaluate a ground expression; `Ok(None)` when a variable is unbound.
pub fn eval_arith(
    expr: &ArithExpr,
    subst: &HashMap<String, Term>,
) -> Result<Option<Value>, String> {
    let num = |v: Value| match v {
        Value::Num(n) => Ok(n),
        Value::Sym(s) => Err(format!("`{s}` is not a number")),
    };
    Ok(Some(match expr {
        ArithExpr::Term(Term::Num(n)) => Value::Num(n.clone()),
        ArithExpr::Term(Term::Const(c)) => Value::Sym(c.clone()),
        ArithExpr::Term(Term::Var(v)) => match subst.get(v) {
            Some(Term::Num(n)) => Value::Num(n.clone()),
            Some(Term::Const(c)) => Value::Sym(c.clone()),
            Some(Term::Var(_)) | None => return Ok(None),
        },
        ArithExpr::Add(a, b) | ArithExpr::Sub(a, b) | ArithExpr::Mul(a, b) => {
            let (Some(x), Some(y)) = (eval_arith(a, subst)?, eval_arith(b, subst)?) else {
                return Ok(None);
            };
            let (x, y) = (num(x)?, num(y)?);
            Value::Num(match expr {
                ArithExpr::Add(..) => x + y,
                ArithExpr::Sub(..) => x - y,
                _ => x * y,
            })
        }
    }))
}

/// Compare two ground values. Order comparisons need numbers on both sides.
pub fn eval_builtin(op: CmpOp, lhs: &Value, rhs: &Value) -> Result<bool, String> {
    match op {
        CmpOp::Eq => Ok(lhs == rhs),
        CmpOp::Ne => Ok(lhs != rhs),
        _ => {
            let (Value::Num(a), Value::Num(b)) = (lhs, rhs) else {
                return Err(format!("cannot order `{lhs}` and `{rhs}`"));
            };
            Ok(match op {
                CmpOp::Gt => a > b,
                CmpOp::Lt => a < b,
                CmpOp::Ge => a >= b,
                CmpOp::Le => a <= b,
                CmpOp::Eq | CmpOp::Ne => unreachable!(),
            })
        }
    }
}

/// Run the comparisons of one rule instance, binding `.=.` targets as needed.
/// `Ok(false)` when some comparison fails.
fn run_builtins(
    builtins: &[(CmpOp, &ArithExpr, &ArithExpr)],
    subst: &mut Subst,
) -> Result<bool, GroundError> {
    let mut pending: Vec<usize> = (0..builtins.len()).collect();
    while !pending.is_empty() {
        let mut progressed = false;
        let mut i = 0;
        while i < pending.len() {
            let (op, lhs, rhs) = builtins[pending[i]];
            let mismatch = |detail: String| GroundError::TypeMismatch {
                builtin: builtin_text(op, lhs, rhs),
                detail,
            };
            let r = eval_arith(rhs, subst).map_err(mismatch)?;
            if let (CmpOp::Eq, ArithExpr::Term(Term::Var(v)), Some(value)) = (op, lhs, &r) {
                if !subst.contains_key(v) {
                    subst.insert(v.clone(), value.clone().into_term());
                    pending.remove(i);
                    progressed = true;
                    continue;
                }
            }
            let l = eval_arith(lhs, subst).map_err(mismatch)?;
            match (l, r) {
                (Some(l), Some(r)) => {
                    if !eval_builtin(op, &l, &r).map_err(mismatch)? {
                        return Ok(false);
                    }
                    pending.remove(i);
                    progressed = true;
                }
                _ => i += 1,
            }
        }
        if !progressed {
            let (op, lhs, rhs) = builtins[pending[0]];
            let mut vars = arith_vars(lhs);
            vars.extend(arith_vars(rhs));
            let variable = vars
                .into_iter()
                .find(|v| !subst.contains_key(v))
                .unwrap_or_default();
            return Err(GroundError::UnboundArithmetic {
                builtin: builtin_text(op, lhs, rhs),
                variable,
            });
        }
    }
    Ok(true)
}

fn substitute(lit: &Literal, subst: &Subst) -> Literal {
    let args = lit
        .atom
        .args
        .iter()
        .map(|t| match t {
            Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| t.clone()),
            other => other.clone(),
        })
        .collect();
    Literal {
        atom: crate::ast::Atom {
            predicate: lit.atom.predicate.clone(),
            args,
        },
        strong_neg: lit.strong_neg,
    }
}

/// Extend `subst` so that `pattern` equals `ground`; `false` on a clash.
fn unify(
    pattern: &[Term],
    ground: &[Term],
    subst: &mut Subst,
    bound_here: &mut Vec<String>,
) -> bool {
    for (p, g) in pattern.iter().zip(ground) {
        match p {
            Term::Var(v) => match subst.get(v) {
                Some(t) if t != g => return false,
                Some(_) => {}
                None => {
                    subst.insert(v.clone(), g.clone());
                    bound_here.push(v.clone());
                }
            },
            other if other != g => return false,
            _ => {}
        }
    }
    true
}

type PredKey = (String, bool);

/// Atoms that may become true, indexed by predicate and polarity.
#[derive(Default)]
struct Derivable {
    by_pred: HashMap<PredKey, Vec<Vec<Term>>>,
    members: HashSet<Literal>,
}

impl Derivable {
    fn insert(&mut self, lit: Literal) -> bool {
        if self.members.contains(&lit) {
            return false;
        }
        self.by_pred
            .entry((lit.atom.predicate.clone(), lit.strong_neg))
            .or_default()
            .push(lit.atom.args.clone());
        self.members.insert(lit);
        true
    }

    fn snapshot(&self) -> HashMap<PredKey, usize> {
        self.by_pred
            .iter()
            .map(|(k, v)| (k.clone(), v.len()))
            .collect()
    }
}

struct RulePlan<'a> {
    rule: &'a Rule,
    pos: Vec<&'a Literal>,
    naf: Vec<&'a Literal>,
    builtins: Vec<(CmpOp, &'a ArithExpr, &'a ArithExpr)>,
}

impl<'a> RulePlan<'a> {
    fn new(rule: &'a Rule) -> Self {
        let mut plan = RulePlan {
            rule,
            pos: Vec::new(),
            naf: Vec::new(),
            builtins: Vec::new(),
        };
        for b in &rule.body {
            match b {
                BodyElem::Pos(l) => plan.pos.push(l),
                BodyElem::Naf(l) => plan.naf.push(l),
                BodyElem::Builtin { op, lhs, rhs } => plan.builtins.push((*op, lhs, rhs)),
            }
        }
        plan
    }
}

type LitRule = (Option<Literal>, Vec<Literal>, Vec<Literal>);

/// Instances whose positive body uses at least one atom that became derivable
/// in the previous round (rows `old..new`), all others from `..new`.
fn instances(
    plan: &RulePlan<'_>,
    derivable: &Derivable,
    old: &HashMap<PredKey, usize>,
    new: &HashMap<PredKey, usize>,
    first_round: bool,
    out: &mut Vec<LitRule>,
) -> Result<(), GroundError> {
    struct Ctx<'c, 'p> {
        plan: &'c RulePlan<'p>,
        derivable: &'c Derivable,
        old: &'c HashMap<PredKey, usize>,
        new: &'c HashMap<PredKey, usize>,
        delta: usize,
    }
    fn go(
        cx: &Ctx<'_, '_>,
        k: usize,
        subst: &mut Subst,
        out: &mut Vec<LitRule>,
    ) -> Result<(), GroundError> {
        let plan = cx.plan;
        if k == plan.pos.len() {
            let mut s = subst.clone();
            if !run_builtins(&plan.builtins, &mut s)? {
                return Ok(());
            }
            let head = plan.rule.head.as_ref().map(|h| substitute(h, &s));
            let pos = plan.pos.iter().map(|l| substitute(l, &s)).collect();
            let neg = plan.naf.iter().map(|l| substitute(l, &s)).collect();
            out.push((head, pos, neg));
            return Ok(());
        }
        let lit = plan.pos[k];
        let key = (lit.atom.predicate.clone(), lit.strong_neg);
        let Some(rows) = cx.derivable.by_pred.get(&key) else {
            return Ok(());
        };
        let old = cx.old.get(&key).copied().unwrap_or(0);
        let new = cx.new.get(&key).copied().unwrap_or(0);
        let range = match k.cmp(&cx.delta) {
            std::cmp::Ordering::Less => 0..old,
            std::cmp::Ordering::Equal => old..new,
            std::cmp::Ordering::Greater => 0..new,
        };
        for row in &rows[range] {
            if row.len() != lit.atom.args.len() {
                continue;
            }
            let mut bound_here = Vec::new();
            if unify(&lit.atom.args, row, subst, &mut bound_here) {
                go(cx, k + 1, subst, out)?;
            }
            for v in bound_here {
                subst.remove(&v);
            }
        }
        Ok(())
    }
    if plan.pos.is_empty() {
        if first_round {
            go(
                &Ctx {
                    plan,
                    derivable,
                    old,
                    new,
                    delta: 0,
                },
                0,
                &mut Subst::new(),
                out,
            )?;
        }
        return Ok(());
    }
    for delta in 0..plan.pos.len() {
        go(
            &Ctx {
                plan,
                derivable,
                old,
                new,
                delta,
            },
            0,
            &mut Subst::new(),
            out,
        )?;
    }
    Ok(())
}

/// Instantiate a program. Abducible declarations are expanded first.
pub fn ground(program: &Program) -> Result<GroundProgram, GroundError> {
    signature(program)?;
    let expanded = expand_program_abducibles(program)?;
    let report = check_safety(&expanded);
    if let Some(bad) = report.unsafe_rules().next() {
        return Err(GroundError::UnsafeRule {
            rule: bad.rule.clone(),
            variables: bad.unsafe_variables.clone(),
        });
    }

    let plans: Vec<RulePlan<'_>> = expanded.rules.iter().map(RulePlan::new).collect();
    let mut per_rule: Vec<Vec<LitRule>> = vec![Vec::new(); plans.len()];
    let mut emitted: HashSet<LitRule> = HashSet::new();
    let mut derivable = Derivable::default();

    let mut rounds = 0;
    let mut old = HashMap::new();
    loop {
        if rounds == GROUNDING_FUEL {
            return Err(GroundError::FuelExhausted(GROUNDING_FUEL));
        }
        let new = derivable.snapshot();
        let mut new_heads = Vec::new();
        for (i, plan) in plans.iter().enumerate() {
            let mut found = Vec::new();
            instances(plan, &derivable, &old, &new, rounds == 0, &mut found)?;
            for inst in found {
                if emitted.insert(inst.clone()) {
                    if let Some(h) = &inst.0 {
                        new_heads.push(h.clone());
                    }
                    per_rule[i].push(inst);
                }
            }
        }
        rounds += 1;
        old = new;
        let mut grew = false;
        for h in new_heads {
            grew |= derivable.insert(h);
        }
        if !grew {
            break;
        }
    }

    // variable-free rules are kept even when their body can never fire
    for (i, plan) in plans.iter().enumerate() {
        if per_rule[i].is_empty() && plan.rule.is_ground() {
            let mut s = Subst::new();
            if run_builtins(&plan.builtins, &mut s)? {
                per_rule[i].push((
                    plan.rule.head.clone(),
                    plan.pos.iter().map(|&l| l.clone()).collect(),
                    plan.naf.iter().map(|&l| l.clone()).collect(),
                ));
            }
        }
    }

    let rules: Vec<LitRule> = per_rule.into_iter().flatten().collect();
    let mut g = GroundProgram::from_literal_rules(&rules);
    g.show = program.show.clone();
    g.exceptions = program.exceptions.clone();
    g.abducibles = program
        .abducibles
        .iter()
        .filter_map(|a| g.id_of(a))
        .collect();
    Ok(g)
}
