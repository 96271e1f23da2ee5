//! Object-language data model: answer-set programs with strong negation.
//!
//! Strong negation is a flag on [`Literal`]; nothing here rewrites `-p` into a
//! fresh predicate. That rewrite is private to the solver, so every rule can be
//! printed back exactly as it was written.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AstError;

/// Exact rational number used for every numeric term.
pub type Number = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    Num(Number),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_owned())
    }

    pub fn constant(name: &str) -> Self {
        Term::Const(name.to_owned())
    }

    pub fn int(value: i64) -> Self {
        Term::Num(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn is_ground(&self) -> bool {
        !matches!(self, Term::Var(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: &str, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.to_owned(),
            args,
        }
    }

    /// A zero-arity atom.
    pub fn prop(predicate: &str) -> Self {
        Atom::new(predicate, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn signature(&self) -> PredSig {
        PredSig::new(&self.predicate, self.arity())
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn positive(self) -> Literal {
        Literal {
            atom: self,
            strong_neg: false,
        }
    }

    pub fn negative(self) -> Literal {
        Literal {
            atom: self,
            strong_neg: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub strong_neg: bool,
}

impl Literal {
    /// Proposition `p`, or `-p` when the name starts with `-`.
    pub fn prop(name: &str) -> Self {
        match name.strip_prefix('-') {
            Some(rest) => Atom::prop(rest).negative(),
            None => Atom::prop(name).positive(),
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            strong_neg: !self.strong_neg,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }
}

/// Flip the strong-negation mark; predicate and arguments are unchanged.
/// Literals serialize as their text, e.g. `"-warning_sign"`.
impl serde::Serialize for Literal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn complement(lit: &Literal) -> Literal {
    lit.complement()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CmpOp {
    Gt,
    Lt,
    Ge,
    Le,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Gt => ".>.",
            CmpOp::Lt => ".<.",
            CmpOp::Ge => ".>=.",
            CmpOp::Le => ".=<.",
            CmpOp::Eq => ".=.",
            CmpOp::Ne => "\\=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithExpr {
    Term(Term),
    Add(Box<ArithExpr>, Box<ArithExpr>),
    Sub(Box<ArithExpr>, Box<ArithExpr>),
    Mul(Box<ArithExpr>, Box<ArithExpr>),
}

#[allow(clippy::should_implement_trait)]
impl ArithExpr {
    pub fn add(lhs: ArithExpr, rhs: ArithExpr) -> Self {
        ArithExpr::Add(Box::new(lhs), Box::new(rhs))
    }

    pub fn sub(lhs: ArithExpr, rhs: ArithExpr) -> Self {
        ArithExpr::Sub(Box::new(lhs), Box::new(rhs))
    }

    pub fn mul(lhs: ArithExpr, rhs: ArithExpr) -> Self {
        ArithExpr::Mul(Box::new(lhs), Box::new(rhs))
    }

    pub fn var(name: &str) -> Self {
        ArithExpr::Term(Term::var(name))
    }

    pub fn int(value: i64) -> Self {
        ArithExpr::Term(Term::int(value))
    }

    pub fn visit_terms<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        match self {
            ArithExpr::Term(t) => f(t),
            ArithExpr::Add(a, b) | ArithExpr::Sub(a, b) | ArithExpr::Mul(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
        }
    }

    /// Binding strength, used to parenthesize when printing.
    fn precedence(&self) -> u8 {
        match self {
            ArithExpr::Term(_) => 3,
            ArithExpr::Mul(..) => 2,
            ArithExpr::Add(..) | ArithExpr::Sub(..) => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BodyElem {
    Pos(Literal),
    Naf(Literal),
    Builtin {
        op: CmpOp,
        lhs: ArithExpr,
        rhs: ArithExpr,
    },
}

impl BodyElem {
    pub fn literal(&self) -> Option<&Literal> {
        match self {
            BodyElem::Pos(l) | BodyElem::Naf(l) => Some(l),
            BodyElem::Builtin { .. } => None,
        }
    }

    pub fn visit_terms<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        match self {
            BodyElem::Pos(l) | BodyElem::Naf(l) => l.atom.args.iter().for_each(&mut *f),
            BodyElem::Builtin { lhs, rhs, .. } => {
                lhs.visit_terms(f);
                rhs.visit_terms(f);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Option<Literal>,
    pub body: Vec<BodyElem>,
}

impl Rule {
    /// Build a rule, rejecting the headless, bodiless form.
    pub fn new(head: Option<Literal>, body: Vec<BodyElem>) -> Result<Self, AstError> {
        if head.is_none() && body.is_empty() {
            return Err(AstError::EmptyDenial);
        }
        Ok(Rule { head, body })
    }

    pub fn fact(head: Literal) -> Self {
        Rule {
            head: Some(head),
            body: Vec::new(),
        }
    }

    /// Panics on an empty body; use [`Rule::new`] for unchecked input.
    pub fn denial(body: Vec<BodyElem>) -> Self {
        assert!(!body.is_empty(), "denial needs a body");
        Rule { head: None, body }
    }

    pub fn is_denial(&self) -> bool {
        self.head.is_none()
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.body.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head
            .iter()
            .chain(self.body.iter().filter_map(BodyElem::literal))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        let mut collect = |t: &Term| {
            if let Term::Var(v) = t {
                vars.insert(v.clone());
            }
        };
        if let Some(h) = &self.head {
            h.atom.args.iter().for_each(&mut collect);
        }
        for elem in &self.body {
            elem.visit_terms(&mut collect);
        }
        vars
    }

    pub fn is_ground(&self) -> bool {
        self.variables().is_empty()
    }

    /// True for the odd-loop shape `c :- ..., not c.`
    pub fn is_olon(&self) -> bool {
        match &self.head {
            Some(h) => self
                .body
                .iter()
                .any(|b| matches!(b, BodyElem::Naf(l) if l == h)),
            None => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredSig {
    pub name: String,
    pub arity: usize,
}

impl PredSig {
    pub fn new(name: &str, arity: usize) -> Self {
        PredSig {
            name: name.to_owned(),
            arity,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
    /// `#abducible` declarations, expanded into even loops before solving.
    pub abducibles: Vec<Literal>,
    /// `#show` projection; empty shows everything visible.
    pub show: Vec<PredSig>,
    /// `#exceptions` declarations naming preemption atoms for compliance checks.
    pub exceptions: Vec<PredSig>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Self {
        Program {
            rules,
            ..Program::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
            && self.abducibles.is_empty()
            && self.show.is_empty()
            && self.exceptions.is_empty()
    }

    /// Append another program's rules and directives.
    pub fn extend(&mut self, other: Program) {
        self.rules.extend(other.rules);
        for a in other.abducibles {
            if !self.abducibles.contains(&a) {
                self.abducibles.push(a);
            }
        }
        for s in other.show {
            if !self.show.contains(&s) {
                self.show.push(s);
            }
        }
        for e in other.exceptions {
            if !self.exceptions.contains(&e) {
                self.exceptions.push(e);
            }
        }
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.rules
            .iter()
            .flat_map(Rule::literals)
            .chain(self.abducibles.iter())
    }
}

/// Every predicate/arity pair in heads, bodies and abducible declarations.
pub fn signature(program: &Program) -> Result<BTreeSet<PredSig>, AstError> {
    let mut arities: std::collections::BTreeMap<&str, usize> = Default::default();
    for lit in program.literals() {
        let name = lit.atom.predicate.as_str();
        let arity = lit.atom.arity();
        match arities.get(name) {
            Some(&known) if known != arity => {
                return Err(AstError::ArityConflict {
                    predicate: name.to_owned(),
                    first: known,
                    second: arity,
                })
            }
            Some(_) => {}
            None => {
                arities.insert(name, arity);
            }
        }
    }
    Ok(arities
        .into_iter()
        .map(|(n, a)| PredSig::new(n, a))
        .collect())
}

/// Render a rational exactly. Values with a terminating decimal expansion
/// print as decimals (`0.05`); anything else falls back to `n/d`.
pub fn format_number(n: &Number) -> String {
    if n.is_integer() {
        return n.to_integer().to_string();
    }
    let neg = n.is_negative();
    let abs = n.abs();
    let mut den = abs.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut scale = 0usize;
    let mut factor = BigInt::one();
    while !den.is_one() {
        if (&den % &two).is_zero() {
            den /= &two;
        } else if (&den % &five).is_zero() {
            den /= &five;
        } else {
            return format!(
                "{}{}/{}",
                if neg { "-" } else { "" },
                abs.numer(),
                abs.denom()
            );
        }
        scale += 1;
        factor *= 10;
    }
    // smallest power of ten that clears the denominator
    let mut digits = (abs.clone() * BigRational::from_integer(factor.clone())).to_integer();
    while scale > 0 && (&digits % BigInt::from(10)).is_zero() {
        digits /= 10;
        scale -= 1;
    }
    let s = digits.to_string();
    let (int_part, frac_part) = if s.len() > scale {
        (
            s[..s.len() - scale].to_owned(),
            s[s.len() - scale..].to_owned(),
        )
    } else {
        (
            "0".to_owned(),
            format!("{}{}", "0".repeat(scale - s.len()), s),
        )
    };
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => f.write_str(c),
            Term::Num(n) => f.write_str(&format_number(n)),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strong_neg {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl fmt::Display for ArithExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, e: &ArithExpr, min: u8) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            ArithExpr::Term(t) => write!(f, "{t}"),
            ArithExpr::Add(a, b) => {
                side(f, a, 1)?;
                f.write_str(" + ")?;
                side(f, b, 2)
            }
            ArithExpr::Sub(a, b) => {
                side(f, a, 1)?;
                f.write_str(" - ")?;
                side(f, b, 2)
            }
            ArithExpr::Mul(a, b) => {
                side(f, a, 2)?;
                f.write_str("*")?;
                side(f, b, 3)
            }
        }
    }
}

impl fmt::Display for BodyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyElem::Pos(l) => write!(f, "{l}"),
            BodyElem::Naf(l) => write!(f, "not {l}"),
            BodyElem::Builtin { op, lhs, rhs } => write!(f, "{lhs} {} {rhs}", op.symbol()),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.head {
            write!(f, "{h}")?;
            if !self.body.is_empty() {
                f.write_str(" :- ")?;
            }
        } else {
            f.write_str(":- ")?;
        }
        for (i, b) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(".")
    }
}

impl fmt::Display for PredSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}
