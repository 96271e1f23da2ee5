//! Hand-written lexer and recursive-descent parsers for `.asp` programs,
//! `.deon` theories and solver queries, plus the canonical printer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::ast::{ArithExpr, Atom, BodyElem, CmpOp, Literal, PredSig, Program, Rule, Term};
use crate::error::{AstError, ParseError, SourceSpan};
use crate::theory::{DeonticStatement, DeonticTheory};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Num(BigRational),
    Directive(String),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    Query,
    Minus,
    Plus,
    Star,
    Slash,
    Cmp(CmpOp),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) => format!("`{s}`"),
            Tok::Num(n) => format!("number `{}`", crate::ast::format_number(n)),
            Tok::Directive(d) => format!("`#{d}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::If => "`:-`".into(),
            Tok::Query => "`?-`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Cmp(op) => format!("`{}`", op.symbol()),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn bump_n(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn span_from(&self, start: usize, line: usize, col: usize) -> SourceSpan {
        SourceSpan {
            start,
            end: self.pos,
            line,
            column: col,
        }
    }

    fn error(&self, message: impl Into<String>, span: SourceSpan) -> ParseError {
        ParseError::Syntax {
            message: message.into(),
            span,
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.bump();
            } else {
                break;
            }
        }
        self.src[start..self.pos].to_owned()
    }

    fn number(&mut self) -> BigRational {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        let int_digits = &self.src[start..self.pos];
        let mut value = BigRational::from_integer(int_digits.parse::<BigInt>().unwrap());
        // a fractional part only when the dot is followed by a digit, so `p(1).` ends the clause
        let mut chars = self.rest().chars();
        if chars.next() == Some('.') && matches!(chars.next(), Some(c) if c.is_ascii_digit()) {
            self.bump();
            let fstart = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.bump();
            }
            let frac = &self.src[fstart..self.pos];
            let numer: BigInt = frac.parse().unwrap();
            let denom = num_traits::pow(BigInt::from(10), frac.len());
            value += BigRational::new(numer, denom);
        }
        value
    }

    fn tokenize(mut self) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (start, line, col) = (self.pos, self.line, self.col);
            let Some(c) = self.peek() else {
                out.push((Tok::Eof, self.span_from(start, line, col)));
                return Ok(out);
            };
            let rest = self.rest();
            let tok = if c.is_ascii_lowercase() {
                Tok::Ident(self.word())
            } else if c.is_ascii_uppercase() || c == '_' {
                Tok::Var(self.word())
            } else if c.is_ascii_digit() {
                Tok::Num(self.number())
            } else if c == '#' {
                self.bump();
                let w = self.word();
                if w.is_empty() {
                    return Err(self.error(
                        "expected a directive name after `#`",
                        self.span_from(start, line, col),
                    ));
                }
                Tok::Directive(w)
            } else if rest.starts_with(":-") {
                self.bump_n(2);
                Tok::If
            } else if rest.starts_with("?-") {
                self.bump_n(2);
                Tok::Query
            } else if rest.starts_with("\\=") {
                self.bump_n(2);
                Tok::Cmp(CmpOp::Ne)
            } else if c == '.' {
                const OPS: [(&str, CmpOp); 5] = [
                    (".>=.", CmpOp::Ge),
                    (".=<.", CmpOp::Le),
                    (".>.", CmpOp::Gt),
                    (".<.", CmpOp::Lt),
                    (".=.", CmpOp::Eq),
                ];
                match OPS.iter().find(|(s, _)| rest.starts_with(s)) {
                    Some((s, op)) => {
                        self.bump_n(s.len());
                        Tok::Cmp(*op)
                    }
                    None => {
                        self.bump();
                        Tok::Dot
                    }
                }
            } else {
                self.bump();
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '-' => Tok::Minus,
                    '+' => Tok::Plus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    other => {
                        return Err(self.error(
                            format!("unexpected character `{other}`"),
                            self.span_from(start, line, col),
                        ))
                    }
                }
            };
            out.push((tok, self.span_from(start, line, col)));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    idx: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: Lexer::new(src).tokenize()?,
            idx: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.idx + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.idx].1
    }

    fn prev_end(&self) -> usize {
        if self.idx == 0 {
            0
        } else {
            self.toks[self.idx - 1].1.end
        }
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx < self.toks.len() - 1 {
            self.idx += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax {
            message: format!("expected {wanted}, found {}", self.peek().describe()),
            span: self.span(),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn is_ident(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == word)
    }

    /// Span from `start` up to the end of the previous token.
    fn span_since(&self, start: SourceSpan) -> SourceSpan {
        SourceSpan {
            end: self.prev_end().max(start.start),
            ..start
        }
    }

    fn signed_number(&mut self) -> Option<BigRational> {
        match (self.peek().clone(), self.peek_at(1).clone()) {
            (Tok::Num(n), _) => {
                self.next();
                Some(n)
            }
            (Tok::Minus, Tok::Num(n)) => {
                self.next();
                self.next();
                Some(-n)
            }
            _ => None,
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if let Some(n) = self.signed_number() {
            return Ok(Term::Num(n));
        }
        match self.peek().clone() {
            Tok::Var(v) => {
                self.next();
                Ok(Term::Var(v))
            }
            Tok::Ident(c) => {
                self.next();
                if *self.peek() == Tok::LParen {
                    return Err(ParseError::Syntax {
                        message: "nested function terms are not supported".into(),
                        span: self.span(),
                    });
                }
                Ok(Term::Const(c))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let Tok::Ident(name) = self.peek().clone() else {
            return Err(self.unexpected("a predicate name"));
        };
        self.next();
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.next();
            loop {
                args.push(self.term()?);
                match self.next() {
                    Tok::Comma => continue,
                    Tok::RParen => break,
                    _ => {
                        self.idx -= 1;
                        return Err(self.unexpected("`,` or `)`"));
                    }
                }
            }
        }
        Ok(Atom {
            predicate: name,
            args,
        })
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        if *self.peek() == Tok::Minus {
            self.next();
            Ok(self.atom()?.negative())
        } else {
            Ok(self.atom()?.positive())
        }
    }

    fn arith_primary(&mut self) -> Result<ArithExpr, ParseError> {
        if *self.peek() == Tok::LParen {
            self.next();
            let e = self.arith()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(e);
        }
        Ok(ArithExpr::Term(self.term()?))
    }

    fn arith_product(&mut self) -> Result<ArithExpr, ParseError> {
        let mut lhs = self.arith_primary()?;
        while *self.peek() == Tok::Star {
            self.next();
            lhs = ArithExpr::mul(lhs, self.arith_primary()?);
        }
        Ok(lhs)
    }

    fn arith(&mut self) -> Result<ArithExpr, ParseError> {
        let mut lhs = self.arith_product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = ArithExpr::add(lhs, self.arith_product()?);
                }
                Tok::Minus => {
                    self.next();
                    lhs = ArithExpr::sub(lhs, self.arith_product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn builtin_rest(&mut self, lhs: ArithExpr) -> Result<BodyElem, ParseError> {
        let Tok::Cmp(op) = self.peek().clone() else {
            return Err(self.unexpected("a comparison operator"));
        };
        self.next();
        let rhs = self.arith()?;
        Ok(BodyElem::Builtin { op, lhs, rhs })
    }

    /// A positive literal or a comparison, whichever the tokens spell.
    fn positive_elem(&mut self) -> Result<BodyElem, ParseError> {
        match (self.peek().clone(), self.peek_at(1).clone()) {
            (Tok::Minus, Tok::Ident(_)) => Ok(BodyElem::Pos(self.literal()?)),
            (Tok::Ident(_), Tok::LParen) => Ok(BodyElem::Pos(self.literal()?)),
            (Tok::Ident(_), _) => {
                let start = self.idx;
                let lit = self.literal()?;
                if matches!(
                    self.peek(),
                    Tok::Cmp(_) | Tok::Plus | Tok::Minus | Tok::Star
                ) {
                    // a bare constant on the left of a comparison
                    self.idx = start;
                    let lhs = self.arith()?;
                    return self.builtin_rest(lhs);
                }
                Ok(BodyElem::Pos(lit))
            }
            _ => {
                let lhs = self.arith()?;
                self.builtin_rest(lhs)
            }
        }
    }

    fn body_elem(&mut self) -> Result<BodyElem, ParseError> {
        let start = self.span();
        let starts_naf = self.is_ident("not")
            && matches!(
                self.peek_at(1),
                Tok::Ident(_) | Tok::Var(_) | Tok::Num(_) | Tok::Minus | Tok::LParen
            );
        if starts_naf {
            self.next();
            return match self.positive_elem()? {
                BodyElem::Pos(l) => Ok(BodyElem::Naf(l)),
                _ => Err(ParseError::NafOnBuiltin {
                    span: self.span_since(start),
                }),
            };
        }
        self.positive_elem()
    }

    /// Comma-separated body; stops before any token that is not `,`.
    fn body(&mut self) -> Result<Vec<BodyElem>, ParseError> {
        let mut body = vec![self.body_elem()?];
        while *self.peek() == Tok::Comma {
            self.next();
            body.push(self.body_elem()?);
        }
        Ok(body)
    }

    fn sig_list(&mut self) -> Result<Vec<PredSig>, ParseError> {
        let mut out = Vec::new();
        loop {
            let Tok::Ident(name) = self.next() else {
                self.idx -= 1;
                return Err(self.unexpected("a predicate name"));
            };
            self.expect(Tok::Slash, "`/`")?;
            let arity = match self.next() {
                Tok::Num(n) if n.is_integer() && n >= BigRational::zero() => n
                    .to_integer()
                    .to_string()
                    .parse::<usize>()
                    .unwrap_or(usize::MAX),
                _ => {
                    self.idx -= 1;
                    return Err(self.unexpected("an arity"));
                }
            };
            out.push(PredSig { name, arity });
            if *self.peek() == Tok::Comma {
                self.next();
            } else {
                return Ok(out);
            }
        }
    }

    /// `H.`, `H :- B.`, `:- B.` or `false :- B.`; the leading token is current.
    fn rule(&mut self, start: SourceSpan) -> Result<Rule, ParseError> {
        let head = if *self.peek() == Tok::If {
            None
        } else {
            let h = self.literal()?;
            if !h.strong_neg && h.atom.predicate == "false" && h.atom.args.is_empty() {
                None
            } else {
                Some(h)
            }
        };
        let body = if *self.peek() == Tok::If {
            self.next();
            self.body()?
        } else {
            Vec::new()
        };
        self.expect(Tok::Dot, "`.`")?;
        Rule::new(head, body).map_err(|source| ParseError::Ast {
            source,
            span: self.span_since(start),
        })
    }
}

/// Tracks predicate arities while clauses are read, so a conflict can be
/// reported at the clause that introduces it.
#[derive(Default)]
struct ArityCheck {
    seen: BTreeMap<String, usize>,
}

impl ArityCheck {
    fn visit<'a>(
        &mut self,
        lits: impl Iterator<Item = &'a Literal>,
        span: SourceSpan,
    ) -> Result<(), ParseError> {
        for lit in lits {
            let arity = lit.atom.arity();
            match self.seen.get(&lit.atom.predicate) {
                Some(&known) if known != arity => {
                    return Err(ParseError::Ast {
                        source: AstError::ArityConflict {
                            predicate: lit.atom.predicate.clone(),
                            first: known,
                            second: arity,
                        },
                        span,
                    })
                }
                Some(_) => {}
                None => {
                    self.seen.insert(lit.atom.predicate.clone(), arity);
                }
            }
        }
        Ok(())
    }
}

/// Parse a program and report the span of every rule, in order.
pub fn parse_program_spanned(text: &str) -> Result<(Program, Vec<SourceSpan>), ParseError> {
    let mut p = Parser::new(text)?;
    let mut program = Program::default();
    let mut spans = Vec::new();
    let mut arities = ArityCheck::default();
    while !p.at_eof() {
        let start = p.span();
        if let Tok::Directive(name) = p.peek().clone() {
            p.next();
            match name.as_str() {
                "abducible" => {
                    let lit = p.literal()?;
                    p.expect(Tok::Dot, "`.`")?;
                    arities.visit(std::iter::once(&lit), p.span_since(start))?;
                    if !program.abducibles.contains(&lit) {
                        program.abducibles.push(lit);
                    }
                }
                "show" => {
                    let sigs = p.sig_list()?;
                    p.expect(Tok::Dot, "`.`")?;
                    for s in sigs {
                        if !program.show.contains(&s) {
                            program.show.push(s);
                        }
                    }
                }
                "exceptions" => {
                    let sigs = p.sig_list()?;
                    p.expect(Tok::Dot, "`.`")?;
                    for s in sigs {
                        if !program.exceptions.contains(&s) {
                            program.exceptions.push(s);
                        }
                    }
                }
                other => {
                    return Err(ParseError::Syntax {
                        message: format!("unknown directive `#{other}`"),
                        span: p.span_since(start),
                    })
                }
            }
            continue;
        }
        let rule = p.rule(start)?;
        let span = p.span_since(start);
        arities.visit(rule.literals(), span)?;
        program.rules.push(rule);
        spans.push(span);
    }
    Ok((program, spans))
}

/// Parse an `.asp` program. Rules keep their source order.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    parse_program_spanned(text).map(|(p, _)| p)
}

/// Parse a `.deon` theory, one statement per `.`.
pub fn parse_deontic(text: &str) -> Result<DeonticTheory, ParseError> {
    let mut p = Parser::new(text)?;
    let mut theory = DeonticTheory::default();
    while !p.at_eof() {
        let start = p.span();
        let stmt = match p.next() {
            Tok::Directive(d) if d == "show" => {
                let sigs = p.sig_list()?;
                p.expect(Tok::Dot, "`.`")?;
                theory.show.extend(sigs);
                continue;
            }
            Tok::Ident(kw) if kw == "obligatory" || kw == "forbidden" => {
                let target = p.literal()?;
                let mut conditions = Vec::new();
                if p.is_ident("when") {
                    p.next();
                    conditions = p.body()?;
                }
                let mut unless = None;
                if p.is_ident("unless") {
                    p.next();
                    let c = p.literal()?;
                    if c == target {
                        return Err(ParseError::UnlessEqualsTarget {
                            target,
                            span: p.span_since(start),
                        });
                    }
                    unless = Some(c);
                }
                p.expect(Tok::Dot, "`when`, `unless` or `.`")?;
                if kw == "obligatory" {
                    DeonticStatement::Obligation {
                        target,
                        conditions,
                        unless,
                    }
                } else {
                    DeonticStatement::Impermissibility {
                        target,
                        conditions,
                        unless,
                    }
                }
            }
            Tok::Ident(kw) if kw == "permitted" => {
                let target = p.literal()?;
                let mut conditions = Vec::new();
                if p.is_ident("when") {
                    p.next();
                    conditions = p.body()?;
                }
                let mut exceptions = Vec::new();
                if p.is_ident("except") {
                    p.next();
                    exceptions.push(p.literal()?);
                    while *p.peek() == Tok::Comma {
                        p.next();
                        exceptions.push(p.literal()?);
                    }
                }
                p.expect(Tok::Dot, "`when`, `except` or `.`")?;
                DeonticStatement::Permission {
                    target,
                    conditions,
                    exceptions,
                }
            }
            Tok::Ident(kw) if kw == "fact" => {
                let l = p.literal()?;
                p.expect(Tok::Dot, "`.`")?;
                DeonticStatement::Fact(l)
            }
            Tok::Ident(kw) if kw == "abducible" => {
                let l = p.literal()?;
                p.expect(Tok::Dot, "`.`")?;
                let dup = theory
                    .statements
                    .iter()
                    .any(|s| matches!(s, DeonticStatement::Abducible(x) if *x == l));
                if dup {
                    return Err(ParseError::DuplicateAbducible {
                        literal: l,
                        span: p.span_since(start),
                    });
                }
                DeonticStatement::Abducible(l)
            }
            Tok::Ident(kw) if kw == "rule" => DeonticStatement::AsRule(p.rule(start)?),
            _ => {
                p.idx = p.idx.saturating_sub(1);
                return Err(p.unexpected(
                    "`obligatory`, `forbidden`, `permitted`, `fact`, `abducible`, `rule` or `#show`",
                ));
            }
        };
        theory.statements.push(stmt);
        theory.spans.push(p.span_since(start));
    }
    Ok(theory)
}

/// A solver query: conjunction of goals, empty for `true`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    pub goals: Vec<BodyElem>,
}

/// Parse `?- g1, not g2.`; the `?-` and the final `.` are optional.
pub fn parse_query(text: &str) -> Result<Query, ParseError> {
    let mut p = Parser::new(text)?;
    if *p.peek() == Tok::Query {
        p.next();
    }
    let goals = if p.is_ident("true") && matches!(p.peek_at(1), Tok::Dot | Tok::Eof) {
        p.next();
        Vec::new()
    } else {
        p.body()?
    };
    if *p.peek() == Tok::Dot {
        p.next();
    }
    if !p.at_eof() {
        return Err(p.unexpected("end of query"));
    }
    Ok(Query { goals })
}

/// Canonical text: directives first, then one rule per line.
pub fn render_program(program: &Program) -> String {
    let mut out = String::new();
    for a in &program.abducibles {
        out.push_str(&format!("#abducible {a}.\n"));
    }
    let sig_line = |name: &str, sigs: &[PredSig]| {
        let list: Vec<String> = sigs.iter().map(ToString::to_string).collect();
        format!("#{name} {}.\n", list.join(", "))
    };
    if !program.show.is_empty() {
        out.push_str(&sig_line("show", &program.show));
    }
    if !program.exceptions.is_empty() {
        out.push_str(&sig_line("exceptions", &program.exceptions));
    }
    for r in &program.rules {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Literal {
        Literal::prop(s)
    }

    #[test]
    fn denial_with_naf() {
        let p = parse_program(":- not p.").unwrap();
        assert_eq!(p.rules, vec![Rule::denial(vec![BodyElem::Naf(lit("p"))])]);
    }

    #[test]
    fn olon_rule() {
        let p = parse_program("c :- not p, not c.").unwrap();
        let r = &p.rules[0];
        assert_eq!(r.head, Some(lit("c")));
        assert_eq!(
            r.body,
            vec![BodyElem::Naf(lit("p")), BodyElem::Naf(lit("c"))]
        );
    }

    #[test]
    fn empty_and_comment_only_programs() {
        assert!(parse_program("").unwrap().is_empty());
        assert!(parse_program("% nothing here\n  \n").unwrap().is_empty());
    }

    #[test]
    fn speed_limit_rule_has_two_builtins_and_one_naf() {
        let p = parse_program(
            "max_speed(X,Y) :- car(X), speed_limit(L), Y .>. 0, Y .=<. L, not police_car(X).",
        )
        .unwrap();
        let body = &p.rules[0].body;
        let builtins = body
            .iter()
            .filter(|b| matches!(b, BodyElem::Builtin { .. }))
            .count();
        let nafs = body
            .iter()
            .filter(|b| matches!(b, BodyElem::Naf(_)))
            .count();
        assert_eq!((builtins, nafs), (2, 1));
    }

    #[test]
    fn decimal_literal_is_exact() {
        let p = parse_program("q(D,L1) :- r(D,L1), D .<. 0.05*L1.").unwrap();
        let BodyElem::Builtin { rhs, .. } = &p.rules[0].body[1] else {
            panic!()
        };
        let ArithExpr::Mul(a, _) = rhs else { panic!() };
        let expected = BigRational::new(BigInt::from(1), BigInt::from(20));
        assert_eq!(**a, ArithExpr::Term(Term::Num(expected)));
    }

    #[test]
    fn fact_with_numbers_ends_at_dot() {
        let p = parse_program("batterylvl(smith_bmw,0,200).\nsick(jones,8).").unwrap();
        assert_eq!(p.rules.len(), 2);
        assert_eq!(p.rules[1].to_string(), "sick(jones,8).");
    }

    #[test]
    fn false_head_is_a_denial() {
        let a = parse_program("false :- person(X), dead(X), breathe(X).").unwrap();
        let b = parse_program(":- person(X), dead(X), breathe(X).").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn directives_recorded() {
        let p =
            parse_program("#abducible go.\n#abducible -go.\n#show go/0, tell/0.\n#exceptions c/0.")
                .unwrap();
        assert_eq!(p.abducibles, vec![lit("go"), lit("-go")]);
        assert_eq!(p.show, vec![PredSig::new("go", 0), PredSig::new("tell", 0)]);
        assert_eq!(p.exceptions, vec![PredSig::new("c", 0)]);
    }

    #[test]
    fn naf_on_builtin_rejected() {
        let err = parse_program("p(X) :- q(X), not X .>. 3.").unwrap_err();
        assert!(matches!(err, ParseError::NafOnBuiltin { .. }), "{err:?}");
    }

    #[test]
    fn arity_conflict_rejected() {
        let err = parse_program("p(1).\nq :- p.").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Ast { source: AstError::ArityConflict { .. }, span } if span.line == 2
        ));
    }

    #[test]
    fn headless_empty_rejected() {
        assert!(parse_program(":- .").is_err());
    }

    #[test]
    fn syntax_error_span_within_text() {
        for bad in [
            "p :- q",
            "p(.",
            "p :- q,, r.",
            "P.",
            "p :- X .>.",
            "#foo p.",
            "p(f(x)).",
        ] {
            let err = parse_program(bad).unwrap_err();
            let span = err.span();
            assert!(
                span.start <= span.end && span.end <= bad.len(),
                "{bad}: {span:?}"
            );
        }
    }

    #[test]
    fn constant_on_left_of_comparison() {
        let p = parse_program("p(X) :- q(X), X \\= jones.").unwrap();
        assert_eq!(p.rules[0].to_string(), "p(X) :- q(X), X \\= jones.");
        let p = parse_program("p(X) :- q(X), jones \\= X.").unwrap();
        assert_eq!(p.rules[0].to_string(), "p(X) :- q(X), jones \\= X.");
    }

    #[test]
    fn negative_numbers() {
        let p = parse_program("t(-3). u(X) :- t(X), X .<. -1 - 2.").unwrap();
        assert_eq!(render_program(&p), "t(-3).\nu(X) :- t(X), X .<. -1 - 2.\n");
    }

    #[test]
    fn render_canonical_forms() {
        let p = parse_program(":- not p.\nc :- not p, not c.\n#abducible go.").unwrap();
        assert_eq!(
            render_program(&p),
            "#abducible go.\n:- not p.\nc :- not p, not c.\n"
        );
    }

    #[test]
    fn deontic_statements() {
        let t = parse_deontic("obligatory go.").unwrap();
        assert_eq!(
            t.statements,
            vec![DeonticStatement::Obligation {
                target: lit("go"),
                conditions: vec![],
                unless: None
            }]
        );
        let t = parse_deontic("obligatory tell when go.").unwrap();
        assert_eq!(
            t.statements,
            vec![DeonticStatement::Obligation {
                target: lit("tell"),
                conditions: vec![BodyElem::Pos(lit("go"))],
                unless: None
            }]
        );
        let t = parse_deontic(
            "obligatory go unless -go.\nforbidden q when a, not b unless c.\npermitted p when r except s, -t.\nfact -go.\nabducible g.\nrule x :- y.\nrule :- z.",
        )
        .unwrap();
        assert_eq!(t.statements.len(), 7);
        assert_eq!(t.spans.len(), 7);
        assert_eq!(
            t.statements[1].to_string(),
            "forbidden q when a, not b unless c."
        );
        assert_eq!(
            t.statements[2].to_string(),
            "permitted p when r except s, -t."
        );
        assert_eq!(t.statements[6].to_string(), "rule :- z.");
    }

    #[test]
    fn unless_equal_to_target_rejected() {
        let err = parse_deontic("forbidden kill unless kill.").unwrap_err();
        assert!(matches!(err, ParseError::UnlessEqualsTarget { .. }));
        // polarity matters: the preempted obligation of -kill is allowed
        assert!(parse_deontic("obligatory -kill unless kill.").is_ok());
    }

    #[test]
    fn duplicate_abducible_rejected() {
        let err = parse_deontic("abducible g.\nabducible g.").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateAbducible { .. }));
    }

    #[test]
    fn queries() {
        assert_eq!(parse_query("true").unwrap().goals, vec![]);
        assert_eq!(parse_query("?- true.").unwrap().goals, vec![]);
        assert_eq!(
            parse_query("?- warning_sign, not -dog.").unwrap().goals,
            vec![
                BodyElem::Pos(lit("warning_sign")),
                BodyElem::Naf(lit("-dog"))
            ]
        );
        assert!(parse_query("p q").is_err());
    }
}
