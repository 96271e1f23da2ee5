use std::fmt;

use thiserror::Error;

use crate::ast::Literal;

/// Location of a parsed construct inside its source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SourceSpan {
    /// Byte offset of the first character.
    pub start: usize,
    /// Byte offset one past the last character.
    pub end: usize,
    /// 1-based line of `start`.
    pub line: usize,
    /// 1-based column of `start`, counted in characters.
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AstError {
    #[error("a denial needs a non-empty body")]
    EmptyDenial,
    #[error("predicate `{predicate}` used with arity {first} and arity {second}")]
    ArityConflict {
        predicate: String,
        first: usize,
        second: usize,
    },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{span}: syntax error: {message}")]
    Syntax { message: String, span: SourceSpan },
    #[error("{span}: `not` cannot wrap a comparison")]
    NafOnBuiltin { span: SourceSpan },
    #[error("{span}: `unless` names the target literal `{target}` itself")]
    UnlessEqualsTarget { target: Literal, span: SourceSpan },
    #[error("{span}: abducible `{literal}` declared twice")]
    DuplicateAbducible { literal: Literal, span: SourceSpan },
    #[error("{span}: {source}")]
    Ast {
        #[source]
        source: AstError,
        span: SourceSpan,
    },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::NafOnBuiltin { span }
            | ParseError::UnlessEqualsTarget { span, .. }
            | ParseError::DuplicateAbducible { span, .. }
            | ParseError::Ast { span, .. } => *span,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CompileError {
    #[error("conditional norm on `{target}` needs at least one condition")]
    EmptyConditions { target: Literal },
    #[error("`unless` names the target literal `{target}` itself")]
    UnlessEqualsTarget { target: Literal },
    #[error("predicate `{predicate}` uses the reserved prefix `{prefix}`")]
    FreshNameCollision {
        predicate: String,
        prefix: &'static str,
    },
    #[error("statement {index} ({span}): {source}")]
    Statement {
        index: usize,
        span: SourceSpan,
        #[source]
        source: Box<CompileError>,
    },
    #[error("{} statements failed to compile:\n{}", .0.len(), join_lines(.0))]
    Many(Vec<CompileError>),
}

fn join_lines(errs: &[CompileError]) -> String {
    errs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroundError {
    #[error("unsafe rule `{rule}`: variables {} are not bound by a positive literal", .variables.join(", "))]
    UnsafeRule {
        rule: String,
        variables: Vec<String>,
    },
    #[error("comparison `{builtin}` reached with unbound variable `{variable}`")]
    UnboundArithmetic { builtin: String, variable: String },
    #[error("type mismatch in `{builtin}`: {detail}")]
    TypeMismatch { builtin: String, detail: String },
    #[error("grounding did not reach a fixpoint within {0} rounds")]
    FuelExhausted(usize),
    #[error(transparent)]
    Ast(#[from] AstError),
    #[error(transparent)]
    Compile(#[from] CompileError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("candidate contains both `{0}` and its complement")]
    InconsistentCandidate(Literal),
    #[error("literal `{0}` is not in the model")]
    LiteralNotInModel(Literal),
    #[error("literal `{0}` does not occur in the ground program")]
    UnknownLiteral(Literal),
    #[error("goal `{0}` must be ground")]
    NonGroundGoal(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ComplianceError {
    #[error("narrative may only contain facts, found `{0}`")]
    NonFactNarrative(String),
    #[error(transparent)]
    Ground(#[from] GroundError),
}
