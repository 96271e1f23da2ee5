//! Normative reasoning over answer-set programs.
//!
//! Deontic statements are lowered to rules ([`compiler`]), instantiated over
//! exact rationals ([`grounder`]) and solved under the stable-model semantics
//! with strong negation ([`solver`]).

pub mod ast;
pub mod compiler;
pub mod compliance;
pub mod error;
pub mod grounder;
pub mod justify;
pub mod modal;
pub mod output;
pub mod parser;
pub mod solver;
pub mod theory;

pub use ast::{
    complement, signature, ArithExpr, Atom, BodyElem, CmpOp, Literal, PredSig, Program, Rule, Term,
};
pub use compiler::{compile_theory, AlethicNotion, CompilationTrace, Pattern};
pub use compliance::{check_narrative, ComplianceReport};
pub use error::{
    AstError, CompileError, ComplianceError, GroundError, ParseError, SolveError, SourceSpan,
};
pub use grounder::{ground, GroundProgram};
pub use parser::{parse_deontic, parse_program, parse_query, render_program, Query};
pub use solver::{enumerate_models, query, AnswerSet, EnumerateOptions};
pub use theory::{DeonticStatement, DeonticTheory, NormKind};
