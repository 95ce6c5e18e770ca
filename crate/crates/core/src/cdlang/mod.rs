//! Expression language for CD-logic propositions.

mod ast;
mod eval;
mod parser;

pub use ast::{Expr, Quantifier};
pub use eval::{
    evaluate, is_derivable, is_derivable_with, Derivability, EvalError, Evaluator, Valuation, MAX_DERIVABILITY_ATOMS,
};
pub use parser::{is_reserved, parse, parse_with_free, ParseError};
