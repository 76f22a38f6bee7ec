//! Expression DSL for multivector curves.
//!
//! The bridge from command-line strings to [`curve_calculus::CurveExpr`]:
//! a tokenizer with byte spans, a recursive-descent parser, a validator
//! that lowers grammar trees into dimension-checked curve expressions, and
//! a pretty-printer whose output re-parses to an evaluation-identical
//! expression.
//!
//! ```
//! let curve = expr_dsl::parse_curve("cos(t) + sin(t)*e12", 2).unwrap();
//! let value = curve.eval(0.0).unwrap();
//! assert_eq!(value, clifford_core::Multivector::scalar(2, 1.0));
//! ```

mod error;
mod lexer;
mod lower;
mod parser;
mod printer;
mod token;

pub use error::{ErrorCode, ParseError};
pub use lexer::tokenize;
pub use lower::lower;
pub use parser::{parse_tokens, ParseTree, TreeKind, TreeNode};
pub use printer::pretty_print;
pub use token::{BinOp, FuncName, Span, Token, TokenKind};

use curve_calculus::CurveExpr;

/// Parses source text into a grammar tree, validating blade labels against
/// the ambient dimension.
pub fn parse(text: &str, dim: usize) -> Result<ParseTree, ParseError> {
    let tokens = tokenize(text, dim)?;
    parse_tokens(&tokens, text.len())
}

/// Parse and lower in one step.
pub fn parse_curve(text: &str, dim: usize) -> Result<CurveExpr, ParseError> {
    lower(&parse(text, dim)?, dim)
}
