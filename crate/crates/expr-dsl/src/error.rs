//! Machine-readable parse and validation errors.

use std::fmt;

use crate::token::Span;

/// Stable error category, serialized alongside the span for tooling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    /// Character sequence that is not a token.
    Lexical,
    /// Unbalanced or missing parenthesis.
    UnbalancedParens,
    /// Different product operators mixed in one chain without parentheses.
    MixedProducts,
    /// Blade label references an index beyond the ambient dimension.
    BladeIndex,
    /// Blade label indices not strictly ascending.
    BladeOrder,
    /// A token other than the one the grammar requires.
    UnexpectedToken,
    /// Wrong number of arguments to a builtin function.
    Arity,
    /// Argument position requires a scalar function of `t`.
    NonScalarArgument,
    /// Argument position requires a numeric literal.
    NumberExpected,
}

impl ErrorCode {
    pub fn name(self) -> &'static str {
        match self {
            ErrorCode::Lexical => "lexical",
            ErrorCode::UnbalancedParens => "unbalanced-parens",
            ErrorCode::MixedProducts => "mixed-products",
            ErrorCode::BladeIndex => "blade-index",
            ErrorCode::BladeOrder => "blade-order",
            ErrorCode::UnexpectedToken => "unexpected-token",
            ErrorCode::Arity => "arity",
            ErrorCode::NonScalarArgument => "non-scalar-argument",
            ErrorCode::NumberExpected => "number-expected",
        }
    }
}

/// Rejection with the offending source span.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub span: Span,
    pub code: ErrorCode,
    pub message: String,
}

impl ParseError {
    pub fn new(span: Span, code: ErrorCode, message: impl Into<String>) -> ParseError {
        ParseError {
            span,
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code.name(), self.span, self.message)
    }
}

impl std::error::Error for ParseError {}
