//! Tokens and source spans.

use std::fmt;

use clifford_core::BladeMask;

/// Half-open byte range into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Builtin function names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuncName {
    Sin,
    Cos,
    Exp,
    Ln,
    Pow,
    Poly,
    Compose,
}

impl FuncName {
    pub fn lookup(name: &str) -> Option<FuncName> {
        Some(match name {
            "sin" => FuncName::Sin,
            "cos" => FuncName::Cos,
            "exp" => FuncName::Exp,
            "ln" => FuncName::Ln,
            "pow" => FuncName::Pow,
            "poly" => FuncName::Poly,
            "compose" => FuncName::Compose,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FuncName::Sin => "sin",
            FuncName::Cos => "cos",
            FuncName::Exp => "exp",
            FuncName::Ln => "ln",
            FuncName::Pow => "pow",
            FuncName::Poly => "poly",
            FuncName::Compose => "compose",
        }
    }
}

/// Binary operators of the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Wedge,
    Times,
    ScalarDot,
    LeftContr,
    RightContr,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Wedge => "^",
            BinOp::Times => "*",
            BinOp::ScalarDot => ".",
            BinOp::LeftContr => "_|",
            BinOp::RightContr => "|_",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Number(f64),
    /// The curve parameter `t`.
    Var,
    Blade(BladeMask),
    Func(FuncName),
    Plus,
    Minus,
    Caret,
    Star,
    Dot,
    LContr,
    RContr,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}
