//! Recursive-descent parser.
//!
//! Precedence, loosest first: additive `+ -`; the product tier `^ . _| |_`;
//! scalar attachment `*`; unary minus; atoms. The four products of the tier
//! never mix with each other in one unparenthesized chain. `*` binds
//! tighter as coefficient attachment (`t*e1`, `sin(t)*e12`); a `*`-group
//! with more than one non-scalar factor is a real geometric product and may
//! only meet the product tier behind parentheses.

use clifford_core::BladeMask;

use crate::error::{ErrorCode, ParseError};
use crate::token::{BinOp, FuncName, Span, Token, TokenKind};

/// Grammar-shaped tree; every node carries its source span.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub span: Span,
    pub kind: TreeKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeKind {
    Number(f64),
    Var,
    Blade(BladeMask),
    Paren(Box<TreeNode>),
    Negate(Box<TreeNode>),
    BinOp {
        op: BinOp,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Call {
        func: FuncName,
        args: Vec<TreeNode>,
    },
}

/// Parsed expression, ready for validation and lowering.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseTree {
    pub root: TreeNode,
}

pub fn parse_tokens(tokens: &[Token], source_len: usize) -> Result<ParseTree, ParseError> {
    let mut parser = Parser {
        tokens,
        pos: 0,
        source_len,
    };
    let root = parser.expr()?;
    if let Some(extra) = parser.peek() {
        return Err(ParseError::new(
            extra.span,
            ErrorCode::UnexpectedToken,
            "unexpected trailing input",
        ));
    }
    Ok(ParseTree { root })
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    source_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_span(&self) -> Span {
        Span::new(self.source_len, self.source_len)
    }

    /// `expr := term (('+' | '-') term)*`
    fn expr(&mut self) -> Result<TreeNode, ParseError> {
        let mut node = self.term()?;
        while let Some(token) = self.peek() {
            let op = match token.kind {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let span = node.span.join(rhs.span);
            node = TreeNode {
                span,
                kind: TreeKind::BinOp {
                    op,
                    left: Box::new(node),
                    right: Box::new(rhs),
                },
            };
        }
        Ok(node)
    }

    /// `term := tight (PRODOP tight)*` with a single product operator per
    /// chain.
    fn term(&mut self) -> Result<TreeNode, ParseError> {
        let first = self.tight()?;
        let mut operands = vec![first];
        let mut chain_op: Option<BinOp> = None;
        while let Some(token) = self.peek() {
            let op = match token.kind {
                TokenKind::Caret => BinOp::Wedge,
                TokenKind::Dot => BinOp::ScalarDot,
                TokenKind::LContr => BinOp::LeftContr,
                TokenKind::RContr => BinOp::RightContr,
                _ => break,
            };
            match chain_op {
                None => chain_op = Some(op),
                Some(previous) if previous != op => {
                    return Err(ParseError::new(
                        token.span,
                        ErrorCode::MixedProducts,
                        format!(
                            "mixed products need parentheses: `{}` after `{}`",
                            op.symbol(),
                            previous.symbol()
                        ),
                    ));
                }
                Some(_) => {}
            }
            self.bump();
            operands.push(self.tight()?);
        }

        let Some(op) = chain_op else {
            return Ok(operands.pop().expect("at least one operand"));
        };
        // A `*`-group inside a product chain must be scalar scaling.
        for operand in &operands {
            let non_scalar = star_factors(operand)
                .iter()
                .filter(|f| !is_scalar_shaped(f))
                .count();
            if non_scalar > 1 {
                return Err(ParseError::new(
                    operand.span,
                    ErrorCode::MixedProducts,
                    format!(
                        "mixed products need parentheses: `*` may join `{}` only as scalar scaling",
                        op.symbol()
                    ),
                ));
            }
        }
        let mut iter = operands.into_iter();
        let mut node = iter.next().expect("at least one operand");
        for rhs in iter {
            let span = node.span.join(rhs.span);
            node = TreeNode {
                span,
                kind: TreeKind::BinOp {
                    op,
                    left: Box::new(node),
                    right: Box::new(rhs),
                },
            };
        }
        Ok(node)
    }

    /// `tight := unary ('*' unary)*`
    fn tight(&mut self) -> Result<TreeNode, ParseError> {
        let mut node = self.unary()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Star)) {
            self.bump();
            let rhs = self.unary()?;
            let span = node.span.join(rhs.span);
            node = TreeNode {
                span,
                kind: TreeKind::BinOp {
                    op: BinOp::Times,
                    left: Box::new(node),
                    right: Box::new(rhs),
                },
            };
        }
        Ok(node)
    }

    /// `unary := '-' unary | primary`
    fn unary(&mut self) -> Result<TreeNode, ParseError> {
        if let Some(token) = self.peek() {
            if token.kind == TokenKind::Minus {
                let minus_span = token.span;
                self.bump();
                let inner = self.unary()?;
                let span = minus_span.join(inner.span);
                return Ok(TreeNode {
                    span,
                    kind: TreeKind::Negate(Box::new(inner)),
                });
            }
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<TreeNode, ParseError> {
        let Some(token) = self.bump() else {
            return Err(ParseError::new(
                self.end_span(),
                ErrorCode::UnexpectedToken,
                "unexpected end of input",
            ));
        };
        match &token.kind {
            TokenKind::Number(value) => Ok(TreeNode {
                span: token.span,
                kind: TreeKind::Number(*value),
            }),
            TokenKind::Var => Ok(TreeNode {
                span: token.span,
                kind: TreeKind::Var,
            }),
            TokenKind::Blade(mask) => Ok(TreeNode {
                span: token.span,
                kind: TreeKind::Blade(*mask),
            }),
            TokenKind::Func(func) => self.call(*func, token.span),
            TokenKind::LParen => {
                let inner = self.expr()?;
                let close = self.expect_rparen(token.span)?;
                Ok(TreeNode {
                    span: token.span.join(close),
                    kind: TreeKind::Paren(Box::new(inner)),
                })
            }
            _ => Err(ParseError::new(
                token.span,
                ErrorCode::UnexpectedToken,
                "expected a number, `t`, a blade, a function call, or `(`",
            )),
        }
    }

    fn call(&mut self, func: FuncName, name_span: Span) -> Result<TreeNode, ParseError> {
        let Some(open) = self.bump() else {
            return Err(ParseError::new(
                self.end_span(),
                ErrorCode::UnexpectedToken,
                format!("`{}` must be called with parentheses", func.name()),
            ));
        };
        if open.kind != TokenKind::LParen {
            return Err(ParseError::new(
                open.span,
                ErrorCode::UnexpectedToken,
                format!("`{}` must be called with parentheses", func.name()),
            ));
        }
        let mut args = vec![self.expr()?];
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Comma) => {
                    self.bump();
                    args.push(self.expr()?);
                }
                Some(TokenKind::RParen) => {
                    let close = self.bump().expect("peeked").span;
                    return Ok(TreeNode {
                        span: name_span.join(close),
                        kind: TreeKind::Call { func, args },
                    });
                }
                _ => {
                    return Err(ParseError::new(
                        self.peek().map_or(self.end_span(), |t| t.span),
                        ErrorCode::UnbalancedParens,
                        format!("unclosed argument list of `{}`", func.name()),
                    ));
                }
            }
        }
    }

    fn expect_rparen(&mut self, open_span: Span) -> Result<Span, ParseError> {
        match self.bump() {
            Some(token) if token.kind == TokenKind::RParen => Ok(token.span),
            Some(token) => Err(ParseError::new(
                token.span,
                ErrorCode::UnbalancedParens,
                "expected `)`",
            )),
            None => Err(ParseError::new(
                open_span,
                ErrorCode::UnbalancedParens,
                "unclosed `(`",
            )),
        }
    }
}

/// Factors of a `*` chain, stopping at parentheses.
fn star_factors(node: &TreeNode) -> Vec<&TreeNode> {
    match &node.kind {
        TreeKind::BinOp {
            op: BinOp::Times,
            left,
            right,
        } => {
            let mut factors = star_factors(left);
            factors.extend(star_factors(right));
            factors
        }
        _ => vec![node],
    }
}

/// Conservative static check: does the subtree evaluate into grade 0?
pub(crate) fn is_scalar_shaped(node: &TreeNode) -> bool {
    match &node.kind {
        TreeKind::Number(_) | TreeKind::Var => true,
        TreeKind::Blade(mask) => *mask == BladeMask::SCALAR,
        TreeKind::Paren(inner) | TreeKind::Negate(inner) => is_scalar_shaped(inner),
        TreeKind::BinOp { left, right, .. } => {
            is_scalar_shaped(left) && is_scalar_shaped(right)
        }
        TreeKind::Call { func, args } => match func {
            FuncName::Compose => args.first().map(is_scalar_shaped).unwrap_or(false),
            _ => true,
        },
    }
}
