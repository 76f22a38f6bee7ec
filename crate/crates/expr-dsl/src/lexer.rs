//! Tokenizer. Spans are byte offsets; tokens cover every non-whitespace
//! character of the input.

use clifford_core::BladeMask;

use crate::error::{ErrorCode, ParseError};
use crate::token::{FuncName, Span, Token, TokenKind};

pub fn tokenize(text: &str, dim: usize) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            '+' => {
                i += 1;
                TokenKind::Plus
            }
            '-' => {
                i += 1;
                TokenKind::Minus
            }
            '^' => {
                i += 1;
                TokenKind::Caret
            }
            '*' => {
                i += 1;
                TokenKind::Star
            }
            '.' => {
                i += 1;
                TokenKind::Dot
            }
            '(' => {
                i += 1;
                TokenKind::LParen
            }
            ')' => {
                i += 1;
                TokenKind::RParen
            }
            ',' => {
                i += 1;
                TokenKind::Comma
            }
            '_' => {
                if bytes.get(i + 1) == Some(&b'|') {
                    i += 2;
                    TokenKind::LContr
                } else {
                    return Err(ParseError::new(
                        Span::new(start, start + 1),
                        ErrorCode::Lexical,
                        "expected `_|` (left contraction)",
                    ));
                }
            }
            '|' => {
                if bytes.get(i + 1) == Some(&b'_') {
                    i += 2;
                    TokenKind::RContr
                } else {
                    return Err(ParseError::new(
                        Span::new(start, start + 1),
                        ErrorCode::Lexical,
                        "expected `|_` (right contraction)",
                    ));
                }
            }
            '0'..='9' => {
                let value = lex_number(bytes, &mut i)?;
                TokenKind::Number(value)
            }
            'a'..='z' => {
                let word_end = scan_word(bytes, i);
                let word = &text[i..word_end];
                i = word_end;
                classify_word(word, Span::new(start, word_end), dim)?
            }
            _ => {
                return Err(ParseError::new(
                    Span::new(start, start + c.len_utf8()),
                    ErrorCode::Lexical,
                    format!("unexpected character `{c}`"),
                ));
            }
        };
        tokens.push(Token {
            kind,
            span: Span::new(start, i),
        });
    }
    Ok(tokens)
}

fn scan_word(bytes: &[u8], start: usize) -> usize {
    let mut i = start;
    while i < bytes.len() && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit()) {
        i += 1;
    }
    i
}

fn lex_number(bytes: &[u8], i: &mut usize) -> Result<f64, ParseError> {
    let start = *i;
    while *i < bytes.len() && bytes[*i].is_ascii_digit() {
        *i += 1;
    }
    if *i < bytes.len() && bytes[*i] == b'.' && bytes.get(*i + 1).is_some_and(u8::is_ascii_digit)
    {
        *i += 1;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
    }
    // Exponent only when an `e` is directly followed by digits (or a signed
    // digit run); otherwise the `e` belongs to a following blade label.
    if *i < bytes.len() && bytes[*i] == b'e' {
        let mut j = *i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            *i = j;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
        }
    }
    let literal = std::str::from_utf8(&bytes[start..*i]).expect("ascii digits");
    literal.parse::<f64>().map_err(|_| {
        ParseError::new(
            Span::new(start, *i),
            ErrorCode::Lexical,
            format!("malformed number literal `{literal}`"),
        )
    })
}

fn classify_word(word: &str, span: Span, dim: usize) -> Result<TokenKind, ParseError> {
    if word == "t" {
        return Ok(TokenKind::Var);
    }
    if let Some(func) = FuncName::lookup(word) {
        return Ok(TokenKind::Func(func));
    }
    if let Some(tail) = word.strip_prefix('e') {
        if !tail.is_empty() && tail.chars().all(|c| matches!(c, '1'..='9' | 'a'..='c')) {
            return blade_from_tail(tail, span, dim);
        }
    }
    Err(ParseError::new(
        span,
        ErrorCode::Lexical,
        format!("unknown name `{word}`"),
    ))
}

fn blade_from_tail(tail: &str, span: Span, dim: usize) -> Result<TokenKind, ParseError> {
    let label = format!("e{tail}");
    match BladeMask::parse_label(&label) {
        Some(mask) => {
            if mask.fits_dim(dim) {
                Ok(TokenKind::Blade(mask))
            } else {
                Err(ParseError::new(
                    span,
                    ErrorCode::BladeIndex,
                    format!("blade `{label}` uses an index beyond dimension {dim}"),
                ))
            }
        }
        None => Err(ParseError::new(
            span,
            ErrorCode::BladeOrder,
            format!("blade `{label}` must list strictly ascending indices"),
        )),
    }
}
