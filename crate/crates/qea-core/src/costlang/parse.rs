//! Recursive-descent parser for the cost-expression grammar.
//!
//! All errors carry the 0-based character offset of the offending input.

use thiserror::Error;

use super::{BinOp, Expr, Func};

/// Syntax errors, with the character offset where the problem was detected.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at offset {offset}")]
    UnexpectedChar { ch: char, offset: usize },
    #[error("malformed number at offset {offset}")]
    MalformedNumber { offset: usize },
    #[error("unexpected end of expression at offset {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("expected {expected} at offset {offset}, found `{found}`")]
    Unexpected {
        expected: &'static str,
        found: String,
        offset: usize,
    },
    #[error("unknown function `{name}` at offset {offset} (recognized functions: log2, ln, sqrt)")]
    UnknownFunction { name: String, offset: usize },
}

#[derive(Clone, Debug, PartialEq)]
enum TokenKind {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Number(x) => format!("{x}"),
            TokenKind::Ident(s) => s.clone(),
            TokenKind::Plus => "+".into(),
            TokenKind::Minus => "-".into(),
            TokenKind::Star => "*".into(),
            TokenKind::Slash => "/".into(),
            TokenKind::Caret => "^".into(),
            TokenKind::LParen => "(".into(),
            TokenKind::RParen => ")".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let offset = i;
        match ch {
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let kind = match ch {
                    '+' => TokenKind::Plus,
                    '-' => TokenKind::Minus,
                    '*' => TokenKind::Star,
                    '/' => TokenKind::Slash,
                    '^' => TokenKind::Caret,
                    '(' => TokenKind::LParen,
                    _ => TokenKind::RParen,
                };
                tokens.push(Token { kind, offset });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    text.push(chars[i]);
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    text.push('.');
                    i += 1;
                    if i >= chars.len() || !chars[i].is_ascii_digit() {
                        return Err(ParseError::MalformedNumber { offset });
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        text.push(chars[i]);
                        i += 1;
                    }
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    // Only consume the exponent marker if a valid exponent
                    // follows; otherwise `2e` would swallow a trailing ident.
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        text.extend(chars[i..j].iter());
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            text.push(chars[i]);
                            i += 1;
                        }
                    }
                }
                let value: f64 = text
                    .parse()
                    .map_err(|_| ParseError::MalformedNumber { offset })?;
                tokens.push(Token {
                    kind: TokenKind::Number(value),
                    offset,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    name.push(chars[i]);
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(name),
                    offset,
                });
            }
            _ => return Err(ParseError::UnexpectedChar { ch, offset }),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end_offset: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(&TokenKind::Plus) {
                BinOp::Add
            } else if self.eat(&TokenKind::Minus) {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, lhs.into(), rhs.into());
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = if self.eat(&TokenKind::Star) {
                BinOp::Mul
            } else if self.eat(&TokenKind::Slash) {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            lhs = Expr::Bin(op, lhs.into(), rhs.into());
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&TokenKind::Minus) {
            let inner = self.power()?;
            Ok(Expr::Neg(inner.into()))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(&TokenKind::Caret) {
            let exponent = self.factor()?;
            Ok(Expr::Bin(BinOp::Pow, base.into(), exponent.into()))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let token = self
            .advance()
            .ok_or(ParseError::UnexpectedEnd {
                offset: self.end_offset,
            })?;
        match token.kind {
            TokenKind::Number(x) => Ok(Expr::Number(x)),
            TokenKind::Ident(name) => {
                if self.eat(&TokenKind::LParen) {
                    let func = match name.as_str() {
                        "log2" => Func::Log2,
                        "ln" => Func::Ln,
                        "sqrt" => Func::Sqrt,
                        _ => {
                            return Err(ParseError::UnknownFunction {
                                name,
                                offset: token.offset,
                            })
                        }
                    };
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    Ok(Expr::Call(func, arg.into()))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            kind => Err(ParseError::Unexpected {
                expected: "a number, variable, function call, or `(`",
                found: kind.describe(),
                offset: token.offset,
            }),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.advance() {
            Some(Token {
                kind: TokenKind::RParen,
                ..
            }) => Ok(()),
            Some(token) => Err(ParseError::Unexpected {
                expected: "`)`",
                found: token.kind.describe(),
                offset: token.offset,
            }),
            None => Err(ParseError::UnexpectedEnd {
                offset: self.end_offset,
            }),
        }
    }
}

/// Parses a cost expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = lex(text)?;
    let end_offset = text.chars().count();
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_offset,
    };
    let expr = parser.expr()?;
    if let Some(extra) = parser.peek() {
        return Err(ParseError::Unexpected {
            expected: "end of expression",
            found: extra.kind.describe(),
            offset: extra.offset,
        });
    }
    Ok(expr)
}
