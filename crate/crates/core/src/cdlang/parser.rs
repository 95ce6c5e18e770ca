//! Recursive-descent parser for the ASCII surface syntax.
//!
//! ```text
//! expr    := disj (("=>" | "->") expr)?          right-assoc, loosest
//! disj    := conj (("|" | "(+)") conj)*
//! conj    := unary (("&" | "(*)") unary)*
//! unary   := ("~" | "%" | "!" | "?" | "!-" | "?-") unary
//!          | ("all" | "ex") IDENT "." expr
//!          | primary
//! primary := "T" | "F" | "B" | "N" | IDENT "(" IDENT ")" | IDENT "<" IDENT
//!          | IDENT | "(" expr ")"
//! ```

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::ast::{Expr, Quantifier};
use crate::pbit::{BinaryOp, PBit, UnaryOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: unexpected character `{ch}`")]
    Lexical { line: usize, column: usize, ch: char },
    #[error("{line}:{column}: expected {}, found {found}", .expected.join(" or "))]
    Syntax { line: usize, column: usize, expected: Vec<String>, found: String },
    #[error("{line}:{column}: unbound variable `{name}`")]
    UnboundVariable { line: usize, column: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Unary(UnaryOp),
    Binary(BinaryOp),
    Less,
    LParen,
    RParen,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Unary(op) => write!(f, "`{}`", op.symbol()),
            Tok::Binary(op) => write!(f, "`{}`", op.symbol()),
            Tok::Less => write!(f, "`<`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let at = |k: usize| chars.get(i + k).copied();
        let (tok, width) = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '(' if at(1) == Some('*') && at(2) == Some(')') => (Tok::Binary(BinaryOp::Tensor), 3),
            '(' if at(1) == Some('+') && at(2) == Some(')') => (Tok::Binary(BinaryOp::Par), 3),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '.' => (Tok::Dot, 1),
            '<' => (Tok::Less, 1),
            '&' => (Tok::Binary(BinaryOp::Meet), 1),
            '|' => (Tok::Binary(BinaryOp::Join), 1),
            '-' if at(1) == Some('>') => (Tok::Binary(BinaryOp::Arrow), 2),
            '=' if at(1) == Some('>') => (Tok::Binary(BinaryOp::StrongImp), 2),
            '~' => (Tok::Unary(UnaryOp::Neg), 1),
            '%' => (Tok::Unary(UnaryOp::Demi), 1),
            '!' if at(1) == Some('-') && at(2) != Some('>') => (Tok::Unary(UnaryOp::WeakBang), 2),
            '?' if at(1) == Some('-') && at(2) != Some('>') => (Tok::Unary(UnaryOp::WeakGamma), 2),
            '!' => (Tok::Unary(UnaryOp::Bang), 1),
            '?' => (Tok::Unary(UnaryOp::Gamma), 1),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = chars[i..].iter().take_while(|c| c.is_ascii_alphanumeric() || **c == '_').count();
                (Tok::Ident(chars[i..i + len].iter().collect()), len)
            }
            ch => return Err(ParseError::Lexical { line, column: col, ch }),
        };
        out.push(Spanned { tok, line, column: col });
        i += width;
        col += width;
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

const OPERAND: [&str; 5] = ["identifier", "constant", "`(`", "prefix operator", "quantifier"];

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    free: &'a BTreeSet<String>,
    scope: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&[name])
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.disj()?;
        match self.peek().tok {
            Tok::Binary(op @ (BinaryOp::Arrow | BinaryOp::StrongImp)) => {
                self.bump();
                let rhs = self.expr()?;
                Ok(Expr::binary(op, lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn disj(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.conj()?;
        while let Tok::Binary(op @ (BinaryOp::Join | BinaryOp::Par)) = self.peek().tok {
            self.bump();
            let rhs = self.conj()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Tok::Binary(op @ (BinaryOp::Meet | BinaryOp::Tensor)) = self.peek().tok {
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().tok.clone() {
            Tok::Unary(op) => {
                self.bump();
                Ok(Expr::unary(op, self.unary()?))
            }
            Tok::Ident(kw) if kw == "all" || kw == "ex" => {
                self.bump();
                let q = if kw == "all" { Quantifier::Forall } else { Quantifier::Exists };
                let var = match self.peek().tok.clone() {
                    Tok::Ident(v) if !is_reserved(&v) => {
                        self.bump();
                        v
                    }
                    _ => return self.error(&["variable name"]),
                };
                self.expect(Tok::Dot, "`.`")?;
                self.scope.push(var.clone());
                let body = self.expr();
                self.scope.pop();
                Ok(Expr::Quant(q, var, Box::new(body?)))
            }
            _ => self.primary(),
        }
    }

    fn term(&mut self) -> Result<String, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(name) if !is_reserved(&name) => {
                self.bump();
                if self.scope.contains(&name) || self.free.contains(&name) {
                    Ok(name)
                } else {
                    Err(ParseError::UnboundVariable { line: t.line, column: t.column, name })
                }
            }
            _ => self.error(&["variable name"]),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().tok.clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(c) = constant(&name) {
                    self.bump();
                    return Ok(Expr::Const(c));
                }
                if is_reserved(&name) {
                    return self.error(&OPERAND);
                }
                match self.toks[self.pos + 1].tok {
                    Tok::LParen => {
                        self.bump();
                        self.bump();
                        let t = self.term()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Expr::Pred(name, t))
                    }
                    Tok::Less => {
                        let lhs = self.term()?;
                        self.bump();
                        let rhs = self.term()?;
                        Ok(Expr::Less(lhs, rhs))
                    }
                    _ => {
                        self.bump();
                        Ok(Expr::Atom(name))
                    }
                }
            }
            _ => self.error(&OPERAND),
        }
    }
}

fn constant(name: &str) -> Option<PBit> {
    match name {
        "T" => Some(PBit::True),
        "F" => Some(PBit::False),
        "B" => Some(PBit::Both),
        "N" => Some(PBit::Neither),
        _ => None,
    }
}

/// Names that cannot be atoms or variables.
pub fn is_reserved(name: &str) -> bool {
    constant(name).is_some() || name == "all" || name == "ex"
}

/// Parses a closed expression: every term must be quantifier-bound.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with_free(text, &BTreeSet::new())
}

/// Parses with `free` names admitted as unbound terms (free variables or
/// domain individuals resolved at evaluation time).
pub fn parse_with_free(text: &str, free: &BTreeSet<String>) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, free, scope: Vec::new() };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return p.error(&["operator", "end of input"]);
    }
    Ok(e)
}
