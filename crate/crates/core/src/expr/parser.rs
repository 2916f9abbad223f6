use std::f64::consts::PI;

use super::{Expr, ExprError, UnaryOp};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(pos: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        pos,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let literal = &text[start..i];
                let value = literal
                    .parse::<f64>()
                    .map_err(|_| syntax(start, format!("malformed number `{literal}`")))?;
                tokens.push((start, Token::Number(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        tokens.push((start, token));
        i += 1;
    }
    tokens.push((text.len(), Token::End));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor].1
    }

    fn pos(&self) -> usize {
        self.tokens[self.cursor].0
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.cursor].1.clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        token
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ExprError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            lhs = match self.peek() {
                Token::Plus => {
                    self.bump();
                    Expr::add(lhs, self.term()?)
                }
                Token::Minus => {
                    self.bump();
                    Expr::sub(lhs, self.term()?)
                }
                _ => return Ok(lhs),
            };
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            lhs = match self.peek() {
                Token::Star => {
                    self.bump();
                    Expr::mul(lhs, self.unary()?)
                }
                Token::Slash => {
                    self.bump();
                    Expr::div(lhs, self.unary()?)
                }
                _ => return Ok(lhs),
            };
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Token::Minus {
            self.bump();
            Ok(Expr::neg(self.unary()?))
        } else {
            self.power()
        }
    }

    // power := atom ('^' unary)?   (right associative, binds tighter than unary minus)
    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if *self.peek() == Token::Caret {
            self.bump();
            Ok(Expr::pow(base, self.unary()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Token::Number(v) => Ok(Expr::Const(v)),
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Token::Ident(name) => {
                if *self.peek() == Token::LParen {
                    let op =
                        UnaryOp::from_function_name(&name).ok_or_else(|| ExprError::UnknownIdentifier(name.clone()))?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Token::RParen, "`)` after function argument")?;
                    return Ok(Expr::unary(op, arg));
                }
                match name.as_str() {
                    "t" | "theta" => Ok(Expr::Var),
                    "pi" => Ok(Expr::Const(PI)),
                    _ if UnaryOp::from_function_name(&name).is_some() => {
                        Err(syntax(self.pos(), format!("expected `(` after `{name}`")))
                    }
                    _ => Ok(Expr::Param(name)),
                }
            }
            Token::End => Err(syntax(pos, "unexpected end of input")),
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a curve expression.
///
/// Precedence from tightest: `^` (right associative), unary `-`, `* /`,
/// `+ -`; binary operators of equal precedence associate to the left.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        cursor: 0,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(syntax(parser.pos(), "unexpected trailing input"));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr as E;

    #[test]
    fn structural_examples() {
        assert_eq!(parse("cos(t)").unwrap(), E::cos(E::Var));
        assert_eq!(
            parse("1 - lambda*sin(t)").unwrap(),
            E::sub(E::Const(1.0), E::mul(E::param("lambda"), E::sin(E::Var)))
        );
        assert_eq!(
            parse("cos(3*t/2)").unwrap(),
            E::cos(E::div(E::mul(E::Const(3.0), E::Var), E::Const(2.0)))
        );
    }

    #[test]
    fn theta_and_pi() {
        assert_eq!(parse("theta").unwrap(), E::Var);
        assert_eq!(parse("pi").unwrap(), E::Const(PI));
        assert_eq!(parse("1.5e-3").unwrap(), E::Const(1.5e-3));
    }

    #[test]
    fn unary_minus_is_looser_than_power() {
        assert_eq!(parse("-2^2").unwrap(), E::neg(E::pow(E::Const(2.0), E::Const(2.0))));
        assert_eq!(parse("-a*b").unwrap(), E::mul(E::neg(E::param("a")), E::param("b")));
    }

    #[test]
    fn errors_carry_positions_and_names() {
        assert_eq!(parse("exp(t)").unwrap_err(), ExprError::UnknownIdentifier("exp".into()));
        assert!(matches!(parse("1 +"), Err(ExprError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("(1"), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("1 $ 2"), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse("sin + 1"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("2 3"), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(ExprError::Syntax { pos: 0, .. })));
    }
}
