//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') ['-'] term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := 'x' | 'y' | 'z' | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Juxtaposition is not multiplication: `2x` is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("invalid exponent at line {line}, column {column}: {message}")]
    InvalidExponent {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Dot,
    Other(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: tl,
                column: tc,
            });
            continue;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: tl,
                column: tc,
            });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => Tok::Dot,
                other => Tok::Other(other),
            }
        };
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
        i += 1;
        column += 1;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    out
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.signed_term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.signed_term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.signed_term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            Ok(-self.term()?)
        } else {
            self.term()
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let bad = |message: &str| ParseError::InvalidExponent {
            line: t.line,
            column: t.column,
            message: message.to_string(),
        };
        let e = match &t.tok {
            Tok::Int(n) => n.clone(),
            Tok::Minus => return Err(bad("exponent must be non-negative")),
            Tok::LParen | Tok::Ident(_) => {
                return Err(bad("exponent must be a non-negative integer literal"))
            }
            _ => return Err(Self::syntax(&t, "expected exponent after `^`")),
        };
        if matches!(self.peek().tok, Tok::Dot | Tok::Slash) {
            return Err(bad("exponent must be an integer"));
        }
        let e: u32 = e
            .try_into()
            .map_err(|_| bad("exponent does not fit in 32 bits"))?;
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Ident(ref name) => match name.as_str() {
                "x" => Ok(Polynomial::var(Var::X)),
                "y" => Ok(Polynomial::var(Var::Y)),
                "z" => Ok(Polynomial::var(Var::Z)),
                _ => Err(ParseError::UnknownIdentifier {
                    name: name.clone(),
                    line: t.line,
                    column: t.column,
                }),
            },
            Tok::Int(n) => {
                if let Tok::Ident(_) = self.peek().tok {
                    return Err(Self::syntax(
                        self.peek(),
                        "implicit multiplication is not supported; use `*`",
                    ));
                }
                if self.peek().tok == Tok::Dot {
                    return Err(Self::syntax(
                        self.peek(),
                        "decimal literals are not supported; write a fraction",
                    ));
                }
                if self.peek().tok != Tok::Slash {
                    return Ok(Polynomial::constant(Rational::from_integer(n)));
                }
                self.bump();
                let dt = self.bump();
                match &dt.tok {
                    Tok::Int(d) if d.is_zero() => Err(Self::syntax(&dt, "zero denominator")),
                    Tok::Int(d) => Ok(Polynomial::constant(Rational::new(n, d.clone()))),
                    _ => Err(Self::syntax(&dt, "expected unsigned integer denominator")),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(Self::syntax(&close, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(Self::syntax(&t, "unexpected end of input")),
            ref other => Err(Self::syntax(&t, format!("unexpected {}", describe(other)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Other(c) => format!("character `{c}`"),
        Tok::End => "end of input".into(),
    }
}

/// Parses a polynomial expression in `x, y, z`.
pub fn parse(text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        toks: tokenize(text),
        pos: 0,
    };
    let out = p.expr()?;
    let t = p.peek().clone();
    match t.tok {
        Tok::End => Ok(out),
        Tok::Ident(_) | Tok::LParen | Tok::Int(_) => Err(Parser::syntax(
            &t,
            "implicit multiplication is not supported; use `*`",
        )),
        ref other => Err(Parser::syntax(
            &t,
            format!("unexpected {}", describe(other)),
        )),
    }
}
