//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | variable | "(" expr ")"
//! ```
//!
//! Variables are the fixed tokens `s1..sm` and `x1..xn` of the ring. A divisor
//! must be a nonzero constant, so `3/2*x1` is the way to write a rational
//! coefficient. Juxtaposition (`2x1`, `x1 x2`) is rejected.

use std::fmt;

use num_bigint::BigInt;

use crate::poly::{Monomial, Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A character outside the grammar.
    Lexical(char),
    /// Decimal literals such as `1.5` are not exact input.
    DecimalLiteral,
    Syntax(String),
    UnknownVariable(String),
    /// The token after `^` is not a non-negative integer.
    BadExponent,
    DivisionByZero,
    NonConstantDivisor,
}

/// A parse failure with its 1-based character position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.position;
        match &self.kind {
            ParseErrorKind::Lexical(c) => write!(
                f,
                "lexical error at position {p}: unexpected character {c:?}"
            ),
            ParseErrorKind::DecimalLiteral => {
                write!(
                    f,
                    "lexical error at position {p}: decimal literals are not allowed, write p/q"
                )
            }
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at position {p}: {msg}"),
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable {v:?} at position {p}")
            }
            ParseErrorKind::BadExponent => {
                write!(f, "exponent at position {p} is not a non-negative integer")
            }
            ParseErrorKind::DivisionByZero => write!(f, "division by zero at position {p}"),
            ParseErrorKind::NonConstantDivisor => {
                write!(f, "divisor at position {p} is not a constant")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal,
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

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Decimal => "decimal literal".into(),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Decimal, pos));
                continue;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => {
                return Err(ParseError {
                    kind: ParseErrorKind::DecimalLiteral,
                    position: pos,
                })
            }
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::Lexical(other),
                    position: pos,
                })
            }
        };
        out.push((tok, pos));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            kind,
            position: self.pos(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(ParseError {
                            kind: ParseErrorKind::DivisionByZero,
                            position: at,
                        });
                    }
                    if !d.is_constant() {
                        return Err(ParseError {
                            kind: ParseErrorKind::NonConstantDivisor,
                            position: at,
                        });
                    }
                    let c = d.leading_coefficient().expect("nonzero").recip();
                    acc = acc.scale(&c);
                }
                // an operand directly after an operand
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen | Tok::Decimal => {
                    return self.err(ParseErrorKind::Syntax(
                        "implicit multiplication is not allowed, use '*'".into(),
                    ));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                let e: u32 = match u16::try_from(n) {
                    Ok(e) => e as u32,
                    Err(_) => return self.err(ParseErrorKind::BadExponent),
                };
                self.bump();
                Ok(base.pow(e))
            }
            _ => self.err(ParseErrorKind::BadExponent),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Polynomial::constant(*self.ring, Rational::from_integer(n))),
            Tok::Decimal => Err(ParseError {
                kind: ParseErrorKind::DecimalLiteral,
                position: pos,
            }),
            Tok::Ident(name) => match lookup_variable(self.ring, &name) {
                Some(idx) => Ok(Polynomial::monomial(
                    *self.ring,
                    Monomial::var(idx),
                    Rational::from_integer(1.into()),
                )),
                None => Err(ParseError {
                    kind: ParseErrorKind::UnknownVariable(name),
                    position: pos,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    let found = self.peek().describe();
                    return self.err(ParseErrorKind::Syntax(format!(
                        "expected ')', found {found}"
                    )));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(ParseError {
                kind: ParseErrorKind::Syntax(format!(
                    "expected an operand, found {}",
                    other.describe()
                )),
                position: pos,
            }),
        }
    }
}

fn lookup_variable(ring: &Ring, name: &str) -> Option<usize> {
    let (prefix, digits) = name.split_at(1);
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let k: usize = digits.parse().ok()?;
    match prefix {
        "s" if k <= ring.s_vars() => Some(ring.s(k)),
        "x" if k <= ring.x_vars() => Some(ring.x(k)),
        _ => None,
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_expression(text: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, ring };
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::RParen => p.err(ParseErrorKind::Syntax("unmatched ')'".into())),
        other => {
            let found = other.describe();
            p.err(ParseErrorKind::Syntax(format!("unexpected {found}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_frac;

    fn ring() -> Ring {
        Ring::new(2, 3).unwrap()
    }

    fn parse(s: &str) -> Result<Polynomial, ParseError> {
        parse_expression(s, &ring())
    }

    #[test]
    fn conic() {
        let p = parse("x1^2 + x2^2 - x3^2").unwrap();
        assert_eq!(p.to_string(), "x1^2 + x2^2 - x3^2");
        assert_eq!(p.homogeneous_degree(), Some(2));
    }

    #[test]
    fn rational_coefficient() {
        let p = parse("3/2*x1*x2").unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(*p.leading_coefficient().unwrap(), rat_frac(3, 2));
    }

    #[test]
    fn trailing_operator() {
        let e = parse("x1 +").unwrap_err();
        assert_eq!(e.position, 5);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert!(e.to_string().starts_with("syntax error at position 5"));
    }

    #[test]
    fn rejects_juxtaposition() {
        let e = parse("2x1").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert!(parse("x1 x2").is_err());
        assert!(parse("(x1)(x2)").is_err());
    }

    #[test]
    fn unknown_variables() {
        assert_eq!(
            parse("x4").unwrap_err().kind,
            ParseErrorKind::UnknownVariable("x4".into())
        );
        assert_eq!(
            parse("y").unwrap_err().kind,
            ParseErrorKind::UnknownVariable("y".into())
        );
        assert_eq!(
            parse("x0").unwrap_err().kind,
            ParseErrorKind::UnknownVariable("x0".into())
        );
        assert_eq!(
            parse("s3").unwrap_err().kind,
            ParseErrorKind::UnknownVariable("s3".into())
        );
    }

    #[test]
    fn exponent_errors() {
        assert_eq!(
            parse("x1^-1").unwrap_err().kind,
            ParseErrorKind::BadExponent
        );
        assert_eq!(
            parse("x1^x2").unwrap_err().kind,
            ParseErrorKind::BadExponent
        );
        assert_eq!(
            parse("x1^1.5").unwrap_err().kind,
            ParseErrorKind::BadExponent
        );
        assert_eq!(
            parse("x1^99999999").unwrap_err().kind,
            ParseErrorKind::BadExponent
        );
    }

    #[test]
    fn division_rules() {
        assert_eq!(
            parse("x1/0").unwrap_err().kind,
            ParseErrorKind::DivisionByZero
        );
        assert_eq!(
            parse("x1/x2").unwrap_err().kind,
            ParseErrorKind::NonConstantDivisor
        );
        assert_eq!(parse("x1/(1+1)").unwrap().to_string(), "1/2*x1");
    }

    #[test]
    fn precedence_and_unary() {
        assert_eq!(parse("-x1^2").unwrap().to_string(), "-x1^2");
        assert_eq!(
            parse("(x1+x2)^2").unwrap().to_string(),
            "x1^2 + 2*x1*x2 + x2^2"
        );
        assert_eq!(parse("2*-x1").unwrap().to_string(), "-2*x1");
        assert_eq!(parse("s1*x1 - s2").unwrap().to_string(), "s1*x1 - s2");
    }

    #[test]
    fn lexical_errors() {
        assert_eq!(
            parse("x1 # 2").unwrap_err().kind,
            ParseErrorKind::Lexical('#')
        );
        assert_eq!(parse("").unwrap_err().position, 1);
        assert!(matches!(
            parse("(x1").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            parse("x1)").unwrap_err().kind,
            ParseErrorKind::Syntax(_)
        ));
    }
}
