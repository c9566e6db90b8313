//! Text grammar for polynomials and vector fields.
//!
//! ```text
//! file  := { stmt [';'] }
//! stmt  := 'param' ('a'|'b') '=' expr | ('dx'|'dy'|'dz') '=' expr
//! expr  := term { ('+'|'-') term }
//! term  := unary { ('*'|'/') unary }
//! unary := ('+'|'-') unary | power
//! power := atom [ '^' integer ]
//! atom  := integer | 'x'|'y'|'z'|'a'|'b' | '(' expr ')'
//! ```
//!
//! Division is only accepted by a nonzero rational constant. `#` starts a
//! comment that runs to the end of the line.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Field;
use crate::algebra::{ParamPoly, Poly, Rat, DEFAULT_MAX_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
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
    Eq,
    Semi,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{}'", n),
            Tok::Ident(s) => write!(f, "'{}'", s),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Eq => f.write_str("'='"),
            Tok::Semi => f.write_str("';'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        let mut push = |tok| out.push(Spanned { tok, line: l0, column: c0 });
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
                continue;
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                    column += 1;
                }
                push(Tok::Int(s.parse().expect("digits")));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    s.push(d);
                    chars.next();
                    column += 1;
                }
                push(Tok::Ident(s));
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            ';' => Tok::Semi,
            other => {
                return Err(ParseError {
                    line,
                    column,
                    message: format!("unexpected character '{}'", other),
                })
            }
        };
        out.push(Spanned { tok, line, column });
        chars.next();
        column += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    max_degree: u32,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            max_degree: DEFAULT_MAX_DEGREE,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, message: impl Into<String>) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            Err(self.error_at(&t, format!("expected {}, found {}", tok, t.tok)))
        }
    }

    fn check_degree(&self, p: &Poly, at: &Spanned) -> Result<(), ParseError> {
        let d = p.total_degree();
        if d > self.max_degree {
            return Err(self.error_at(
                at,
                format!("degree {} exceeds the bound {}", d, self.max_degree),
            ));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    let at = self.next();
                    let rhs = self.unary()?;
                    if acc.total_degree() + rhs.total_degree() > self.max_degree {
                        return Err(self.error_at(
                            &at,
                            format!("product degree exceeds the bound {}", self.max_degree),
                        ));
                    }
                    acc = &acc * &rhs;
                }
                Tok::Slash => {
                    let at = self.next();
                    let rhs = self.unary()?;
                    let divisor = rhs
                        .is_constant()
                        .then(|| rhs.constant_term().as_constant())
                        .flatten();
                    match divisor {
                        Some(d) if !d.is_zero() => acc = acc.scale_rat(&d.recip()),
                        Some(_) => return Err(self.error_at(&at, "division by zero")),
                        None => {
                            return Err(self.error_at(
                                &at,
                                "division is only allowed by a nonzero rational constant",
                            ))
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.next();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let at = self.next();
        let Tok::Int(n) = &at.tok else {
            return Err(self.error_at(&at, format!("expected integer exponent, found {}", at.tok)));
        };
        let n = n
            .to_u32()
            .filter(|&n| n.saturating_mul(base.total_degree()) <= self.max_degree)
            .ok_or_else(|| self.error_at(&at, "exponent too large"))?;
        let p = base.pow(n);
        self.check_degree(&p, &at)?;
        Ok(p)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(Poly::from_rat(Rat::from_integer(n.clone()))),
            Tok::Ident(s) => match s.as_str() {
                "x" => Ok(Poly::x()),
                "y" => Ok(Poly::y()),
                "z" => Ok(Poly::z()),
                "a" => Ok(Poly::constant(ParamPoly::a())),
                "b" => Ok(Poly::constant(ParamPoly::b())),
                other => Err(self.error_at(&t, format!("unknown symbol '{}'", other))),
            },
            Tok::LParen => {
                let p = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            other => Err(self.error_at(&t, format!("expected an expression, found {}", other))),
        }
    }
}

/// A parsed field file: the symbolic field plus any `param` assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSource {
    pub field: Field,
    pub a: Option<Rat>,
    pub b: Option<Rat>,
}

impl FieldSource {
    /// The field with every assigned parameter substituted.
    pub fn specialized(&self) -> Field {
        let a = self.a.clone().map(ParamPoly::constant).unwrap_or_else(ParamPoly::a);
        let b = self.b.clone().map(ParamPoly::constant).unwrap_or_else(ParamPoly::b);
        self.field.substitute_params(&a, &b)
    }
}

/// Parses a single polynomial expression.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser::new(text)?;
    let out = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.error_at(&t, format!("unexpected {}", t.tok)));
    }
    Ok(out)
}

/// Parses a field file, keeping `param` assignments separate.
pub fn parse_field_source(text: &str) -> Result<FieldSource, ParseError> {
    let mut p = Parser::new(text)?;
    let mut comps: [Option<Poly>; 3] = [None, None, None];
    let (mut a, mut b) = (None, None);
    loop {
        let t = p.next();
        let name = match &t.tok {
            Tok::End => break,
            Tok::Semi => continue,
            Tok::Ident(s) => s.clone(),
            other => return Err(p.error_at(&t, format!("expected a statement, found {}", other))),
        };
        match name.as_str() {
            "param" => {
                let sym = p.next();
                let slot = match &sym.tok {
                    Tok::Ident(s) if s == "a" => &mut a,
                    Tok::Ident(s) if s == "b" => &mut b,
                    other => {
                        return Err(p.error_at(&sym, format!("expected parameter a or b, found {}", other)))
                    }
                };
                if slot.is_some() {
                    return Err(p.error_at(&sym, "parameter assigned twice"));
                }
                p.expect(Tok::Eq)?;
                let at = p.peek().clone();
                let v = p.expr()?;
                let value = v
                    .is_constant()
                    .then(|| v.constant_term().as_constant())
                    .flatten()
                    .ok_or_else(|| p.error_at(&at, "parameter value must be a rational constant"))?;
                *slot = Some(value);
            }
            "dx" | "dy" | "dz" => {
                let idx = match name.as_str() {
                    "dx" => 0,
                    "dy" => 1,
                    _ => 2,
                };
                if comps[idx].is_some() {
                    return Err(p.error_at(&t, format!("{} defined twice", name)));
                }
                p.expect(Tok::Eq)?;
                comps[idx] = Some(p.expr()?);
            }
            other => return Err(p.error_at(&t, format!("unknown statement '{}'", other))),
        }
        let sep = p.peek().clone();
        match sep.tok {
            Tok::Semi | Tok::End | Tok::Ident(_) => {}
            _ => return Err(p.error_at(&sep, format!("unexpected {}", sep.tok))),
        }
    }
    let end = p.peek().clone();
    let mut take = |i: usize, name: &str| {
        comps[i]
            .take()
            .ok_or_else(|| p.error_at(&end, format!("missing {} statement", name)))
    };
    let components = [take(0, "dx")?, take(1, "dy")?, take(2, "dz")?];
    let field = Field::new(components).map_err(|e| ParseError {
        line: end.line,
        column: end.column,
        message: e.to_string(),
    })?;
    Ok(FieldSource { field, a, b })
}

/// Parses a field file and substitutes any `param` assignments.
pub fn parse_field(text: &str) -> Result<Field, ParseError> {
    Ok(parse_field_source(text)?.specialized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::field::{d2_field, FieldSign};

    #[test]
    fn d2_text_parses_to_builtin() {
        let f = parse_field("dx = a*x + y*z; dy = b*y + x*z; dz = z - x*y").unwrap();
        assert_eq!(f, d2_field(FieldSign::Negative));
    }

    #[test]
    fn zero_field_and_expansion() {
        assert_eq!(parse_field("dx = 0; dy = 0; dz = 0").unwrap(), Field::zero());
        let f = parse_field("dx = (x+y)^2; dy = 0; dz = 0").unwrap();
        assert_eq!(f.components()[0].to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn params_specialize() {
        let f = parse_field("param a = 1\nparam b = -2/4;\ndx = a*x + y*z\ndy = b*y + x*z\ndz = z - x*y").unwrap();
        let expect = d2_field(FieldSign::Negative)
            .specialize(Some(&rat(1, 1)), Some(&rat(-1, 2)))
            .unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn rational_literals_and_precedence() {
        assert_eq!(parse_poly("1/2*x - -x^2").unwrap().to_string(), "x^2 + 1/2*x");
        assert_eq!(parse_poly("-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(parse_poly("(a - b)*y").unwrap().to_string(), "a*y - b*y");
    }

    #[test]
    fn rejects_division_by_variables() {
        let e = parse_poly("1/x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
        assert!(parse_poly("x/(a)").is_err());
        assert!(parse_poly("x/0").is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_field("dx = x +\n dy = y; dz = z").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_field("dx = x; dy = y").unwrap_err();
        assert!(e.message.contains("dz"));
        let e = parse_poly("x $ y").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(parse_poly("x^40").is_err());
    }
}
