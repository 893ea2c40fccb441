//! Text syntax for differential polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' int)?
//! atom   := integer | name | name '[' int (',' int)* ']' | '(' expr ')' | '-' factor
//! ```
//!
//! Names resolve against a chart: coordinates, parameters, the dependent
//! variable, and formal functions; indexed names are jets in the chart's
//! coordinate order (`u[0,0,1,1]`) or the function's own order (`A[1,0]`).
//! A bare function or dependent name is its zero jet. Printing is
//! [`DiffPoly`]'s `Display`, and `parse(p.to_string()) == p`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::diffpoly::{DiffPoly, DiffPolyError, Rational, Sym};
use crate::jetspace::{Chart, JetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("{name} takes {expected} indices, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("divisor {0} is not a monomial")]
    NonMonomialDivisor(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Int(BigInt),
    Name(String),
    Indexed(String, Vec<u8>),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, i32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(text[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.push((start, Tok::Name(text[start..i].to_string())));
        } else if "+-*/^()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            return Err(ExprError::Syntax {
                offset: i,
                message: format!("unexpected character {ch:?}"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let n = self.small_int::<i32>("exponent")?;
        Ok(ExprAst::Pow(Box::new(base), if neg { -n } else { n }))
    }

    fn small_int<T: TryFrom<BigInt>>(&mut self, what: &str) -> Result<T, ExprError> {
        match self.peek().clone() {
            Tok::Int(n) => match T::try_from(n) {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => self.fail(format!("{what} out of range")),
            },
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(ExprAst::Int(n))
            }
            Tok::Name(name) => {
                self.bump();
                if *self.peek() != Tok::Sym('[') {
                    return Ok(ExprAst::Name(name));
                }
                self.bump();
                let mut idx = vec![self.small_int::<u8>("index")?];
                while *self.peek() == Tok::Sym(',') {
                    self.bump();
                    idx.push(self.small_int::<u8>("index")?);
                }
                self.expect(']')?;
                Ok(ExprAst::Indexed(name, idx))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('-') => {
                self.bump();
                Ok(ExprAst::Neg(Box::new(self.factor()?)))
            }
            Tok::End => self.fail("unexpected end of input"),
            _ => self.fail("expected a number, a name or '('"),
        }
    }
}

pub fn parse(text: &str) -> Result<ExprAst, ExprError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("unexpected trailing input");
    }
    Ok(e)
}

fn jet_error(e: JetError) -> ExprError {
    match e {
        JetError::Arity { symbol, expected, got } => ExprError::Arity {
            name: symbol,
            expected,
            got,
        },
        JetError::UnknownSymbol(s) | JetError::UnknownCoordinate(s) => ExprError::UnknownSymbol(s),
        other => ExprError::UnknownSymbol(other.to_string()),
    }
}

fn unit_error(e: DiffPolyError) -> ExprError {
    match e {
        DiffPolyError::NotInvertible(s) => ExprError::NonMonomialDivisor(s),
        other => ExprError::NonMonomialDivisor(other.to_string()),
    }
}

pub fn lower(ast: &ExprAst, chart: &Chart) -> Result<DiffPoly, ExprError> {
    Ok(match ast {
        ExprAst::Int(n) => DiffPoly::constant(Rational::from_integer(n.clone())),
        ExprAst::Name(n) => DiffPoly::var(chart.resolve(n).map_err(jet_error)?),
        ExprAst::Indexed(n, idx) => DiffPoly::var(chart.resolve_indexed(n, idx).map_err(jet_error)?),
        ExprAst::Neg(a) => -lower(a, chart)?,
        ExprAst::Add(a, b) => lower(a, chart)? + lower(b, chart)?,
        ExprAst::Sub(a, b) => lower(a, chart)? - lower(b, chart)?,
        ExprAst::Mul(a, b) => lower(a, chart)? * lower(b, chart)?,
        ExprAst::Div(a, b) => lower(a, chart)? * lower(b, chart)?.inverse().map_err(unit_error)?,
        ExprAst::Pow(a, n) => lower(a, chart)?.pow(*n).map_err(unit_error)?,
    })
}

/// Resolves a bare or indexed name, such as a field direction `u[0,1,0,0]`.
pub fn parse_symbol(text: &str, chart: &Chart) -> Result<Sym, ExprError> {
    match parse(text)? {
        ExprAst::Name(n) => chart.resolve(&n).map_err(jet_error),
        ExprAst::Indexed(n, idx) => chart.resolve_indexed(&n, &idx).map_err(jet_error),
        _ => Err(ExprError::UnknownSymbol(text.to_string())),
    }
}

/// Parses and resolves `text` on `chart`.
pub fn parse_poly(text: &str, chart: &Chart) -> Result<DiffPoly, ExprError> {
    lower(&parse(text)?, chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rat;
    use crate::jetspace::chart;

    #[test]
    fn precedence_and_unary_minus() {
        let m = chart("M").unwrap();
        let p = parse_poly("-t^2 + 3/2*z", &m).unwrap();
        assert_eq!(p, -(m.x("t") * m.x("t")) + m.x("z").scale(&rat(3, 2)));
        assert_eq!(parse_poly("2*(t - z)^2", &m).unwrap(), parse_poly("2*t^2 - 4*t*z + 2*z^2", &m).unwrap());
        assert_eq!(parse_poly("t/t", &m).unwrap(), DiffPoly::one());
    }

    #[test]
    fn syntax_error_offset() {
        assert!(matches!(parse("t + + z"), Err(ExprError::Syntax { offset: 4, .. })));
        assert!(matches!(parse("(t"), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("t $"), Err(ExprError::Syntax { offset: 2, .. })));
    }

    #[test]
    fn resolution_errors() {
        let tm = chart("TM").unwrap();
        assert!(matches!(
            parse_poly("A[1]", &tm),
            Err(ExprError::Arity { expected: 2, got: 1, .. })
        ));
        assert!(matches!(parse_poly("w", &tm), Err(ExprError::UnknownSymbol(_))));
        assert!(matches!(parse_poly("1/(t + z)", &tm), Err(ExprError::NonMonomialDivisor(_))));
        assert!(matches!(parse_poly("1/u[1,0,0,0]", &tm), Err(ExprError::NonMonomialDivisor(_))));
    }

    #[test]
    fn jets_and_functions() {
        let tm = chart("TM").unwrap();
        assert_eq!(parse_poly("u[0,0,1,1]", &tm).unwrap(), tm.u("xy"));
        assert_eq!(parse_poly("A", &tm).unwrap(), tm.f("A"));
        assert_eq!(parse_poly("c1^-1*x^-2", &tm).unwrap().to_string(), "x^-2*c1^-1");
    }

    #[test]
    fn transcribed_invariant_combination() {
        use crate::plebanski::catalog::{i1, i3};
        let tm = chart("TM").unwrap();
        let p = parse_poly("u[0,0,1,1]^2 - u[0,0,2,0]*u[0,0,0,2] + u[1,0,0,1] - u[0,1,1,0]", &tm).unwrap();
        assert_eq!(p, i1() - i3().scale(&rat(2, 1)));
    }
}
