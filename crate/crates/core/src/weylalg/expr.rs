use std::fmt;

use crate::combinat::{parse_rational, GaussRational};

/// Expression over the generators `U`, `V` and exact scalars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OperatorExpr {
    U,
    V,
    Scalar(GaussRational),
    Sum(Box<OperatorExpr>, Box<OperatorExpr>),
    Difference(Box<OperatorExpr>, Box<OperatorExpr>),
    Product(Box<OperatorExpr>, Box<OperatorExpr>),
    Power(Box<OperatorExpr>, u32),
}

impl OperatorExpr {
    pub fn scalar(c: GaussRational) -> Self {
        OperatorExpr::Scalar(c)
    }

    pub fn sum(a: Self, b: Self) -> Self {
        OperatorExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn difference(a: Self, b: Self) -> Self {
        OperatorExpr::Difference(Box::new(a), Box::new(b))
    }

    pub fn product(a: Self, b: Self) -> Self {
        OperatorExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn power(a: Self, n: u32) -> Self {
        OperatorExpr::Power(Box::new(a), n)
    }

    fn precedence(&self) -> u8 {
        match self {
            OperatorExpr::Sum(..) | OperatorExpr::Difference(..) => 0,
            OperatorExpr::Product(..) => 1,
            OperatorExpr::Power(..) => 2,
            OperatorExpr::Scalar(c) if !is_literal(c) => 0,
            _ => 3,
        }
    }
}

/// Scalars the grammar can spell as a single literal.
fn is_literal(c: &GaussRational) -> bool {
    use num_traits::{Signed, Zero};
    if c.im().is_zero() {
        !c.re().is_negative()
    } else {
        c.re().is_zero() && c.im().is_positive()
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &OperatorExpr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints in the accepted grammar so that parsing the output gives back an
/// equal tree.
impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::U => f.write_str("U"),
            OperatorExpr::V => f.write_str("V"),
            OperatorExpr::Scalar(c) => write!(f, "{c}"),
            OperatorExpr::Sum(a, b) => {
                write_operand(f, a, 0)?;
                f.write_str("+")?;
                write_operand(f, b, 1)
            }
            OperatorExpr::Difference(a, b) => {
                write_operand(f, a, 0)?;
                f.write_str("-")?;
                write_operand(f, b, 1)
            }
            OperatorExpr::Product(a, b) => {
                write_operand(f, a, 1)?;
                f.write_str("*")?;
                write_operand(f, b, 2)
            }
            OperatorExpr::Power(a, n) => {
                write_operand(f, a, 3)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    lhs = OperatorExpr::sum(lhs, self.term()?);
                }
                Some('-') => {
                    self.bump();
                    lhs = OperatorExpr::difference(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some('*') {
            self.bump();
            lhs = OperatorExpr::product(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<OperatorExpr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let start = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.pos,
            Some(c) if c == '-' || c == '+' => return self.err(self.pos, "exponent must be a nonnegative integer"),
            Some(_) => return self.err(self.pos, "expected an exponent"),
            None => return self.err(self.pos, "expected an exponent, found end of input"),
        };
        let digits = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        self.pos = start + digits;
        if matches!(self.src[self.pos..].chars().next(), Some('.' | '/')) {
            return self.err(self.pos, "exponent must be an integer");
        }
        match self.src[start..self.pos].parse::<u32>() {
            Ok(n) => Ok(OperatorExpr::power(base, n)),
            Err(_) => self.err(start, "exponent too large"),
        }
    }

    fn atom(&mut self) -> Result<OperatorExpr, ParseError> {
        match self.peek() {
            Some('U') => {
                self.bump();
                Ok(OperatorExpr::U)
            }
            Some('V') => {
                self.bump();
                Ok(OperatorExpr::V)
            }
            Some('(') => {
                let open = self.pos;
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err(self.pos, format!("unclosed parenthesis opened at byte {open}"));
                }
                self.bump();
                Ok(inner)
            }
            Some('i') => {
                self.bump();
                Ok(OperatorExpr::Scalar(GaussRational::i()))
            }
            Some(c) if c.is_ascii_digit() => self.scalar(),
            Some(c) => self.err(self.pos, format!("unexpected `{c}`")),
            None => self.err(self.pos, "unexpected end of input"),
        }
    }

    fn scalar(&mut self) -> Result<OperatorExpr, ParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        let digits = |from: usize| bytes[from..].iter().take_while(|b| b.is_ascii_digit()).count();
        end += digits(end);
        if end < bytes.len() && (bytes[end] == b'/' || bytes[end] == b'.') {
            let more = digits(end + 1);
            if more == 0 {
                return self.err(end + 1, "expected digits");
            }
            end += 1 + more;
        }
        let value = match parse_rational(&self.src[start..end]) {
            Some(v) => v,
            None => return self.err(start, "invalid number"),
        };
        self.pos = end;
        if self.src[end..].starts_with('i') {
            self.pos += 1;
            return Ok(OperatorExpr::Scalar(GaussRational::new(num_traits::Zero::zero(), value)));
        }
        Ok(OperatorExpr::Scalar(GaussRational::real(value)))
    }
}

/// Parses `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := atom ('^' nat)?`, `atom := 'U' | 'V' | scalar | '(' expr ')'`.
///
/// Scalars are integer, `p/q` or decimal literals, optionally followed by
/// `i`, or a bare `i`. A complex constant such as `3/2+1/3i` is read as the
/// sum of its parts, which has the same value; parenthesize it before
/// multiplying.
pub fn parse_operator(text: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected `{c}`"));
    }
    Ok(e)
}
