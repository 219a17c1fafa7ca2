//! ASCII polynomial expressions: `+ - * / ^`, parentheses, integer or
//! rational literals, named variables. Division is allowed only by a
//! constant; implicit multiplication (`3x^2`, `2(x+y)`) is accepted.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use super::scalar::Field;
use super::{AlgebraError, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, AlgebraError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Token::Num(s.parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Token::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else {
            return Err(AlgebraError::Parse { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Token)>,
    pos: usize,
    vars: &'a [&'a str],
    len: usize,
}

type Poly = MultiPoly<Rational>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::Op('(')))
    }

    fn term(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = match (d.total_degree(), d.leading_term()) {
                    (Some(0), Some((_, c))) => c.clone(),
                    (None, _) => return self.err("division by zero"),
                    _ => return self.err("division by a non-constant polynomial"),
                };
                acc = acc.scale(&c.inv());
            } else if self.starts_atom() {
                acc = acc * self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, AlgebraError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, AlgebraError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = match n.try_into() {
                        Ok(e) if e <= 1000 => e,
                        _ => return self.err("exponent too large"),
                    };
                    let mut acc = Poly::one();
                    for _ in 0..e {
                        acc = acc * base.clone();
                    }
                    Ok(acc)
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, AlgebraError> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(i))
                }
                None => self.err(format!("unknown variable '{name}'")),
            },
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src` as a polynomial in the variables `vars` (variable `i` is `x_i`).
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<Poly, AlgebraError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, vars, len: src.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses `"p/q"`, `"-p/q"` or an integer `"p"`.
pub fn parse_rational(src: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::Parse { pos: 0, msg: format!("not a rational number: '{src}'") };
    let s = src.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;

    #[test]
    fn parses_vector_field_components() {
        let p = parse_poly("x^2 - 1", &["x", "y"]).unwrap();
        assert_eq!(p, Poly::var(0) * Poly::var(0) - Poly::one());
        let q = parse_poly("3/2*x*y + 2(y - x)^2", &["x", "y"]).unwrap();
        let (x, y) = (Poly::var(0), Poly::var(1));
        let expected = x.clone() * y.clone() * Poly::constant(Rational::new(3.into(), 2.into()))
            + (y.clone() - x.clone()) * (y - x) * Poly::constant(qi(2));
        assert_eq!(q, expected);
        assert_eq!(parse_poly("-x", &["x"]).unwrap(), -Poly::var(0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x / y", &["x", "y"]).is_err());
        assert!(parse_poly("z", &["x", "y"]).is_err());
        assert!(parse_poly("(x", &["x"]).is_err());
        assert!(parse_poly("x^y", &["x", "y"]).is_err());
        assert!(parse_poly("", &["x"]).is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-5/162").unwrap(), Rational::new((-5).into(), 162.into()));
        assert_eq!(parse_rational("10/4").unwrap(), Rational::new(5.into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), qi(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }
}
