//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | symbol | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. `−` (U+2212) is accepted as a minus sign.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::expr::ScalarExpr;
use super::poly::{Poly, Sym};
use super::AlgebraError;

pub fn parse_expr(input: &str) -> Result<ScalarExpr, AlgebraError> {
    let mut p = Parser {
        chars: input.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect(),
        pos: 0,
    };
    if p.chars.is_empty() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error(&format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(e)
}

/// Parses an expression that must be a polynomial (constant denominator).
pub fn parse_poly(input: &str) -> Result<Poly, AlgebraError> {
    let e = parse_expr(input)?;
    let d = e.denom().as_constant().ok_or_else(|| AlgebraError::Parse {
        position: 0,
        message: format!("`{input}` is not a polynomial"),
    })?;
    Ok(e.numer().scale(&d.recip()))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.try_div(&rhs).map_err(|_| AlgebraError::Parse {
                    position: at,
                    message: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarExpr, AlgebraError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarExpr, AlgebraError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected integer exponent"));
        }
        let e: i32 = digits.parse().map_err(|_| AlgebraError::Parse {
            position: at,
            message: "exponent out of range".into(),
        })?;
        let e = if neg { -e } else { e };
        base.pow(e).map_err(|_| AlgebraError::Parse {
            position: at,
            message: "zero raised to a negative power".into(),
        })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<ScalarExpr, AlgebraError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("ascii digits");
                Ok(ScalarExpr::from_rational(BigRational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(ScalarExpr::from_sym(Sym::new(&name)))
            }
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
