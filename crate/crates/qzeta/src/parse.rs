//! Polynomial expressions in `q`: `+ - * / ^`, parentheses, integer and
//! rational constants. Division is only allowed by constants.

use qzeta_core::{Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("`{0}` has a nonzero constant term; the operators only act on series without constant term")]
    ConstantTerm(String),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> PResult<Poly<Rat>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Poly<Rat>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                match d.coeffs() {
                    [c] if !c.is_zero() => acc = acc.scale(&c.recip().expect("nonzero")),
                    [] => {
                        self.pos = at;
                        return self.err("division by zero");
                    }
                    _ => {
                        self.pos = at;
                        return self.err("division by a non-constant polynomial");
                    }
                }
            } else if matches!(self.peek(), Some(b'q' | b'(')) {
                // implicit product, as in `3q` or `2(q+1)`
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<Poly<Rat>> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Poly<Rat>> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer exponent");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match digits.parse::<u32>() {
            Ok(e) if e <= 100_000 => Ok(base.pow(e)),
            _ => {
                self.pos = start;
                self.err("exponent too large")
            }
        }
    }

    fn atom(&mut self) -> PResult<Poly<Rat>> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: Rat = digits.parse().expect("digits");
                Ok(Poly::constant(n))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `q`.
pub fn parse_poly(expr: &str) -> Result<Poly<Rat>, ParseError> {
    let mut p = Parser {
        src: expr.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a polynomial that an operator will be applied to: `P(0)` must vanish.
pub fn parse_operator_poly(expr: &str) -> Result<Poly<Rat>, ParseError> {
    let p = parse_poly(expr)?;
    if !p.coeff(0).is_zero() {
        return Err(ParseError::ConstantTerm(expr.to_string()));
    }
    Ok(p)
}
