//! A small parser for rational functions in `q`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr     := product '/' product | term (('+' | '-') term)*
//! term     := ['-'] product
//! product  := power ('*' power)*
//! power    := atom ['^' exponent]
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom     := integer | 'q' | '(' expr ')'
//! ```
//!
//! A quotient must be the whole of its (parenthesized) expression, so
//! `q^2-1/q-1` is rejected; write `(q^2-1)/(q-1)`.

use num_bigint::BigInt;

use super::{QError, RatFunc};

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> QError {
        QError::Parse {
            input: self.src.to_string(),
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expect(&mut self, c: char) -> Result<(), QError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn integer(&mut self) -> Result<BigInt, QError> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn atom(&mut self) -> Result<RatFunc, QError> {
        match self.peek() {
            Some('q') => {
                self.bump();
                Ok(RatFunc::q())
            }
            Some('(') => {
                self.bump();
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFunc::from_int(self.integer()?)),
            _ => Err(self.err("expected 'q', an integer or '('")),
        }
    }

    fn power(&mut self) -> Result<RatFunc, QError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let paren = self.peek() == Some('(');
        if paren {
            self.bump();
        }
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let e = self.integer()?;
        let e: i64 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
        if paren {
            self.expect(')')?;
        }
        base.pow(if neg { -e } else { e })
    }

    fn product(&mut self) -> Result<RatFunc, QError> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.bump();
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(RatFunc, bool), QError> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let v = self.product()?;
        Ok((if neg { -v } else { v }, neg))
    }

    fn expr(&mut self) -> Result<RatFunc, QError> {
        let (first, _) = self.term()?;
        if self.peek() == Some('/') {
            self.bump();
            let den = self.product()?;
            if matches!(self.peek(), Some('+') | Some('-') | Some('/')) {
                return Err(self.err("ambiguous quotient: parenthesize numerator and denominator"));
            }
            return first.checked_div(&den);
        }
        let mut acc = first;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.bump();
            let (t, _) = self.term()?;
            if self.peek() == Some('/') {
                return Err(self.err("ambiguous quotient: parenthesize numerator and denominator"));
            }
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }
}

/// Parses a rational function such as `(q^2-1)/(q-1)` or `q + q^-1`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc, QError> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(QError::Parse {
            input: src.to_string(),
            position: 0,
            message: "empty input".into(),
        });
    }
    let mut p = Parser { src, chars, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::LaurentPoly;

    #[test]
    fn parses_quotient() {
        let f = parse_ratfunc("(q^2-1)/(q-1)").unwrap();
        assert_eq!(f, RatFunc::from_laurent(&LaurentPoly::from_int_coeffs(0, &[1, 1])));
    }

    #[test]
    fn rejects_ambiguous_quotient() {
        assert!(matches!(parse_ratfunc("q^2-1/q-1"), Err(QError::Parse { .. })));
        assert!(matches!(parse_ratfunc("1/2/3"), Err(QError::Parse { .. })));
    }

    #[test]
    fn negative_exponents_and_rationals() {
        let f = parse_ratfunc("q + q^-1").unwrap();
        assert_eq!(f, RatFunc::from_laurent(&LaurentPoly::from_int_coeffs(-1, &[1, 0, 1])));
        let g = parse_ratfunc("-3/4").unwrap();
        assert_eq!(g.as_rational().unwrap().to_string(), "-3/4");
        assert!(parse_ratfunc("1/(q-q)").is_err());
    }

    #[test]
    fn garbage_is_located() {
        match parse_ratfunc("q+x") {
            Err(QError::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
