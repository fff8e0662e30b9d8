//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'z' integer | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::MultivariatePolynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub fn parse_poly(text: &str, nvars: usize) -> Result<MultivariatePolynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<MultivariatePolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultivariatePolynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultivariatePolynomial> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultivariatePolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e: u32 = self
                .digits()?
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultivariatePolynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'z') => {
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("expected variable index after `z`"));
                }
                let index: usize = self
                    .digits()?
                    .parse()
                    .map_err(|_| self.error("variable index too large"))?;
                if index == 0 || index > self.nvars {
                    return Err(Error::VariableOutOfRange {
                        index,
                        nvars: self.nvars,
                    });
                }
                Ok(MultivariatePolynomial::var(self.nvars, index - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().expect("digits");
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den: BigInt = self.digits()?.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(MultivariatePolynomial::constant(self.nvars, value))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rational::{int, rat};

    #[test]
    fn grammar_cases() {
        let p = parse_poly("z1^2 + 3/2*z2", 3).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 0, 0])), int(1));
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 1, 0])), rat(3, 2));
        assert!(parse_poly("0", 2).unwrap().is_zero());
        assert!(parse_poly("(z1+z2)^2 - z1^2 - z2^2 - 2*z1*z2", 2)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn two_digit_variables() {
        let p = parse_poly("z10 - z1", 10).unwrap();
        assert_eq!(p.to_string(), "-z1 + z10");
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_poly("z1 + * z2", 2) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_poly("z3", 2),
            Err(Error::VariableOutOfRange { index: 3, nvars: 2 })
        ));
        assert!(parse_poly("(z1", 1).is_err());
        assert!(parse_poly("z1 z2", 2).is_err());
        assert!(parse_poly("z1^-1", 1).is_err());
    }
}
