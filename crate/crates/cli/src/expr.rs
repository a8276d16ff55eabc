//! Profile expressions: polynomials in `c1, …, cp`, where `ci = cos² t_i`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := number | 'c' index | 'one' | '(' sum ')'
//! ```
//!
//! Division is only by constants, so `1/3 * c1` and `(c1 + c2)/2` are fine
//! but `1/c1` is not.

use std::fmt;

use gct_core::profile::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parse `src` as a polynomial profile in `vars` variables.
pub fn parse_profile(src: &str, vars: usize) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
    };
    let poly = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected {:?}", p.src[p.pos] as char)));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: usize,
}

impl Parser<'_> {
    fn error(&self, message: String) -> ParseError {
        ParseError {
            position: self.pos,
            message,
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.eat(b'-') {
                acc = acc.add(&self.product()?.scale(-1.0));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let divisor = self.unary()?;
                match constant_value(&divisor) {
                    Some(c) if c != 0.0 => acc = acc.scale(1.0 / c),
                    Some(_) => {
                        return Err(ParseError {
                            position: at,
                            message: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(ParseError {
                            position: at,
                            message: "can only divide by a constant".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.scale(-1.0));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let k = self.integer()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent too large".into()))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError {
                position: start,
                message: "integer out of range".into(),
            })
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'".into()));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.name(),
            Some(c) => Err(self.error(format!("unexpected {:?}", c as char))),
            None => Err(self.error("unexpected end of expression".into())),
        }
    }

    fn number(&mut self) -> Result<Polynomial, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value: f64 = text.parse().map_err(|_| ParseError {
            position: start,
            message: format!("malformed number {text:?}"),
        })?;
        Ok(Polynomial::constant(self.vars, value))
    }

    fn name(&mut self) -> Result<Polynomial, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if word == "one" {
            return Ok(Polynomial::constant(self.vars, 1.0));
        }
        let index = word
            .strip_prefix('c')
            .and_then(|rest| rest.parse::<usize>().ok())
            .filter(|&i| i >= 1 && i <= self.vars);
        match index {
            Some(i) => Ok(Polynomial::variable(self.vars, i - 1)),
            None => Err(ParseError {
                position: start,
                message: format!("unknown name {word:?}; expected c1..c{} or one", self.vars),
            }),
        }
    }
}

fn constant_value(p: &Polynomial) -> Option<f64> {
    if p.terms().iter().all(|(_, e)| e.iter().all(|&k| k == 0)) {
        Some(p.terms().iter().map(|(c, _)| c).sum())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gct_core::Profile;

    fn eval(src: &str, u: &[f64]) -> f64 {
        parse_profile(src, u.len()).unwrap().eval(u)
    }

    #[test]
    fn arithmetic_and_precedence() {
        assert_eq!(eval("1 + 2*3", &[0.0]), 7.0);
        assert_eq!(eval("(1 + 2)*3", &[0.0]), 9.0);
        assert_eq!(eval("-c1^2", &[3.0]), -9.0);
        assert_eq!(eval("2 - 3 - 4", &[0.0]), -5.0);
        assert!((eval("1/3*c1 + 0.5", &[3.0]) - 1.5).abs() < 1e-15);
        assert_eq!(eval("(c1 + c2)/2", &[1.0, 3.0]), 2.0);
    }

    #[test]
    fn builtins_and_variables() {
        assert_eq!(eval("one", &[0.4, 0.2]), 1.0);
        assert_eq!(eval("3*c2^3 - c2 + c1*c2 + 1/2", &[1.0, 2.0]), 24.0 - 2.0 + 2.0 + 0.5);
    }

    #[test]
    fn errors_point_at_the_problem() {
        let e = parse_profile("c1 + c3", 2).unwrap_err();
        assert_eq!(e.position, 5);
        assert!(parse_profile("1/c1", 1).is_err());
        assert!(parse_profile("1/(2-2)", 1).is_err());
        assert!(parse_profile("c1^-1", 1).is_err());
        assert!(parse_profile("(c1", 1).is_err());
        assert!(parse_profile("c1 c1", 1).is_err());
        assert!(parse_profile("", 1).is_err());
        assert!(parse_profile("1.2.3", 1).is_err());
    }
}
