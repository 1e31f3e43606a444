//! Expression grammar for polynomials in s, t:
//!
//! ```text
//! tuple  = "(" expr { "," expr } ")"
//! expr   = [ "+" | "-" ] term { ( "+" | "-" ) term }
//! term   = factor { [ "*" ] factor }
//! factor = integer [ "/" integer ] | ( "s" | "t" ) [ "^" integer ]
//! ```
//!
//! Whitespace is ignored and multiplication may be implicit (`2s`, `s t`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{Monomial, Poly, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Zero-based character offset.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars: Vec<(usize, char)> = src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, i: 0, len: src.chars().count(), _src: src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.len, |&(p, _)| p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.i += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{c}', found '{x}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected an integer");
        }
        let digits: String = self.chars[start..self.i].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let at = self.pos();
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return self.err("non-integer exponent");
        }
        let e = self.integer()?;
        if matches!(self.peek(), Some('.')) {
            return self.err("non-integer exponent");
        }
        u32::try_from(e).map_err(|_| ParseError { pos: at, msg: "exponent too large".into() })
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric())
    }

    /// Returns the coefficient and monomial of one factor.
    fn factor(&mut self, coeff: &mut Scalar, mono: &mut Monomial) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut q = Scalar::from_integer(n);
                if self.peek() == Some('/') {
                    self.i += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return self.err("expected an integer denominator");
                    }
                    let at = self.pos();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(ParseError { pos: at, msg: "zero denominator".into() });
                    }
                    q = Scalar::new(q.to_integer(), den);
                }
                *coeff *= q;
                Ok(())
            }
            Some(c) if c == 's' || c == 't' => {
                self.i += 1;
                let var = if c == 's' { 0 } else { 1 };
                let mut e = 1;
                if self.peek() == Some('^') {
                    self.i += 1;
                    e = self.exponent()?;
                }
                *mono = mono.mul(&Monomial::var_pow(var, e));
                Ok(())
            }
            Some(c) if c.is_alphabetic() => self.err(format!("unknown variable '{c}' (only s and t are allowed)")),
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<(Monomial, Scalar), ParseError> {
        let mut coeff = Scalar::from_integer(1.into());
        let mut mono = Monomial::ONE;
        self.factor(&mut coeff, &mut mono)?;
        loop {
            if self.peek() == Some('*') {
                self.i += 1;
                if self.peek() == Some('*') {
                    return self.err("'**' is not supported; use '^' for powers");
                }
                self.factor(&mut coeff, &mut mono)?;
            } else if self.starts_factor() {
                self.factor(&mut coeff, &mut mono)?;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut terms = Vec::new();
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.i += 1;
            }
            Some('+') => self.i += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if sign < 0 { -c } else { c }));
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => break,
            }
            self.i += 1;
        }
        Ok(Poly::from_terms(Ring::St, terms))
    }

    fn tuple(&mut self) -> Result<Vec<Poly>, ParseError> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        while self.peek() == Some(',') {
            self.i += 1;
            out.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{c}' after the end of the input")),
        }
    }
}

/// One polynomial.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.end()?;
    Ok(e)
}

/// A parenthesized tuple of polynomials.
pub fn parse_tuple(text: &str) -> Result<Vec<Poly>, ParseError> {
    let mut p = Parser::new(text);
    let t = p.tuple()?;
    p.end()?;
    Ok(t)
}

/// A parametrization: a tuple of exactly four polynomials.
pub fn parse_parametrization(text: &str) -> Result<Vec<Poly>, ParseError> {
    let mut p = Parser::new(text);
    let t = p.tuple()?;
    p.end()?;
    if t.len() != 4 {
        return Err(ParseError { pos: 0, msg: format!("expected four polynomials, found {}", t.len()) });
    }
    Ok(t)
}

/// Three 4-vectors, either as `((..),(..),(..))` or as three tuples
/// separated by commas.
pub fn parse_basis(text: &str) -> Result<Vec<Vec<Poly>>, ParseError> {
    let mut p = Parser::new(text);
    let nested = p.peek() == Some('(') && p.chars.get(1).map(|&(_, c)| c) == Some('(');
    if nested {
        p.i += 1;
    }
    let mut out = vec![p.tuple()?];
    while p.peek() == Some(',') {
        p.i += 1;
        out.push(p.tuple()?);
    }
    if nested {
        p.expect(')')?;
    }
    p.end()?;
    if out.len() != 3 || out.iter().any(|v| v.len() != 4) {
        return Err(ParseError { pos: 0, msg: "expected three vectors of four polynomials".into() });
    }
    Ok(out)
}

pub fn format_tuple(v: &[Poly]) -> String {
    let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_input() {
        let a = parse_parametrization("(s^2, t^2, s^2-1, s^2+1)").unwrap();
        assert_eq!(format_tuple(&a), "(s^2, t^2, s^2 - 1, s^2 + 1)");
        let a = parse_parametrization("(1, 0, 0, 0)").unwrap();
        assert!(a[1].is_zero());
    }

    #[test]
    fn terms_and_coefficients() {
        assert_eq!(parse_poly("2s t - 1/2 * t^2 + 3").unwrap().to_string(), "2*s*t - 1/2*t^2 + 3");
        assert_eq!(parse_poly("t + s").unwrap(), parse_poly("s+t").unwrap());
        assert_eq!(parse_poly("s*s").unwrap().to_string(), "s^2");
        assert_eq!(parse_poly("2/4s").unwrap().to_string(), "1/2*s");
        assert_eq!(parse_poly("-s + s").unwrap().to_string(), "0");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("s + x").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(e.msg.contains("unknown variable 'x'"));
        assert!(parse_poly("s**2").unwrap_err().msg.contains("'**'"));
        assert!(parse_poly("s^1.5").unwrap_err().msg.contains("non-integer exponent"));
        assert!(parse_poly("s^-1").unwrap_err().msg.contains("non-integer exponent"));
        assert_eq!(parse_poly("s +").unwrap_err().pos, 3);
        assert!(parse_parametrization("(s, t, 1)").is_err());
        assert!(parse_poly("1/0").is_err());
    }

    #[test]
    fn basis_forms() {
        let b = "((-t^2, 1, t^2, 0), (-2, 0, 1, 1), (-s^2 + 1, 0, s^2, 0))";
        let v = parse_basis(b).unwrap();
        assert_eq!(v.len(), 3);
        let flat = "(-t^2, 1, t^2, 0), (-2, 0, 1, 1), (1 - s^2, 0, s^2, 0)";
        assert_eq!(parse_basis(flat).unwrap(), v);
    }
}
