//! Parser for the series mini-language.
//!
//! Grammar (whitespace insignificant):
//!   spec     := name | name '(' args ')' | ratfunc
//!   name     := exp | geom | onepx | catalan | genbinom | lagrange
//!   args     := rational                      (genbinom)
//!             | spec ',' rational             (lagrange)
//!   ratfunc  := punit ('/' punit)?
//!   punit    := '(' polysum ')' ('^' uint)? | polysum
//!   polysum  := term (('+'|'-') term)*
//!   term     := rational ('x' ('^' uint)?)? | 'x' ('^' uint)?
//!   rational := int ('/' uint)?
//!
//! Errors carry the byte position in the input.

use num_traits::{One, Zero};
use riordan_core::lagrange::lagrange_associate;
use riordan_core::rat::{qi, Rat};
use riordan_core::riordan::{
    catalan_series, exp_series, genbinom_series, geom_series, one_plus_x_series,
};
use riordan_core::{Poly, QSeries};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesSpec {
    Exp,
    Geom,
    Onepx,
    Catalan,
    Genbinom(Rat),
    Lagrange(Box<SeriesSpec>, Rat),
    RatFunc { num: Poly, den: Option<Poly> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl SeriesSpec {
    pub fn parse(text: &str) -> Result<SeriesSpec, ParseError> {
        let mut p = Parser::new(text);
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos < p.bytes.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(spec)
    }

    /// Expand the spec as a truncated series of the given order.
    pub fn resolve(&self, order: usize) -> Result<QSeries, String> {
        match self {
            SeriesSpec::Exp => Ok(exp_series(order)),
            SeriesSpec::Geom => Ok(geom_series(order)),
            SeriesSpec::Onepx => Ok(one_plus_x_series(order)),
            SeriesSpec::Catalan => Ok(catalan_series(order)),
            SeriesSpec::Genbinom(beta) => Ok(genbinom_series(beta, order)),
            SeriesSpec::Lagrange(inner, beta) => {
                let a = inner.resolve(order)?;
                lagrange_associate(&a, beta, &Rat::one()).map_err(|e| e.to_string())
            }
            SeriesSpec::RatFunc { num, den } => {
                let n = QSeries::from_poly(num, order);
                match den {
                    None => Ok(n),
                    Some(d) => {
                        let d = QSeries::from_poly(d, order);
                        n.div(&d).map_err(|e| e.to_string())
                    }
                }
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an unsigned integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let neg = self.eat(b'-');
        let n = self.uint()? as i64;
        let mut r = qi(if neg { -n } else { n });
        // only treat '/' as a fraction bar when a digit follows, so
        // that ratfunc division like "1/(1-x)" still parses
        if self.peek() == Some(b'/') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                let d = self.uint()? as i64;
                if d == 0 {
                    return Err(self.err("zero denominator"));
                }
                r /= qi(d);
            } else {
                self.pos = save;
            }
        }
        Ok(r)
    }

    fn spec(&mut self) -> Result<SeriesSpec, ParseError> {
        self.skip_ws();
        let save = self.pos;
        if let Some(name) = self.ident() {
            match name.as_str() {
                "exp" => return Ok(SeriesSpec::Exp),
                "geom" => return Ok(SeriesSpec::Geom),
                "onepx" => return Ok(SeriesSpec::Onepx),
                "catalan" => return Ok(SeriesSpec::Catalan),
                "genbinom" => {
                    self.expect(b'(')?;
                    let beta = self.rational()?;
                    self.expect(b')')?;
                    return Ok(SeriesSpec::Genbinom(beta));
                }
                "lagrange" => {
                    self.expect(b'(')?;
                    let inner = self.spec()?;
                    self.expect(b',')?;
                    let beta = self.rational()?;
                    self.expect(b')')?;
                    return Ok(SeriesSpec::Lagrange(Box::new(inner), beta));
                }
                "x" => {
                    // fall through: bare polynomial starting with x
                    self.pos = save;
                }
                _ => {
                    self.pos = save;
                    return Err(self.err(&format!("unknown series name '{name}'")));
                }
            }
        }
        self.ratfunc()
    }

    fn ratfunc(&mut self) -> Result<SeriesSpec, ParseError> {
        let num = self.punit()?;
        let den = if self.eat(b'/') {
            let d = self.punit()?;
            if d.coeff(0).is_zero() {
                return Err(self.err("denominator has zero constant term"));
            }
            Some(d)
        } else {
            None
        };
        Ok(SeriesSpec::RatFunc { num, den })
    }

    fn punit(&mut self) -> Result<Poly, ParseError> {
        if self.eat(b'(') {
            let p = self.polysum()?;
            self.expect(b')')?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let e = self.uint()?;
                let mut out = Poly::one();
                for _ in 0..e {
                    out = out.mul(&p);
                }
                return Ok(out);
            }
            Ok(p)
        } else {
            self.polysum()
        }
    }

    fn polysum(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        let c = match self.peek() {
            Some(b'x') => Rat::one(),
            Some(d) if d.is_ascii_digit() || d == b'-' => self.rational()?,
            _ => return Err(self.err("expected a term")),
        };
        let mut deg = 0usize;
        if self.peek() == Some(b'x') {
            self.pos += 1;
            deg = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                deg = self.uint()? as usize;
            }
        }
        Ok(Poly::monomial(deg, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use riordan_core::rat::q;

    #[test]
    fn named_specs() {
        assert_eq!(SeriesSpec::parse("catalan").unwrap(), SeriesSpec::Catalan);
        assert_eq!(
            SeriesSpec::parse("genbinom(1/2)").unwrap(),
            SeriesSpec::Genbinom(q(1, 2))
        );
        assert_eq!(
            SeriesSpec::parse("lagrange(onepx, 2)").unwrap(),
            SeriesSpec::Lagrange(Box::new(SeriesSpec::Onepx), qi(2))
        );
    }

    #[test]
    fn ratfunc_specs() {
        let s = SeriesSpec::parse("(1+x)/(1-x)^2").unwrap().resolve(5).unwrap();
        // (1+x)/(1-x)^2 = sum (2n+1) x^n
        for k in 0..=5 {
            assert_eq!(s.coeff(k), &qi(2 * k as i64 + 1));
        }
        let c = SeriesSpec::parse("1/(1-x)").unwrap().resolve(4).unwrap();
        for k in 0..=4 {
            assert_eq!(c.coeff(k), &qi(1));
        }
        let p = SeriesSpec::parse("1 + 3/2x^2").unwrap().resolve(3).unwrap();
        assert_eq!(p.coeff(2), &q(3, 2));
    }

    #[test]
    fn lagrange_of_onepx_is_genbinom() {
        let a = SeriesSpec::parse("lagrange(onepx, 3)").unwrap().resolve(8).unwrap();
        let b = SeriesSpec::parse("genbinom(3)").unwrap().resolve(8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_position() {
        let e = SeriesSpec::parse("genbinom(").unwrap_err();
        assert_eq!(e.pos, 9);
        let e = SeriesSpec::parse("1/(x)").unwrap_err();
        assert!(e.msg.contains("constant term"));
        let e = SeriesSpec::parse("bogus").unwrap_err();
        assert!(e.msg.contains("unknown series name"));
        assert_eq!(e.pos, 0);
    }
}
