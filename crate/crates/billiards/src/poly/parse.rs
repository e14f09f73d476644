//! Recursive-descent parser for the polynomial text grammar.
//!
//! Grammar: integer or `a/b` rational coefficients, variables from the
//! ring supplied by the caller, operators `+ - * ^`, parentheses.
//! Juxtaposition (`2x`) is rejected; multiplication is always explicit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{MultiPoly, PolyError, PolyResult, Var};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [Var],
}

pub fn parse_poly(src: &str, vars: &[Var]) -> PolyResult<MultiPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        vars,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn expr(&mut self) -> PolyResult<MultiPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PolyResult<MultiPoly> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PolyResult<MultiPoly> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            let n = self.uint()?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PolyResult<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            _ => Err(self.err("expected a number, variable, or '('")),
        }
    }

    fn uint(&mut self) -> PolyResult<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an exponent"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u32>()
            .map_err(|_| self.err("exponent out of range"))
    }

    fn number(&mut self) -> PolyResult<MultiPoly> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let numer: BigInt = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("bad integer"))?;
        let mut denom = BigInt::from(1);
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let dstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if dstart == self.pos {
                return Err(self.err("expected a denominator"));
            }
            denom = std::str::from_utf8(&self.src[dstart..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("bad denominator"))?;
            if denom.is_zero() {
                return Err(self.err("zero denominator"));
            }
        }
        // reject juxtaposition like "2x"
        if let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_alphabetic() || c == b'(' {
                return Err(self.err("juxtaposition is not allowed; use '*'"));
            }
        }
        Ok(MultiPoly::constant(self.vars, BigRational::new(numer, denom)))
    }

    fn variable(&mut self) -> PolyResult<MultiPoly> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let var = Var::from_name(name).ok_or_else(|| PolyError::Parse {
            pos: start,
            msg: format!("unknown variable '{name}'"),
        })?;
        if !self.vars.contains(&var) {
            return Err(PolyError::Parse {
                pos: start,
                msg: format!("variable '{name}' is not allowed here"),
            });
        }
        if let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() || c == b'(' {
                return Err(self.err("juxtaposition is not allowed; use '*'"));
            }
        }
        MultiPoly::var(self.vars, var)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{XY, XYZ};
    use super::*;

    #[test]
    fn parses_rational_coefficients() {
        let p = parse_poly("x^2 + y^2 - 1/4*z^2", XYZ).unwrap();
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn parses_parentheses_and_unary_minus() {
        let a = parse_poly("-(x - y)^2 + x^2 + y^2", XY).unwrap();
        let b = parse_poly("2*x*y", XY).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_unknown_variable() {
        let e = parse_poly("x^3 + w^3", XYZ).unwrap_err();
        match e {
            PolyError::Parse { pos, .. } => assert_eq!(pos, 6),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_variable_outside_ring() {
        assert!(parse_poly("x + z", XY).is_err());
    }

    #[test]
    fn rejects_juxtaposition() {
        assert!(parse_poly("2x", XY).is_err());
        assert!(parse_poly("x y", XY).is_err());
    }

    #[test]
    fn reports_error_position() {
        let e = parse_poly("x^2 + + 3", XY).unwrap_err();
        assert!(matches!(e, PolyError::Parse { .. }));
    }
}
