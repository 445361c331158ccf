//! Arithmetic expressions for coefficients (`3/2`, `2*a*b^2 - c`) and for
//! polynomials in `t` (`t^2 + 1`).

use adeq_core::field::RationalFunction;
use adeq_core::rat::Q;
use adeq_core::sympoly::UnknownPoly;
use num_traits::Zero;

/// What an expression evaluates into.
pub trait Algebra: Sized + Clone {
    fn constant(c: Q) -> Self;
    fn variable(name: &str) -> Result<Self, String>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, String>;
    fn pow(&self, e: u32) -> Self;
}

impl Algebra for UnknownPoly {
    fn constant(c: Q) -> Self {
        UnknownPoly::constant(c)
    }
    fn variable(name: &str) -> Result<Self, String> {
        Ok(UnknownPoly::var(name))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self, String> {
        match o.as_constant() {
            Some(c) if !c.is_zero() => Ok(self.scale(&(Q::from_integer(1.into()) / c))),
            Some(_) => Err("division by zero".into()),
            None => Err("division by a non-constant".into()),
        }
    }
    fn pow(&self, e: u32) -> Self {
        UnknownPoly::pow(self, e)
    }
}

impl Algebra for RationalFunction {
    fn constant(c: Q) -> Self {
        RationalFunction::from_q(&c)
    }
    fn variable(name: &str) -> Result<Self, String> {
        if name == "t" {
            Ok(RationalFunction::t())
        } else {
            Err(format!("unknown variable '{name}', only 't' is allowed"))
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self, String> {
        RationalFunction::div(self, o).map_err(|e| e.to_string())
    }
    fn pow(&self, e: u32) -> Self {
        RationalFunction::pow(self, e)
    }
}

struct P<'a> {
    s: &'a [u8],
    pos: usize,
}

impl P<'_> {
    fn skip(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> String {
        format!("column {}: {}", self.pos + 1, msg.into())
    }

    fn expr<A: Algebra>(&mut self) -> Result<A, String> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                A::constant(Q::zero()).sub(&self.term()?)
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

    fn term<A: Algebra>(&mut self) -> Result<A, String> {
        let mut acc: A = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc.div(&d).map_err(|e| self.err(e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor<A: Algebra>(&mut self) -> Result<A, String> {
        let base: A = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
            let e: u32 = digits.parse().map_err(|_| self.err("expected an exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<A: Algebra>(&mut self) -> Result<A, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                Ok(A::constant(Q::from_integer(digits.parse().expect("digits"))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                A::variable(name).map_err(|e| self.err(e))
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

pub fn parse_expr<A: Algebra>(text: &str) -> Result<A, String> {
    if !text.is_ascii() {
        return Err("expressions must be ASCII".into());
    }
    let mut p = P { s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn parse_coeff(text: &str) -> Result<UnknownPoly, String> {
    parse_expr(text)
}

/// A polynomial in `t`, possibly with rational coefficients.
pub fn parse_t_poly(text: &str) -> Result<RationalFunction, String> {
    let r: RationalFunction = parse_expr(text)?;
    if r.denom().degree() != Some(0) {
        return Err(format!("'{text}' is not a polynomial in t"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use adeq_core::rat::{q, q_frac};

    #[test]
    fn coefficients() {
        assert_eq!(parse_coeff("3/2").unwrap(), UnknownPoly::constant(q_frac(3, 2)));
        assert_eq!(parse_coeff("-4").unwrap(), UnknownPoly::constant(q(-4)));
        let p = parse_coeff("2*a*b^2 - (c + 1)/3").unwrap();
        assert_eq!(p.to_string(), "2*a*b^2 - 1/3*c - 1/3");
        assert!(parse_coeff("a/b").is_err());
        assert!(parse_coeff("1/0").is_err());
        assert!(parse_coeff("2 +").is_err());
    }

    #[test]
    fn t_polynomials() {
        assert_eq!(parse_t_poly("t^2").unwrap().to_string(), "t^2");
        assert_eq!(parse_t_poly("(t+1)^2 - 1").unwrap().to_string(), "t^2 + 2*t");
        assert!(parse_t_poly("1/t").is_err());
        assert!(parse_t_poly("s").is_err());
    }
}
