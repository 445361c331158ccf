//! The equation language.
//!
//! ```text
//! eq    := ['+'|'-'] term (('+'|'-') term)* '=' '0'
//! term  := [coeff '*'] fname '(' 'x' ['^' int] ')' ['*'] gname '(' 'x' ')' ['^' int]
//! coeff := int | int '/' int
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

use adeq_core::equation::{EquationSpec, Term};
use adeq_core::rat::{fmt_q, Q};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Equals => "'='".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                bump(&mut chars);
            }
            Tok::Int(s)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                bump(&mut chars);
            }
            Tok::Ident(s)
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Equals,
                _ => {
                    return Err(ParseError {
                        line: l,
                        column: col,
                        message: format!("unexpected character '{c}'"),
                    })
                }
            };
            bump(&mut chars);
            t
        };
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Spanned, message: impl Into<String>) -> ParseError {
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Spanned, ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.error_at(&t, format!("expected {what}, found {}", t.tok.describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok(s.clone()),
            other => Err(self.error_at(&t, format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn int(&mut self, what: &str) -> Result<(Spanned, String), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => {
                let s = s.clone();
                Ok((t, s))
            }
            other => Err(self.error_at(&t, format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek().tok != Tok::Caret {
            return Ok(1);
        }
        self.next();
        if self.peek().tok == Tok::Minus {
            let t = self.peek().clone();
            return Err(self.error_at(&t, "nonpositive exponent"));
        }
        let (t, s) = self.int("an exponent")?;
        let e: u32 = s.parse().map_err(|_| self.error_at(&t, "exponent too large"))?;
        if e == 0 {
            return Err(self.error_at(&t, "nonpositive exponent"));
        }
        Ok(e)
    }

    fn variable(&mut self) -> Result<(), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == "x" => Ok(()),
            other => Err(self.error_at(&t, format!("expected 'x', found {}", other.describe()))),
        }
    }

    fn coefficient(&mut self) -> Result<Q, ParseError> {
        let (t, n) = self.int("a coefficient")?;
        let num: Q = Q::from_integer(n.parse().expect("digits"));
        let value = if self.peek().tok == Tok::Slash {
            self.next();
            let (dt, d) = self.int("a denominator")?;
            let den: Q = Q::from_integer(d.parse().expect("digits"));
            if den.is_zero() {
                return Err(self.error_at(&dt, "zero denominator"));
            }
            num / den
        } else {
            num
        };
        if value.is_zero() {
            return Err(self.error_at(&t, "zero coefficient"));
        }
        self.expect(Tok::Star, "'*'")?;
        Ok(value)
    }

    fn term(&mut self, sign: Q) -> Result<Term, ParseError> {
        let coeff = if matches!(self.peek().tok, Tok::Int(_)) { self.coefficient()? } else { Q::one() };
        let f = self.ident("a function name")?;
        self.expect(Tok::LParen, "'('")?;
        self.variable()?;
        let p = self.exponent()?;
        self.expect(Tok::RParen, "')'")?;
        if self.peek().tok == Tok::Star {
            self.next();
        }
        let g = self.ident("a function name")?;
        self.expect(Tok::LParen, "'('")?;
        self.variable()?;
        self.expect(Tok::RParen, "')'")?;
        let q = self.exponent()?;
        Ok(Term::new(p, q, &f, &g).with_scalar(sign * coeff))
    }

    fn sign(&mut self) -> Option<Q> {
        match self.peek().tok {
            Tok::Plus => {
                self.next();
                Some(Q::one())
            }
            Tok::Minus => {
                self.next();
                Some(-Q::one())
            }
            _ => None,
        }
    }

    fn equation(&mut self) -> Result<EquationSpec, ParseError> {
        let first = self.sign().unwrap_or_else(Q::one);
        let mut terms = vec![self.term(first)?];
        while let Some(s) = self.sign() {
            terms.push(self.term(s)?);
        }
        self.expect(Tok::Equals, "'+', '-' or '='")?;
        let (t, z) = self.int("'0'")?;
        if !z.trim_start_matches('0').is_empty() {
            return Err(self.error_at(&t, "the right-hand side must be 0"));
        }
        self.expect(Tok::End, "end of input")?;
        EquationSpec::new(terms).map_err(|e| self.error_at(&t, e.to_string()))
    }
}

/// Parses one equation.
pub fn parse_equation(text: &str) -> Result<EquationSpec, ParseError> {
    Parser { toks: lex(text)?, pos: 0 }.equation()
}

/// Renders an equation so that [`parse_equation`] gives it back.
pub fn render_equation(spec: &EquationSpec) -> String {
    let mut out = String::new();
    for (i, t) in spec.terms().iter().enumerate() {
        let neg = t.scalar.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = t.scalar.abs();
        if !a.is_one() {
            out.push_str(&fmt_q(&a));
            out.push('*');
        }
        if t.p == 1 {
            out.push_str(&format!("{}(x)", t.f));
        } else {
            out.push_str(&format!("{}(x^{})", t.f, t.p));
        }
        out.push_str(&format!("*{}(x)", t.g));
        if t.q != 1 {
            out.push_str(&format!("^{}", t.q));
        }
    }
    out.push_str(" = 0");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use adeq_core::rat::q;

    #[test]
    fn parses_basic_forms() {
        let s = parse_equation("f1(x^3)*g1(x)^4 + f2(x^2)*g2(x)^5 = 0").unwrap();
        assert_eq!(s.pairs(), vec![(3, 4), (2, 5)]);
        assert_eq!(s.terms()[1].f, "f2");
        let s = parse_equation("f(x^2)*g(x)^3 - 2*f(x^4)*g(x)^1 = 0").unwrap();
        assert_eq!(s.terms()[0].scalar, q(1));
        assert_eq!(s.terms()[1].scalar, q(-2));
        assert_eq!(s.function_names().len(), 2);
        let s = parse_equation("f(x) g(x) = 0").unwrap();
        assert_eq!(s.pairs(), vec![(1, 1)]);
    }

    #[test]
    fn reports_positions() {
        let e = parse_equation("f1(x^0)*g1(x) = 0").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        assert!(e.message.contains("nonpositive"));
        let e = parse_equation("f(x)*g(x)\n  + f(y)*g(x) = 0").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let e = parse_equation("f(x)*g(x)^-2 = 0").unwrap_err();
        assert!(e.message.contains("nonpositive"));
        let e = parse_equation("f(x)*g(x) = 1").unwrap_err();
        assert!(e.message.contains("must be 0"));
        assert!(parse_equation("0*f(x)*g(x) = 0").is_err());
        assert!(parse_equation("f(x)*g(x)").is_err());
        assert!(parse_equation("f(x)*g(x) = 0 junk").is_err());
    }

    #[test]
    fn renders() {
        let s = parse_equation("-3/2*f(x^2)*g(x)^3 + f(x)g(x)^4 = 0 # comment").unwrap();
        assert_eq!(render_equation(&s), "-3/2*f(x^2)*g(x)^3 + f(x)*g(x)^4 = 0");
    }
}
