//! Strict parser for polynomials over named variables.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [integer] ('*'? factor)*
//! factor := (variable | '(' expr ')') ('^' positive-integer)?
//! ```
//! Whitespace is insignificant; error offsets are byte offsets into the input.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, Rational};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [String],
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn integer(&mut self) -> Option<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((self.src[start..self.pos].parse().expect("digits"), start))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        let caret = self.pos;
        self.pos += 1;
        let (e, at) = self.integer().ok_or_else(|| syntax(caret, "expected an exponent after `^`"))?;
        let e: u32 = e.try_into().map_err(|_| syntax(at, "exponent too large"))?;
        if e == 0 {
            return Err(syntax(at, "exponent must be positive"));
        }
        Ok(e)
    }

    fn starts_factor(c: char) -> bool {
        c == '(' || c == '_' || c.is_ascii_alphabetic()
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let at = self.pos;
        let base = match self.peek() {
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(syntax(self.pos, format!("expected `)` to close the parenthesis at offset {open}")));
                }
                self.pos += 1;
                inner
            }
            Some(c) if Self::starts_factor(c) => {
                let start = self.pos;
                let len = self.src[start..].bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
                self.pos += len;
                let name = &self.src[start..self.pos];
                let i = self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVariable { name: name.to_string(), offset: start })?;
                Polynomial::var(self.nvars(), i)
            }
            _ => return Err(syntax(at, "expected a variable or `(`")),
        };
        let e = self.exponent()?;
        Ok(base.pow(e))
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = match self.integer() {
            Some((c, _)) => Polynomial::constant(self.nvars(), Rational::from_integer(c)),
            None => {
                if !self.peek().is_some_and(Self::starts_factor) {
                    return Err(syntax(self.pos, "expected a term"));
                }
                Polynomial::one(self.nvars())
            }
        };
        loop {
            match self.peek() {
                Some('*') => {
                    let star = self.pos;
                    self.pos += 1;
                    if !self.peek().is_some_and(Self::starts_factor) {
                        return Err(syntax(star, "expected a factor after `*`"));
                    }
                }
                Some(c) if Self::starts_factor(c) => {}
                _ => break,
            }
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut sign_at = None;
        let mut negate = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negate = c == '-';
            sign_at = Some(self.pos);
            self.pos += 1;
        }
        let first = self.term_after(sign_at)?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(c @ ('+' | '-')) => {
                    let op = self.pos;
                    self.pos += 1;
                    let t = self.term_after(Some(op))?;
                    acc = if c == '+' { &acc + &t } else { &acc - &t };
                }
                _ => return Ok(acc),
            }
        }
    }

    /// A term following an operator; a missing term is reported at the operator.
    fn term_after(&mut self, op: Option<usize>) -> Result<Polynomial> {
        match (self.peek(), op) {
            (None, Some(at)) => Err(syntax(at, "operator is missing its right operand")),
            (None, None) => Err(syntax(self.pos, "empty polynomial")),
            _ => self.term(),
        }
    }
}

/// Parses a polynomial in the given variables.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial> {
    let mut p = Parser { src: text, pos: 0, names };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(syntax(p.pos, format!("unexpected `{c}`")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{multidegree_of, MultiDegree, RingContext};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn hirzebruch_generator() {
        let n = names(&["x0", "x1", "y0", "y1"]);
        let ctx = RingContext::new(n.clone(), vec![vec![1, 1, 1, 0], vec![0, 0, 1, 1]], vec![1, 1]).unwrap();
        let f = parse_polynomial("x1^2*y0^2 + x0^3*x1*y1^2", &n).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(multidegree_of(&f, &ctx).unwrap(), MultiDegree(vec![4, 2]));
    }

    #[test]
    fn forms_and_parentheses() {
        let n = names(&["x", "y"]);
        let a = parse_polynomial("(x+y)^2 - 2 x y", &n).unwrap();
        let b = parse_polynomial("x^2 + y*y", &n).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_polynomial("-3x", &n).unwrap(), parse_polynomial("0 - 3*x", &n).unwrap());
        assert!(parse_polynomial("0", &n).unwrap().is_zero());
    }

    #[test]
    fn errors_have_offsets() {
        let n = names(&["x0", "x1"]);
        assert_eq!(parse_polynomial("x0 + ", &n), Err(Error::Syntax { offset: 3, message: "operator is missing its right operand".into() }));
        assert!(matches!(parse_polynomial("x0 + z", &n), Err(Error::UnknownVariable { offset: 5, .. })));
        assert!(matches!(parse_polynomial("x0^0", &n), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_polynomial("(x0", &n), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x0 x1 )", &n), Err(Error::Syntax { offset: 6, .. })));
        assert!(matches!(parse_polynomial("x0 * 2", &n), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_polynomial("", &n), Err(Error::Syntax { offset: 0, .. })));
    }
}
