//! Text grammar for quadratic polynomials.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := number | [number ['*']] factor [['*'] factor]
//! factor := 'x' index ['^' exponent]
//! ```
//!
//! Whitespace is ignored between tokens. Cross terms `c*xi*xj` are split
//! evenly between `A[i][j]` and `A[j][i]`.

use nalgebra::{DMatrix, DVector};

use super::QuadraticPolynomial;
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

struct Monomial {
    coeff: f64,
    vars: Vec<usize>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
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

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut len = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            len += digits(self);
        }
        if len == 0 {
            self.pos = start;
            return self.err("expected a number");
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
                return self.err("malformed exponent");
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>().or_else(|_| {
            self.pos = start;
            self.err(format!("invalid number '{text}'"))
        })
    }

    fn integer(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<usize>().or_else(|_| {
            self.pos = start;
            self.err(format!("integer '{text}' out of range"))
        })
    }

    /// Parses `x<index>[^<exp>]`, pushing the variable (at most 3 times)
    /// and returning the exponent.
    fn factor(&mut self, vars: &mut Vec<usize>) -> Result<usize> {
        if self.peek() != Some(b'x') {
            return self.err("expected a variable 'x<index>'");
        }
        self.pos += 1;
        let index_pos = self.pos;
        let index = self.integer()?;
        if index == 0 {
            self.pos = index_pos;
            return self.err("variable indices start at 1");
        }
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp_pos = self.pos;
            exp = self.integer()?;
            if exp == 0 {
                self.pos = exp_pos;
                return self.err("exponent must be positive");
            }
        }
        for _ in 0..exp.min(3) {
            vars.push(index);
        }
        Ok(exp)
    }

    fn term(&mut self, sign: f64) -> Result<Monomial> {
        self.skip_ws();
        let start = self.pos;
        let mut coeff = sign;
        let mut saw_number = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.') {
            coeff *= self.number()?;
            saw_number = true;
        }
        let mut vars = Vec::new();
        let mut degree = 0usize;
        loop {
            match self.peek() {
                Some(b'*') => {
                    if !saw_number && vars.is_empty() {
                        return self.err("unexpected '*'");
                    }
                    self.pos += 1;
                    degree = degree.saturating_add(self.factor(&mut vars)?);
                }
                Some(b'x') => degree = degree.saturating_add(self.factor(&mut vars)?),
                _ => break,
            }
        }
        if !saw_number && vars.is_empty() {
            return self.err("expected a number or a variable");
        }
        if degree > 2 {
            return Err(Error::Degree {
                position: start,
                degree: degree.min(u32::MAX as usize) as u32,
            });
        }
        Ok(Monomial { coeff, vars })
    }

    fn poly(&mut self) -> Result<Vec<Monomial>> {
        if self.peek().is_none() {
            return Err(Error::EmptyPolynomial);
        }
        let mut terms = Vec::new();
        let mut sign = 1.0;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                self.pos += 1;
                sign = -1.0;
            }
            _ => {}
        }
        loop {
            terms.push(self.term(sign)?);
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                Some(c) => {
                    return self.err(format!("unexpected character '{}'", c as char));
                }
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses a quadratic polynomial in the variables `x1..xn`.
///
/// With `nvars` absent, `n` is the largest variable index seen (at least 1).
pub fn parse_polynomial(text: &str, nvars: Option<usize>) -> Result<QuadraticPolynomial> {
    if let Some(bad) = text.char_indices().find(|(_, c)| !c.is_ascii()) {
        return Err(Error::Parse {
            position: bad.0,
            message: format!("unexpected character '{}'", bad.1),
        });
    }
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let terms = parser.poly()?;

    let max_index = terms.iter().flat_map(|t| t.vars.iter().copied()).max().unwrap_or(0);
    let n = match nvars {
        Some(0) => {
            return Err(Error::Parse {
                position: 0,
                message: "number of variables must be at least 1".into(),
            })
        }
        Some(n) if max_index > n => {
            return Err(Error::Parse {
                position: 0,
                message: format!("variable x{max_index} exceeds the declared {n} variables"),
            })
        }
        Some(n) => n,
        None => max_index.max(1),
    };

    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut b = DVector::<f64>::zeros(n);
    let mut c = 0.0;
    for t in terms {
        match t.vars[..] {
            [] => c += t.coeff,
            [i] => b[i - 1] += t.coeff,
            [i, j] if i == j => a[(i - 1, i - 1)] += t.coeff,
            [i, j] => {
                a[(i - 1, j - 1)] += t.coeff / 2.0;
                a[(j - 1, i - 1)] += t.coeff / 2.0;
            }
            _ => unreachable!("degree checked in term()"),
        }
    }
    QuadraticPolynomial::new(SymMatrix::from_lower(a)?, b, c)
}
