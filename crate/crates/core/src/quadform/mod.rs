//! Real quadratic polynomials `f(x) = x^T A x + b^T x + c`, their matrix
//! representation, and the real-zero test.

mod parse;

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{definiteness, SymMatrix};

pub use parse::parse_polynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticPolynomial {
    a: SymMatrix,
    b: DVector<f64>,
    c: f64,
}

/// `Q = [[c, b^T/2], [b/2, A]]`, so that `f(x) = Z^T Q Z` with `Z = (1, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    pub q: SymMatrix,
}

/// Schur complement of `Q` with respect to its `(1,1)` entry,
/// `S = A - b b^T / (4c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurComp {
    pub s: SymMatrix,
}

impl QuadraticPolynomial {
    pub fn new(a: SymMatrix, b: DVector<f64>, c: f64) -> Result<Self> {
        if b.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.len(),
            });
        }
        Ok(QuadraticPolynomial { a, b, c })
    }

    pub fn parse(text: &str, nvars: Option<usize>) -> Result<Self> {
        parse_polynomial(text, nvars)
    }

    pub fn n(&self) -> usize {
        self.a.dim()
    }

    pub fn a(&self) -> &SymMatrix {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        let x = DVector::from_column_slice(x);
        Ok(x.dot(&(self.a.as_matrix() * &x)) + self.b.dot(&x) + self.c)
    }

    /// Coefficients of `t^2, t, 1` in `f(t x)`.
    pub fn restrict_to_line(&self, x: &[f64]) -> Result<(f64, f64, f64)> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        let x = DVector::from_column_slice(x);
        Ok((x.dot(&(self.a.as_matrix() * &x)), self.b.dot(&x), self.c))
    }

    /// Scales `f` so that its constant term is 1.
    pub fn normalize(&self) -> Result<Self> {
        if self.c.is_nan() || self.c <= 0.0 {
            return Err(Error::NonPositiveConstant(self.c));
        }
        if self.c == 1.0 {
            return Ok(self.clone());
        }
        let k = 1.0 / self.c;
        Ok(QuadraticPolynomial {
            a: SymMatrix::from_lower(self.a.as_matrix() / self.c).expect("square"),
            b: &self.b * k,
            c: 1.0,
        })
    }

    pub fn matrix_representation(&self) -> MatrixRep {
        let n = self.n();
        let q = DMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
            (0, 0) => self.c,
            (0, j) => self.b[j - 1] / 2.0,
            (i, 0) => self.b[i - 1] / 2.0,
            (i, j) => self.a[(i - 1, j - 1)],
        });
        MatrixRep {
            q: SymMatrix::from_lower(q).expect("square"),
        }
    }

    /// `f` is real-zero iff `4 A c - b b^T` is negative semidefinite.
    pub fn is_real_zero(&self, tol: f64) -> Result<bool> {
        if self.c == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        let m = self.a.as_matrix() * (4.0 * self.c) - &self.b * self.b.transpose();
        Ok(definiteness(&SymMatrix::from_lower(m)?, tol)?.is_nsd())
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            n: self.n(),
            a: self
                .a
                .as_matrix()
                .row_iter()
                .map(|r| r.iter().copied().collect())
                .collect(),
            b: self.b.iter().copied().collect(),
            c: self.c,
        }
    }
}

impl MatrixRep {
    pub fn schur_complement_11(&self) -> Result<SchurComp> {
        let q = self.q.as_matrix();
        let c = q[(0, 0)];
        if c == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        let n = q.nrows() - 1;
        let a = q.view((1, 1), (n, n));
        let half_b = q.view((1, 0), (n, 1));
        let s = a - half_b * half_b.transpose() / c;
        Ok(SchurComp {
            s: SymMatrix::from_lower(s)?,
        })
    }
}

impl FromStr for QuadraticPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s, None)
    }
}

impl fmt::Display for QuadraticPolynomial {
    /// Writes the polynomial in the parser's grammar. Every coefficient is
    /// printed in shortest round-trip form, so parsing the output gives back
    /// the same coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.c)?;
        let term = |f: &mut fmt::Formatter<'_>, coeff: f64, vars: &str| -> fmt::Result {
            if coeff == 0.0 {
                return Ok(());
            }
            let sign = if coeff.is_sign_negative() { '-' } else { '+' };
            write!(f, " {sign} {}*{vars}", coeff.abs())
        };
        for (j, &bj) in self.b.iter().enumerate() {
            term(f, bj, &format!("x{}", j + 1))?;
        }
        let n = self.n();
        for i in 0..n {
            term(f, self.a[(i, i)], &format!("x{}^2", i + 1))?;
            for j in (i + 1)..n {
                term(f, 2.0 * self.a[(i, j)], &format!("x{}*x{}", i + 1, j + 1))?;
            }
        }
        Ok(())
    }
}

/// JSON form `{"n": .., "A": [[..]], "b": [..], "c": ..}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: f64,
}

impl TryFrom<PolynomialJson> for QuadraticPolynomial {
    type Error = Error;

    fn try_from(j: PolynomialJson) -> Result<Self> {
        if j.n == 0 {
            return Err(Error::InvalidMatrix("n must be at least 1".into()));
        }
        if j.a.len() != j.n {
            return Err(Error::DimensionMismatch {
                expected: j.n,
                found: j.a.len(),
            });
        }
        if let Some(row) = j.a.iter().find(|r| r.len() != j.n) {
            return Err(Error::DimensionMismatch {
                expected: j.n,
                found: row.len(),
            });
        }
        let flat: Vec<f64> = j.a.into_iter().flatten().collect();
        let a = SymMatrix::from_symmetric(DMatrix::from_row_slice(j.n, j.n, &flat))?;
        QuadraticPolynomial::new(a, DVector::from_vec(j.b), j.c)
    }
}
