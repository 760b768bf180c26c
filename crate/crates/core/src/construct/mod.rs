//! Existence decision and constructions of monic determinantal
//! representations for quadratics `f(x) = x^T A x + b^T x + 1`.
//!
//! A representation exists iff `A` is negative semidefinite, or the Schur
//! complement `S = A - b b^T / 4` is negative semidefinite with rank at
//! most 3. The size-2 constructions factor `-S = R^T R` and read the pencil
//! off the rows of `R`; the block construction factors `-A = C^T C`.

mod pencil;

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{definiteness, psd_low_rank_factor, SymMatrix};
use crate::quadform::QuadraticPolynomial;

pub use pencil::{HermitianPencil, MatrixJson, PencilJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Neither condition holds; no representation of any size.
    NoMdr,
    /// Schur complement NSD with rank at most 2.
    Size2Symmetric,
    /// Schur complement NSD with rank exactly 3.
    Size2HermitianOnly,
    /// `A` is NSD but the Schur complement has rank above 3.
    NsdOnly,
}

impl Verdict {
    pub fn has_representation(self) -> bool {
        self != Verdict::NoMdr
    }

    pub fn has_size2(self) -> bool {
        matches!(self, Verdict::Size2Symmetric | Verdict::Size2HermitianOnly)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecisionReport {
    pub rz_polynomial: bool,
    pub a_is_nsd: bool,
    pub a_rank: usize,
    pub schur_nsd: bool,
    pub schur_rank: usize,
    pub verdict: Verdict,
    pub diagonal_possible: bool,
    pub available_sizes: BTreeSet<usize>,
}

/// Entries of the size-2 coefficient matrices
/// `A_j = [[r_j, t_j - i u_j], [t_j + i u_j, s_j]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Size2Data {
    pub r: DVector<f64>,
    pub s: DVector<f64>,
    pub t: DVector<f64>,
    pub u: DVector<f64>,
}

/// Block construction for NSD `A = -C^T C`:
/// `det [[I, Cx], [(Cx)^T, 1 + b^T x]] = f(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NsdConstruction {
    /// `r x n` with `r = rank(A)`.
    pub c: DMatrix<f64>,
    pub b: DVector<f64>,
    pub pencil: HermitianPencil,
}

fn require_monic(f: &QuadraticPolynomial) -> Result<()> {
    if f.c() != 1.0 {
        return Err(Error::NotMonic(f.c()));
    }
    Ok(())
}

fn schur(f: &QuadraticPolynomial) -> Result<SymMatrix> {
    Ok(f.matrix_representation().schur_complement_11()?.s)
}

pub fn decide(f: &QuadraticPolynomial, tol: f64) -> Result<DecisionReport> {
    require_monic(f)?;
    let s = definiteness(&schur(f)?, tol)?;
    let a = definiteness(f.a(), tol)?;
    let schur_nsd = s.is_nsd();
    let schur_rank = s.rank();
    let a_is_nsd = a.is_nsd();

    let verdict = match (schur_nsd, schur_rank, a_is_nsd) {
        (true, 0..=2, _) => Verdict::Size2Symmetric,
        (true, 3, _) => Verdict::Size2HermitianOnly,
        (_, _, true) => Verdict::NsdOnly,
        _ => Verdict::NoMdr,
    };

    let mut available_sizes = BTreeSet::new();
    if verdict.has_size2() {
        available_sizes.insert(2);
    }
    if a_is_nsd {
        let r = a.rank();
        available_sizes.extend(r.div_ceil(2) + 1..=r + 1);
    }

    Ok(DecisionReport {
        rz_polynomial: schur_nsd,
        a_is_nsd,
        a_rank: a.rank(),
        schur_nsd,
        schur_rank,
        verdict,
        diagonal_possible: schur_nsd && schur_rank <= 1,
        available_sizes,
    })
}

/// Splits `-S = R^T R` into rows `alpha_1..alpha_3` (zero-padded) and sets
/// `r = b/2 + alpha_1`, `s = b/2 - alpha_1`, `t = alpha_2`, `u = alpha_3`.
fn size2_from_schur(f: &QuadraticPolynomial, tol: f64) -> Result<Size2Data> {
    let factor = psd_low_rank_factor(&schur(f)?.scaled(-1.0), tol)?;
    let alphas = factor.padded(3);
    let half_b = f.b() / 2.0;
    let alpha = |k: usize| alphas.row(k).transpose();
    Ok(Size2Data {
        r: &half_b + alpha(0),
        s: &half_b - alpha(0),
        t: alpha(1),
        u: alpha(2),
    })
}

/// Size-2 representation. Symmetric (`u = 0`) when the Schur complement
/// has rank at most 2.
pub fn construct_size2(f: &QuadraticPolynomial, tol: f64) -> Result<Size2Data> {
    let report = decide(f, tol)?;
    if !report.verdict.has_size2() {
        return Err(Error::NoSize2Representation(Box::new(report)));
    }
    size2_from_schur(f, tol)
}

/// Diagonal size-2 representation `diag(1 + r^T x, 1 + s^T x)`.
pub fn construct_diagonal(f: &QuadraticPolynomial, tol: f64) -> Result<Size2Data> {
    let report = decide(f, tol)?;
    if !report.diagonal_possible {
        return Err(Error::NoDiagonalRepresentation {
            schur_nsd: report.schur_nsd,
            schur_rank: report.schur_rank,
        });
    }
    size2_from_schur(f, tol)
}

/// Symmetric representation of size `rank(A) + 1` for NSD `A`.
pub fn construct_nsd(f: &QuadraticPolynomial, tol: f64) -> Result<NsdConstruction> {
    require_monic(f)?;
    if !definiteness(f.a(), tol)?.is_nsd() {
        return Err(Error::ANotNsd);
    }
    let c = psd_low_rank_factor(&f.a().scaled(-1.0), tol)?.rows;
    let r = c.nrows();
    let n = f.n();
    let re = (0..n)
        .map(|j| {
            let mut m = DMatrix::zeros(r + 1, r + 1);
            for i in 0..r {
                m[(i, r)] = c[(i, j)];
                m[(r, i)] = c[(i, j)];
            }
            m[(r, r)] = f.b()[j];
            m
        })
        .collect();
    Ok(NsdConstruction {
        pencil: HermitianPencil::real(re)?,
        c,
        b: f.b().clone(),
    })
}

/// Merges pairs `(p, q)` of rows of `C` (1-based) into complex rows
/// `C_p + i C_q`, shrinking the pencil by one per pair. The merged row
/// takes the position of `p`; unpaired rows keep their order.
pub fn compress(nc: &NsdConstruction, pairing: &[(usize, usize)]) -> Result<HermitianPencil> {
    let r = nc.c.nrows();
    let mut partner: Vec<Option<usize>> = vec![None; r];
    let mut used = vec![false; r];
    for &(p, q) in pairing {
        if p == 0 || q == 0 || p > r || q > r {
            return Err(Error::InvalidPairing(format!(
                "pair ({p},{q}) is outside rows 1..={r}"
            )));
        }
        if p == q {
            return Err(Error::InvalidPairing(format!("pair ({p},{q}) repeats a row")));
        }
        for idx in [p, q] {
            if used[idx - 1] {
                return Err(Error::InvalidPairing(format!("row {idx} appears in two pairs")));
            }
            used[idx - 1] = true;
        }
        partner[p - 1] = Some(q - 1);
    }

    // (real row, optional imaginary row)
    let rows: Vec<(usize, Option<usize>)> = (0..r)
        .filter(|&i| partner[i].is_some() || !used[i])
        .map(|i| (i, partner[i]))
        .collect();
    let k = rows.len();
    let n = nc.b.len();
    let mut re = Vec::with_capacity(n);
    let mut im = Vec::with_capacity(n);
    for j in 0..n {
        let mut mr = DMatrix::zeros(k + 1, k + 1);
        let mut mi = DMatrix::zeros(k + 1, k + 1);
        for (pos, &(p, q)) in rows.iter().enumerate() {
            mr[(pos, k)] = nc.c[(p, j)];
            mr[(k, pos)] = nc.c[(p, j)];
            if let Some(q) = q {
                mi[(pos, k)] = nc.c[(q, j)];
                mi[(k, pos)] = -nc.c[(q, j)];
            }
        }
        mr[(k, k)] = nc.b[j];
        re.push(mr);
        im.push(mi);
    }
    HermitianPencil::new(re, im)
}

impl Size2Data {
    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn pencil(&self) -> HermitianPencil {
        let n = self.n();
        let re = (0..n)
            .map(|j| DMatrix::from_row_slice(2, 2, &[self.r[j], self.t[j], self.t[j], self.s[j]]))
            .collect();
        let im = (0..n)
            .map(|j| DMatrix::from_row_slice(2, 2, &[0.0, -self.u[j], self.u[j], 0.0]))
            .collect();
        HermitianPencil::new(re, im).expect("size-2 pencil is Hermitian by construction")
    }

    /// Reads `r, s, t, u` back from a size-2 pencil.
    pub fn from_pencil(p: &HermitianPencil) -> Result<Self> {
        if p.size() != 2 {
            return Err(Error::InvalidMatrix(format!(
                "expected a size-2 pencil, got size {}",
                p.size()
            )));
        }
        let n = p.n();
        let pick = |f: &dyn Fn(usize) -> f64| DVector::from_fn(n, |j, _| f(j));
        Ok(Size2Data {
            r: pick(&|j| p.re(j)[(0, 0)]),
            s: pick(&|j| p.re(j)[(1, 1)]),
            t: pick(&|j| p.re(j)[(1, 0)]),
            u: pick(&|j| p.im(j)[(1, 0)]),
        })
    }
}

/// `det(I + sum x_j A_j)` for a size-2 pencil, expanded:
/// `(1 + r^T x)(1 + s^T x) - (t^T x)^2 - (u^T x)^2`.
pub fn expand_size2(d: &Size2Data) -> QuadraticPolynomial {
    let sym = |v: &DVector<f64>, w: &DVector<f64>| v * w.transpose() + w * v.transpose();
    let a = sym(&d.r, &d.s) / 2.0 - &d.t * d.t.transpose() - &d.u * d.u.transpose();
    QuadraticPolynomial::new(
        SymMatrix::from_lower(a).expect("square"),
        &d.r + &d.s,
        1.0,
    )
    .expect("dimensions agree")
}
