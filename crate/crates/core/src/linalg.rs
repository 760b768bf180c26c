//! Dense real symmetric spectral routines.
//!
//! Every rank and sign decision in the crate goes through [`definiteness`],
//! which thresholds eigenvalues at `tau = tol * (1 + max |lambda|)`.

use std::ops::Index;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Default relative tolerance for rank and sign decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A dense real symmetric matrix.
///
/// Construction reads the lower triangle and mirrors it, so the stored
/// entries are exactly symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix(DMatrix<f64>);

impl SymMatrix {
    pub fn from_lower(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidMatrix(format!(
                "expected a square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        let mut m = m;
        m.fill_upper_triangle_with_lower_triangle();
        Ok(SymMatrix(m))
    }

    /// Builds from row-major entries. Only the lower triangle is read.
    pub fn from_row_slice(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_lower(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Like [`SymMatrix::from_lower`] but rejects inputs whose two triangles
    /// disagree by more than `1e-12 * (1 + max |m_ij|)`.
    pub fn from_symmetric(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() == m.ncols() {
            let scale = 1.0 + m.amax();
            let asym = (&m - m.transpose()).amax();
            if asym > 1e-12 * scale {
                return Err(Error::InvalidMatrix(format!(
                    "matrix is not symmetric (asymmetry {asym:e})"
                )));
            }
        }
        Self::from_lower(m)
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        SymMatrix(DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        SymMatrix(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        SymMatrix(&self.0 * factor)
    }

    /// `P^T M P` for the permutation taking index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        SymMatrix(DMatrix::from_fn(n, n, |i, j| self.0[(perm[i], perm[j])]))
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;

    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// Eigen-decomposition of a [`SymMatrix`], eigenvalues descending.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: DVector<f64>,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn max_abs_value(&self) -> f64 {
        self.values.amax()
    }

    /// `V diag(lambda) V^T`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.vectors * DMatrix::from_diagonal(&self.values) * self.vectors.transpose()
    }
}

/// Symmetric eigen-decomposition by cyclic Jacobi rotations.
///
/// Eigenvectors are normalised so that the entry of largest magnitude in
/// each column is positive.
pub fn sym_eig(m: &SymMatrix) -> Result<Spectrum> {
    let n = m.dim();
    if m.0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NumericalFailure("matrix has non-finite entries".into()));
    }
    let mut a = m.0.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let norm_sq = a.norm_squared();
    let max_sweeps = 100 * n;

    let off_diag = |a: &DMatrix<f64>| -> f64 {
        let mut s = 0.0;
        for j in 0..n {
            for i in (j + 1)..n {
                s += 2.0 * a[(i, j)] * a[(i, j)];
            }
        }
        s
    };

    let mut converged = false;
    for _ in 0..max_sweeps {
        let off = off_diag(&a);
        if off <= (f64::EPSILON * f64::EPSILON) * norm_sq || off < f64::MIN_POSITIVE {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diag(&a) > (f64::EPSILON * f64::EPSILON) * norm_sq {
        return Err(Error::NumericalFailure(format!(
            "Jacobi iteration did not converge in {max_sweeps} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| a[(i, i)]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src).into_owned();
        let lead = col.iter().copied().fold(0.0f64, |best, x| {
            if x.abs() > best.abs() {
                x
            } else {
                best
            }
        });
        if lead < 0.0 {
            col.neg_mut();
        }
        vectors.set_column(dst, &col);
    }
    Ok(Spectrum { values, vectors })
}

/// Sign classification of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Definiteness {
    Psd { rank: usize },
    Nsd { rank: usize },
    /// Carries the largest eigenvalue and the smallest one as witnesses.
    Indefinite { positive: f64, negative: f64, rank: usize },
    Zero,
}

impl Definiteness {
    pub fn rank(&self) -> usize {
        match *self {
            Definiteness::Psd { rank }
            | Definiteness::Nsd { rank }
            | Definiteness::Indefinite { rank, .. } => rank,
            Definiteness::Zero => 0,
        }
    }

    /// True for NSD matrices, including the zero matrix.
    pub fn is_nsd(&self) -> bool {
        matches!(self, Definiteness::Nsd { .. } | Definiteness::Zero)
    }

    /// True for PSD matrices, including the zero matrix.
    pub fn is_psd(&self) -> bool {
        matches!(self, Definiteness::Psd { .. } | Definiteness::Zero)
    }
}

/// Threshold used to call an eigenvalue zero.
pub fn threshold(spectrum: &Spectrum, tol: f64) -> f64 {
    tol * (1.0 + spectrum.max_abs_value())
}

pub fn classify(spectrum: &Spectrum, tol: f64) -> Definiteness {
    let tau = threshold(spectrum, tol);
    let values = &spectrum.values;
    let rank = values.iter().filter(|v| v.abs() > tau).count();
    if rank == 0 {
        return Definiteness::Zero;
    }
    // values are sorted descending
    let largest = values[0];
    let smallest = values[values.len() - 1];
    match (largest > tau, smallest < -tau) {
        (true, true) => Definiteness::Indefinite {
            positive: largest,
            negative: smallest,
            rank,
        },
        (true, false) => Definiteness::Psd { rank },
        _ => Definiteness::Nsd { rank },
    }
}

pub fn definiteness(m: &SymMatrix, tol: f64) -> Result<Definiteness> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidMatrix(format!("tolerance must be positive, got {tol}")));
    }
    Ok(classify(&sym_eig(m)?, tol))
}

/// A factor `R` with `R^T R = M` whose rows are linearly independent.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdFactor {
    /// `r x n`, where `r` is the numerical rank of the source matrix.
    pub rows: DMatrix<f64>,
    /// Largest absolute entry of the source matrix.
    pub source_norm: f64,
}

impl PsdFactor {
    pub fn rank(&self) -> usize {
        self.rows.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.rows.ncols()
    }

    pub fn gram(&self) -> DMatrix<f64> {
        self.rows.transpose() * &self.rows
    }

    /// The factor with zero rows appended up to `count` rows.
    ///
    /// Panics if the factor already has more than `count` rows.
    pub fn padded(&self, count: usize) -> DMatrix<f64> {
        assert!(self.rank() <= count, "factor has {} rows", self.rank());
        let mut out = DMatrix::zeros(count, self.ncols());
        out.rows_mut(0, self.rank()).copy_from(&self.rows);
        out
    }
}

/// Low-rank factor of a PSD matrix built from its eigen-decomposition:
/// row `i` is `sqrt(lambda_i) v_i^T` over the eigenvalues above threshold.
pub fn psd_low_rank_factor(m: &SymMatrix, tol: f64) -> Result<PsdFactor> {
    let spectrum = sym_eig(m)?;
    let tau = threshold(&spectrum, tol);
    let smallest = spectrum.values[spectrum.values.len() - 1];
    if smallest < -tau {
        return Err(Error::NotPsd { eigenvalue: smallest });
    }
    let kept: Vec<usize> = (0..m.dim()).filter(|&i| spectrum.values[i] > tau).collect();
    let mut rows = DMatrix::zeros(kept.len(), m.dim());
    for (row, &i) in kept.iter().enumerate() {
        let scale = spectrum.values[i].sqrt();
        for j in 0..m.dim() {
            rows[(row, j)] = scale * spectrum.vectors[(j, i)];
        }
    }
    Ok(PsdFactor {
        rows,
        source_norm: m.max_abs(),
    })
}
