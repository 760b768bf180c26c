//! Independent checks on pencils: determinant identity, spectrahedron
//! membership, cone witnesses, and the eigenvalue/root correspondence.
//!
//! Hermitian eigenvalues are computed from the real symmetric doubling
//! `[[Re, -Im], [Im, Re]]`, whose spectrum is the Hermitian spectrum with
//! every multiplicity doubled.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::construct::HermitianPencil;
use crate::error::{Error, Result};
use crate::linalg::{classify, sym_eig, Definiteness, Spectrum, SymMatrix};
use crate::quadform::QuadraticPolynomial;

pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    pub re: DMatrix<f64>,
    pub im: DMatrix<f64>,
}

impl HermitianMatrix {
    pub fn size(&self) -> usize {
        self.re.nrows()
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        self.re.zip_map(&self.im, Complex64::new)
    }

    pub fn doubled(&self) -> SymMatrix {
        let k = self.size();
        let mut m = DMatrix::zeros(2 * k, 2 * k);
        m.view_mut((0, 0), (k, k)).copy_from(&self.re);
        m.view_mut((k, k), (k, k)).copy_from(&self.re);
        m.view_mut((k, 0), (k, k)).copy_from(&self.im);
        m.view_mut((0, k), (k, k)).copy_from(&(-&self.im));
        SymMatrix::from_lower(m).expect("square")
    }

    /// Eigenvalues, descending, each Hermitian eigenvalue once.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(sym_eig(&self.doubled())?.values.iter().step_by(2).copied().collect())
    }

    /// Sign classification; ranks refer to the Hermitian matrix.
    pub fn definiteness(&self, tol: f64) -> Result<Definiteness> {
        let spectrum = sym_eig(&self.doubled())?;
        Ok(match classify(&spectrum, tol) {
            Definiteness::Psd { rank } => Definiteness::Psd { rank: rank / 2 },
            Definiteness::Nsd { rank } => Definiteness::Nsd { rank: rank / 2 },
            Definiteness::Indefinite { positive, negative, rank } => Definiteness::Indefinite {
                positive,
                negative,
                rank: rank / 2,
            },
            Definiteness::Zero => Definiteness::Zero,
        })
    }

    pub fn determinant(&self) -> f64 {
        self.to_complex().determinant().re
    }
}

fn check_len(p: &HermitianPencil, x: &[f64]) -> Result<()> {
    if x.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `sum x_j A_j`, without the identity.
pub fn linear_part(p: &HermitianPencil, x: &[f64]) -> Result<HermitianMatrix> {
    check_len(p, x)?;
    let k = p.size();
    let mut re = DMatrix::zeros(k, k);
    let mut im = DMatrix::zeros(k, k);
    for (j, &xj) in x.iter().enumerate() {
        re += p.re(j) * xj;
        im += p.im(j) * xj;
    }
    Ok(HermitianMatrix { re, im })
}

/// `I + sum x_j A_j`.
pub fn pencil_eval(p: &HermitianPencil, x: &[f64]) -> Result<HermitianMatrix> {
    let mut m = linear_part(p, x)?;
    for i in 0..p.size() {
        m.re[(i, i)] += 1.0;
    }
    Ok(m)
}

/// A monomial of degree at most 2; indices are 0-based, `Quadratic(j, k)`
/// has `j <= k`. Ordered by degree, then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Constant,
    Linear(usize),
    Quadratic(usize, usize),
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Monomial::Constant => write!(f, "1"),
            Monomial::Linear(j) => write!(f, "x{}", j + 1),
            Monomial::Quadratic(j, k) if j == k => write!(f, "x{}^2", j + 1),
            Monomial::Quadratic(j, k) => write!(f, "x{}*x{}", j + 1, k + 1),
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub coeff_residuals: BTreeMap<Monomial, f64>,
    pub max_sample_residual: f64,
    /// Largest `|f(x)|` over the sample points.
    pub sample_scale: f64,
    /// First monomial (in degree order) whose residual exceeds the tolerance.
    pub failing_monomial: Option<Monomial>,
}

/// Checks `f(x) = det(I + sum x_j A_j)` with a fixed sampling seed.
pub fn verify_determinant(
    f: &QuadraticPolynomial,
    p: &HermitianPencil,
    tol: f64,
    samples: usize,
) -> Result<VerifyReport> {
    verify_determinant_seeded(f, p, tol, samples, DEFAULT_SEED)
}

/// Coefficients up to degree 2 are compared exactly through trace
/// identities:
///
/// * `[x_j] det = tr A_j`
/// * `[x_j x_k] det = tr A_j tr A_k - tr(A_j A_k)` for `j < k`
/// * `[x_j^2] det = (tr(A_j)^2 - tr(A_j^2)) / 2`
///
/// Higher-degree terms (possible only for size > 2) are ruled out
/// probabilistically by comparing both sides at `samples` points drawn
/// uniformly from `[-1, 1]^n`.
pub fn verify_determinant_seeded(
    f: &QuadraticPolynomial,
    p: &HermitianPencil,
    tol: f64,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let n = f.n();
    if p.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.n(),
        });
    }
    let traces: Vec<f64> = (0..n).map(|j| p.re(j).trace()).collect();
    // tr(A_j A_k) for Hermitian A_j, A_k
    let tr_prod = |j: usize, k: usize| -> f64 {
        p.re(j).dot(p.re(k)) + p.im(j).dot(p.im(k))
    };

    let mut coeff_residuals = BTreeMap::new();
    coeff_residuals.insert(Monomial::Constant, (f.c() - 1.0).abs());
    for (j, (tr, bj)) in traces.iter().zip(f.b().iter()).enumerate() {
        coeff_residuals.insert(Monomial::Linear(j), (tr - bj).abs());
    }
    for j in 0..n {
        let sq = (traces[j] * traces[j] - tr_prod(j, j)) / 2.0;
        coeff_residuals.insert(Monomial::Quadratic(j, j), (sq - f.a()[(j, j)]).abs());
        for k in (j + 1)..n {
            let cross = traces[j] * traces[k] - tr_prod(j, k);
            coeff_residuals.insert(Monomial::Quadratic(j, k), (cross - 2.0 * f.a()[(j, k)]).abs());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_sample_residual: f64 = 0.0;
    let mut sample_scale: f64 = 0.0;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let fx = f.evaluate(&x)?;
        let det = pencil_eval(p, &x)?.determinant();
        max_sample_residual = max_sample_residual.max((det - fx).abs());
        sample_scale = sample_scale.max(fx.abs());
    }

    let failing_monomial = coeff_residuals
        .iter()
        .find(|(_, &r)| r.is_nan() || r > tol)
        .map(|(&m, _)| m);
    let ok = failing_monomial.is_none() && max_sample_residual <= tol * (1.0 + sample_scale);
    Ok(VerifyReport {
        ok,
        coeff_residuals,
        max_sample_residual,
        sample_scale,
        failing_monomial,
    })
}

/// Whether `I + sum x_j A_j` is positive semidefinite.
pub fn spectrahedron_contains(p: &HermitianPencil, x: &[f64], tol: f64) -> Result<bool> {
    Ok(pencil_eval(p, x)?.definiteness(tol)?.is_psd())
}

/// A direction `v` along which the linear part `L(v)` is PSD with rank
/// equal to the degree, so the spectrahedron contains the ray through `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeWitness {
    pub direction: DVector<f64>,
    pub pencil_value: HermitianMatrix,
    pub rank: usize,
    pub degree: usize,
}

/// Returns the cone witness built from an eigenvector of a positive
/// eigenvalue of `A`, or `None` when `A` is NSD (no full-dimensional cone
/// exists then).
pub fn cone_check(f: &QuadraticPolynomial, p: &HermitianPencil, tol: f64) -> Result<Option<ConeWitness>> {
    if p.n() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: p.n(),
        });
    }
    let spectrum: Spectrum = sym_eig(f.a())?;
    if classify(&spectrum, tol).is_nsd() {
        return Ok(None);
    }
    let mut v = spectrum.vectors.column(0).into_owned();
    if f.b().dot(&v) < 0.0 {
        v.neg_mut();
    }
    let value = linear_part(p, v.as_slice())?;
    let degree = 2;
    match value.definiteness(tol)? {
        Definiteness::Psd { rank } if rank == degree => Ok(Some(ConeWitness {
            direction: v,
            pencil_value: value,
            rank,
            degree,
        })),
        other => Err(Error::WitnessCheckFailed(format!(
            "L(v) classified as {other:?}, expected PSD of rank {degree}"
        ))),
    }
}

/// Nonzero `mu = -1/t` over the real roots `t` of `alpha t^2 + beta t + gamma`,
/// or `None` if the roots are complex. Uses the cancellation-free form
/// `t1 = q/alpha`, `t2 = gamma/q` with `q = -(beta + sign(beta) sqrt(disc))/2`.
fn reciprocal_roots(alpha: f64, beta: f64, gamma: f64, tol: f64) -> Option<Vec<f64>> {
    let mut disc = beta * beta - 4.0 * alpha * gamma;
    let disc_scale = beta * beta + (4.0 * alpha * gamma).abs();
    if disc < 0.0 {
        if disc >= -tol * disc_scale {
            disc = 0.0;
        } else {
            return None;
        }
    }
    let sign = if beta < 0.0 { -1.0 } else { 1.0 };
    let q = -(beta + sign * disc.sqrt()) / 2.0;
    if q == 0.0 {
        // beta = 0 and alpha = 0: constant along this line
        return Some(Vec::new());
    }
    // -1/t1 = -alpha/q, -1/t2 = -q/gamma
    Some(vec![-alpha / q, -q / gamma])
}

/// Checks that the nonzero eigenvalues of `L(x)` are `-1/t` over the real
/// roots `t` of `f(t x)`, with multiplicity.
pub fn root_eigenvalue_check(
    f: &QuadraticPolynomial,
    p: &HermitianPencil,
    x: &[f64],
    tol: f64,
) -> Result<bool> {
    check_len(p, x)?;
    let (alpha, beta, gamma) = f.restrict_to_line(x)?;
    if gamma == 0.0 {
        return Err(Error::ZeroConstantTerm);
    }
    let eig = linear_part(p, x)?.eigenvalues()?;
    let scale = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tau = tol * (1.0 + scale);
    let mut from_eig: Vec<f64> = eig.into_iter().filter(|v| v.abs() > tau).collect();
    let Some(mu) = reciprocal_roots(alpha, beta, gamma, tol) else {
        return Ok(false);
    };
    let mut from_roots: Vec<f64> = mu.into_iter().filter(|v| v.abs() > tau).collect();
    if from_eig.len() != from_roots.len() {
        return Ok(false);
    }
    from_eig.sort_by(f64::total_cmp);
    from_roots.sort_by(f64::total_cmp);
    Ok(from_eig
        .iter()
        .zip(&from_roots)
        .all(|(a, b)| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))))
}
