//! Unitary equivalence of size-2 representations.
//!
//! Each coefficient of a size-2 pencil splits as
//! `A_j = (b_j/2) I + k_j sigma_z + l_j sigma_x + m_j sigma_y`, where
//! `(k, l, m)` are the columns of a factor `R` with `R^T R = -S`. Two
//! factors of the same Gram matrix differ by a 3x3 orthogonal `O`, and the
//! pencils are unitarily equivalent exactly when `O` can be chosen with
//! determinant +1. Rotations lift to SU(2) through [`so3_from_su2`]; for a
//! full-rank factor a reflection cannot be avoided, which splits the
//! representations into two classes.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix3};
use num_complex::Complex64;
use serde::Serialize;

use crate::construct::{HermitianPencil, Size2Data};
use crate::error::{Error, Result};
use crate::linalg::{definiteness, psd_low_rank_factor, SymMatrix};
use crate::quadform::QuadraticPolynomial;
use crate::verify::verify_determinant;

/// Pauli matrices.
pub mod pauli {
    use nalgebra::Matrix2;
    use num_complex::Complex64;

    const O: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const I: Complex64 = Complex64::new(0.0, 1.0);

    pub fn sigma_z() -> Matrix2<Complex64> {
        Matrix2::new(ONE, O, O, -ONE)
    }

    pub fn sigma_x() -> Matrix2<Complex64> {
        Matrix2::new(O, ONE, ONE, O)
    }

    pub fn sigma_y() -> Matrix2<Complex64> {
        Matrix2::new(O, -I, I, O)
    }
}

/// `b` and the zero-padded 3-row factor `R` recovered from a size-2 pencil.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorData {
    pub b: DVector<f64>,
    /// Rows `alpha_1, alpha_2, alpha_3`; column `j` is `(k_j, l_j, m_j)`.
    pub r: DMatrix<f64>,
    pub effective_rank: usize,
}

/// An element `[[a + ib, -c + id], [c + id, a - ib]]` of SU(2).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Su2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Su2 {
    pub const IDENTITY: Su2 = Su2 { a: 1.0, b: 0.0, c: 0.0, d: 0.0 };

    pub fn matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(
            Complex64::new(self.a, self.b),
            Complex64::new(-self.c, self.d),
            Complex64::new(self.c, self.d),
            Complex64::new(self.a, -self.b),
        )
    }

    fn components(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Fixes the global sign: first component of non-negligible size positive.
    fn canonical(self) -> Su2 {
        let lead = self
            .components()
            .into_iter()
            .find(|v| v.abs() > 1e-12)
            .unwrap_or(1.0);
        if lead < 0.0 {
            Su2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquivalenceKind {
    Equivalent,
    NotEquivalent,
    DifferentPolynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceVerdict {
    pub kind: EquivalenceKind,
    /// `U` with `U^* A_j(p1) U = A_j(p2)` for every `j`.
    pub witness: Option<Su2>,
    /// Orthogonal `O` with `O R1 = R2`.
    pub connecting: Option<Matrix3<f64>>,
}

impl EquivalenceVerdict {
    fn different() -> Self {
        EquivalenceVerdict {
            kind: EquivalenceKind::DifferentPolynomial,
            witness: None,
            connecting: None,
        }
    }

    pub fn connecting_det(&self) -> Option<f64> {
        self.connecting.map(|o| o.determinant())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassLabel {
    /// Schur rank at most 2: a single equivalence class.
    Unique,
    Plus,
    Minus,
}

fn factor_rank(r: &DMatrix<f64>, tol: f64) -> Result<usize> {
    Ok(definiteness(&SymMatrix::from_lower(r * r.transpose())?, tol)?.rank())
}

pub fn recover_factor(d: &Size2Data, tol: f64) -> Result<FactorData> {
    let n = d.n();
    let mut r = DMatrix::zeros(3, n);
    r.set_row(0, &((&d.r - &d.s) / 2.0).transpose());
    r.set_row(1, &d.t.transpose());
    r.set_row(2, &d.u.transpose());
    let effective_rank = factor_rank(&r, tol)?;
    Ok(FactorData {
        b: &d.r + &d.s,
        r,
        effective_rank,
    })
}

fn gram_residual(r1: &DMatrix<f64>, r2: &DMatrix<f64>) -> (f64, f64) {
    let g1 = r1.transpose() * r1;
    let g2 = r2.transpose() * r2;
    ((&g1 - &g2).amax(), g1.amax().max(g2.amax()))
}

/// Finds an orthogonal `O` with `O R1 = R2` (both 3 x n).
///
/// The solution is the orthogonal Procrustes rotation from the SVD of
/// `R2 R1^T`. When `R1` has rank below 3 the choice on the complement of
/// its row space is free and is made so that `det O = +1`.
pub fn connecting_orthogonal(r1: &DMatrix<f64>, r2: &DMatrix<f64>, tol: f64) -> Result<Option<Matrix3<f64>>> {
    if r1.shape() != r2.shape() || r1.nrows() != 3 {
        return Err(Error::InvalidMatrix("factors must both be 3 x n".into()));
    }
    let (residual, scale) = gram_residual(r1, r2);
    if residual > tol * (1.0 + scale) {
        return Err(Error::GramMismatch { residual });
    }
    let m: Matrix3<f64> = (r2 * r1.transpose()).fixed_view::<3, 3>(0, 0).into_owned();
    let svd = m.svd(true, true);
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    let mut o = u * v_t;
    if o.determinant() < 0.0 && factor_rank(r1, tol)? < 3 {
        let weakest = svd.singular_values.imin();
        let mut flip = Matrix3::identity();
        flip[(weakest, weakest)] = -1.0;
        o = u * flip * v_t;
    }
    let mapped = DMatrix::from_fn(3, 3, |i, j| o[(i, j)]) * r1;
    // Gram agreement to tol only pins the factors down to about sqrt(tol).
    let bound = tol.sqrt() * (1.0 + r1.amax().max(r2.amax()));
    if (mapped - r2).amax() > bound {
        return Ok(None);
    }
    Ok(Some(o))
}

fn conjugation_holds(p1: &HermitianPencil, p2: &HermitianPencil, u: &Matrix2<Complex64>, tol: f64) -> bool {
    let scale = 1.0 + p1.max_abs().max(p2.max_abs());
    let u_adj = u.adjoint();
    (0..p1.n()).all(|j| {
        let a = p1.complex(j);
        let a = Matrix2::new(a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
        let b = p2.complex(j);
        let conj = u_adj * a * u;
        (0..2).all(|r| (0..2).all(|c| (conj[(r, c)] - b[(r, c)]).norm() <= tol.sqrt() * scale))
    })
}

pub fn are_equivalent(p1: &Size2Data, p2: &Size2Data, tol: f64) -> Result<EquivalenceVerdict> {
    if p1.n() != p2.n() {
        return Ok(EquivalenceVerdict::different());
    }
    let f1 = recover_factor(p1, tol)?;
    let f2 = recover_factor(p2, tol)?;
    let b_scale = 1.0 + f1.b.amax().max(f2.b.amax());
    if (&f1.b - &f2.b).amax() > tol * b_scale {
        return Ok(EquivalenceVerdict::different());
    }
    let o = match connecting_orthogonal(&f1.r, &f2.r, tol) {
        Ok(Some(o)) => o,
        Ok(None) | Err(Error::GramMismatch { .. }) => return Ok(EquivalenceVerdict::different()),
        Err(e) => return Err(e),
    };
    if f1.effective_rank == 3 && o.determinant() < 0.0 {
        return Ok(EquivalenceVerdict {
            kind: EquivalenceKind::NotEquivalent,
            witness: None,
            connecting: Some(o),
        });
    }
    let u = su2_from_so3(&o, tol)?;
    if !conjugation_holds(&p1.pencil(), &p2.pencil(), &u.matrix(), tol) {
        return Err(Error::NumericalFailure(
            "extracted unitary does not conjugate the pencils".into(),
        ));
    }
    Ok(EquivalenceVerdict {
        kind: EquivalenceKind::Equivalent,
        witness: Some(u),
        connecting: Some(o),
    })
}

/// Labels the equivalence class of `p` relative to the factor this crate
/// builds for `f`. Labels are stable within a build; only agreement and
/// disagreement between labels carries meaning.
pub fn class_label(p: &Size2Data, f: &QuadraticPolynomial, tol: f64) -> Result<ClassLabel> {
    if p.n() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: p.n(),
        });
    }
    if !verify_determinant(f, &p.pencil(), tol.max(1e-9), 1)?.ok {
        return Err(Error::VerificationMismatch);
    }
    let data = recover_factor(p, tol)?;
    if data.effective_rank <= 2 {
        return Ok(ClassLabel::Unique);
    }
    let schur = f.matrix_representation().schur_complement_11()?.s;
    let canonical = psd_low_rank_factor(&schur.scaled(-1.0), tol)?;
    if canonical.rank() > 3 {
        return Err(Error::VerificationMismatch);
    }
    let o = connecting_orthogonal(&canonical.padded(3), &data.r, tol)?
        .ok_or_else(|| Error::NumericalFailure("no orthogonal map between factors".into()))?;
    Ok(if o.determinant() > 0.0 {
        ClassLabel::Plus
    } else {
        ClassLabel::Minus
    })
}

const UNIT_TOL: f64 = 1e-9;

/// The rotation of Pauli coordinates induced by `U`: if
/// `H = k sigma_z + l sigma_x + m sigma_y` then
/// `U^* H U = k1 sigma_z + l1 sigma_x + m1 sigma_y` with
/// `(k1, l1, m1) = O (k, l, m)`.
pub fn so3_from_su2(q: &Su2) -> Result<Matrix3<f64>> {
    let Su2 { a, b, c, d } = *q;
    let norm_sq = a * a + b * b + c * c + d * d;
    if (norm_sq - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitNorm { norm_sq });
    }
    #[rustfmt::skip]
    let o = Matrix3::new(
        a * a + b * b - c * c - d * d, 2.0 * a * c + 2.0 * b * d,     2.0 * a * d - 2.0 * b * c,
        2.0 * b * d - 2.0 * a * c,     a * a - b * b - c * c + d * d, -2.0 * a * b - 2.0 * c * d,
        -2.0 * a * d - 2.0 * b * c,    2.0 * a * b - 2.0 * c * d,     a * a - b * b + c * c - d * d,
    );
    Ok(o)
}

/// Inverse of [`so3_from_su2`], up to the global sign of `(a, b, c, d)`.
pub fn su2_from_so3(o: &Matrix3<f64>, tol: f64) -> Result<Su2> {
    let residual = (o.transpose() * o - Matrix3::identity()).amax();
    if residual > tol.sqrt() {
        return Err(Error::NotOrthogonal { residual });
    }
    let det = o.determinant();
    if det < 0.0 {
        return Err(Error::NotRotation { det });
    }
    // squares of a, b, c, d read off the diagonal
    let sq = [
        (1.0 + o[(0, 0)] + o[(1, 1)] + o[(2, 2)]) / 4.0,
        (1.0 + o[(0, 0)] - o[(1, 1)] - o[(2, 2)]) / 4.0,
        (1.0 - o[(0, 0)] - o[(1, 1)] + o[(2, 2)]) / 4.0,
        (1.0 - o[(0, 0)] + o[(1, 1)] - o[(2, 2)]) / 4.0,
    ];
    let big = (0..4).max_by(|&i, &j| sq[i].total_cmp(&sq[j])).expect("nonempty");
    let w = sq[big].max(0.0).sqrt();
    let k = 4.0 * w;
    // 4ab, 4ac, 4ad, 4bc, 4bd, 4cd from the off-diagonal entries
    let ab = o[(2, 1)] - o[(1, 2)];
    let ac = o[(0, 1)] - o[(1, 0)];
    let ad = o[(0, 2)] - o[(2, 0)];
    let bc = -(o[(0, 2)] + o[(2, 0)]);
    let bd = o[(0, 1)] + o[(1, 0)];
    let cd = -(o[(1, 2)] + o[(2, 1)]);
    let (a, b, c, d) = match big {
        0 => (w, ab / k, ac / k, ad / k),
        1 => (ab / k, w, bc / k, bd / k),
        2 => (ac / k, bc / k, w, cd / k),
        _ => (ad / k, bd / k, cd / k, w),
    };
    let norm = (a * a + b * b + c * c + d * d).sqrt();
    Ok(Su2 { a: a / norm, b: b / norm, c: c / norm, d: d / norm }.canonical())
}

/// For an orthogonal `O` acting on `(k, l)`, returns an orthogonal `V`
/// with `V^T (k sigma_z + l sigma_x) V = k1 sigma_z + l1 sigma_x`,
/// `(k1, l1) = O (k, l)`.
///
/// A rotation `[[cos t, sin t], [-sin t, cos t]]` gives the half-angle
/// rotation `[[cos t/2, -sin t/2], [sin t/2, cos t/2]]`; a reflection
/// `[[-cos t, -sin t], [-sin t, cos t]]` gives
/// `[[-sin t/2, cos t/2], [cos t/2, sin t/2]]`.
pub fn orthogonal2_conjugator(o: &Matrix2<f64>) -> Result<Matrix2<f64>> {
    let residual = (o.transpose() * o - Matrix2::identity()).amax();
    if residual > 1e-9 {
        return Err(Error::NotOrthogonal { residual });
    }
    if o.determinant() > 0.0 {
        let theta = o[(0, 1)].atan2(o[(0, 0)]);
        let (s, c) = (theta / 2.0).sin_cos();
        Ok(Matrix2::new(c, -s, s, c))
    } else {
        let theta = (-o[(0, 1)]).atan2(-o[(0, 0)]);
        let (s, c) = (theta / 2.0).sin_cos();
        Ok(Matrix2::new(-s, c, c, s))
    }
}
