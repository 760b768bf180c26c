use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hermitian coefficient matrices `A_1..A_n` of the monic pencil
/// `I + x_1 A_1 + ... + x_n A_n`, stored as `A_j = re_j + i im_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianPencil {
    size: usize,
    re: Vec<DMatrix<f64>>,
    im: Vec<DMatrix<f64>>,
}

const STRUCTURE_TOL: f64 = 1e-12;

impl HermitianPencil {
    /// Validates shapes, symmetry of `re` and antisymmetry of `im`, then
    /// mirrors the lower triangles so both hold exactly.
    pub fn new(re: Vec<DMatrix<f64>>, im: Vec<DMatrix<f64>>) -> Result<Self> {
        if re.is_empty() {
            return Err(Error::InvalidMatrix("pencil needs at least one coefficient matrix".into()));
        }
        if im.len() != re.len() {
            return Err(Error::DimensionMismatch {
                expected: re.len(),
                found: im.len(),
            });
        }
        let size = re[0].nrows();
        if size == 0 {
            return Err(Error::InvalidMatrix("pencil size must be at least 1".into()));
        }
        let mut re = re;
        let mut im = im;
        for (j, (r, i)) in re.iter_mut().zip(im.iter_mut()).enumerate() {
            for m in [&*r, &*i] {
                if m.nrows() != size || m.ncols() != size {
                    return Err(Error::InvalidMatrix(format!(
                        "coefficient {} is {}x{}, expected {size}x{size}",
                        j + 1,
                        m.nrows(),
                        m.ncols()
                    )));
                }
            }
            let scale = 1.0 + r.amax().max(i.amax());
            if (&*r - r.transpose()).amax() > STRUCTURE_TOL * scale {
                return Err(Error::InvalidMatrix(format!(
                    "real part of coefficient {} is not symmetric",
                    j + 1
                )));
            }
            if (&*i + i.transpose()).amax() > STRUCTURE_TOL * scale {
                return Err(Error::InvalidMatrix(format!(
                    "imaginary part of coefficient {} is not antisymmetric",
                    j + 1
                )));
            }
            for a in 0..size {
                i[(a, a)] = 0.0;
                for b in 0..a {
                    r[(b, a)] = r[(a, b)];
                    i[(b, a)] = -i[(a, b)];
                }
            }
            // no negative zeros in the output
            r.apply(|v| *v += 0.0);
            i.apply(|v| *v += 0.0);
        }
        Ok(HermitianPencil { size, re, im })
    }

    /// A pencil with real symmetric coefficients.
    pub fn real(re: Vec<DMatrix<f64>>) -> Result<Self> {
        let im = re.iter().map(|m| DMatrix::zeros(m.nrows(), m.ncols())).collect();
        Self::new(re, im)
    }

    pub fn from_complex(mats: &[DMatrix<Complex64>]) -> Result<Self> {
        let re = mats.iter().map(|m| m.map(|z| z.re)).collect();
        let im = mats.iter().map(|m| m.map(|z| z.im)).collect();
        Self::new(re, im)
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.re.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn re(&self, j: usize) -> &DMatrix<f64> {
        &self.re[j]
    }

    pub fn im(&self, j: usize) -> &DMatrix<f64> {
        &self.im[j]
    }

    pub fn complex(&self, j: usize) -> DMatrix<Complex64> {
        self.re[j].zip_map(&self.im[j], Complex64::new)
    }

    pub fn is_symmetric(&self) -> bool {
        self.im.iter().all(|m| m.amax() <= STRUCTURE_TOL)
    }

    pub fn max_abs(&self) -> f64 {
        self.re.iter().chain(&self.im).map(|m| m.amax()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> PencilJson {
        let rows = |m: &DMatrix<f64>| -> Vec<Vec<f64>> {
            m.row_iter().map(|r| r.iter().copied().collect()).collect()
        };
        PencilJson {
            n: self.n(),
            size: self.size,
            matrices: self
                .re
                .iter()
                .zip(&self.im)
                .map(|(r, i)| MatrixJson {
                    re: rows(r),
                    im: if i.iter().all(|&v| v == 0.0) {
                        None
                    } else {
                        Some(rows(i))
                    },
                })
                .collect(),
        }
    }
}

/// `{"n": .., "size": .., "matrices": [{"re": [[..]], "im": [[..]]}, ..]}`;
/// `im` is omitted when it is exactly zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PencilJson {
    pub n: usize,
    pub size: usize,
    pub matrices: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

fn square(rows: &[Vec<f64>], size: usize) -> Result<DMatrix<f64>> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::InvalidMatrix(format!("expected a {size}x{size} matrix")));
    }
    Ok(DMatrix::from_fn(size, size, |i, j| rows[i][j]))
}

impl TryFrom<PencilJson> for HermitianPencil {
    type Error = Error;

    fn try_from(j: PencilJson) -> Result<Self> {
        if j.matrices.len() != j.n {
            return Err(Error::DimensionMismatch {
                expected: j.n,
                found: j.matrices.len(),
            });
        }
        let mut re = Vec::with_capacity(j.n);
        let mut im = Vec::with_capacity(j.n);
        for m in &j.matrices {
            re.push(square(&m.re, j.size)?);
            im.push(match &m.im {
                Some(rows) => square(rows, j.size)?,
                None => DMatrix::zeros(j.size, j.size),
            });
        }
        HermitianPencil::new(re, im)
    }
}
