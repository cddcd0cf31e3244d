//! Float symmetric matrices and the support abstraction shared by the
//! pattern, orthogonality and combinatorial checks.

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Anything with a square zero/nonzero pattern.
pub trait Support {
    fn dim(&self) -> usize;
    fn is_nonzero(&self, i: usize, j: usize) -> bool;
}

impl Support for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }
    fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self[(i, j)] != 0.0
    }
}

impl Support for ExactMatrix {
    fn dim(&self) -> usize {
        ExactMatrix::dim(self)
    }
    fn is_nonzero(&self, i: usize, j: usize) -> bool {
        !self.get(i, j).is_zero()
    }
}

/// Boolean pattern, e.g. `A(G) + I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    n: usize,
    cells: Vec<bool>,
}

impl Pattern {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Pattern {
            n,
            cells: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }
}

impl Support for Pattern {
    fn dim(&self) -> usize {
        self.n
    }
    fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.n + j]
    }
}

/// Symmetric to the bit: construction mirrors the upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    m: DMatrix<f64>,
}

impl FloatMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::invalid("matrix must be square"));
        }
        let n = m.nrows();
        for i in 0..n {
            for j in 0..i {
                if m[(i, j)].to_bits() != m[(j, i)].to_bits() {
                    return Err(Error::invalid(format!("asymmetric entry ({i},{j})")));
                }
            }
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("non-finite entry"));
        }
        Ok(FloatMatrix { m })
    }

    /// Symmetrise by copying the upper triangle onto the lower one.
    pub fn from_upper(mut m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::invalid("matrix must be square"));
        }
        for i in 0..m.nrows() {
            for j in 0..i {
                m[(i, j)] = m[(j, i)];
            }
        }
        FloatMatrix::new(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must all have length n"));
        }
        FloatMatrix::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn inner(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.m[(i, j)]).collect())
            .collect()
    }

    /// Copy with every entry of magnitude `<= threshold` set to zero.
    pub fn thresholded(&self, threshold: f64) -> FloatMatrix {
        FloatMatrix {
            m: self.m.map(|x| if x.abs() <= threshold { 0.0 } else { x }),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> FloatMatrix {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(perm[i], perm[j])] = self.m[(i, j)];
            }
        }
        FloatMatrix { m: out }
    }
}

impl Support for FloatMatrix {
    fn dim(&self) -> usize {
        FloatMatrix::dim(self)
    }
    fn is_nonzero(&self, i: usize, j: usize) -> bool {
        self.m[(i, j)] != 0.0
    }
}

/// Either representation, as carried by certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertMatrix {
    /// Entries as `[a, b]` rational string pairs meaning `a + b√2`.
    Exact {
        rows: Vec<Vec<crate::exact::QSqrt2>>,
    },
    /// Entries as decimal floats.
    Float { rows: Vec<Vec<f64>> },
}

impl CertMatrix {
    pub fn from_exact(m: &ExactMatrix) -> Self {
        let n = m.dim();
        CertMatrix::Exact {
            rows: (0..n)
                .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
                .collect(),
        }
    }

    pub fn from_float(m: &FloatMatrix) -> Self {
        CertMatrix::Float { rows: m.rows() }
    }

    pub fn dim(&self) -> usize {
        match self {
            CertMatrix::Exact { rows } => rows.len(),
            CertMatrix::Float { rows } => rows.len(),
        }
    }

    pub fn exact(&self) -> Result<Option<ExactMatrix>> {
        match self {
            CertMatrix::Exact { rows } => ExactMatrix::symmetric_from_rows(rows.clone()).map(Some),
            CertMatrix::Float { .. } => Ok(None),
        }
    }

    pub fn float(&self) -> Result<FloatMatrix> {
        match self {
            CertMatrix::Exact { .. } => {
                let e = self.exact()?.expect("exact variant");
                FloatMatrix::new(e.to_float())
            }
            CertMatrix::Float { rows } => FloatMatrix::from_rows(rows),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetry_to_the_bit() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.1 + 0.2, 0.3, 1.0]);
        assert!(FloatMatrix::new(m.clone()).is_err());
        let s = FloatMatrix::from_upper(m).unwrap();
        assert_eq!(s.inner()[(1, 0)], 0.1 + 0.2);
        assert!(FloatMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn threshold_and_permute() {
        let m = FloatMatrix::from_rows(&[vec![1.0, 1e-12], vec![1e-12, 2.0]]).unwrap();
        let t = m.thresholded(1e-9);
        assert!(!t.is_nonzero(0, 1));
        let p = m.permuted(&[1, 0]);
        assert_eq!(p.inner()[(0, 0)], 2.0);
    }
}
