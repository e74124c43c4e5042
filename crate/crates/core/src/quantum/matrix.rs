use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A column state vector.
pub type Ket = DVector<Complex64>;

/// Dense complex matrix backed by `nalgebra`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(d: usize) -> Self {
        Self(DMatrix::identity(d, d))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    pub fn from_inner(m: DMatrix<Complex64>) -> Self {
        Self(m)
    }

    /// Builds a matrix from row-major real and imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let rows = re.len();
        if rows == 0 {
            return Err(Error::Parse("matrix needs at least one row".into()));
        }
        let cols = re[0].len();
        if cols == 0 || im.len() != rows {
            return Err(Error::Parse("real and imaginary parts differ in shape".into()));
        }
        for (r, i) in re.iter().zip(im) {
            if r.len() != cols || i.len() != cols {
                return Err(Error::Parse("ragged matrix rows".into()));
            }
        }
        let m = DMatrix::from_fn(rows, cols, |i, j| Complex64::new(re[i][j], im[i][j]));
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("matrix entries must be finite".into()));
        }
        Ok(Self(m))
    }

    /// Row-major real and imaginary parts.
    pub fn to_parts(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let rows = (0..self.rows()).map(|i| (0..self.cols()).map(|j| self.0[(i, j)]).collect::<Vec<_>>());
        let (mut re, mut im) = (Vec::new(), Vec::new());
        for row in rows {
            re.push(row.iter().map(|z| z.re).collect());
            im.push(row.iter().map(|z| z.im).collect());
        }
        (re, im)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(ket: &Ket) -> Self {
        Self(ket * ket.adjoint())
    }

    pub fn inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                acc += self.0[(i, j)] * other.0[(j, i)];
            }
        }
        acc
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0))
    }

    /// Largest entry modulus of `A - B`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Ascending eigenvalues of the Hermitian part.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = self.hermitian_part();
        let mut ev: Vec<f64> = h.0.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.hermitian_eigenvalues()[0]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Normalizes a ket; errors on the zero vector.
pub fn normalized(ket: Ket) -> Result<Ket> {
    let norm = ket.norm();
    if !(norm > 0.0) {
        return Err(Error::InvalidState("cannot normalize the zero vector".into()));
    }
    Ok(ket.unscale(norm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_product_matches_product_trace() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64 + 0.5, j as f64 - 1.0));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c((i * j) as f64, 0.25 * i as f64));
        let direct = (&a * &b).trace();
        assert!((a.trace_product(&b) - direct).norm() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_pauli_y() {
        let y = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(0.0, -1.0),
            (1, 0) => c(0.0, 1.0),
            _ => c(0.0, 0.0),
        });
        let ev = y.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
        assert!(y.hermitian_deviation() < 1e-15);
    }

    #[test]
    fn parts_roundtrip_and_shape_errors() {
        let re = vec![vec![1.0, 0.0], vec![0.0, 0.0]];
        let im = vec![vec![0.0, 0.5], vec![-0.5, 0.0]];
        let m = ComplexMatrix::from_parts(&re, &im).unwrap();
        assert_eq!(m.to_parts(), (re.clone(), im));
        assert!(ComplexMatrix::from_parts(&re, &[vec![0.0, 0.0]]).is_err());
        assert!(ComplexMatrix::from_parts(&[vec![1.0], vec![1.0, 2.0]], &[vec![0.0], vec![0.0, 0.0]]).is_err());
    }
}
