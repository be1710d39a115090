//! Small dense complex matrices for the constant-part (classical) side:
//! determinants, inverses, Hermitian eigenvalues and principal square roots.
//!
//! Everything here targets the tiny sizes of the interpolation pipeline, so
//! the implementations favor clarity and determinism over scalability:
//! LU with partial pivoting, Gauss-Jordan inversion, and a cyclic Jacobi
//! eigensolver for Hermitian matrices.

use num_complex::Complex64;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.into_iter().flatten().collect();
        CMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation |a_ij - conj(a_ji)| from Hermitian symmetry.
    pub fn hermitian_deviation(&self) -> f64 {
        assert_eq!(
            self.rows, self.cols,
            "hermitian_deviation needs a square matrix"
        );
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let mut pivot = k;
            for i in k + 1..n {
                if a.get(i, k).norm() > a.get(pivot, k).norm() {
                    pivot = i;
                }
            }
            if a.get(pivot, k).norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != k {
                for j in 0..n {
                    let tmp = a.get(k, j);
                    a.set(k, j, a.get(pivot, j));
                    a.set(pivot, j, tmp);
                }
                det = -det;
            }
            let akk = a.get(k, k);
            det *= akk;
            for i in k + 1..n {
                let factor = a.get(i, k) / akk;
                for j in k..n {
                    let v = a.get(i, j) - factor * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix, Error> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        for k in 0..n {
            let mut pivot = k;
            for i in k + 1..n {
                if a.get(i, k).norm() > a.get(pivot, k).norm() {
                    pivot = i;
                }
            }
            if a.get(pivot, k).norm() < 1e-300 {
                return Err(Error::SingularMatrix);
            }
            if pivot != k {
                for j in 0..n {
                    let tmp = a.get(k, j);
                    a.set(k, j, a.get(pivot, j));
                    a.set(pivot, j, tmp);
                    let tmp = inv.get(k, j);
                    inv.set(k, j, inv.get(pivot, j));
                    inv.set(pivot, j, tmp);
                }
            }
            let akk = a.get(k, k);
            for j in 0..n {
                a.set(k, j, a.get(k, j) / akk);
                inv.set(k, j, inv.get(k, j) / akk);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a.get(i, k);
                if factor.norm() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j) - factor * a.get(k, j);
                    a.set(i, j, v);
                    let v = inv.get(i, j) - factor * inv.get(k, j);
                    inv.set(i, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Eigenvalues (ascending) and a unitary matrix of eigenvectors (as
    /// columns) of a Hermitian matrix, by cyclic Jacobi rotations with a
    /// complex phase. The input is symmetrized first, so tiny departures
    /// from exact Hermitian symmetry are tolerated.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, CMatrix) {
        assert_eq!(
            self.rows, self.cols,
            "eigendecomposition needs a square matrix"
        );
        let n = self.rows;
        let mut a = CMatrix::from_fn(n, n, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5);
        let mut v = CMatrix::identity(n);
        let scale = a.max_abs().max(1e-300);
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off = off.max(a.get(i, j).norm());
                    }
                }
            }
            if off <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let g = a.get(p, q);
                    let absg = g.norm();
                    if absg <= 1e-18 * scale {
                        continue;
                    }
                    let phase = g / absg;
                    let alpha = a.get(p, p).re;
                    let beta = a.get(q, q).re;
                    let tau = (beta - alpha) / (2.0 * absg);
                    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                    // smaller root of t^2 - 2 tau t - 1 = 0, written without
                    // the cancellation that stalls convergence for large tau
                    let t = -sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // unitary V with V_pp = c, V_pq = -s*phase,
                    // V_qp = s*conj(phase), V_qq = c; apply A <- V* A V
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, akp * c + akq * s * phase.conj());
                        a.set(k, q, akp * (-s) * phase + akq * c);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, apk * c + aqk * s * phase);
                        a.set(q, k, apk * (-s) * phase.conj() + aqk * c);
                    }
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, vkp * c + vkq * s * phase.conj());
                        v.set(k, q, vkp * (-s) * phase + vkq * c);
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
        let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
        (values, vectors)
    }

    /// Eigenvalues only, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.hermitian_eigen().0
    }

    /// The principal (Hermitian positive) square root. Fails if any
    /// eigenvalue is non-positive.
    pub fn sqrt_hermitian_pd(&self) -> Result<CMatrix, Error> {
        let (values, vectors) = self.hermitian_eigen();
        if values[0] <= 0.0 {
            return Err(Error::NotPositiveClassical {
                min_eigenvalue: values[0],
            });
        }
        let n = self.rows;
        let roots: Vec<f64> = values.iter().map(|v| v.sqrt()).collect();
        Ok(CMatrix::from_fn(n, n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += vectors.get(i, k) * roots[k] * vectors.get(j, k).conj();
            }
            acc
        }))
    }
}
