//! Dense f64 matrices just big enough for this crate.
//!
//! Everything here operates on matrices of a few dozen rows at most
//! (element operators, Gram matrices of the factored families), so plain
//! partial-pivot LU, unblocked Cholesky and a cyclic Jacobi eigensolver
//! are entirely adequate.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let nr = rows.len();
        let nc = if nr == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(nr * nc);
        for r in rows {
            assert_eq!(r.len(), nc, "ragged rows");
            data.extend_from_slice(r);
        }
        Mat { rows: nr, cols: nc, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scaled(&self, c: f64) -> Mat {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= c;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v -= w;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &v| m.max(math::abs(v)))
    }

    /// Largest absolute difference to another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        self.sub(other).max_abs()
    }

    /// Spectral norm via the symmetric eigenproblem of A^T A.
    pub fn norm2(&self) -> f64 {
        let ata = self.transpose().matmul(self);
        let eigs = sym_eigenvalues(&ata);
        math::sqrt(eigs.iter().fold(0.0_f64, |m, &v| m.max(v)).max(0.0))
    }

    /// Smallest singular value, again through A^T A. Fine at these sizes;
    /// accuracy bottoms out near sqrt(machine eps) * norm which is far below
    /// every threshold used in the certificates.
    pub fn min_singular_value(&self) -> f64 {
        let ata = self.transpose().matmul(self);
        let eigs = sym_eigenvalues(&ata);
        math::sqrt(eigs.iter().fold(f64::INFINITY, |m, &v| m.min(v)).max(0.0))
    }

    /// Solve self * x = b by partial-pivot LU. self is consumed by copy.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let cols: Vec<Vec<f64>> = vec![b.to_vec()];
        let sol = self.solve_many(&cols)?;
        Ok(sol.into_iter().next().unwrap())
    }

    /// Solve for several right-hand sides at once (columns given as vectors).
    pub fn solve_many(&self, bs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs: Vec<Vec<f64>> = bs.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (mut pi, mut pv) = (k, math::abs(a[(k, k)]));
            for i in k + 1..n {
                let v = math::abs(a[(i, k)]);
                if v > pv {
                    pi = i;
                    pv = v;
                }
            }
            if pv == 0.0 {
                return Err(Error::SingularSystem {
                    context: String::from("dense LU"),
                });
            }
            if pi != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(pi, j)];
                    a[(pi, j)] = t;
                }
                perm.swap(k, pi);
                for r in &mut rhs {
                    r.swap(k, pi);
                }
            }
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                a[(i, k)] = 0.0;
                if f == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    a[(i, j)] -= f * a[(k, j)];
                }
                for r in &mut rhs {
                    r[i] -= f * r[k];
                }
            }
        }
        for r in &mut rhs {
            for i in (0..n).rev() {
                let mut acc = r[i];
                for j in i + 1..n {
                    acc -= a[(i, j)] * r[j];
                }
                r[i] = acc / a[(i, i)];
            }
        }
        Ok(rhs)
    }

    pub fn inverse(&self) -> Result<Mat> {
        let n = self.rows;
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let inv_cols = self.solve_many(&cols)?;
        Ok(Mat::from_fn(n, n, |i, j| inv_cols[j][i]))
    }

    /// Lower Cholesky factor; fails with the pivot index if not SPD.
    pub fn cholesky(&self) -> Result<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut l = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self[(i, j)];
                for k in 0..j {
                    sum -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(Error::NotPositiveDefinite { pivot: i });
                    }
                    l[(i, j)] = math::sqrt(sum);
                } else {
                    l[(i, j)] = sum / l[(j, j)];
                }
            }
        }
        Ok(l)
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
/// Quadratic convergence; 30 sweeps is far beyond what 40x40 needs.
pub fn sym_eigenvalues(a: &Mat) -> Vec<f64> {
    assert_eq!(a.nrows(), a.ncols());
    let n = a.nrows();
    let mut m = a.clone();
    // symmetrize against roundoff from the caller's products
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    for _sweep in 0..30 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[(i, j)] * m[(i, j)];
            }
        }
        if off < 1e-300 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if math::abs(apq) < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + math::hypot(theta, 1.0))
                } else {
                    -1.0 / (-theta + math::hypot(theta, 1.0))
                };
                let c = 1.0 / math::hypot(t, 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = c * akp - s * akq;
                    m[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = c * apk - s * aqk;
                    m[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| m[(i, i)]).collect()
}
