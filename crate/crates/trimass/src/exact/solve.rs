//! Dense exact linear algebra over BigRational.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use super::Rat;
use crate::{Error, Result};

pub type RatMat = Vec<Vec<Rat>>;

pub fn rat_zeros(rows: usize, cols: usize) -> RatMat {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn rat_identity(n: usize) -> RatMat {
    let mut m = rat_zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = super::rat_int(1);
    }
    m
}

pub fn rat_transpose(a: &RatMat) -> RatMat {
    let (r, c) = (a.len(), a[0].len());
    let mut out = rat_zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            out[j][i] = a[i][j].clone();
        }
    }
    out
}

pub fn rat_mat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    assert_eq!(a[0].len(), k);
    let mut out = rat_zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[l][j].is_zero() {
                    continue;
                }
                let prod = &a[i][l] * &b[l][j];
                out[i][j] += prod;
            }
        }
    }
    out
}

pub fn rat_mat_vec(a: &RatMat, x: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            let mut acc = Rat::zero();
            for (v, xi) in row.iter().zip(x) {
                if !v.is_zero() && !xi.is_zero() {
                    acc += v * xi;
                }
            }
            acc
        })
        .collect()
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn rat_matrix_max_abs_f64(a: &RatMat) -> f64 {
    a.iter()
        .flat_map(|row| row.iter())
        .map(|v| crate::math::abs(rat_to_f64(v)))
        .fold(0.0, f64::max)
}

/// Exact Gaussian elimination with implicit full pivot by magnitude of the
/// candidate. Any nonzero pivot is mathematically fine; preferring larger
/// ones keeps intermediate numerators small.
pub fn rat_solve(a: &RatMat, rhs: &[Rat], context: &str) -> Result<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "square matrix required");
    assert_eq!(rhs.len(), n);
    let mut m = a.to_vec();
    let mut b = rhs.to_vec();
    for k in 0..n {
        let pivot_row = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .max_by(|&x, &y| {
                let ax = m[x][k].abs();
                let ay = m[y][k].abs();
                ax.partial_cmp(&ay).unwrap()
            });
        let Some(pi) = pivot_row else {
            return Err(Error::SingularSystem { context: String::from(context) });
        };
        m.swap(k, pi);
        b.swap(k, pi);
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            m[i][k] = Rat::zero();
            for j in k + 1..n {
                let delta = &f * &m[k][j];
                m[i][j] -= delta;
            }
            let delta = &f * &b[k];
            b[i] -= delta;
        }
    }
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            let delta = &m[i][j] * &b[j];
            acc -= delta;
        }
        b[i] = acc / &m[i][i];
    }
    Ok(b)
}

pub fn rat_inverse(a: &RatMat, context: &str) -> Result<RatMat> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = super::rat_int(1);
        cols.push(rat_solve(a, &e, context)?);
    }
    let mut out = rat_zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            out[i][j] = col[i].clone();
        }
    }
    Ok(out)
}

/// Exact rank by elimination with column pivoting; works for any shape.
pub fn rat_rank(a: &RatMat) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&i| !m[i][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(row, pivot);
        for i in row + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &m[row][col];
            for j in col..cols {
                let delta = &f * &m[row][j];
                m[i][j] -= delta;
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Exact LDL^T positivity test for a symmetric matrix.
pub fn rat_is_positive_definite(a: &RatMat) -> bool {
    let n = a.len();
    let mut m = a.to_vec();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let delta = &f * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    true
}
